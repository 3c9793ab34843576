#include "plateau/annulus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

namespace plateau {

namespace {

// Parallelogram height via orthogonalization: the Gram-determinant route
// loses half the digits on near-collinear triangles, which matters because
// the reparametrization annuli consist entirely of such triangles.
double unsigned_triangle_area(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                              const Eigen::VectorXd& c) {
    Eigen::VectorXd e1 = b - a;
    Eigen::VectorXd e2 = c - a;
    if (e2.squaredNorm() > e1.squaredNorm())
        std::swap(e1, e2);
    const double n1 = e1.squaredNorm();
    if (n1 == 0.0)
        return 0.0;
    const Eigen::VectorXd perp = e2 - (e1.dot(e2) / n1) * e1;
    return 0.5 * std::sqrt(n1) * perp.norm();
}

std::vector<double> uniform_profile_from(double start, double length, int count) {
    std::vector<double> p(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j)
        p[j] = start + length * j / count;
    return p;
}

} // namespace

double AnnulusMap::area() const {
    double acc = 0.0;
    if (cylinder_valued()) {
        for (int t = 0; t < triangle_count(); ++t) {
            const Eigen::Vector2d a = cylinder.row(triangles(t, 0));
            const Eigen::Vector2d b = cylinder.row(triangles(t, 1));
            const Eigen::Vector2d c = cylinder.row(triangles(t, 2));
            acc += 0.5 * std::abs((b.x() - a.x()) * (c.y() - a.y()) -
                                  (b.y() - a.y()) * (c.x() - a.x()));
        }
        return acc;
    }
    for (int t = 0; t < triangle_count(); ++t)
        acc += unsigned_triangle_area(ambient.row(triangles(t, 0)).transpose(),
                                      ambient.row(triangles(t, 1)).transpose(),
                                      ambient.row(triangles(t, 2)).transpose());
    return acc;
}

double GluedDisc::area() const {
    return disc_area(core) + annulus.area();
}

AnnulusMap collar_homotopy(const CollarSpace& space,
                           std::span<const double> inner_profile, int rings) {
    const int B = static_cast<int>(inner_profile.size());
    if (B < 3)
        throw InvalidInput("collar_homotopy needs at least 3 columns");
    if (rings < 1)
        throw InvalidInput("collar_homotopy needs at least 1 ring");
    const double l = space.circumference();
    for (int j = 1; j < B; ++j)
        if (inner_profile[j] < inner_profile[j - 1])
            throw InvalidInput("collar_homotopy: inner profile not monotone");
    if (inner_profile[B - 1] - inner_profile[0] > l * (1.0 + 1e-12))
        throw InvalidInput("collar_homotopy: inner profile winds more than once");

    AnnulusMap h;
    h.columns = B;
    h.inner_profile.assign(inner_profile.begin(), inner_profile.end());
    h.outer_profile = uniform_profile_from(inner_profile[0], l, B);

    const double pi = std::numbers::pi;
    const int vcols = B + 1; // seam column duplicated with s + l
    h.domain.resize(vcols * (rings + 1), 2);
    h.cylinder.resize(vcols * (rings + 1), 2);
    auto vid = [&](int j, int k) { return k * vcols + j; };
    for (int k = 0; k <= rings; ++k) {
        const double r = static_cast<double>(k) / rings;
        for (int j = 0; j <= vcols - 1; ++j) {
            const double inner =
                j < B ? inner_profile[j] : inner_profile[0] + l;
            const double outer = h.outer_profile[0] + l * j / B;
            h.domain.row(vid(j, k)) << 2.0 * pi * j / B, r;
            h.cylinder.row(vid(j, k)) << inner * (1.0 - r) + outer * r, l * r;
        }
    }
    h.triangles.resize(2 * B * rings, 3);
    int t = 0;
    for (int k = 0; k < rings; ++k)
        for (int j = 0; j < B; ++j) {
            h.triangles.row(t++) << vid(j, k), vid(j + 1, k), vid(j, k + 1);
            h.triangles.row(t++) << vid(j + 1, k), vid(j + 1, k + 1), vid(j, k + 1);
        }
    return h;
}

AnnulusMap collar_homotopy(const CollarSpace& space, int m) {
    if (m < 3)
        throw InvalidInput("collar_homotopy needs m >= 3");
    return collar_homotopy(space,
                           uniform_profile_from(0.0, space.circumference(), m), m);
}

namespace {

struct ClipVertex {
    double theta = 0.0;
    double r = 0.0;
    double param = 0.0;
};

// Clip a convex polygon against {param <= hi}; cut vertices carry the exact
// level value.
std::vector<ClipVertex> clip_below(const std::vector<ClipVertex>& poly, double hi) {
    std::vector<ClipVertex> out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const ClipVertex& a = poly[i];
        const ClipVertex& b = poly[(i + 1) % n];
        const bool ain = a.param <= hi;
        const bool bin = b.param <= hi;
        if (ain)
            out.push_back(a);
        if (ain != bin) {
            const double u = (hi - a.param) / (b.param - a.param);
            out.push_back({a.theta + u * (b.theta - a.theta),
                           a.r + u * (b.r - a.r), hi});
        }
    }
    return out;
}

std::vector<ClipVertex> clip_above(const std::vector<ClipVertex>& poly, double lo) {
    std::vector<ClipVertex> out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const ClipVertex& a = poly[i];
        const ClipVertex& b = poly[(i + 1) % n];
        const bool ain = a.param >= lo;
        const bool bin = b.param >= lo;
        if (ain)
            out.push_back(a);
        if (ain != bin) {
            const double u = (lo - a.param) / (b.param - a.param);
            out.push_back({a.theta + u * (b.theta - a.theta),
                           a.r + u * (b.r - a.r), lo});
        }
    }
    return out;
}

} // namespace

AnnulusMap zero_area_homotopy(const ClosedCurve& curve,
                              std::span<const double> from_profile,
                              std::span<const double> to_profile) {
    const int B = static_cast<int>(from_profile.size());
    if (B < 3 || static_cast<int>(to_profile.size()) != B)
        throw InvalidInput("zero_area_homotopy: profiles must share size >= 3");
    const double L = curve.param_length();
    auto check = [&](std::span<const double> p, const char* which) {
        for (int j = 1; j < B; ++j)
            if (p[j] < p[j - 1])
                throw InvalidInput(std::string("zero_area_homotopy: ") + which +
                                   " profile not weakly monotone");
        if (p[B - 1] - p[0] > L * (1.0 + 1e-12))
            throw InvalidInput(std::string("zero_area_homotopy: ") + which +
                               " profile winds more than once");
    };
    check(from_profile, "inner");
    check(to_profile, "outer");

    AnnulusMap h;
    h.columns = B;
    h.inner_profile.assign(from_profile.begin(), from_profile.end());
    h.outer_profile.assign(to_profile.begin(), to_profile.end());

    // lifted curve-vertex params; cuts at every replica falling in a span
    const int m = curve.size();
    std::vector<double> vparams(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        vparams[i] = curve.params()[i];

    const double pi = std::numbers::pi;
    std::vector<ClipVertex> verts;
    std::vector<Eigen::Vector3i> tris;

    auto emit_polygon = [&](const std::vector<ClipVertex>& poly) {
        if (poly.size() < 3)
            return;
        const int base = static_cast<int>(verts.size());
        verts.insert(verts.end(), poly.begin(), poly.end());
        for (std::size_t k = 1; k + 1 < poly.size(); ++k)
            tris.emplace_back(base, base + static_cast<int>(k),
                              base + static_cast<int>(k) + 1);
    };

    auto process_triangle = [&](const ClipVertex& a, const ClipVertex& b,
                                const ClipVertex& c) {
        const double fmin = std::min({a.param, b.param, c.param});
        const double fmax = std::max({a.param, b.param, c.param});
        std::vector<double> levels;
        for (int i = 0; i < m; ++i) {
            const double v = vparams[i];
            for (double rep = v + std::ceil((fmin - v) / L) * L; rep < fmax;
                 rep += L)
                if (rep > fmin)
                    levels.push_back(rep);
        }
        std::sort(levels.begin(), levels.end());
        std::vector<ClipVertex> poly = {a, b, c};
        double lo = -std::numeric_limits<double>::infinity();
        for (double v : levels) {
            emit_polygon(clip_below(clip_above(poly, lo), v));
            lo = v;
        }
        emit_polygon(clip_above(poly, lo));
    };

    for (int j = 0; j < B; ++j) {
        const double th0 = 2.0 * pi * j / B;
        const double th1 = 2.0 * pi * (j + 1) / B;
        const double a0 = from_profile[j];
        const double a1 = j + 1 < B ? from_profile[j + 1] : from_profile[0] + L;
        const double b0 = to_profile[j];
        const double b1 = j + 1 < B ? to_profile[j + 1] : to_profile[0] + L;
        process_triangle({th0, 0.0, a0}, {th1, 0.0, a1}, {th0, 1.0, b0});
        process_triangle({th1, 0.0, a1}, {th1, 1.0, b1}, {th0, 1.0, b0});
    }

    h.domain.resize(static_cast<int>(verts.size()), 2);
    h.ambient.resize(static_cast<int>(verts.size()), curve.dimension());
    for (std::size_t i = 0; i < verts.size(); ++i) {
        h.domain.row(static_cast<int>(i)) << verts[i].theta, verts[i].r;
        h.ambient.row(static_cast<int>(i)) =
            curve.evaluate(verts[i].param).transpose();
    }
    h.triangles.resize(static_cast<int>(tris.size()), 3);
    for (std::size_t i = 0; i < tris.size(); ++i)
        h.triangles.row(static_cast<int>(i)) = tris[i].transpose();
    return h;
}

GluedDisc glue_homotopy(const DiscMap& u, const AnnulusMap& h) {
    const int B = u.mesh.boundary_count();
    if (h.columns != B)
        throw InvalidInput("glue_homotopy: trace mismatch (column count)");
    const double L = u.curve.param_length();
    // profiles may differ by whole windings of the lift
    const double shift =
        std::round((h.inner_profile[0] - u.boundary_params[0]) / L) * L;
    for (int j = 0; j < B; ++j)
        if (std::abs(h.inner_profile[j] - shift - u.boundary_params[j]) >
            1e-9 * L)
            throw InvalidInput("glue_homotopy: trace mismatch");
    return GluedDisc{u, h};
}

void write_obj(const GluedDisc& g, const std::string& path) {
    if (g.in_collar())
        throw InvalidInput("OBJ export needs an ambient-valued annulus");
    if (g.core.dimension() > 3)
        throw InvalidInput("OBJ export supports dimension <= 3");
    std::ofstream out(path);
    if (!out)
        throw InvalidInput("cannot open output file: " + path);
    out.precision(17);
    auto emit_vertex = [&](const Eigen::RowVectorXd& p) {
        out << "v";
        for (int k = 0; k < 3; ++k)
            out << ' ' << (k < p.size() ? p[k] : 0.0);
        out << '\n';
    };
    for (int v = 0; v < g.core.mesh.vertex_count(); ++v)
        emit_vertex(g.core.positions.row(v));
    for (int v = 0; v < g.annulus.vertex_count(); ++v)
        emit_vertex(g.annulus.ambient.row(v));
    const int off = g.core.mesh.vertex_count();
    for (int t = 0; t < g.core.mesh.triangle_count(); ++t)
        out << "f " << g.core.mesh.triangles(t, 0) + 1 << ' '
            << g.core.mesh.triangles(t, 1) + 1 << ' '
            << g.core.mesh.triangles(t, 2) + 1 << '\n';
    for (int t = 0; t < g.annulus.triangle_count(); ++t)
        out << "f " << g.annulus.triangles(t, 0) + off + 1 << ' '
            << g.annulus.triangles(t, 1) + off + 1 << ' '
            << g.annulus.triangles(t, 2) + off + 1 << '\n';
}

nlohmann::ordered_json mesh_json(const GluedDisc& g) {
    if (g.in_collar())
        throw InvalidInput("mesh JSON export needs an ambient-valued annulus");
    nlohmann::ordered_json j;
    nlohmann::ordered_json pos = nlohmann::ordered_json::array();
    const int n = g.core.dimension();
    for (int v = 0; v < g.core.mesh.vertex_count(); ++v) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int k = 0; k < n; ++k)
            row.push_back(g.core.positions(v, k));
        pos.push_back(std::move(row));
    }
    for (int v = 0; v < g.annulus.vertex_count(); ++v) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int k = 0; k < n; ++k)
            row.push_back(g.annulus.ambient(v, k));
        pos.push_back(std::move(row));
    }
    j["positions"] = std::move(pos);
    nlohmann::ordered_json tris = nlohmann::ordered_json::array();
    for (int t = 0; t < g.core.mesh.triangle_count(); ++t)
        tris.push_back({g.core.mesh.triangles(t, 0), g.core.mesh.triangles(t, 1),
                        g.core.mesh.triangles(t, 2)});
    const int off = g.core.mesh.vertex_count();
    for (int t = 0; t < g.annulus.triangle_count(); ++t)
        tris.push_back({g.annulus.triangles(t, 0) + off,
                        g.annulus.triangles(t, 1) + off,
                        g.annulus.triangles(t, 2) + off});
    j["triangles"] = std::move(tris);
    j["boundary_params"] = g.annulus.outer_profile;
    return j;
}

} // namespace plateau
