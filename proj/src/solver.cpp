#include "plateau/solver.hpp"

#include <Eigen/SparseCholesky>
#include <array>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

namespace plateau {

namespace {

// Positive-semidefinite cotangent stiffness of the reference triangulation.
Eigen::SparseMatrix<double> cotan_stiffness(const DiscMesh& mesh) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(mesh.triangle_count()) * 12);
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        int idx[3] = {mesh.triangles(t, 0), mesh.triangles(t, 1),
                      mesh.triangles(t, 2)};
        Eigen::Vector2d p[3];
        for (int k = 0; k < 3; ++k)
            p[k] = mesh.vertices.row(idx[k]);
        for (int k = 0; k < 3; ++k) {
            const int a = idx[(k + 1) % 3];
            const int b = idx[(k + 2) % 3];
            const Eigen::Vector2d u = p[(k + 1) % 3] - p[k];
            const Eigen::Vector2d v = p[(k + 2) % 3] - p[k];
            const double cross = std::abs(u.x() * v.y() - u.y() * v.x());
            if (cross < 1e-14 * std::max(u.squaredNorm(), v.squaredNorm()))
                throw NumericalError("harmonic solver: degenerate mesh triangle");
            const double w = 0.5 * u.dot(v) / cross; // cot(angle at k) / 2
            trip.emplace_back(a, b, -w);
            trip.emplace_back(b, a, -w);
            trip.emplace_back(a, a, w);
            trip.emplace_back(b, b, w);
        }
    }
    Eigen::SparseMatrix<double> k(mesh.vertex_count(), mesh.vertex_count());
    k.setFromTriplets(trip.begin(), trip.end());
    return k;
}

std::vector<double> lifted_params_or_throw(const DiscMap& u) {
    const int B = u.mesh.boundary_count();
    std::vector<double> p = u.boundary_params;
    for (int j = 1; j < B; ++j)
        if (p[j] < p[j - 1])
            throw InvalidInput("boundary params not weakly monotone");
    return p;
}

// Three-point normalization: boundary vertices at thirds keep their
// parameters. Without it the discrete energy has a zero-barrier descent
// along profile concentration (no energy minimizer exists for singular
// curves), and the slide iteration drains the disc.
std::array<int, 3> pinned_vertices(int boundary_count) {
    return {0, boundary_count / 3, 2 * boundary_count / 3};
}

// Clamp onto the weakly monotone cone between the pinned vertices; the later
// index absorbs the clamp. Pin values bound each span, so the profile keeps
// winding number one. Per-edge gaps are capped at a fixed multiple of the
// mean spacing: an unbounded gap lets the trace shortcut a curve arc with a
// chord, which undercuts the fill from below and never disappears under
// refinement. The cap vanishes relative to the curve as the boundary refines.
void project_monotone(std::vector<double>& p, double length,
                      const std::array<int, 3>& pins) {
    const int n = static_cast<int>(p.size());
    const double cap = 6.0 * length / n;
    const double pin_vals[4] = {p[pins[0]], p[pins[1]], p[pins[2]],
                                p[pins[0]] + length};
    const int bounds[4] = {pins[0], pins[1], pins[2], n};
    for (int s = 0; s < 3; ++s) {
        const double hi = pin_vals[s + 1];
        for (int j = bounds[s] + 1; j < bounds[s + 1]; ++j)
            p[j] = std::min({std::max(p[j], p[j - 1]), p[j - 1] + cap, hi});
        // the edge entering the pin absorbs what is left; cap it from behind
        for (int j = bounds[s + 1] - 1; j > bounds[s]; --j)
            p[j] = std::max(p[j], (j + 1 < n ? p[j + 1] : hi) - cap);
        for (int j = bounds[s] + 1; j < bounds[s + 1]; ++j)
            p[j] = std::min(std::max(p[j], p[j - 1]), hi);
    }
}

double dirichlet_of_triangles(const DiscMap& u, const std::vector<int>& tris,
                              const Eigen::MatrixXd& positions) {
    double acc = 0.0;
    TriangleFrame f;
    f.image.resize(3, positions.cols());
    for (int t : tris) {
        for (int k = 0; k < 3; ++k) {
            const int v = u.mesh.triangles(t, k);
            f.ref[k] = u.mesh.vertices.row(v).transpose();
            f.image.row(k) = positions.row(v);
        }
        acc += dirichlet_density(triangle_gram(f)) * u.mesh.reference_area(t);
    }
    return acc;
}

} // namespace

void SolveConfig::validate() const {
    if (depth < 0 || depth > 10)
        throw InvalidInput("solve config: depth must be in 0..10");
    if (max_outer_iters < 1)
        throw InvalidInput("solve config: max_outer_iters must be positive");
    if (!(rel_tol > 0.0))
        throw InvalidInput("solve config: rel_tol must be positive");
    if (!(slide_step > 0.0))
        throw InvalidInput("solve config: slide_step must be positive");
}

struct HarmonicSolver::Impl {
    std::vector<int> interior;
    std::vector<int> inv; // vertex -> interior index or -1
    Eigen::SparseMatrix<double> k_ib;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> factor;
};

HarmonicSolver::HarmonicSolver(const DiscMesh& mesh) {
    auto impl = std::make_shared<Impl>();
    impl->inv.assign(mesh.vertex_count(), -1);
    for (int v = 0; v < mesh.vertex_count(); ++v)
        if (!mesh.is_boundary(v)) {
            impl->inv[v] = static_cast<int>(impl->interior.size());
            impl->interior.push_back(v);
        }
    const auto k = cotan_stiffness(mesh);
    const int ni = static_cast<int>(impl->interior.size());
    const int nb = mesh.vertex_count() - ni;
    std::vector<int> binv(mesh.vertex_count(), -1);
    int bi = 0;
    for (int v = 0; v < mesh.vertex_count(); ++v)
        if (mesh.is_boundary(v))
            binv[v] = bi++;

    std::vector<Eigen::Triplet<double>> tii, tib;
    for (int outer = 0; outer < k.outerSize(); ++outer)
        for (Eigen::SparseMatrix<double>::InnerIterator it(k, outer); it; ++it) {
            const int r = static_cast<int>(it.row());
            const int c = static_cast<int>(it.col());
            if (impl->inv[r] < 0)
                continue;
            if (impl->inv[c] >= 0)
                tii.emplace_back(impl->inv[r], impl->inv[c], it.value());
            else
                tib.emplace_back(impl->inv[r], binv[c], it.value());
        }
    Eigen::SparseMatrix<double> kii(ni, ni);
    kii.setFromTriplets(tii.begin(), tii.end());
    impl->k_ib.resize(ni, nb);
    impl->k_ib.setFromTriplets(tib.begin(), tib.end());
    impl->factor.compute(kii);
    if (impl->factor.info() != Eigen::Success)
        throw NumericalError("harmonic solver: singular stiffness system");
    impl_ = std::move(impl);
}

void HarmonicSolver::extend(DiscMap& u) const {
    const auto& impl = *impl_;
    const int ni = static_cast<int>(impl.interior.size());
    const int nb = u.mesh.vertex_count() - ni;
    Eigen::MatrixXd xb(nb, u.dimension());
    int bi = 0;
    for (int v = 0; v < u.mesh.vertex_count(); ++v)
        if (u.mesh.is_boundary(v))
            xb.row(bi++) = u.positions.row(v);
    const Eigen::MatrixXd rhs = -(impl.k_ib * xb);
    const Eigen::MatrixXd xi = impl.factor.solve(rhs);
    for (int i = 0; i < ni; ++i)
        u.positions.row(impl.interior[i]) = xi.row(i);
}

DiscMap initialize(const DiscMesh& mesh, const ClosedCurve& curve) {
    if (!curve.is_constant_speed())
        throw InvalidInput("initialize requires a constant-speed curve");
    DiscMap u{mesh, {}, {}, curve};
    const int B = mesh.boundary_count();
    const double L = curve.param_length();
    u.boundary_params.resize(B);
    u.positions.setZero(mesh.vertex_count(), curve.dimension());
    for (int j = 0; j < B; ++j) {
        u.boundary_params[j] = L * j / B;
        u.positions.row(mesh.boundary[j]) =
            curve.evaluate(u.boundary_params[j]).transpose();
    }
    HarmonicSolver(mesh).extend(u);
    return u;
}

DiscMap harmonic_step(const DiscMap& u) {
    DiscMap out = u;
    HarmonicSolver(u.mesh).extend(out);
    return out;
}

DiscMap boundary_slide_step(const DiscMap& u, double step_budget) {
    if (!(step_budget > 0.0))
        throw InvalidInput("boundary_slide_step needs a positive step budget");
    const int B = u.mesh.boundary_count();
    const double L = u.curve.param_length();
    std::vector<double> p = lifted_params_or_throw(u);

    // triangles incident to each boundary vertex
    std::vector<std::vector<int>> incident(static_cast<std::size_t>(B));
    std::vector<int> bindex(u.mesh.vertex_count(), -1);
    for (int j = 0; j < B; ++j)
        bindex[u.mesh.boundary[j]] = j;
    for (int t = 0; t < u.mesh.triangle_count(); ++t)
        for (int k = 0; k < 3; ++k) {
            const int j = bindex[u.mesh.triangles(t, k)];
            if (j >= 0)
                incident[j].push_back(t);
        }

    // central finite differences of the local Dirichlet energy along the curve
    const double delta = 1e-4 * L / B;
    const auto pins = pinned_vertices(B);
    Eigen::MatrixXd work = u.positions;
    std::vector<double> grad(static_cast<std::size_t>(B));
    double gmax = 0.0;
    for (int j = 0; j < B; ++j) {
        if (j == pins[0] || j == pins[1] || j == pins[2]) {
            grad[j] = 0.0;
            continue;
        }
        const int v = u.mesh.boundary[j];
        work.row(v) = u.curve.evaluate(p[j] + delta).transpose();
        const double ep = dirichlet_of_triangles(u, incident[j], work);
        work.row(v) = u.curve.evaluate(p[j] - delta).transpose();
        const double em = dirichlet_of_triangles(u, incident[j], work);
        work.row(v) = u.positions.row(v);
        grad[j] = (ep - em) / (2.0 * delta);
        gmax = std::max(gmax, std::abs(grad[j]));
    }
    if (gmax == 0.0)
        return u;

    std::vector<int> all_tris(static_cast<std::size_t>(u.mesh.triangle_count()));
    for (int t = 0; t < u.mesh.triangle_count(); ++t)
        all_tris[t] = t;
    const double e0 = dirichlet_of_triangles(u, all_tris, u.positions);

    double tau = step_budget * (L / B) / gmax;
    for (int attempt = 0; attempt < 8; ++attempt, tau *= 0.5) {
        std::vector<double> trial = p;
        for (int j = 0; j < B; ++j)
            trial[j] -= tau * grad[j];
        project_monotone(trial, L, pins);

        DiscMap cand = u;
        cand.boundary_params = trial;
        for (int j = 0; j < B; ++j)
            cand.positions.row(u.mesh.boundary[j]) =
                u.curve.evaluate(trial[j]).transpose();
        const double e1 = dirichlet_of_triangles(cand, all_tris, cand.positions);
        if (e1 < e0 - 1e-15 * (1.0 + e0)) {
            // keep the stored profile anchored inside [0, L)
            if (cand.boundary_params[0] < 0.0 || cand.boundary_params[0] >= L) {
                const double shift =
                    std::floor(cand.boundary_params[0] / L) * L;
                for (double& x : cand.boundary_params)
                    x -= shift;
            }
            return cand;
        }
    }
    return u;
}

QStats q_statistics(const DiscMap& u) {
    std::vector<double> qs;
    qs.reserve(static_cast<std::size_t>(u.mesh.triangle_count()));
    QStats stats;
    for (int t = 0; t < u.mesh.triangle_count(); ++t) {
        const double q = quasi_conformality(u.gram(t));
        if (is_unbounded(q))
            ++stats.unbounded;
        else
            qs.push_back(q);
    }
    if (qs.empty())
        return stats;
    std::sort(qs.begin(), qs.end());
    auto quantile = [&](double f) {
        const double x = f * static_cast<double>(qs.size() - 1);
        const std::size_t i = static_cast<std::size_t>(x);
        const double frac = x - static_cast<double>(i);
        if (i + 1 >= qs.size())
            return qs.back();
        return qs[i] * (1.0 - frac) + qs[i + 1] * frac;
    };
    stats.min = qs.front();
    stats.q25 = quantile(0.25);
    stats.median = quantile(0.5);
    stats.q75 = quantile(0.75);
    stats.max = qs.back();
    return stats;
}

namespace {

// Rebuild at the next depth; boundary params interpolated along arc length.
DiscMap refine(const DiscMap& u, int new_depth) {
    const auto mesh = make_disc_mesh(new_depth);
    const int Bo = u.mesh.boundary_count();
    const int Bn = mesh.boundary_count();
    const double L = u.curve.param_length();

    DiscMap out{mesh, {}, {}, u.curve};
    out.boundary_params.resize(Bn);
    out.positions.setZero(mesh.vertex_count(), u.dimension());
    for (int k = 0; k < Bn; ++k) {
        const double x = static_cast<double>(k) * Bo / Bn;
        const int i = std::min(static_cast<int>(x), Bo - 1);
        const double frac = x - i;
        const double pi0 = u.boundary_params[i];
        const double pi1 = i + 1 < Bo ? u.boundary_params[i + 1]
                                      : u.boundary_params[0] + L;
        out.boundary_params[k] = pi0 * (1.0 - frac) + pi1 * frac;
        out.positions.row(mesh.boundary[k]) =
            u.curve.evaluate(out.boundary_params[k]).transpose();
    }
    HarmonicSolver(mesh).extend(out);
    return out;
}

} // namespace

std::pair<DiscMap, SolveReport> solve(const ClosedCurve& curve,
                                      const SolveConfig& cfg) {
    cfg.validate();
    if (!curve.is_constant_speed())
        throw InvalidInput("solve requires a constant-speed curve");

    SolveReport report;
    const int depth0 = std::min(2, cfg.depth);
    DiscMap u = initialize(make_disc_mesh(depth0), curve);

    for (int depth = depth0; depth <= cfg.depth; ++depth) {
        if (depth > depth0)
            u = refine(u, depth);
        const HarmonicSolver harmonic(u.mesh);
        double prev_area = disc_area(u);
        int consecutive = 0;
        bool settled = false;
        for (int iter = 0; iter < cfg.max_outer_iters; ++iter) {
            u = boundary_slide_step(u, cfg.slide_step);
            harmonic.extend(u);
            const double area = disc_area(u);
            report.area_trace.push_back(area);
            ++report.iterations;
            const double rel = std::abs(area - prev_area) /
                               std::max({std::abs(area), std::abs(prev_area), 1e-300});
            prev_area = area;
            consecutive = rel < cfg.rel_tol ? consecutive + 1 : 0;
            if (consecutive >= 3) {
                settled = true;
                break;
            }
        }
        report.converged = settled;
    }

    report.area = disc_area(u);
    report.energy_reshetnyak = disc_energy(u, EnergyKind::reshetnyak);
    report.energy_dirichlet = disc_energy(u, EnergyKind::dirichlet);
    report.q_stats = q_statistics(u);
    const auto exponents =
        holder_exponents(euclidean_isoperimetric_constant(), true);
    report.holder_interior = holder_quotient(u, exponents.alpha, Region::interior,
                                             1000000, cfg.seed + 7);
    report.holder_closure = holder_quotient(u, exponents.beta, Region::closure,
                                            1000000, cfg.seed + 8);
    return {std::move(u), std::move(report)};
}

double fill_estimate(const ClosedCurve& curve, const SolveConfig& cfg) {
    return solve(curve, cfg).second.area;
}

nlohmann::ordered_json SolveReport::to_json() const {
    nlohmann::ordered_json j;
    j["area"] = area;
    j["energy_reshetnyak"] = energy_reshetnyak;
    j["energy_dirichlet"] = energy_dirichlet;
    j["q_stats"] = {{"min", q_stats.min},       {"q25", q_stats.q25},
                    {"median", q_stats.median}, {"q75", q_stats.q75},
                    {"max", q_stats.max},       {"unbounded", q_stats.unbounded}};
    j["holder_interior"] = {{"exponent", holder_interior.exponent},
                            {"value", holder_interior.value},
                            {"pairs", holder_interior.pairs}};
    j["holder_closure"] = {{"exponent", holder_closure.exponent},
                           {"value", holder_closure.value},
                           {"pairs", holder_closure.pairs}};
    j["iterations"] = iterations;
    j["converged"] = converged;
    j["area_trace"] = area_trace;
    return j;
}

void write_obj(const DiscMap& u, const std::string& path) {
    if (u.dimension() > 3)
        throw InvalidInput("OBJ export supports dimension <= 3");
    std::ofstream out(path);
    if (!out)
        throw InvalidInput("cannot open output file: " + path);
    out.precision(17);
    for (int v = 0; v < u.mesh.vertex_count(); ++v) {
        out << "v";
        for (int k = 0; k < 3; ++k)
            out << ' ' << (k < u.dimension() ? u.positions(v, k) : 0.0);
        out << '\n';
    }
    for (int t = 0; t < u.mesh.triangle_count(); ++t)
        out << "f " << u.mesh.triangles(t, 0) + 1 << ' '
            << u.mesh.triangles(t, 1) + 1 << ' ' << u.mesh.triangles(t, 2) + 1
            << '\n';
}

nlohmann::ordered_json mesh_json(const DiscMap& u) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json pos = nlohmann::ordered_json::array();
    for (int v = 0; v < u.mesh.vertex_count(); ++v) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int k = 0; k < u.dimension(); ++k)
            row.push_back(u.positions(v, k));
        pos.push_back(std::move(row));
    }
    j["positions"] = std::move(pos);
    nlohmann::ordered_json tris = nlohmann::ordered_json::array();
    for (int t = 0; t < u.mesh.triangle_count(); ++t)
        tris.push_back({u.mesh.triangles(t, 0), u.mesh.triangles(t, 1),
                        u.mesh.triangles(t, 2)});
    j["triangles"] = std::move(tris);
    j["boundary_params"] = u.boundary_params;
    return j;
}

} // namespace plateau
