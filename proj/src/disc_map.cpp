#include "plateau/disc_map.hpp"

#include <cmath>
#include <random>

namespace plateau {

SeminormG DiscMap::gram(int t) const {
    TriangleFrame f;
    f.image.resize(3, dimension());
    for (int k = 0; k < 3; ++k) {
        const int v = mesh.triangles(t, k);
        f.ref[k] = mesh.vertices.row(v).transpose();
        f.image.row(k) = positions.row(v);
    }
    return triangle_gram(f);
}

void DiscMap::validate() const {
    if (positions.rows() != mesh.vertex_count())
        throw InvalidInput("disc map: positions size mismatch");
    if (static_cast<int>(boundary_params.size()) != mesh.boundary_count())
        throw InvalidInput("disc map: boundary_params size mismatch");
    const double L = curve.param_length();
    const int B = mesh.boundary_count();
    for (int j = 1; j < B; ++j)
        if (boundary_params[j] < boundary_params[j - 1])
            throw InvalidInput("disc map: boundary params not weakly monotone");
    if (boundary_params[B - 1] - boundary_params[0] > L * (1.0 + 1e-12))
        throw InvalidInput("disc map: boundary params wind more than once");
    const double tol = 1e-9 * L;
    for (int j = 0; j < B; ++j) {
        const Eigen::VectorXd on_curve = curve.evaluate(boundary_params[j]);
        const double err = (positions.row(mesh.boundary[j]).transpose() - on_curve).norm();
        if (err > tol)
            throw InvalidInput("disc map: trace condition violated");
    }
}

double disc_area(const DiscMap& u) {
    double acc = 0.0;
    for (int t = 0; t < u.mesh.triangle_count(); ++t)
        acc += busemann_jacobian(u.gram(t)) * u.mesh.reference_area(t);
    return acc;
}

double disc_energy(const DiscMap& u, EnergyKind kind) {
    double acc = 0.0;
    for (int t = 0; t < u.mesh.triangle_count(); ++t) {
        const SeminormG g = u.gram(t);
        const double density = kind == EnergyKind::reshetnyak
                                   ? reshetnyak_density(g)
                                   : dirichlet_density(g);
        acc += density * u.mesh.reference_area(t);
    }
    return acc;
}

HolderStat holder_quotient(const DiscMap& u, double alpha, Region region,
                           std::size_t max_pairs, std::uint64_t seed) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw InvalidInput("holder_quotient: alpha must be in (0, 1]");
    std::vector<int> verts;
    verts.reserve(static_cast<std::size_t>(u.mesh.vertex_count()));
    for (int v = 0; v < u.mesh.vertex_count(); ++v) {
        if (region == Region::interior &&
            u.mesh.vertices.row(v).norm() > 0.9)
            continue;
        verts.push_back(v);
    }

    HolderStat stat;
    stat.exponent = alpha;
    const std::size_t nv = verts.size();
    if (nv < 2)
        return stat;

    auto ratio = [&](int a, int b) {
        const double sep = (u.mesh.vertices.row(a) - u.mesh.vertices.row(b)).norm();
        if (sep == 0.0)
            return 0.0;
        const double dist = (u.positions.row(a) - u.positions.row(b)).norm();
        return dist / std::pow(sep, alpha);
    };

    const std::size_t total = nv * (nv - 1) / 2;
    if (total <= max_pairs) {
        for (std::size_t i = 0; i < nv; ++i)
            for (std::size_t j = i + 1; j < nv; ++j)
                stat.value = std::max(stat.value, ratio(verts[i], verts[j]));
        stat.pairs = total;
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, nv - 1);
        for (std::size_t k = 0; k < max_pairs; ++k) {
            const std::size_t i = pick(rng);
            const std::size_t j = pick(rng);
            if (i == j)
                continue;
            stat.value = std::max(stat.value, ratio(verts[i], verts[j]));
            ++stat.pairs;
        }
    }
    return stat;
}

} // namespace plateau
