#include "plateau/disc_mesh.hpp"

#include <cmath>
#include <numbers>
#include <set>

namespace plateau {

double DiscMesh::reference_area(int t) const {
    const auto tri = triangles.row(t);
    const Eigen::Vector2d a = vertices.row(tri[0]);
    const Eigen::Vector2d b = vertices.row(tri[1]);
    const Eigen::Vector2d c = vertices.row(tri[2]);
    return 0.5 * std::abs((b.x() - a.x()) * (c.y() - a.y()) -
                          (b.y() - a.y()) * (c.x() - a.x()));
}

double DiscMesh::total_reference_area() const {
    double acc = 0.0;
    for (int t = 0; t < triangle_count(); ++t)
        acc += reference_area(t);
    return acc;
}

int DiscMesh::euler_characteristic() const {
    std::set<std::pair<int, int>> edges;
    for (int t = 0; t < triangle_count(); ++t) {
        for (int k = 0; k < 3; ++k) {
            int a = triangles(t, k);
            int b = triangles(t, (k + 1) % 3);
            if (a > b)
                std::swap(a, b);
            edges.insert({a, b});
        }
    }
    return vertex_count() - static_cast<int>(edges.size()) + triangle_count();
}

DiscMesh make_disc_mesh(int depth) {
    if (depth < 0 || depth > 10)
        throw InvalidInput("make_disc_mesh: depth must be in 0..10");
    const int rings = 1 << depth;
    const double pi = std::numbers::pi;

    DiscMesh mesh;
    mesh.depth = depth;

    // center + 6k vertices on ring k
    const int nv = 1 + 3 * rings * (rings + 1);
    mesh.vertices.resize(nv, 2);
    mesh.vertices.row(0) << 0.0, 0.0;
    std::vector<int> ring_start(rings + 1, 0);
    int id = 1;
    for (int k = 1; k <= rings; ++k) {
        ring_start[k] = id;
        const double radius = static_cast<double>(k) / rings;
        const int count = 6 * k;
        for (int i = 0; i < count; ++i) {
            const double angle = 2.0 * pi * i / count;
            mesh.vertices.row(id) << radius * std::cos(angle), radius * std::sin(angle);
            ++id;
        }
    }

    std::vector<Eigen::Vector3i> tris;
    tris.reserve(static_cast<std::size_t>(6) * rings * rings);

    // center fan
    for (int i = 0; i < 6; ++i)
        tris.emplace_back(0, ring_start[1] + i, ring_start[1] + (i + 1) % 6);

    // ring strips: angular two-pointer merge between ring k and ring k+1
    for (int k = 1; k < rings; ++k) {
        const int na = 6 * k;
        const int nb = 6 * (k + 1);
        const int a0 = ring_start[k];
        const int b0 = ring_start[k + 1];
        auto angle_a = [&](int i) { return static_cast<double>(i) / na; };
        auto angle_b = [&](int j) { return static_cast<double>(j) / nb; };
        int i = 0, j = 0;
        while (i < na || j < nb) {
            const bool can_a = i < na;
            const bool can_b = j < nb;
            bool advance_b;
            if (!can_a)
                advance_b = true;
            else if (!can_b)
                advance_b = false;
            else
                advance_b = angle_b(j + 1) <= angle_a(i + 1);
            const int ai = a0 + (i % na);
            const int bj = b0 + (j % nb);
            if (advance_b) {
                tris.emplace_back(ai, bj, b0 + ((j + 1) % nb));
                ++j;
            } else {
                tris.emplace_back(ai, bj, a0 + ((i + 1) % na));
                ++i;
            }
        }
    }

    mesh.triangles.resize(static_cast<int>(tris.size()), 3);
    for (std::size_t t = 0; t < tris.size(); ++t)
        mesh.triangles.row(static_cast<int>(t)) = tris[t].transpose();

    // orientation fix: ensure positive (CCW) reference triangles
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const Eigen::Vector2d a = mesh.vertices.row(mesh.triangles(t, 0));
        const Eigen::Vector2d b = mesh.vertices.row(mesh.triangles(t, 1));
        const Eigen::Vector2d c = mesh.vertices.row(mesh.triangles(t, 2));
        const double cross = (b.x() - a.x()) * (c.y() - a.y()) -
                             (b.y() - a.y()) * (c.x() - a.x());
        if (cross < 0.0)
            std::swap(mesh.triangles(t, 1), mesh.triangles(t, 2));
    }

    mesh.boundary.resize(6 * rings);
    for (int i = 0; i < 6 * rings; ++i)
        mesh.boundary[i] = ring_start[rings] + i;
    mesh.boundary_mask_.assign(nv, 0);
    for (int v : mesh.boundary)
        mesh.boundary_mask_[static_cast<std::size_t>(v)] = 1;
    return mesh;
}

} // namespace plateau
