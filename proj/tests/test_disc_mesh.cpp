#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "plateau/disc_mesh.hpp"

using namespace plateau;

TEST_CASE("depth zero mesh is a fanned hexagon") {
    const auto mesh = make_disc_mesh(0);
    CHECK(mesh.vertex_count() == 7);
    CHECK(mesh.triangle_count() == 6);
    CHECK(mesh.boundary_count() == 6);
}

TEST_CASE("disc meshes are simplicial discs") {
    for (int depth = 0; depth <= 5; ++depth) {
        CAPTURE(depth);
        const auto mesh = make_disc_mesh(depth);
        CHECK(mesh.euler_characteristic() == 1);
        CHECK(mesh.boundary_count() == 6 * (1 << depth));

        for (int v : mesh.boundary)
            CHECK(std::abs(mesh.vertices.row(v).norm() - 1.0) < 1e-12);

        // interior edges in exactly 2 triangles, boundary edges in 1
        std::map<std::pair<int, int>, int> edge_count;
        for (int t = 0; t < mesh.triangle_count(); ++t)
            for (int k = 0; k < 3; ++k) {
                int a = mesh.triangles(t, k);
                int b = mesh.triangles(t, (k + 1) % 3);
                if (a > b)
                    std::swap(a, b);
                ++edge_count[{a, b}];
            }
        int boundary_edges = 0;
        for (const auto& [edge, count] : edge_count) {
            CHECK((count == 1 || count == 2));
            if (count == 1)
                ++boundary_edges;
        }
        CHECK(boundary_edges == mesh.boundary_count());

        // positive orientation everywhere
        for (int t = 0; t < mesh.triangle_count(); ++t) {
            const Eigen::Vector2d a = mesh.vertices.row(mesh.triangles(t, 0));
            const Eigen::Vector2d b = mesh.vertices.row(mesh.triangles(t, 1));
            const Eigen::Vector2d c = mesh.vertices.row(mesh.triangles(t, 2));
            CHECK((b.x() - a.x()) * (c.y() - a.y()) -
                      (b.y() - a.y()) * (c.x() - a.x()) >
                  0.0);
        }
    }
}

TEST_CASE("vertex and triangle counts are a function of depth") {
    for (int depth = 0; depth <= 6; ++depth) {
        const int rings = 1 << depth;
        const auto mesh = make_disc_mesh(depth);
        CHECK(mesh.vertex_count() == 1 + 3 * rings * (rings + 1));
        CHECK(mesh.triangle_count() == 6 * rings * rings);
    }
}

TEST_CASE("depth four mesh has no angle below 20 degrees") {
    const auto mesh = make_disc_mesh(4);
    double worst = 180.0;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        Eigen::Vector2d p[3];
        for (int k = 0; k < 3; ++k)
            p[k] = mesh.vertices.row(mesh.triangles(t, k));
        for (int k = 0; k < 3; ++k) {
            const Eigen::Vector2d u = p[(k + 1) % 3] - p[k];
            const Eigen::Vector2d v = p[(k + 2) % 3] - p[k];
            const double angle =
                std::acos(u.dot(v) / (u.norm() * v.norm())) * 180.0 / std::numbers::pi;
            worst = std::min(worst, angle);
        }
    }
    CHECK(worst >= 20.0);
}

TEST_CASE("mesh rejects out-of-range depth") {
    CHECK_THROWS_AS(make_disc_mesh(-1), InvalidInput);
    CHECK_THROWS_AS(make_disc_mesh(11), InvalidInput);
}
