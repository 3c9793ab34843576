#pragma once
#include <Eigen/Dense>
#include <vector>

#include "plateau/errors.hpp"

namespace plateau {

// Triangulated closed unit disc. Concentric-ring layout: a center vertex and
// 2^depth rings, ring k holding 6k vertices at radius k/2^depth, so the
// boundary is a regular (6 * 2^depth)-gon.
struct DiscMesh {
    Eigen::MatrixX2d vertices;   // V x 2
    Eigen::MatrixX3i triangles;  // F x 3, positively oriented
    std::vector<int> boundary;   // boundary vertex indices, CCW from angle 0
    int depth = 0;

    int vertex_count() const { return static_cast<int>(vertices.rows()); }
    int triangle_count() const { return static_cast<int>(triangles.rows()); }
    int boundary_count() const { return static_cast<int>(boundary.size()); }
    bool is_boundary(int v) const { return boundary_mask_[static_cast<std::size_t>(v)] != 0; }

    double reference_area(int t) const;
    double total_reference_area() const;

    // V - E + F; 1 for a simplicial disc.
    int euler_characteristic() const;

    std::vector<char> boundary_mask_; // filled by make_disc_mesh
};

// Deterministic mesh of the unit disc at the given refinement depth (0..10).
DiscMesh make_disc_mesh(int depth);

} // namespace plateau
