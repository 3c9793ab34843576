#pragma once
#include <Eigen/Dense>
#include <span>
#include <vector>

#include "plateau/collar.hpp"
#include "plateau/disc_map.hpp"

namespace plateau {

// Triangulated homotopy over S^1 x [0, 1], stored cut along theta = 0 (the
// domain is the rectangle [0, 2pi] x [0, 1]; seam vertices are duplicated
// with lifted parameters). Exactly one image set is populated: ambient
// points of R^n, or flat-cylinder coordinates (s lifted, t).
struct AnnulusMap {
    Eigen::MatrixX2d domain;    // (theta, r) per vertex
    Eigen::MatrixX3i triangles;
    Eigen::MatrixXd ambient;    // V x n, or empty
    Eigen::MatrixX2d cylinder;  // V x 2: (s, t), or empty

    std::vector<double> inner_profile; // lifted params at the primary columns
    std::vector<double> outer_profile;
    int columns = 0;

    bool cylinder_valued() const { return cylinder.rows() > 0; }
    int vertex_count() const { return static_cast<int>(domain.rows()); }
    int triangle_count() const { return static_cast<int>(triangles.rows()); }

    // Busemann area: unsigned image-triangle areas, summed in index order.
    double area() const;
};

// Disc assembled from a core disc map and an annular homotopy grafted along
// matching boundary parameter profiles. Areas and traces accumulate over the
// pieces (disjoint triangle sums).
struct GluedDisc {
    DiscMap core;
    AnnulusMap annulus;

    double area() const;
    bool in_collar() const { return annulus.cylinder_valued(); }
    const std::vector<double>& outer_params() const {
        return annulus.outer_profile;
    }
};

// The flat collar strip between the seam and the top curve, discretized on an
// m x m grid: inner trace = seam samples of the curve, outer trace = the
// constant-speed top curve, area exactly l^2 up to rounding.
AnnulusMap collar_homotopy(const CollarSpace& space, int m);

// Strip variant whose inner boundary follows the given parameter profile and
// morphs to the uniform profile at the top; still tiles the strip exactly.
AnnulusMap collar_homotopy(const CollarSpace& space,
                           std::span<const double> inner_profile, int rings);

// Reparametrization homotopy along the curve between two weakly monotone
// winding-1 profiles (both lifted). Every triangle is cut to live inside a
// single curve segment, so all image triangles are rank deficient and the
// area vanishes to rounding.
AnnulusMap zero_area_homotopy(const ClosedCurve& curve,
                              std::span<const double> from_profile,
                              std::span<const double> to_profile);

// Graft h onto u. Requires tr(u) == inner trace of h: same boundary params
// within 1e-9 * l at the primary columns; throws "trace mismatch" otherwise.
GluedDisc glue_homotopy(const DiscMap& u, const AnnulusMap& h);

// OBJ export of the glued triangle soup (ambient-valued annuli, n <= 3).
void write_obj(const GluedDisc& g, const std::string& path);
nlohmann::ordered_json mesh_json(const GluedDisc& g);

} // namespace plateau
