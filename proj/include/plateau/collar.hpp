#pragma once
#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "plateau/curve.hpp"

namespace plateau {

// Point of the glued space: either an ambient point of R^n or a point
// (s, t) of the collar cylinder S x [0, l], s an arc position on the circle
// of circumference l and t the height. Collar points at height 0 are
// identified with their seam image on the curve.
struct CollarPoint {
    enum class Tag { ambient, collar };
    Tag tag = Tag::ambient;
    Eigen::VectorXd x; // ambient position (tag == ambient)
    double s = 0.0;    // arc position (tag == collar)
    double t = 0.0;    // height (tag == collar)

    static CollarPoint make_ambient(Eigen::VectorXd p) {
        return CollarPoint{Tag::ambient, std::move(p), 0.0, 0.0};
    }
    static CollarPoint make_collar(double s, double t) {
        return CollarPoint{Tag::collar, {}, s, t};
    }
    bool is_ambient() const { return tag == Tag::ambient; }
};

struct MetricAxiomReport {
    int trials = 0;
    int symmetry_violations = 0;
    int triangle_violations = 0;
    double worst_triangle_violation = 0.0;
    int indiscernibility_violations = 0;
    int ambient_isometry_violations = 0;
    double slack = 0.0;
    bool pass() const {
        return symmetry_violations == 0 && triangle_violations == 0 &&
               indiscernibility_violations == 0 && ambient_isometry_violations == 0;
    }
};

struct LipschitzReport {
    int trials = 0;
    int violations = 0;
    double worst_excess = 0.0;
    double slack = 0.0;
    bool pass() const { return violations == 0; }
};

// R^n with a flat cylinder S x [0, l] glued along the curve through its
// constant-speed parametrization. Distances realize the metric quotient:
// routes may pass through the seam, with the seam positions minimized over
// the circle. Immutable and safe for concurrent queries.
class CollarSpace {
public:
    explicit CollarSpace(ClosedCurve base, int seam_samples = 256);

    const ClosedCurve& base_curve() const { return curve_; }
    double circumference() const { return l_; }
    int seam_samples() const { return seam_samples_; }

    // Seam canonicalization: collar points with t <= 1e-12 * l become the
    // ambient point on the curve; s is reduced mod l.
    CollarPoint canonical(const CollarPoint& p) const;

    // Quotient distance. Exactly symmetric; ambient pairs are Euclidean.
    double distance(const CollarPoint& a, const CollarPoint& b) const;

    // 1-Lipschitz retraction onto R^n: identity on ambient points, seam image
    // on collar points.
    Eigen::VectorXd retraction(const CollarPoint& p) const;

    // m samples of the top curve S x {l}, constant speed by construction.
    std::vector<CollarPoint> gamma_l(int m) const;

    // Chord-arc constant of the sampled top curve measured with the quotient
    // distance (all pairs when m^2 <= pair_budget, else seeded random pairs).
    double gamma_l_chord_arc(int m, long long pair_budget,
                             std::uint64_t seed = 0) const;

    MetricAxiomReport verify_metric_axioms(int trials, std::uint64_t seed) const;
    LipschitzReport retraction_lipschitz(int trials, std::uint64_t seed) const;

    // Seeded random point of the space (mixed tags); used by the axiom and
    // Lipschitz samplers and by tests.
    CollarPoint sample_point(std::mt19937_64& rng) const;

private:
    double gamma_min_route(const Eigen::VectorXd& x, double s, double t) const;
    double through_x_route(double s1, double t1, double s2, double t2,
                           double cap) const;
    double seam_objective(const Eigen::VectorXd& x, double p, double s,
                          double t) const;

    ClosedCurve curve_;
    double l_ = 0.0;
    int seam_samples_ = 0;

    Eigen::MatrixXd grid_points_;      // seam grid gamma values
    std::vector<double> grid_params_;
    std::vector<double> vertex_arcs_;  // lifted vertex params, size m+1
    Eigen::MatrixXd seg_dist_;         // segment-segment distances (m <= table cap)
    std::vector<double> seg_dist_rowmin_;
    std::vector<std::pair<double, double>> crossing_params_;
    Eigen::VectorXd bbox_lo_, bbox_hi_;
};

// Circular distance on a circle of circumference l.
double circle_distance(double a, double b, double l);

} // namespace plateau
