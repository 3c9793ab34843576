#pragma once
#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "plateau/errors.hpp"

namespace plateau {

// A closed polyline in R^n with a cyclic parametrization. Point i connects to
// point (i+1) mod m. params[i] is the parameter value of point i on a circle
// of circumference param_length(). Immutable after construction.
class ClosedCurve {
public:
    // params must be strictly increasing inside [0, param_length).
    ClosedCurve(Eigen::MatrixXd points, std::vector<double> params,
                double param_length, std::string name = {});

    // Chord-length parameter accumulation.
    static ClosedCurve from_points(Eigen::MatrixXd points, std::string name = {});

    static ClosedCurve from_json(const nlohmann::json& j);
    static ClosedCurve load(const std::string& path);
    nlohmann::ordered_json to_json() const;

    int dimension() const { return static_cast<int>(points_.cols()); }
    int size() const { return static_cast<int>(points_.rows()); }
    const Eigen::MatrixXd& points() const { return points_; }
    Eigen::VectorXd point(int i) const { return points_.row(i).transpose(); }
    const std::vector<double>& params() const { return params_; }
    double param_length() const { return param_length_; }
    bool is_constant_speed() const { return constant_speed_; }
    const std::string& name() const { return name_; }

    // Polyline chord length of segment i (i -> i+1 mod m).
    double segment_length(int i) const;

    // Evaluate the piecewise-linear map at parameter t (taken mod param_length).
    Eigen::VectorXd evaluate(double t) const;

    // Parameter value of vertex i, lifted so vertex m reads param_length.
    double vertex_param(int i) const;

private:
    friend ClosedCurve constant_speed_reparam(const ClosedCurve&, int);

    Eigen::MatrixXd points_;
    std::vector<double> params_;
    double param_length_ = 0.0;
    bool constant_speed_ = false;
    std::string name_;
    std::vector<double> seg_lengths_; // cached chord lengths
    double total_length_ = 0.0;
};

// Sum of Euclidean segment lengths.
double curve_length(const ClosedCurve& c);

// Resample at m_out equally spaced arc-length positions. The output starts at
// the input's parameter origin, has uniform params and is constant-speed by
// construction. Arc length is measured through the params when the input is
// already constant-speed (so the operation is exactly idempotent) and through
// chord accumulation otherwise.
ClosedCurve constant_speed_reparam(const ClosedCurve& c, int m_out);

// Largest sampled ratio of parameter-circle arc distance to chord distance
// over vertex pairs; all pairs when m^2 <= pair_budget, otherwise pair_budget
// seeded random pairs. Returns kUnbounded when a pair has chord distance
// below 1e-12*l at arc separation of at least 1e-3*l.
double chord_arc_constant(const ClosedCurve& c, long long pair_budget,
                          std::uint64_t seed = 0);

struct SegmentPairHit {
    int seg_a = 0;
    int seg_b = 0;               // seg_a < seg_b
    Eigen::VectorXd witness;     // midpoint of the closest approach
    double distance = 0.0;
};

// All non-adjacent segment pairs whose minimal distance is <= tol.
std::vector<SegmentPairHit> self_intersections(const ClosedCurve& c, double tol);

// Distinct intersection sites: hits of self_intersections clustered by
// witness proximity (cluster radius site_tol).
std::vector<Eigen::VectorXd> self_intersection_sites(const ClosedCurve& c,
                                                     double tol, double site_tol);

// Minimal distance between two segments [a0,a1] and [b0,b1] in R^n, plus the
// midpoint of the realizing pair.
double segment_segment_distance(const Eigen::VectorXd& a0, const Eigen::VectorXd& a1,
                                const Eigen::VectorXd& b0, const Eigen::VectorXd& b1,
                                Eigen::VectorXd* witness = nullptr);

// Lift cyclically weakly monotone parameter values (mod length) to a
// non-decreasing sequence starting at values[0] with total increase <= length.
// Throws InvalidInput when no winding-1 monotone lift exists.
std::vector<double> lift_monotone_profile(std::span<const double> values, double length);

} // namespace plateau
