#include "plateau/corpus.hpp"

#include <cmath>
#include <numbers>

namespace plateau::corpus {

namespace {
constexpr double kPi = std::numbers::pi;
}

ClosedCurve unit_circle(int m, double radius) {
    Eigen::MatrixXd pts(m, 2);
    for (int i = 0; i < m; ++i) {
        const double t = 2.0 * kPi * i / m;
        pts.row(i) << radius * std::cos(t), radius * std::sin(t);
    }
    return ClosedCurve::from_points(std::move(pts), "circle");
}

namespace {

// Resample to constant speed, then re-parametrize by chord length so the
// constant-speed property survives JSON round trips (the flag is re-inferred
// from chord proportionality on load).
ClosedCurve resampled(ClosedCurve raw, int m, const std::string& name) {
    const auto cs = constant_speed_reparam(raw, m);
    return ClosedCurve::from_points(cs.points(), name);
}

} // namespace

ClosedCurve ellipse(int m, double a, double b) {
    Eigen::MatrixXd pts(m, 2);
    for (int i = 0; i < m; ++i) {
        const double t = 2.0 * kPi * i / m;
        pts.row(i) << a * std::cos(t), b * std::sin(t);
    }
    return resampled(ClosedCurve::from_points(std::move(pts), "ellipse"), m,
                     "ellipse");
}

ClosedCurve double_circle(int m) {
    Eigen::MatrixXd pts(m, 2);
    for (int i = 0; i < m; ++i) {
        const double t = 4.0 * kPi * i / m; // two turns
        pts.row(i) << std::cos(t), std::sin(t);
    }
    return ClosedCurve::from_points(std::move(pts), "double-circle");
}

ClosedCurve figure_eight(int m) {
    if (m % 2 != 0)
        throw InvalidInput("figure_eight needs an even point count");
    const int half = m / 2;
    Eigen::MatrixXd pts(m, 2);
    for (int i = 0; i < half; ++i) {
        const double t = 2.0 * kPi * i / half;
        pts.row(i) << -1.0 + std::cos(t), std::sin(t);
    }
    for (int i = 0; i < half; ++i) {
        const double t = 2.0 * kPi * i / half;
        pts.row(half + i) << 1.0 - std::cos(t), std::sin(t);
    }
    return ClosedCurve::from_points(std::move(pts), "figure-eight");
}

ClosedCurve trefoil_projection(int m) {
    Eigen::MatrixXd pts(m, 2);
    for (int i = 0; i < m; ++i) {
        const double t = 2.0 * kPi * i / m;
        pts.row(i) << std::sin(t) + 2.0 * std::sin(2.0 * t),
                      std::cos(t) - 2.0 * std::cos(2.0 * t);
    }
    return resampled(ClosedCurve::from_points(std::move(pts), "trefoil-projection"),
                     m, "trefoil-projection");
}

ClosedCurve space_curve(int m) {
    Eigen::MatrixXd pts(m, 3);
    for (int i = 0; i < m; ++i) {
        const double t = 2.0 * kPi * i / m;
        pts.row(i) << std::sin(t) + 2.0 * std::sin(2.0 * t),
                      std::cos(t) - 2.0 * std::cos(2.0 * t),
                      -std::sin(3.0 * t);
    }
    return resampled(ClosedCurve::from_points(std::move(pts), "space-curve"), m,
                     "space-curve");
}

std::vector<std::pair<std::string, ClosedCurve>> all() {
    std::vector<std::pair<std::string, ClosedCurve>> out;
    out.emplace_back("circle", unit_circle());
    out.emplace_back("ellipse", ellipse());
    out.emplace_back("double-circle", double_circle());
    out.emplace_back("figure-eight", figure_eight());
    out.emplace_back("trefoil-projection", trefoil_projection());
    out.emplace_back("space-curve", space_curve());
    return out;
}

} // namespace plateau::corpus
