#include "plateau/seminorm.hpp"

#include <cmath>
#include <numbers>

namespace plateau {

double SeminormG::lambda_max() const {
    const double h = 0.5 * (g11 + g22);
    const double r = std::hypot(0.5 * (g11 - g22), g12);
    return h + r;
}

double SeminormG::lambda_min() const {
    const double h = 0.5 * (g11 + g22);
    const double r = std::hypot(0.5 * (g11 - g22), g12);
    return std::max(h - r, 0.0);
}

bool SeminormG::valid() const {
    if (!std::isfinite(g11) || !std::isfinite(g12) || !std::isfinite(g22))
        return false;
    if (g11 < 0.0 || g22 < 0.0)
        return false;
    const double scale = 1.0 + g11 + g22;
    return det() >= -1e-12 * scale * scale;
}

double TriangleFrame::ref_area() const {
    const Eigen::Vector2d e1 = ref[1] - ref[0];
    const Eigen::Vector2d e2 = ref[2] - ref[0];
    return 0.5 * std::abs(e1.x() * e2.y() - e1.y() * e2.x());
}

SeminormG triangle_gram(const TriangleFrame& t) {
    const Eigen::Vector2d e1 = t.ref[1] - t.ref[0];
    const Eigen::Vector2d e2 = t.ref[2] - t.ref[0];
    const double det = e1.x() * e2.y() - e1.y() * e2.x();
    const double scale = std::max({e1.squaredNorm(), e2.squaredNorm(),
                                   (e2 - e1).squaredNorm()});
    if (std::abs(det) < 2e-14 * scale)
        throw InvalidInput("triangle_gram: degenerate reference triangle");

    // A = E_img * E_ref^{-1}; G = A^T A = E_ref^{-T} (E_img^T E_img) E_ref^{-1}.
    const Eigen::VectorXd f1 = (t.image.row(1) - t.image.row(0)).transpose();
    const Eigen::VectorXd f2 = (t.image.row(2) - t.image.row(0)).transpose();
    Eigen::Matrix2d ref_inv;
    ref_inv << e2.y() / det, -e2.x() / det,
              -e1.y() / det,  e1.x() / det;
    Eigen::Matrix2d inner;
    inner << f1.dot(f1), f1.dot(f2),
             f2.dot(f1), f2.dot(f2);
    const Eigen::Matrix2d g = ref_inv.transpose() * inner * ref_inv;
    return SeminormG{g(0, 0), 0.5 * (g(0, 1) + g(1, 0)), g(1, 1)};
}

double busemann_jacobian(const SeminormG& s) {
    const double h = 0.5 * (s.g11 + s.g22);
    const double r = std::hypot(0.5 * (s.g11 - s.g22), s.g12);
    const double lmin = h - r;
    if (lmin <= 0.0)
        return 0.0; // degenerate seminorm: unit ball has infinite area
    return std::sqrt(lmin * (h + r));
}

double reshetnyak_density(const SeminormG& s) {
    return s.lambda_max();
}

double quasi_conformality(const SeminormG& s) {
    const double lmax = s.lambda_max();
    if (lmax == 0.0)
        return 1.0; // zero seminorm: vacuously conformal
    const double lmin = s.lambda_min();
    if (lmin <= 1e-14 * lmax)
        return kUnbounded;
    return std::sqrt(lmax / lmin);
}

double dirichlet_density(const SeminormG& s) {
    return 0.5 * (s.g11 + s.g22);
}

HolderExponents holder_exponents(double isoperimetric_constant,
                                 bool euclidean_tangents) {
    const double c = isoperimetric_constant;
    const double pi = std::numbers::pi;
    HolderExponents h;
    h.alpha = euclidean_tangents ? 1.0 / (4.0 * pi * c + 2.0)
                                 : 1.0 / (8.0 * pi * c + 4.0);
    h.beta = h.alpha / 9.0;
    return h;
}

double euclidean_isoperimetric_constant() {
    return 1.0 / (4.0 * std::numbers::pi);
}

} // namespace plateau
