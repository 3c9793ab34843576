#pragma once
#include <Eigen/Dense>

#include "plateau/errors.hpp"

namespace plateau {

// Symmetric positive-semidefinite 2x2 Gram matrix G; sigma(v) = sqrt(v^T G v).
// The discrete stand-in for a metric differential: for a piecewise-affine map
// with per-triangle linear part A, G = A^T A.
struct SeminormG {
    double g11 = 0.0;
    double g12 = 0.0;
    double g22 = 0.0;

    double det() const { return g11 * g22 - g12 * g12; }
    double trace() const { return g11 + g22; }

    // Eigenvalues via the stable closed form; lambda_min clamped at 0.
    double lambda_max() const;
    double lambda_min() const;

    // PSD within tolerance: nonnegative diagonal and
    // det >= -1e-12 * (1 + g11 + g22)^2.
    bool valid() const;
};

// Reference triangle in R^2 with its image vertices in R^n.
struct TriangleFrame {
    Eigen::Vector2d ref[3];
    Eigen::MatrixXd image; // 3 x n, one row per vertex

    double ref_area() const; // unsigned
};

// Gram matrix of the affine map sending the reference edges to the image
// edges. Throws on a degenerate reference triangle.
SeminormG triangle_gram(const TriangleFrame& t);

// pi / area of the unit ball {sigma <= 1}; equals sqrt(det G), and 0 for
// degenerate seminorms (infinite unit-ball area).
double busemann_jacobian(const SeminormG& s);

// Pointwise Reshetnyak 2-energy density: the largest eigenvalue of G.
double reshetnyak_density(const SeminormG& s);

// sqrt(lambda_max / lambda_min); kUnbounded for rank-deficient seminorms,
// and 1 for the zero seminorm.
double quasi_conformality(const SeminormG& s);

// Dirichlet energy density normalized so conformal maps have density equal to
// the Busemann Jacobian: (g11 + g22) / 2.
double dirichlet_density(const SeminormG& s);

struct HolderExponents {
    double alpha = 0.0; // interior exponent
    double beta = 0.0;  // global exponent, alpha / 9
};

// Interior/global Hoelder exponents of an area minimizer in a space with a
// C-quadratic isoperimetric inequality: alpha = 1/(4*pi*C + 2) when metric
// differentials are Euclidean (inner-product induced) and 1/(8*pi*C + 4)
// otherwise; beta = alpha / 9. For C = 1/(4*pi) in the Euclidean case this
// evaluates to exactly 1/3 and 1/27.
HolderExponents holder_exponents(double isoperimetric_constant,
                                 bool euclidean_tangents);

// The Euclidean isoperimetric constant 1/(4*pi).
double euclidean_isoperimetric_constant();

} // namespace plateau
