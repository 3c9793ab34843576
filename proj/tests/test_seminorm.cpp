#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "plateau/seminorm.hpp"

using namespace plateau;
namespace nums = std::numbers;

namespace {

SeminormG rotated_diag(double l1, double l2, double angle) {
    const Eigen::Matrix2d r = oracle::rotation2(angle);
    Eigen::Matrix2d d = Eigen::Matrix2d::Zero();
    d(0, 0) = l1;
    d(1, 1) = l2;
    const Eigen::Matrix2d g = r.transpose() * d * r;
    return SeminormG{g(0, 0), g(0, 1), g(1, 1)};
}

SeminormG random_psd(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> eig(1e-3, 1e3);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * nums::pi);
    return rotated_diag(eig(rng), eig(rng), ang(rng));
}

} // namespace

TEST_CASE("triangle_gram on reference frames") {
    TriangleFrame ident;
    ident.ref[0] = {0, 0};
    ident.ref[1] = {1, 0};
    ident.ref[2] = {0, 1};
    ident.image.resize(3, 2);
    ident.image << 0, 0, 1, 0, 0, 1;
    auto g = triangle_gram(ident);
    CHECK(g.g11 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(g.g12 == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(g.g22 == doctest::Approx(1.0).epsilon(1e-14));

    TriangleFrame scaled = ident;
    scaled.image *= 3.0;
    g = triangle_gram(scaled);
    CHECK(g.g11 == doctest::Approx(9.0).epsilon(1e-14));
    CHECK(g.g22 == doctest::Approx(9.0).epsilon(1e-14));

    TriangleFrame spatial;
    spatial.ref[0] = {0, 0};
    spatial.ref[1] = {1, 0};
    spatial.ref[2] = {0, 1};
    spatial.image.resize(3, 3);
    spatial.image << 0, 0, 0, 1, 0, 0, 0, 2, 2;
    g = triangle_gram(spatial);
    CHECK(g.g11 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(g.g12 == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(g.g22 == doctest::Approx(8.0).epsilon(1e-14));

    TriangleFrame degenerate = ident;
    degenerate.ref[2] = {2, 0}; // collinear reference
    CHECK_THROWS_AS(triangle_gram(degenerate), InvalidInput);
}

TEST_CASE("busemann_jacobian basics") {
    CHECK(busemann_jacobian({1, 0, 1}) == 1.0);
    CHECK(busemann_jacobian({1, 0, 0}) == 0.0);
    CHECK(busemann_jacobian({4, 0, 9}) == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(busemann_jacobian({0, 0, 0}) == 0.0);
}

TEST_CASE("busemann_jacobian against the Monte-Carlo unit-ball oracle") {
    const auto mc = oracle::mc_unit_ball_area(4, 0, 9, 400000, 17);
    CHECK(std::abs(mc.area - nums::pi / 6.0) <= mc.ci99);
    CHECK(busemann_jacobian({4, 0, 9}) ==
          doctest::Approx(nums::pi / mc.area).epsilon(3.0 * mc.ci99 / mc.area));

    std::mt19937_64 rng(2024);
    for (int k = 0; k < 25; ++k) {
        const SeminormG g = random_psd(rng);
        const auto est = oracle::mc_unit_ball_area(g.g11, g.g12, g.g22, 200000,
                                                   1000 + static_cast<std::uint64_t>(k));
        const double ball = nums::pi / busemann_jacobian(g);
        CHECK(std::abs(ball - est.area) <= est.ci99);
    }
}

TEST_CASE("reshetnyak_density basics and rotation") {
    CHECK(reshetnyak_density({1, 0, 1}) == 1.0);
    CHECK(reshetnyak_density({4, 0, 9}) == 9.0);
    const SeminormG g = rotated_diag(1.0, 16.0, nums::pi / 6.0);
    CHECK(reshetnyak_density(g) == doctest::Approx(16.0).epsilon(1e-9));

    Eigen::Matrix2d gm;
    gm << g.g11, g.g12, g.g12, g.g22;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(gm);
    CHECK(reshetnyak_density(g) ==
          doctest::Approx(es.eigenvalues().maxCoeff()).epsilon(1e-12));
}

TEST_CASE("quasi_conformality basics") {
    CHECK(quasi_conformality({1, 0, 1}) == 1.0);
    CHECK(quasi_conformality({1, 0, 4}) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(quasi_conformality({0, 0, 0}) == 1.0);
    CHECK(is_unbounded(quasi_conformality({1, 0, 0})));
}

TEST_CASE("pointwise energy-area sandwich holds exactly") {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 10000; ++k) {
        const SeminormG g = random_psd(rng);
        const double j = busemann_jacobian(g);
        const double lmax = reshetnyak_density(g);
        const double q = quasi_conformality(g);
        REQUIRE_FALSE(is_unbounded(q));
        CHECK(j <= lmax);
        CHECK(lmax <= q * q * j);
    }
}

TEST_CASE("scaling and rotation invariance") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * nums::pi);
    std::uniform_real_distribution<double> scale(0.1, 10.0);
    for (int k = 0; k < 500; ++k) {
        const SeminormG g = random_psd(rng);
        const double c2 = scale(rng);
        const SeminormG gs{c2 * g.g11, c2 * g.g12, c2 * g.g22};
        CHECK(busemann_jacobian(gs) ==
              doctest::Approx(c2 * busemann_jacobian(g)).epsilon(1e-12));
        CHECK(reshetnyak_density(gs) ==
              doctest::Approx(c2 * reshetnyak_density(g)).epsilon(1e-12));

        const Eigen::Matrix2d r = oracle::rotation2(ang(rng));
        Eigen::Matrix2d gm;
        gm << g.g11, g.g12, g.g12, g.g22;
        const Eigen::Matrix2d gr = r.transpose() * gm * r;
        const SeminormG grot{gr(0, 0), 0.5 * (gr(0, 1) + gr(1, 0)), gr(1, 1)};
        CHECK(busemann_jacobian(grot) ==
              doctest::Approx(busemann_jacobian(g)).epsilon(1e-9));
        CHECK(reshetnyak_density(grot) ==
              doctest::Approx(reshetnyak_density(g)).epsilon(1e-9));
        CHECK(quasi_conformality(grot) ==
              doctest::Approx(quasi_conformality(g)).epsilon(1e-9));
    }
}

TEST_CASE("seminorm validity") {
    CHECK(SeminormG{1, 0, 1}.valid());
    CHECK(SeminormG{1, 0, 0}.valid());
    CHECK(SeminormG{0, 0, 0}.valid());
    CHECK_FALSE(SeminormG{-1, 0, 1}.valid());
    CHECK_FALSE(SeminormG{1, 2, 1}.valid()); // det = -3
    CHECK(SeminormG{1, 1.0 + 1e-14, 1}.valid()); // PSD within tolerance
}

TEST_CASE("holder exponents evaluate exactly") {
    const double c = euclidean_isoperimetric_constant();
    const auto et = holder_exponents(c, true);
    CHECK(et.alpha == 1.0 / 3.0);
    CHECK(et.beta == 1.0 / 27.0);
    const auto general = holder_exponents(c, false);
    CHECK(general.alpha == 1.0 / 6.0);
    CHECK(general.beta == doctest::Approx(1.0 / 54.0).epsilon(1e-15));
}
