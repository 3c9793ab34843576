#pragma once
#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "plateau/curve.hpp"
#include "plateau/disc_mesh.hpp"
#include "plateau/seminorm.hpp"

namespace plateau {

// Triangulated disc map into R^n spanning a closed curve: per-vertex target
// positions plus a weakly monotone boundary parametrization of the curve.
// boundary_params are stored lifted (non-decreasing, total increase at most
// the curve's param_length; the closing wrap supplies the rest of one full
// winding). positions.row(mesh.boundary[j]) == curve.evaluate(boundary_params[j]).
struct DiscMap {
    DiscMesh mesh;
    Eigen::MatrixXd positions;          // V x n
    std::vector<double> boundary_params;
    ClosedCurve curve;

    int dimension() const { return static_cast<int>(positions.cols()); }

    SeminormG gram(int t) const;

    // Throws InvalidInput when an invariant is violated (trace condition,
    // weak monotonicity, winding).
    void validate() const;
};

enum class EnergyKind { reshetnyak, dirichlet };
enum class Region { interior, closure };

double disc_area(const DiscMap& u);
double disc_energy(const DiscMap& u, EnergyKind kind);

struct HolderStat {
    double value = 0.0;
    double exponent = 0.0;
    std::size_t pairs = 0;
};

// Largest sampled d(u(x), u(y)) / |x - y|^alpha over vertex pairs; interior
// restricts to vertices with |z| <= 0.9. All pairs when their count is at
// most max_pairs, otherwise max_pairs seeded random pairs.
HolderStat holder_quotient(const DiscMap& u, double alpha, Region region,
                           std::size_t max_pairs = 1000000,
                           std::uint64_t seed = 7);

} // namespace plateau
