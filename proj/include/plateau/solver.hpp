#pragma once
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "plateau/disc_map.hpp"

namespace plateau {

struct SolveConfig {
    int depth = 5;              // final refinement depth (0..10)
    int max_outer_iters = 200;  // per depth
    double rel_tol = 1e-6;      // relative area change for convergence
    std::uint64_t seed = 0;     // sampling seed (Hoelder quotients)
    double slide_step = 0.5;    // boundary step budget, fraction of mean gap

    void validate() const;
};

struct QStats {
    double min = 0.0;
    double q25 = 0.0;
    double median = 0.0;
    double q75 = 0.0;
    double max = 0.0;
    int unbounded = 0; // rank-deficient triangles
};

struct SolveReport {
    double area = 0.0;
    double energy_reshetnyak = 0.0;
    double energy_dirichlet = 0.0;
    QStats q_stats;
    HolderStat holder_interior; // at the interior exponent (1/3 in R^n)
    HolderStat holder_closure;  // at the global exponent (1/27 in R^n)
    int iterations = 0;
    bool converged = false;
    std::vector<double> area_trace;

    nlohmann::ordered_json to_json() const;
};

// Interior Dirichlet solve on the reference mesh: cotangent-weight stiffness,
// factored once and reused across right-hand sides and iterations.
class HarmonicSolver {
public:
    explicit HarmonicSolver(const DiscMesh& mesh);
    // Replace interior positions by the harmonic extension of the boundary.
    void extend(DiscMap& u) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

// Uniform boundary parameters, boundary on the curve, harmonic interior.
DiscMap initialize(const DiscMesh& mesh, const ClosedCurve& curve);

// Interior replaced by the Dirichlet minimizer; boundary fixed.
DiscMap harmonic_step(const DiscMap& u);

// Coordinate-wise descent on the boundary parameters (central finite
// differences along the curve), projected onto the weakly monotone cone.
// Accepts the move only if the Dirichlet energy decreases.
DiscMap boundary_slide_step(const DiscMap& u, double step_budget);

// Alternate harmonic and slide steps across refinement depths.
std::pair<DiscMap, SolveReport> solve(const ClosedCurve& curve,
                                      const SolveConfig& cfg);

double fill_estimate(const ClosedCurve& curve, const SolveConfig& cfg);

// Wavefront OBJ (n <= 3; 2D maps get z = 0).
void write_obj(const DiscMap& u, const std::string& path);
// {"positions": ..., "triangles": ..., "boundary_params": ...}
nlohmann::ordered_json mesh_json(const DiscMap& u);

QStats q_statistics(const DiscMap& u);

} // namespace plateau
