#pragma once
#include <cstdint>
#include <span>
#include <string>
#include <utility>

#include <json.hpp>

#include "plateau/annulus.hpp"
#include "plateau/solver.hpp"

namespace plateau {

struct CheckReport {
    std::string check;
    bool pass = false;
    nlohmann::ordered_json residuals = nlohmann::ordered_json::object();
    nlohmann::ordered_json tolerances = nlohmann::ordered_json::object();
    nlohmann::ordered_json config = nlohmann::ordered_json::object();

    nlohmann::ordered_json to_json() const;
};

// Solve, lift through the collar strip, and check the exact area ledger:
// Area(v) = Area(u) + l^2, the top trace is the constant-speed top curve,
// and the retraction reproduces u on the core.
CheckReport area_relation_check(const ClosedCurve& curve, const SolveConfig& cfg);

// fill <= l^2/(4 pi) * (1 + slack); the lifted disc obeys the glued-space
// bound (C+1) l^2; a half-scale solve spot-checks the improved constant
// C + 1/(2 pi) on a loop strictly shorter than l.
CheckReport isoperimetric_check(const ClosedCurve& curve, const SolveConfig& cfg);

// Metric-space suite: axiom sampling, retraction Lipschitz bound, top-curve
// chord-arc constant.
CheckReport collar_metric_check(const ClosedCurve& curve, int seam_samples,
                                int trials, std::uint64_t seed);

// Solve the unparametrized problem, then graft a zero-area reparametrization
// annulus so the trace matches the prescribed profile exactly while the area
// is unchanged. eta_params are values at uniformly spaced boundary angles
// (resampled to the solver's boundary resolution when sizes differ).
std::pair<GluedDisc, SolveReport> parametrized_solve(
    const ClosedCurve& curve, std::span<const double> eta_params,
    const SolveConfig& cfg);

// Full machine-readable suite for one curve (one solve shared across
// checks): solve report, area ledger, isoperimetric bounds, parametrized
// round trip, collar metric suite.
nlohmann::ordered_json verification_suite(const ClosedCurve& curve,
                                          const SolveConfig& cfg,
                                          int seam_samples, int metric_trials);

} // namespace plateau
