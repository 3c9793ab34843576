// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances are fixed here, not configurable.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "plateau/corpus.hpp"
#include "plateau/verification.hpp"

#ifndef PLATEAU_CLI_PATH
#define PLATEAU_CLI_PATH "plateau"
#endif

using namespace plateau;
namespace nums = std::numbers;

namespace {

constexpr double kPi = nums::pi;

struct Criterion {
    std::string label;
    std::function<bool(std::string&)> run;
};

bool within(double value, double target, double rel) {
    return std::abs(value - target) <= rel * std::abs(target);
}

std::string fmt(const char* pattern, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), pattern, args...);
    return std::string(buf);
}

SeminormG random_psd(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> eig(0.25, 9.0);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
    const double l1 = eig(rng), l2 = eig(rng), a = ang(rng);
    const double c = std::cos(a), s = std::sin(a);
    return SeminormG{l1 * c * c + l2 * s * s, (l1 - l2) * c * s,
                     l1 * s * s + l2 * c * c};
}

// --- criteria -------------------------------------------------------------

bool circle_oracle(std::string& detail) {
    SolveConfig cfg;
    cfg.depth = 5;
    const auto circle = corpus::unit_circle(360);
    const double fill = fill_estimate(circle, cfg);
    const double l = circle.param_length();
    const double iso = l * l / (4.0 * kPi);
    detail = fmt("fill %.6f vs pi %.6f; iso ratio %.6f", fill, kPi, fill / iso);
    return within(fill, kPi, 0.01) && within(fill, iso, 0.01);
}

bool singular_oracles(std::string& detail) {
    SolveConfig cfg;
    cfg.depth = 5;
    const double twice = fill_estimate(corpus::double_circle(360), cfg);
    const double eight = fill_estimate(corpus::figure_eight(360), cfg);
    detail = fmt("double-circle %.6f (2pi within 2%%), figure-eight %.6f "
                 "(2pi within 3%%)",
                 twice, eight);
    return within(twice, 2.0 * kPi, 0.02) && within(eight, 2.0 * kPi, 0.03);
}

bool collar_metric_suite(std::string& detail) {
    std::ostringstream ss;
    bool ok = true;
    for (auto curve : {corpus::unit_circle(360), corpus::figure_eight(360)}) {
        const CollarSpace space(curve, 256);
        const auto axioms = space.verify_metric_axioms(10000, 2026);
        const auto lip = space.retraction_lipschitz(10000, 2027);
        ok = ok && axioms.pass() && lip.pass();
        ss << curve.name() << ": worst triangle "
           << fmt("%.3e", axioms.worst_triangle_violation) << " (slack "
           << fmt("%.3e", axioms.slack) << "), retraction excess "
           << fmt("%.3e", lip.worst_excess) << "; ";
    }
    detail = ss.str();
    return ok;
}

bool gamma_l_chord_arc_all(std::string& detail) {
    std::ostringstream ss;
    bool ok = true;
    for (const auto& [name, curve] : corpus::all()) {
        const CollarSpace space(curve, 256);
        const double lambda = space.gamma_l_chord_arc(256, 256LL * 256LL + 1);
        ok = ok && within(lambda, 1.0, 0.01);
        ss << name << " " << fmt("%.6f", lambda) << "; ";
    }
    detail = ss.str();
    return ok;
}

bool area_ledger_all(std::string& detail) {
    SolveConfig cfg;
    cfg.depth = 4;
    std::ostringstream ss;
    bool ok = true;
    for (const auto& [name, curve] : corpus::all()) {
        const auto rep = area_relation_check(curve, cfg);
        const double residual = rep.residuals["ledger"].get<double>();
        const double tol = rep.tolerances["ledger"].get<double>();
        ok = ok && rep.pass;
        ss << name << " " << fmt("%.2e/%.2e", residual, tol) << "; ";
    }
    detail = ss.str();
    return ok;
}

bool pointwise_calculus(std::string& detail) {
    std::mt19937_64 rng(99);
    double worst_gap = 0.0;
    for (int k = 0; k < 100; ++k) {
        const SeminormG g = random_psd(rng);
        const auto mc = oracle::mc_unit_ball_area(g.g11, g.g12, g.g22, 200000,
                                                  5000 + k);
        const double ball = kPi / busemann_jacobian(g);
        const double gap = std::abs(ball - mc.area) / mc.ci99;
        worst_gap = std::max(worst_gap, gap);
        if (gap > 1.0) {
            detail = fmt("MC oracle missed at matrix %d (%.3f ci)", k, gap);
            return false;
        }
    }
    std::mt19937_64 rng2(41);
    for (int k = 0; k < 10000; ++k) {
        const SeminormG g = random_psd(rng2);
        const double j = busemann_jacobian(g);
        const double lmax = reshetnyak_density(g);
        const double q = quasi_conformality(g);
        if (!(j <= lmax && lmax <= q * q * j)) {
            detail = fmt("sandwich failed at seminorm %d", k);
            return false;
        }
    }
    detail = fmt("100 MC oracles within 99%% CI (worst %.2f), sandwich exact "
                 "on 10^4 seminorms",
                 worst_gap);
    return true;
}

bool conformality_at_minimum(std::string& detail) {
    SolveConfig cfg;
    cfg.depth = 5;
    const auto [u, rep] = solve(corpus::unit_circle(360), cfg);
    detail = fmt("median per-triangle Q %.5f", rep.q_stats.median);
    return rep.q_stats.median <= 1.05;
}

bool parametrized_variant(std::string& detail) {
    SolveConfig cfg;
    cfg.depth = 5;
    const auto circle = corpus::unit_circle(360);
    const double L = circle.param_length();
    const double base = fill_estimate(circle, cfg);
    const int B = 192;
    std::vector<double> eta(B);
    for (int k = 0; k < B; ++k) {
        const double x = static_cast<double>(k) / B;
        eta[k] = L * (x + 0.12 * std::sin(2.0 * kPi * x) / (2.0 * kPi));
    }
    const auto [g, rep] = parametrized_solve(circle, eta, cfg);
    const double diff = std::abs(rep.area - base);
    bool trace_exact = static_cast<int>(g.outer_params().size()) == B;
    for (int k = 0; trace_exact && k < B; ++k)
        trace_exact = g.outer_params()[k] == eta[k];
    detail = fmt("area difference %.3e (tol 1e-9), trace exact %d", diff,
                 trace_exact ? 1 : 0);
    return diff <= 1e-9 && trace_exact;
}

bool exponent_arithmetic(std::string& detail) {
    const auto exps = holder_exponents(euclidean_isoperimetric_constant(), true);
    if (exps.alpha != 1.0 / 3.0 || exps.beta != 1.0 / 27.0) {
        detail = "exponents drifted";
        return false;
    }
    SolveConfig coarse, fine;
    coarse.depth = 4;
    fine.depth = 5;
    std::ostringstream ss;
    bool ok = true;
    for (const auto& [name, curve] : corpus::all()) {
        const auto a = solve(curve, coarse).second;
        const auto b = solve(curve, fine).second;
        if (a.holder_interior.exponent != 1.0 / 3.0 ||
            a.holder_closure.exponent != 1.0 / 27.0) {
            detail = "report exponents drifted";
            return false;
        }
        const double hi = std::abs(b.holder_interior.value - a.holder_interior.value) /
                          a.holder_interior.value;
        const double hc = std::abs(b.holder_closure.value - a.holder_closure.value) /
                          a.holder_closure.value;
        const bool finite = std::isfinite(a.holder_interior.value) &&
                            std::isfinite(b.holder_interior.value) &&
                            std::isfinite(a.holder_closure.value) &&
                            std::isfinite(b.holder_closure.value);
        ok = ok && finite && hi <= 0.10 && hc <= 0.10;
        ss << name << " " << fmt("%.3f/%.3f", hi, hc) << "; ";
    }
    detail = "alpha=1/3 beta=1/27 exact; interior/closure drift: " + ss.str();
    return ok;
}

bool determinism(std::string& detail) {
    namespace fs = std::filesystem;
    fs::create_directories("acceptance_scratch");
    const auto circle = corpus::unit_circle(360);
    {
        std::ofstream out("acceptance_scratch/circle.json");
        out << circle.to_json().dump(2) << "\n";
    }
    auto run_verify = [&](const char* report) {
        const std::string cmd =
            std::string(PLATEAU_CLI_PATH) +
            " verify acceptance_scratch/circle.json --depth 4 --report " +
            report + " > /dev/null 2>&1";
        return std::system(cmd.c_str());
    };
    if (run_verify("acceptance_scratch/v1.json") != 0 ||
        run_verify("acceptance_scratch/v2.json") != 0) {
        detail = "verify run failed";
        return false;
    }
    auto slurp = [](const char* path) {
        std::ifstream in(path);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string a = slurp("acceptance_scratch/v1.json");
    const std::string b = slurp("acceptance_scratch/v2.json");
    detail = fmt("reports %zu bytes, identical %d", a.size(), a == b ? 1 : 0);
    return !a.empty() && a == b;
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"1 circle oracle: fill = pi and isoperimetric equality within 1%",
         circle_oracle},
        {"2 singular oracles: double circle 2pi/2%, figure-eight 2pi/3%",
         singular_oracles},
        {"3 collar metric suite (10^4 triples and retraction pairs)",
         collar_metric_suite},
        {"4 top-curve chord-arc constant 1 within 1% on the corpus",
         gamma_l_chord_arc_all},
        {"5 area ledger residual <= 1e-6 l^2 on the corpus", area_ledger_all},
        {"6 pointwise calculus: MC Jacobian oracle and exact sandwich",
         pointwise_calculus},
        {"7 conformality at the minimum: circle median Q <= 1.05",
         conformality_at_minimum},
        {"8 parametrized variant: area within 1e-9, trace exact",
         parametrized_variant},
        {"9 exponents 1/3 and 1/27 exact; quotients refinement-stable",
         exponent_arithmetic},
        {"10 determinism: byte-identical verify reports", determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", c.label.c_str(),
                    detail.c_str());
        std::fflush(stdout);
        if (!ok)
            ++failures;
    }
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
