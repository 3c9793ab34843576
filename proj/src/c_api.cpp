#include "plateau/plateau.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <optional>
#include <string>

#include "plateau/corpus.hpp"
#include "plateau/solver.hpp"
#include "plateau/verification.hpp"

using namespace plateau;

struct plateau_curve {
    ClosedCurve curve;
};

struct plateau_result {
    std::string report;
    bool passed = false;
    double area = std::numeric_limits<double>::quiet_NaN();
    std::optional<DiscMap> mesh;
};

namespace {

thread_local std::string g_last_error;

plateau_status fail(plateau_status code, const char* what) {
    g_last_error = what;
    return code;
}

template <typename F>
plateau_status guarded(F&& f) {
    try {
        return f();
    } catch (const ResolutionError& e) {
        return fail(PLATEAU_ERR_RESOLUTION, e.what());
    } catch (const InvalidInput& e) {
        return fail(PLATEAU_ERR_INPUT, e.what());
    } catch (const std::exception& e) {
        return fail(PLATEAU_ERR_INTERNAL, e.what());
    }
}

SolveConfig to_solve_config(const plateau_config* cfg) {
    SolveConfig out;
    if (cfg) {
        out.depth = cfg->depth;
        out.max_outer_iters = cfg->max_outer_iters;
        out.rel_tol = cfg->rel_tol;
        out.seed = cfg->seed;
    }
    return out;
}

nlohmann::ordered_json curve_meta(const ClosedCurve& c) {
    return {{"name", c.name()},
            {"dimension", c.dimension()},
            {"points", c.size()},
            {"length", curve_length(c)},
            {"param_length", c.param_length()},
            {"constant_speed", c.is_constant_speed()},
            {"self_intersection_sites",
             self_intersection_sites(c, 1e-9 * c.param_length(),
                                     1e-6 * c.param_length())
                 .size()}};
}

nlohmann::ordered_json config_meta(const plateau_config* cfg, bool resampled) {
    plateau_config d;
    plateau_config_init(&d);
    const plateau_config& c = cfg ? *cfg : d;
    return {{"depth", c.depth},
            {"max_outer_iters", c.max_outer_iters},
            {"rel_tol", c.rel_tol},
            {"seed", c.seed},
            {"seam_samples", c.seam_samples},
            {"metric_trials", c.metric_trials},
            {"resampled_to_constant_speed", resampled}};
}

// Runs expect a constant-speed curve; resample in place when needed.
ClosedCurve constant_speed_input(const ClosedCurve& c, bool* resampled) {
    if (c.is_constant_speed()) {
        *resampled = false;
        return c;
    }
    *resampled = true;
    return constant_speed_reparam(c, c.size());
}

} // namespace

extern "C" {

void plateau_config_init(plateau_config* cfg) {
    if (!cfg)
        return;
    cfg->depth = 5;
    cfg->max_outer_iters = 200;
    cfg->rel_tol = 1e-6;
    cfg->seed = 0;
    cfg->seam_samples = 256;
    cfg->metric_trials = 10000;
}

const char* plateau_last_error(void) { return g_last_error.c_str(); }

const char* plateau_version(void) { return "0.1.0"; }

plateau_status plateau_curve_load(const char* path, plateau_curve** out) {
    if (!path || !out)
        return fail(PLATEAU_ERR_INPUT, "null argument");
    return guarded([&] {
        *out = new plateau_curve{ClosedCurve::load(path)};
        return PLATEAU_OK;
    });
}

plateau_status plateau_curve_parse(const char* json_text, plateau_curve** out) {
    if (!json_text || !out)
        return fail(PLATEAU_ERR_INPUT, "null argument");
    return guarded([&] {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(json_text);
        } catch (const nlohmann::json::parse_error& e) {
            throw InvalidInput(std::string("curve JSON parse error: ") + e.what());
        }
        *out = new plateau_curve{ClosedCurve::from_json(j)};
        return PLATEAU_OK;
    });
}

plateau_status plateau_curve_corpus(const char* name, plateau_curve** out) {
    if (!name || !out)
        return fail(PLATEAU_ERR_INPUT, "null argument");
    return guarded([&]() -> plateau_status {
        const std::string n = name;
        for (auto& [key, curve] : corpus::all()) {
            if (key == n) {
                *out = new plateau_curve{std::move(curve)};
                return PLATEAU_OK;
            }
        }
        throw InvalidInput("unknown corpus curve: " + n);
    });
}

void plateau_curve_free(plateau_curve* curve) { delete curve; }

int plateau_curve_dimension(const plateau_curve* curve) {
    return curve ? curve->curve.dimension() : 0;
}

int plateau_curve_point_count(const plateau_curve* curve) {
    return curve ? curve->curve.size() : 0;
}

double plateau_curve_length(const plateau_curve* curve) {
    return curve ? curve_length(curve->curve)
                 : std::numeric_limits<double>::quiet_NaN();
}

int plateau_curve_is_constant_speed(const plateau_curve* curve) {
    return curve && curve->curve.is_constant_speed() ? 1 : 0;
}

int plateau_curve_self_intersection_sites(const plateau_curve* curve) {
    if (!curve)
        return -1;
    const double l = curve->curve.param_length();
    return static_cast<int>(
        self_intersection_sites(curve->curve, 1e-9 * l, 1e-6 * l).size());
}

plateau_status plateau_curve_resample(const plateau_curve* curve,
                                      int point_count, plateau_curve** out) {
    if (!curve || !out)
        return fail(PLATEAU_ERR_INPUT, "null argument");
    return guarded([&] {
        *out = new plateau_curve{constant_speed_reparam(curve->curve, point_count)};
        return PLATEAU_OK;
    });
}

plateau_status plateau_curve_to_json(const plateau_curve* curve, char** out_text) {
    if (!curve || !out_text)
        return fail(PLATEAU_ERR_INPUT, "null argument");
    return guarded([&] {
        const std::string text = curve->curve.to_json().dump(2) + "\n";
        *out_text = new char[text.size() + 1];
        std::memcpy(*out_text, text.c_str(), text.size() + 1);
        return PLATEAU_OK;
    });
}

void plateau_string_free(char* text) { delete[] text; }

plateau_status plateau_solve(const plateau_curve* curve,
                             const plateau_config* cfg, plateau_result** out) {
    if (!curve || !out)
        return fail(PLATEAU_ERR_INPUT, "null argument");
    return guarded([&] {
        bool resampled = false;
        const ClosedCurve input = constant_speed_input(curve->curve, &resampled);
        auto [u, rep] = solve(input, to_solve_config(cfg));

        nlohmann::ordered_json j;
        j["curve"] = curve_meta(input);
        j["config"] = config_meta(cfg, resampled);
        const nlohmann::ordered_json solved = rep.to_json();
        for (const auto& [key, value] : solved.items())
            j[key] = value;

        auto* result = new plateau_result;
        result->report = j.dump(2) + "\n";
        result->passed = rep.converged;
        result->area = rep.area;
        result->mesh = std::move(u);
        *out = result;
        return PLATEAU_OK;
    });
}

plateau_status plateau_collar_check(const plateau_curve* curve,
                                    const plateau_config* cfg,
                                    plateau_result** out) {
    if (!curve || !out)
        return fail(PLATEAU_ERR_INPUT, "null argument");
    return guarded([&] {
        plateau_config d;
        plateau_config_init(&d);
        const plateau_config& c = cfg ? *cfg : d;
        bool resampled = false;
        const ClosedCurve input = constant_speed_input(curve->curve, &resampled);
        const auto check = collar_metric_check(input, c.seam_samples,
                                               c.metric_trials, c.seed);
        nlohmann::ordered_json j;
        j["curve"] = curve_meta(input);
        j["config"] = config_meta(cfg, resampled);
        j["checks"] = nlohmann::ordered_json::array({check.to_json()});
        j["pass"] = check.pass;

        auto* result = new plateau_result;
        result->report = j.dump(2) + "\n";
        result->passed = check.pass;
        *out = result;
        return PLATEAU_OK;
    });
}

plateau_status plateau_verify(const plateau_curve* curve,
                              const plateau_config* cfg, plateau_result** out) {
    if (!curve || !out)
        return fail(PLATEAU_ERR_INPUT, "null argument");
    return guarded([&] {
        plateau_config d;
        plateau_config_init(&d);
        const plateau_config& c = cfg ? *cfg : d;
        bool resampled = false;
        const ClosedCurve input = constant_speed_input(curve->curve, &resampled);
        auto j = verification_suite(input, to_solve_config(cfg), c.seam_samples,
                                    c.metric_trials);
        j["config"]["resampled_to_constant_speed"] = resampled;

        auto* result = new plateau_result;
        result->report = j.dump(2) + "\n";
        result->passed = j["pass"].get<bool>();
        *out = result;
        return PLATEAU_OK;
    });
}

const char* plateau_result_report_json(const plateau_result* result) {
    return result ? result->report.c_str() : "";
}

int plateau_result_passed(const plateau_result* result) {
    return result && result->passed ? 1 : 0;
}

double plateau_result_area(const plateau_result* result) {
    return result ? result->area : std::numeric_limits<double>::quiet_NaN();
}

plateau_status plateau_result_write_mesh(const plateau_result* result,
                                         const char* path) {
    if (!result || !path)
        return fail(PLATEAU_ERR_INPUT, "null argument");
    if (!result->mesh)
        return fail(PLATEAU_ERR_INPUT, "result holds no mesh");
    return guarded([&] {
        if (result->mesh->dimension() <= 3) {
            write_obj(*result->mesh, path);
        } else {
            std::ofstream out(path);
            if (!out)
                throw InvalidInput(std::string("cannot open output file: ") + path);
            out << mesh_json(*result->mesh).dump(2) << '\n';
        }
        return PLATEAU_OK;
    });
}

void plateau_result_free(plateau_result* result) { delete result; }

} // extern "C"
