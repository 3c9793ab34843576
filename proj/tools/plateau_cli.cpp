// Command-line front end for the plateau shared library. Talks to the core
// exclusively through the C API.
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "plateau/plateau.h"

namespace {

namespace fs = std::filesystem;

struct CurveDeleter {
    void operator()(plateau_curve* c) const { plateau_curve_free(c); }
};
struct ResultDeleter {
    void operator()(plateau_result* r) const { plateau_result_free(r); }
};
using CurvePtr = std::unique_ptr<plateau_curve, CurveDeleter>;
using ResultPtr = std::unique_ptr<plateau_result, ResultDeleter>;

int exit_code(plateau_status status) {
    switch (status) {
    case PLATEAU_OK:
        return 0;
    case PLATEAU_ERR_NOT_CONVERGED:
        return 2;
    case PLATEAU_ERR_RESOLUTION:
        return 3;
    case PLATEAU_ERR_INPUT:
    case PLATEAU_ERR_INTERNAL:
    default:
        return 1;
    }
}

int report_failure(plateau_status status) {
    std::cerr << "error: " << plateau_last_error() << "\n";
    return exit_code(status);
}

CurvePtr load_curve(const std::string& path, plateau_status& status) {
    plateau_curve* raw = nullptr;
    status = plateau_curve_load(path.c_str(), &raw);
    return CurvePtr(raw);
}

bool write_text(const std::string& path, const char* text) {
    std::ofstream out(path);
    if (!out) {
        std::cerr << "error: cannot open " << path << "\n";
        return false;
    }
    out << text;
    return true;
}

std::string stem_of(const std::string& input) {
    return fs::path(input).stem().string();
}

struct CommonFlags {
    std::string input;
    std::string out_path;
    std::string report_path;
    plateau_config cfg{};
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags, bool with_out) {
    plateau_config_init(&flags.cfg);
    cmd->add_option("input", flags.input, "curve JSON file")->required();
    cmd->add_option("--depth", flags.cfg.depth, "refinement depth (0..10)");
    cmd->add_option("--iters", flags.cfg.max_outer_iters,
                    "outer iterations per depth");
    cmd->add_option("--tol", flags.cfg.rel_tol, "relative area tolerance");
    cmd->add_option("--seed", flags.cfg.seed, "sampling seed");
    cmd->add_option("--seam-samples", flags.cfg.seam_samples,
                    "collar seam resolution");
    if (with_out)
        cmd->add_option("--out", flags.out_path, "mesh output path");
    cmd->add_option("--report", flags.report_path, "report JSON path");
}

int run_solve(const CommonFlags& flags) {
    plateau_status status = PLATEAU_OK;
    const CurvePtr curve = load_curve(flags.input, status);
    if (!curve)
        return report_failure(status);

    plateau_result* raw = nullptr;
    status = plateau_solve(curve.get(), &flags.cfg, &raw);
    const ResultPtr result(raw);
    if (status != PLATEAU_OK)
        return report_failure(status);

    const std::string stem = stem_of(flags.input);
    std::string mesh_path = flags.out_path;
    if (mesh_path.empty())
        mesh_path = stem + (plateau_curve_dimension(curve.get()) <= 3
                                ? "_mesh.obj"
                                : "_mesh.json");
    status = plateau_result_write_mesh(result.get(), mesh_path.c_str());
    if (status != PLATEAU_OK)
        return report_failure(status);

    const std::string report_path =
        flags.report_path.empty() ? stem + "_report.json" : flags.report_path;
    if (!write_text(report_path, plateau_result_report_json(result.get())))
        return 1;

    std::printf("area %.12g  converged %d  intersections %d  mesh %s  report %s\n",
                plateau_result_area(result.get()),
                plateau_result_passed(result.get()),
                plateau_curve_self_intersection_sites(curve.get()),
                mesh_path.c_str(), report_path.c_str());
    return plateau_result_passed(result.get()) ? 0 : 2;
}

int run_check(const CommonFlags& flags, bool full_verify) {
    plateau_status status = PLATEAU_OK;
    const CurvePtr curve = load_curve(flags.input, status);
    if (!curve)
        return report_failure(status);

    plateau_result* raw = nullptr;
    status = full_verify ? plateau_verify(curve.get(), &flags.cfg, &raw)
                         : plateau_collar_check(curve.get(), &flags.cfg, &raw);
    const ResultPtr result(raw);
    if (status != PLATEAU_OK)
        return report_failure(status);

    const std::string report_path =
        flags.report_path.empty()
            ? stem_of(flags.input) + (full_verify ? "_verify.json" : "_collar.json")
            : flags.report_path;
    if (!write_text(report_path, plateau_result_report_json(result.get())))
        return 1;

    const bool pass = plateau_result_passed(result.get()) != 0;
    std::printf("%s %s  report %s\n", full_verify ? "verify" : "collar-check",
                pass ? "pass" : "FAIL", report_path.c_str());
    return pass ? 0 : 2;
}

int run_corpus(const std::string& out_dir) {
    static const char* names[] = {"circle",       "ellipse",
                                  "double-circle", "figure-eight",
                                  "trefoil-projection", "space-curve"};
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    for (const char* name : names) {
        plateau_curve* raw = nullptr;
        plateau_status status = plateau_curve_corpus(name, &raw);
        const CurvePtr curve(raw);
        if (status != PLATEAU_OK)
            return report_failure(status);
        char* text = nullptr;
        status = plateau_curve_to_json(curve.get(), &text);
        if (status != PLATEAU_OK)
            return report_failure(status);
        const std::string path = (fs::path(out_dir) / (std::string(name) + ".json")).string();
        const bool ok = write_text(path, text);
        plateau_string_free(text);
        if (!ok)
            return 1;
        std::printf("wrote %s\n", path.c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Least-area discs spanning closed curves, with collar-space "
                 "verification"};
    app.require_subcommand(1);

    CommonFlags solve_flags, collar_flags, verify_flags;
    std::string corpus_dir = ".";

    auto* solve_cmd =
        app.add_subcommand("solve", "minimize disc area over a spanning disc");
    add_common_flags(solve_cmd, solve_flags, true);

    auto* collar_cmd = app.add_subcommand(
        "collar-check", "metric-space checks for the glued collar");
    add_common_flags(collar_cmd, collar_flags, false);

    auto* verify_cmd = app.add_subcommand(
        "verify", "full verification suite (ledger, bounds, round trip)");
    add_common_flags(verify_cmd, verify_flags, false);

    auto* corpus_cmd =
        app.add_subcommand("corpus", "write the bundled curve files");
    corpus_cmd->add_option("--out", corpus_dir, "output directory");

    // exit-code contract: bad invocations are input errors (1)
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (solve_cmd->parsed())
        return run_solve(solve_flags);
    if (collar_cmd->parsed())
        return run_check(collar_flags, false);
    if (verify_cmd->parsed())
        return run_check(verify_flags, true);
    if (corpus_cmd->parsed())
        return run_corpus(corpus_dir);
    return 1;
}
