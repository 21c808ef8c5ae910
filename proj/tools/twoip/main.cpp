// twoip - verification toolkit for 2-inner-product inequalities.
//
// Subcommands:
//   verify     axiom, identity, and conditional-bound sweeps over random
//              weighted spaces (exit 1 when any checked property fails)
//   bounds     hypothesis check and every applicable reverse bound for one
//              instance file
//   integral   determinantal bounds for sampled functions on a grid
//   sharpness  counterexample probe for weakened constants
//
// Exit codes: 0 pass, 1 verification failure, 2 configuration/parse error,
// 3 I/O error, 4 internal inconsistency.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "report.hpp"
#include "runners.hpp"

namespace {

using twoip_cli::FieldMode;
using twoip_cli::ReportDoc;
using twoip_cli::RunConfig;

int finish(const ReportDoc& doc) {
    std::fputs(twoip_cli::render_table(doc).c_str(), stdout);
    if (!doc.config.output_path.empty()) {
        std::ofstream out(doc.config.output_path, std::ios::binary);
        if (!out) {
            std::fprintf(stderr, "twoip: cannot open '%s' for writing\n",
                         doc.config.output_path.c_str());
            return 3;
        }
        out << twoip_cli::render_json(doc);
        if (!out) {
            std::fprintf(stderr, "twoip: failed writing '%s'\n",
                         doc.config.output_path.c_str());
            return 3;
        }
    }
    return doc.pass ? 0 : 1;
}

void add_common_options(CLI::App* cmd, RunConfig& config, double& tol_abs,
                        double& tol_rel) {
    cmd->add_option("--seed", config.seed, "Generator seed");
    cmd->add_option("--trials", config.trials, "Sampled tuples per sweep and field");
    cmd->add_option("--dims", config.dims, "Space dimensions to sweep (>= 2)")
        ->delimiter(',');
    std::map<std::string, FieldMode> field_names{{"real", FieldMode::real_only},
                                                 {"complex", FieldMode::complex_only},
                                                 {"both", FieldMode::both}};
    cmd->add_option("--field", config.field, "Scalar field: real|complex|both")
        ->transform(CLI::CheckedTransformer(field_names, CLI::ignore_case));
    cmd->add_option("--tol-abs", tol_abs, "Absolute tolerance");
    cmd->add_option("--tol-rel", tol_rel, "Relative tolerance");
    cmd->add_option("--output", config.output_path, "Write the JSON report here");
}

int validate(const RunConfig& config) {
    if (config.trials < 1) {
        std::fprintf(stderr, "twoip: --trials must be at least 1\n");
        return 2;
    }
    if (config.dims.empty()) {
        std::fprintf(stderr, "twoip: --dims must not be empty\n");
        return 2;
    }
    for (std::size_t d : config.dims)
        if (d < 2) {
            std::fprintf(stderr, "twoip: every dimension must be at least 2\n");
            return 2;
        }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical toolkit for 2-inner products and their reverse bounds"};
    app.require_subcommand(1);

    RunConfig config;
    double tol_abs = config.tol.abs;
    double tol_rel = config.tol.rel;

    CLI::App* verify = app.add_subcommand(
        "verify", "Run axiom, identity, and bound sweeps on random spaces");
    add_common_options(verify, config, tol_abs, tol_rel);
    verify->add_option("--inject-defect", config.inject_defect,
                       "Self-test: add a constant defect to every evaluation; "
                       "the suite must fail and name the broken axioms");

    CLI::App* bounds = app.add_subcommand(
        "bounds", "Evaluate reverse bounds for one instance file");
    add_common_options(bounds, config, tol_abs, tol_rel);
    bounds->add_option("--input", config.input_path, "Instance JSON file")->required();

    CLI::App* integral = app.add_subcommand(
        "integral", "Evaluate determinantal bounds for sampled functions");
    add_common_options(integral, config, tol_abs, tol_rel);
    integral->add_option("--input", config.input_path, "CSV: node,weight,phi,f,g,h")
        ->required();
    integral->add_option("--m", config.m, "Lower interval endpoint m > 0")->required();
    integral->add_option("--M", config.M, "Upper interval endpoint M >= m")->required();
    integral->add_option("--which", config.which,
                         "Evaluate only this bound (3.6|3.7|3.8|3.9|3.10)");
    integral->add_option("--max-pairwise", config.max_pairwise,
                         "Node cap for the O(N^2) synchronicity scan");

    CLI::App* sharpness = app.add_subcommand(
        "sharpness", "Probe whether a smaller constant admits a counterexample");
    add_common_options(sharpness, config, tol_abs, tol_rel);
    sharpness->add_option("--constant", config.constant, "Candidate constant C > 0")
        ->required();
    sharpness->add_option("--which", config.which, "Target bound: thm2.1|thm2.2")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        config.tol = twoip::Tolerance(tol_abs, tol_rel);
        if (int rc = validate(config); rc != 0) return rc;

        if (verify->parsed()) {
            config.command = "verify";
            return finish(twoip_cli::run_verify(config));
        }
        if (bounds->parsed()) {
            config.command = "bounds";
            return finish(twoip_cli::run_bounds(config));
        }
        if (integral->parsed()) {
            config.command = "integral";
            return finish(twoip_cli::run_integral(config));
        }
        config.command = "sharpness";
        return finish(twoip_cli::run_sharpness(config));
    } catch (const twoip::parse_error& e) {
        std::fprintf(stderr, "twoip: %s\n", e.what());
        return 2;
    } catch (const twoip::invalid_input& e) {
        std::fprintf(stderr, "twoip: %s\n", e.what());
        return 2;
    } catch (const twoip::invalid_dimension& e) {
        std::fprintf(stderr, "twoip: %s\n", e.what());
        return 2;
    } catch (const twoip::invalid_instance& e) {
        std::fprintf(stderr, "twoip: %s\n", e.what());
        return 2;
    } catch (const twoip::inconsistency_error& e) {
        std::fprintf(stderr, "twoip: internal inconsistency: %s\n", e.what());
        return 4;
    } catch (const twoip::error& e) {
        std::fprintf(stderr, "twoip: %s\n", e.what());
        return 3;
    }
}
