#pragma once

// Report document shared by all subcommands: a config echo, a flat list of
// property rows, optional extras (moments, sharpness witnesses), and a
// verdict. Rendered as a fixed-width table for humans and as deterministic
// JSON for machines. Rows marked advisory are informational and do not
// affect the verdict or the exit status.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "twoip/twoip.hpp"
#include "jsonout.hpp"

namespace twoip_cli {

enum class FieldMode { real_only, complex_only, both };

inline const char* to_string(FieldMode mode) {
    switch (mode) {
        case FieldMode::real_only: return "real";
        case FieldMode::complex_only: return "complex";
        case FieldMode::both: return "both";
    }
    return "?";
}

inline std::vector<twoip::FieldTag> expand(FieldMode mode) {
    switch (mode) {
        case FieldMode::real_only: return {twoip::FieldTag::Real};
        case FieldMode::complex_only: return {twoip::FieldTag::Complex};
        default: return {twoip::FieldTag::Real, twoip::FieldTag::Complex};
    }
}

struct RunConfig {
    std::string command;
    std::uint64_t seed = 0;
    std::size_t trials = 10000;
    std::vector<std::size_t> dims = {2, 3, 4, 5, 6, 7, 8};
    FieldMode field = FieldMode::both;
    twoip::Tolerance tol{};
    std::string input_path;
    std::string output_path;
    // Subcommand-specific knobs.
    double constant = 0.25;       // sharpness candidate
    std::string which;            // sharpness target / integral bound filter
    double m = 0.0, M = 0.0;      // integral localization interval
    std::size_t max_pairwise = 4096;
    double inject_defect = 0.0;   // suite self-test: additive evaluator defect
};

struct PropertyRow {
    std::string id;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    double residual = 0.0;
    bool hypothesis_ok = true;
    std::size_t count = 1;
    bool pass = true;
    bool advisory = false;
    bool tight = false;
    std::vector<double> chain;
};

struct WitnessEntry {
    std::string field;
    bool found = false;
    std::optional<twoip::SharpnessWitness> witness;
};

struct ReportDoc {
    RunConfig config;
    std::vector<PropertyRow> properties;
    std::vector<WitnessEntry> witnesses;             // sharpness runs
    std::optional<twoip::DeterminantReport> moments; // integral runs
    bool pass = true;

    void add(PropertyRow row) {
        if (!row.advisory) pass = pass && row.pass;
        properties.push_back(std::move(row));
    }
};

/// Row for an evaluated bound; pass checks every chain link against the
/// tolerance band of the report scale.
inline PropertyRow row_from_bound(const twoip::BoundReport& bound,
                                  const twoip::Tolerance& tol, std::size_t count = 1,
                                  bool advisory = false) {
    PropertyRow row;
    row.id = bound.inequality_id;
    row.lhs = bound.lhs;
    row.rhs = bound.rhs;
    row.slack = bound.slack;
    row.hypothesis_ok = bound.hypothesis_ok;
    row.count = count;
    row.advisory = advisory;
    row.chain = bound.chain;
    const double band = tol.band(bound.scale());
    const bool links_ok = bound.min_link_slack() >= -band;
    row.pass = !bound.hypothesis_ok || links_ok;
    row.tight = bound.hypothesis_ok && std::abs(bound.slack) <= band;
    return row;
}

// ---------------------------------------------------------------------------
// Rendering

inline void write_config(JsonWriter& w, const RunConfig& config) {
    w.key("config");
    w.begin_object();
    w.key("command");
    w.value(std::string_view(config.command));
    w.key("seed");
    w.value(config.seed);
    w.key("trials");
    w.value(config.trials);
    w.key("dims");
    w.begin_array();
    for (std::size_t d : config.dims) w.value(d);
    w.end_array();
    w.key("field");
    w.value(std::string_view(to_string(config.field)));
    w.key("tol_abs");
    w.value(config.tol.abs);
    w.key("tol_rel");
    w.value(config.tol.rel);
    w.key("input");
    w.value(std::string_view(config.input_path));
    if (config.inject_defect != 0.0) {
        w.key("inject_defect");
        w.value(config.inject_defect);
    }
    if (config.command == "sharpness") {
        w.key("constant");
        w.value(config.constant);
        w.key("which");
        w.value(std::string_view(config.which));
    }
    if (config.command == "integral") {
        w.key("m");
        w.value(config.m);
        w.key("M");
        w.value(config.M);
        if (!config.which.empty()) {
            w.key("which");
            w.value(std::string_view(config.which));
        }
    }
    w.end_object();
}

inline void write_vector(JsonWriter& w, const twoip::Vector& v) {
    w.begin_array();
    for (const auto& e : v) {
        w.begin_array();
        w.value(e.real());
        w.value(e.imag());
        w.end_array();
    }
    w.end_array();
}

inline std::string render_json(const ReportDoc& doc) {
    JsonWriter w;
    w.begin_object();
    write_config(w, doc.config);

    w.key("properties");
    w.begin_array();
    for (const auto& row : doc.properties) {
        w.begin_object();
        w.key("id");
        w.value(std::string_view(row.id));
        w.key("lhs");
        w.value(row.lhs);
        w.key("rhs");
        w.value(row.rhs);
        w.key("slack");
        w.value(row.slack);
        w.key("hypothesis_ok");
        w.value(row.hypothesis_ok);
        w.key("residual");
        w.value(row.residual);
        w.key("count");
        w.value(row.count);
        w.key("pass");
        w.value(row.pass);
        if (!row.chain.empty()) {
            w.key("chain");
            w.begin_array();
            for (double v : row.chain) w.value(v);
            w.end_array();
        }
        if (row.tight) {
            w.key("tight");
            w.value(true);
        }
        if (row.advisory) {
            w.key("advisory");
            w.value(true);
        }
        w.end_object();
    }
    w.end_array();

    if (doc.moments) {
        const auto& m = *doc.moments;
        w.key("moments");
        w.begin_object();
        w.key("phi_ff");
        w.value(m.m_ff);
        w.key("phi_gg");
        w.value(m.m_gg);
        w.key("phi_hh");
        w.value(m.m_hh);
        w.key("phi_fg");
        w.value(m.m_fg);
        w.key("phi_fh");
        w.value(m.m_fh);
        w.key("phi_gh");
        w.value(m.m_gh);
        w.key("two_inner_double");
        w.value(m.two_inner_double);
        w.key("two_inner_det");
        w.value(m.two_inner_det);
        w.key("cross_residual");
        w.value(m.cross_residual);
        w.end_object();
    }

    if (!doc.witnesses.empty()) {
        w.key("witnesses");
        w.begin_array();
        for (const auto& entry : doc.witnesses) {
            w.begin_object();
            w.key("field");
            w.value(std::string_view(entry.field));
            w.key("found");
            w.value(entry.found);
            w.key("witness");
            if (entry.witness) {
                const auto& wit = *entry.witness;
                w.begin_object();
                w.key("x");
                write_vector(w, wit.x);
                w.key("y");
                write_vector(w, wit.y);
                w.key("z");
                write_vector(w, wit.z);
                w.key("a");
                w.begin_array();
                w.value(wit.a.real());
                w.value(wit.a.imag());
                w.end_array();
                w.key("A");
                w.begin_array();
                w.value(wit.A.real());
                w.value(wit.A.imag());
                w.end_array();
                w.key("achieved");
                w.value(wit.achieved);
                w.key("weakened");
                w.value(wit.weakened);
                w.key("violation");
                w.value(wit.violation);
                w.end_object();
            } else {
                w.null_value();
            }
            w.end_object();
        }
        w.end_array();
    }

    w.key("verdict");
    w.value(std::string_view(doc.pass ? "pass" : "fail"));
    w.end_object();
    return w.take();
}

inline std::string render_table(const ReportDoc& doc) {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "%-46s %14s %14s %14s  %-4s %12s %8s  %s\n", "id",
                  "lhs", "rhs", "slack", "hyp", "residual", "count", "status");
    out += line;
    out.append(124, '-');
    out += '\n';
    for (const auto& row : doc.properties) {
        std::string status = row.advisory ? (row.slack < 0.0 ? "violated*" : "info")
                                          : (row.pass ? "pass" : "FAIL");
        if (row.tight) status += " tight";
        std::snprintf(line, sizeof line, "%-46s %14.6g %14.6g %14.6g  %-4s %12.4g %8zu  %s\n",
                      row.id.c_str(), row.lhs, row.rhs, row.slack,
                      row.hypothesis_ok ? "yes" : "no", row.residual, row.count,
                      status.c_str());
        out += line;
    }
    for (const auto& entry : doc.witnesses) {
        std::snprintf(line, sizeof line, "witness[%s]: %s\n", entry.field.c_str(),
                      entry.found ? "found (constant is below the sharp value)"
                                  : "none (constant is admissible)");
        out += line;
    }
    out += "VERDICT: ";
    out += doc.pass ? "pass" : "fail";
    out += '\n';
    return out;
}

}  // namespace twoip_cli
