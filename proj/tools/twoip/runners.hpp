#pragma once

// Subcommand drivers. Each builds a ReportDoc from library calls; rendering
// and exit-code policy live in main.cpp.
//
// Determinism: every trial draws from its own generator derived as
// seed XOR trial-index (offset per sweep block), so serial execution and any
// future partitioning across workers produce identical reports.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "twoip/twoip.hpp"
#include "load.hpp"
#include "report.hpp"

namespace twoip_cli {

namespace sweeps {

using namespace twoip;

// Sub-seed blocks keep per-trial streams of different sweeps disjoint.
inline constexpr std::uint64_t kBlock = std::uint64_t(1) << 32;

/// Accumulates an identity-residual sweep: worst raw residual and the band
/// it was measured against.
struct ResidualStat {
    std::string id;
    std::size_t count = 0;
    double max_residual = 0.0;
    double band_at_worst = 0.0;
    bool ok = true;

    void absorb(double residual, double scale, const Tolerance& tol) {
        count += 1;
        const double band = tol.band(scale);
        if (residual > band) ok = false;
        if (residual >= max_residual) {
            max_residual = residual;
            band_at_worst = band;
        }
    }

    PropertyRow to_row() const {
        PropertyRow row;
        row.id = id;
        row.lhs = max_residual;
        row.rhs = band_at_worst;
        row.slack = band_at_worst - max_residual;
        row.residual = max_residual;
        row.count = count;
        row.pass = ok;
        return row;
    }
};

/// Accumulates a conditional-bound sweep over accepted instances: worst
/// slack, worst chain link, and the acceptance count.
struct BoundStat {
    std::string id;
    std::size_t accepted = 0;
    double min_slack = std::numeric_limits<double>::infinity();
    double worst_lhs = 0.0;
    double worst_rhs = 0.0;
    bool ok = true;

    void absorb(const BoundReport& bound, const Tolerance& tol) {
        if (!bound.hypothesis_ok) return;
        accepted += 1;
        const double band = tol.band(bound.scale());
        if (!(bound.min_link_slack() >= -band)) ok = false;
        if (bound.slack < min_slack) {
            min_slack = bound.slack;
            worst_lhs = bound.lhs;
            worst_rhs = bound.rhs;
        }
    }

    PropertyRow to_row() const {
        PropertyRow row;
        row.id = id;
        row.lhs = worst_lhs;
        row.rhs = worst_rhs;
        row.slack = accepted > 0 ? min_slack : 0.0;
        row.count = accepted;
        row.pass = ok;
        return row;
    }
};

inline std::string tagged(const std::string& base, FieldTag field) {
    return base + "[" + to_string(field) + "]";
}

/// Self-test wrapper: evaluates through the induced form, then adds a
/// constant defect. With a nonzero defect the suite must fail and name the
/// broken properties.
struct DefectEvaluator {
    TwoInnerEvaluator base;
    double defect;

    Scalar two_inner(const Vector& x, const Vector& y, const Vector& z) const {
        return base.two_inner(x, y, z) + Scalar(defect, 0.0);
    }
    std::size_t dim() const { return base.dim(); }
    FieldTag field() const { return base.field(); }
};

/// Axiom suites over every requested dimension, merged per check.
inline void run_axiom_sweep(ReportDoc& doc, FieldTag field, std::uint64_t block_base) {
    const RunConfig& config = doc.config;
    const std::size_t per_dim =
        (config.trials + config.dims.size() - 1) / config.dims.size();

    AxiomSuiteReport merged;
    std::uint64_t block = block_base;
    for (std::size_t dim : config.dims) {
        SeededGenerator gen = SeededGenerator::for_trial(config.seed, block);
        block += kBlock;
        TwoInnerEvaluator ev(sample_space(gen, dim, field));
        if (config.inject_defect != 0.0) {
            merge_into(merged, axiom_suite(DefectEvaluator{ev, config.inject_defect}, gen,
                                           per_dim, config.tol));
        } else {
            merge_into(merged, axiom_suite(ev, gen, per_dim, config.tol));
        }
    }

    for (const auto& check : merged.checks) {
        PropertyRow row;
        row.id = tagged(check.id, field);
        row.lhs = check.residual_at_worst;
        row.rhs = check.band_at_worst;
        row.slack = check.band_at_worst - check.residual_at_worst;
        row.residual = check.max_residual;
        row.count = check.trials;
        row.pass = check.pass;
        doc.add(std::move(row));
    }
}

/// Unconditional identities: hypothesis-form equivalence, the gap
/// decomposition, the elementary quarter bound, and the triangle identity.
inline void run_identity_sweep(ReportDoc& doc, FieldTag field, std::uint64_t block_base) {
    const RunConfig& config = doc.config;
    ResidualStat equivalence{tagged("equivalence(2.1,2.2)", field)};
    ResidualStat decomposition{tagged("gap_identity(2.4)", field)};
    ResidualStat quarter{tagged("quarter_step(2.6)", field)};
    ResidualStat triangle{tagged("triangle_identity(2.20)", field)};

    for (std::size_t trial = 0; trial < config.trials; ++trial) {
        SeededGenerator gen = SeededGenerator::for_trial(config.seed, block_base + trial);
        const std::size_t dim = config.dims[trial % config.dims.size()];
        TwoInnerEvaluator ev(sample_space(gen, dim, field));
        const Vector x = sample_vector(gen, dim, field);
        const Vector y = sample_vector(gen, dim, field);
        const Vector z = sample_vector(gen, dim, field);
        const ScalarPair pair(sample_scalar(gen, field), sample_scalar(gen, field));

        const ConditionReport cond = condition_check(ev, x, y, z, pair, config.tol);
        equivalence.absorb(cond.equivalence_residual, cond.scale, config.tol);

        const GapIdentity identity = gap_identity(ev, x, y, z, pair);
        decomposition.absorb(identity.residual, identity.scale, config.tol);
        quarter.absorb(std::max(0.0, identity.bound_part - identity.quarter_bound),
                       identity.quarter_bound + std::abs(identity.bound_part), config.tol);

        const TriangleIdentity tri = triangle_identity_residual(ev, x, y, z, config.tol);
        triangle.absorb(tri.residual, tri.scale, config.tol);
    }

    doc.add(equivalence.to_row());
    doc.add(decomposition.to_row());
    doc.add(quarter.to_row());
    doc.add(triangle.to_row());
}

/// Conditional reverse bounds over random draws plus targeted in-ball
/// instances; only instances whose hypothesis holds count.
inline void run_bound_sweep(ReportDoc& doc, FieldTag field, std::uint64_t block_base) {
    const RunConfig& config = doc.config;
    BoundStat stats[] = {
        {tagged("2.3", field)},  {tagged("2.9", field)},  {tagged("2.16", field)},
        {tagged("2.15", field)}, {tagged("2.17", field)}, {tagged("2.18", field)},
        {tagged("2.19", field)},
    };
    BoundStat& additive = stats[0];
    BoundStat& ratio = stats[1];
    BoundStat& quotient_additive = stats[2];
    BoundStat& positive_ratio = stats[3];
    BoundStat& positive_defect = stats[4];
    BoundStat& positive_squared = stats[5];
    BoundStat& triangle = stats[6];

    const auto absorb_scalar_pair = [&](const TwoInnerEvaluator& ev, const Vector& x,
                                        const Vector& y, const Vector& z,
                                        const ScalarPair& pair) {
        additive.absorb(additive_reverse(ev, x, y, z, pair, config.tol), config.tol);
        const QuotientReports q = quotient_reverse(ev, x, y, z, pair, config.tol);
        ratio.absorb(q.ratio, config.tol);
        quotient_additive.absorb(q.additive, config.tol);
    };
    const auto absorb_positive_pair = [&](const TwoInnerEvaluator& ev, const Vector& x,
                                          const Vector& y, const Vector& z,
                                          const PositivePair& pair) {
        const PositiveReports p = positive_reverse(ev, x, y, z, pair, config.tol);
        positive_ratio.absorb(p.ratio, config.tol);
        positive_defect.absorb(p.defect, config.tol);
        positive_squared.absorb(p.squared_defect, config.tol);
        triangle.absorb(triangle_reverse(ev, x, y, z, pair, config.tol), config.tol);
    };

    for (std::size_t trial = 0; trial < config.trials; ++trial) {
        SeededGenerator gen = SeededGenerator::for_trial(config.seed, block_base + trial);
        const std::size_t dim = config.dims[trial % config.dims.size()];
        TwoInnerEvaluator ev(sample_space(gen, dim, field));

        // Unconstrained draw; the hypothesis holds only occasionally.
        {
            const Vector x = sample_vector(gen, dim, field);
            const Vector y = sample_vector(gen, dim, field);
            const Vector z = sample_vector(gen, dim, field);
            const ScalarPair pair(sample_scalar(gen, field), sample_scalar(gen, field));
            absorb_scalar_pair(ev, x, y, z, pair);
            absorb_positive_pair(ev, x, y, z, sample_positive_pair(gen));
        }

        // Targeted draws inside the hypothesis ball.
        if (auto inst = sample_inball_instance(ev, gen, config.tol))
            absorb_scalar_pair(ev, inst->x, inst->y, inst->z, inst->pair);
        const PositivePair interval = sample_positive_pair(gen);
        if (auto inst =
                sample_inball_instance(ev, gen, interval.as_scalar_pair(), config.tol)) {
            absorb_scalar_pair(ev, inst->x, inst->y, inst->z, inst->pair);
            absorb_positive_pair(ev, inst->x, inst->y, inst->z, interval);
        }
    }

    for (const auto& stat : stats) doc.add(stat.to_row());
}

}  // namespace sweeps

inline ReportDoc run_verify(const RunConfig& config) {
    ReportDoc doc;
    doc.config = config;
    std::uint64_t block = 0;
    for (twoip::FieldTag field : expand(config.field)) {
        sweeps::run_axiom_sweep(doc, field, block);
        block += 64 * sweeps::kBlock;
        sweeps::run_identity_sweep(doc, field, block);
        block += 64 * sweeps::kBlock;
        sweeps::run_bound_sweep(doc, field, block);
        block += 64 * sweeps::kBlock;
    }
    return doc;
}

inline ReportDoc run_bounds(const RunConfig& config) {
    using namespace twoip;
    ReportDoc doc;
    doc.config = config;

    const BoundsInstance instance = load_instance(config.input_path);
    const TwoInnerEvaluator ev(instance.space);
    const Tolerance& tol = config.tol;

    const auto add_condition_rows = [&](const ScalarPair& pair, const std::string& tag) {
        const ConditionReport cond =
            condition_check(ev, instance.x, instance.y, instance.z, pair, tol);
        PropertyRow re_row;
        re_row.id = "2.1" + tag;
        re_row.lhs = 0.0;
        re_row.rhs = cond.re_form;
        re_row.slack = cond.re_form;
        re_row.residual = cond.equivalence_residual;
        re_row.hypothesis_ok = cond.holds;
        re_row.pass = cond.equivalence_residual <= tol.band(cond.scale);
        doc.add(re_row);

        PropertyRow ball_row;
        ball_row.id = "2.2" + tag;
        ball_row.lhs = 0.0;
        ball_row.rhs = cond.ball_form;
        ball_row.slack = cond.ball_form;
        ball_row.residual = cond.equivalence_residual;
        ball_row.hypothesis_ok = cond.holds;
        ball_row.pass = true;  // informational; sign is covered by 2.1
        doc.add(ball_row);
    };

    const ScalarPair effective_pair = instance.scalar_pair
                                          ? *instance.scalar_pair
                                          : instance.positive_pair->as_scalar_pair();
    const std::string pair_tag = instance.scalar_pair ? "(a,A)" : "(m,M)";
    add_condition_rows(effective_pair, pair_tag);
    if (instance.scalar_pair && instance.positive_pair)
        add_condition_rows(instance.positive_pair->as_scalar_pair(), "(m,M)");

    doc.add(row_from_bound(
        additive_reverse(ev, instance.x, instance.y, instance.z, effective_pair, tol),
        tol));
    const QuotientReports q =
        quotient_reverse(ev, instance.x, instance.y, instance.z, effective_pair, tol);
    doc.add(row_from_bound(q.ratio, tol));
    doc.add(row_from_bound(q.additive, tol));

    if (instance.positive_pair) {
        const PositiveReports p = positive_reverse(ev, instance.x, instance.y, instance.z,
                                                   *instance.positive_pair, tol);
        doc.add(row_from_bound(p.ratio, tol));
        doc.add(row_from_bound(p.defect, tol));
        doc.add(row_from_bound(p.squared_defect, tol));
        doc.add(row_from_bound(
            triangle_reverse(ev, instance.x, instance.y, instance.z,
                             *instance.positive_pair, tol),
            tol));
    }
    return doc;
}

inline ReportDoc run_integral(const RunConfig& config) {
    using namespace twoip;
    ReportDoc doc;
    doc.config = config;

    const IntegralInput input = load_integral_csv(config.input_path);
    const PositivePair pair(config.m, config.M);
    const Tolerance& tol = config.tol;

    const PremiseReport premise =
        premise_check(input.triple, pair, input.grid, tol, config.max_pairwise);
    const DeterminantReport det = two_inner_phi(input.triple, input.grid);
    doc.moments = det;

    {
        PropertyRow cross;
        cross.id = "two_inner_cross_check";
        cross.lhs = det.two_inner_double;
        cross.rhs = det.two_inner_det;
        cross.slack = det.two_inner_det - det.two_inner_double;
        cross.residual = det.cross_residual;
        cross.pass = det.cross_residual <= tol.band(det.cross_scale);
        doc.add(cross);
    }
    {
        PropertyRow sync;
        sync.id = "premise_synchronous(3.5)";
        sync.lhs = 0.0;
        sync.rhs = premise.sync.worst_value;
        sync.slack = premise.sync.worst_value;
        sync.hypothesis_ok = premise.holds;
        sync.pass = true;  // a failing premise flags the bounds, not the run
        doc.add(sync);
    }
    {
        PropertyRow sign;
        sign.id = "premise_sign(3.4)";
        sign.lhs = 0.0;
        sign.rhs = premise.sign_value;
        sign.slack = premise.sign_value;
        sign.hypothesis_ok = premise.holds;
        sign.pass = !premise.holds || premise.sign_ok;
        doc.add(sign);
    }

    std::vector<PropId> selected;
    if (config.which.empty()) {
        selected = {PropId::p36, PropId::p37, PropId::p38, PropId::p39, PropId::p310};
    } else if (auto id = parse_prop_id(config.which)) {
        selected = {*id};
    } else {
        throw invalid_input("integral: unknown bound id '" + config.which +
                            "' (expected one of 3.6, 3.7, 3.8, 3.9, 3.10)");
    }

    for (PropId id : selected) {
        const PropBoundReport bound =
            prop_bounds(input.triple, pair, input.grid, id, tol, config.max_pairwise);
        doc.add(row_from_bound(bound.report, tol));
        if (bound.printed)
            doc.add(row_from_bound(*bound.printed, tol, 1, /*advisory=*/true));
    }
    return doc;
}

inline ReportDoc run_sharpness(const RunConfig& config) {
    using namespace twoip;
    ReportDoc doc;
    doc.config = config;

    SharpnessTarget target;
    if (config.which == "thm2.1") {
        target = SharpnessTarget::additive_quarter;
    } else if (config.which == "thm2.2") {
        target = SharpnessTarget::ratio_half;
    } else {
        throw invalid_input("sharpness: --which must be thm2.1 or thm2.2, got '" +
                            config.which + "'");
    }

    for (FieldTag field : expand(config.field)) {
        const std::size_t dim = std::max<std::size_t>(
            3, config.dims.empty() ? 3 : config.dims.front());
        const TwoInnerEvaluator ev(InnerSpace::unit(field, dim));
        const auto witness = sharpness_probe(ev, config.constant, target, config.tol);

        PropertyRow row;
        row.id = sweeps::tagged("sharpness(" + config.which + ")", field);
        row.advisory = true;  // a found witness is a result, not a failure
        if (witness) {
            row.lhs = witness->achieved;
            row.rhs = witness->weakened;
            row.slack = witness->weakened - witness->achieved;
        } else {
            row.lhs = 0.0;
            row.rhs = 0.0;
            row.slack = 0.0;
        }
        doc.add(row);
        doc.witnesses.push_back(
            WitnessEntry{to_string(field), witness.has_value(), witness});
    }
    return doc;
}

}  // namespace twoip_cli
