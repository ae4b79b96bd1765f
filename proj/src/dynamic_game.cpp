#include "travesty/dynamic_game.hpp"

#include <cmath>
#include <limits>

namespace travesty {

void validate(const GameConfig& config) {
    if (config.horizon < 1) throw ArgumentError("game horizon must be at least 1");
    if (static_cast<Eigen::Index>(config.beta_schedule.size()) != config.horizon)
        throw ArgumentError("beta schedule length must equal the horizon");
    for (double beta : config.beta_schedule)
        if (!(beta > 0.0 && beta < 1.0)) throw ArgumentError("every scheduled beta must lie in (0,1)");
    if (!(config.zeta >= -1.0 && config.zeta <= 1.0)) throw ArgumentError("calibration zeta must lie in [-1,1]");
    if (config.K < 3) throw ArgumentError("mind-space size must be at least 3");
}

StageStrategy stage_equilibrium(const Belief& belief, double beta, double zeta, Eigen::Index K,
                                const SignalModel& model, U0Convention convention) {
    if (K < 3) throw ArgumentError("stage synthesis needs K >= 3");
    if (!(zeta >= -1.0 && zeta <= 1.0)) throw ArgumentError("calibration zeta must lie in [-1,1]");

    StageStrategy stage;
    stage.tau = compute_tau(belief, beta, model);

    const Eigen::Index S = model.size();
    stage.u1 = Eigen::VectorXd::Zero(S);
    stage.u0 = Eigen::VectorXd::Zero(S);
    const SynthesisLayout layout{};
    stage.plan.signals = model.signals;
    stage.plan.a = Eigen::MatrixXd::Zero(S, K);
    stage.plan.b = Eigen::MatrixXd::Zero(S, K);

    for (Eigen::Index s = 0; s < S; ++s) {
        stage.u1(s) = stage.tau(s) > 1.0 ? 0.0 : 1.0 - stage.tau(s);
        if (convention == U0Convention::DynamicPaper && stage.tau(s) <= 1.0) stage.u0(s) = 1.0;

        if (stage.u1(s) > 0.0) {
            const double q1 = calibrated_attraction(stage.u1(s), zeta);
            CoefficientRow a_row = synthesize_coefficients(stage.u1(s), q1, K, layout);
            a_row(layout.accepted) = std::sqrt(stage.tau(s));  // boundary mass, see solve_static
            stage.plan.a.row(s) = a_row.transpose();
        } else {
            stage.plan.a.row(s) = one_hot_row(K, layout.accepted).transpose();
        }
        if (stage.u0(s) > 0.0) {
            const double q0 = calibrated_attraction(stage.u0(s), zeta);
            stage.plan.b.row(s) = synthesize_coefficients(stage.u0(s), q0, K, layout).transpose();
        } else {
            stage.plan.b.row(s) = one_hot_row(K, layout.accepted).transpose();
        }
    }
    return stage;
}

Eigen::Index sample_signal(const SignalModel& model, TrueType true_type, SplitMix64& rng) {
    return sample_index(true_type == TrueType::Decoy ? model.f1 : model.f0, rng);
}

double cumulative_llr(const std::vector<HistoryEntry>& history, const SignalModel& model) {
    bool hit_zero = false;
    bool hit_infinity = false;
    double product = 1.0;
    for (const auto& entry : history) {
        if (entry.signal < 0 || entry.signal >= model.size()) throw ArgumentError("history signal index out of range");
        if (entry.mind < 0 || entry.mind >= entry.a_row.size() || entry.a_row.size() != entry.b_row.size())
            throw ArgumentError("history mind index out of range");
        const double a = entry.a_row(entry.mind);
        const double b = entry.b_row(entry.mind);
        const double num = model.f1(entry.signal) * a * a;
        const double den = model.f0(entry.signal) * b * b;
        if (num == 0.0)
            hit_zero = true;
        else if (den == 0.0)
            hit_infinity = true;
        else
            product *= num / den;
    }
    // An impossible-under-H1 factor dominates: the whole history then has zero
    // likelihood under H1 regardless of any infinite factor.
    if (hit_zero) return 0.0;
    if (hit_infinity) return std::numeric_limits<double>::infinity();
    return product;
}

GameTrace simulate(const GameConfig& config, const SignalModel& model, const Belief& belief0) {
    validate(config);
    validate(model);
    validate(belief0);

    GameTrace trace;
    trace.config = config;
    trace.belief0 = belief0;

    SplitMix64 signal_stream = substream(config.seed, 0);
    SplitMix64 mind_stream = substream(config.seed, 1);

    Belief belief = belief0;
    std::vector<HistoryEntry> history;
    history.reserve(static_cast<std::size_t>(config.horizon));

    for (Eigen::Index j = 1; j <= config.horizon; ++j) {
        const double beta = config.beta_schedule[static_cast<std::size_t>(j - 1)];
        StageRecord record;
        record.stage = j;
        record.belief_before = belief;
        try {
            const StageStrategy stage = stage_equilibrium(belief, beta, config.zeta, config.K, model,
                                                          config.u0_convention);
            record.tau = stage.tau;
            record.u1 = stage.u1;
            record.u0 = stage.u0;

            record.signal = sample_signal(model, config.true_type, signal_stream);
            const CoefficientRow row = config.true_type == TrueType::Decoy
                                           ? CoefficientRow(stage.plan.a.row(record.signal).transpose())
                                           : CoefficientRow(stage.plan.b.row(record.signal).transpose());
            record.mind = sample_index(row.cwiseProduct(row), mind_stream);

            history.push_back({record.signal, record.mind, CoefficientRow(stage.plan.a.row(record.signal).transpose()),
                               CoefficientRow(stage.plan.b.row(record.signal).transpose())});
            record.cumulative_ratio = cumulative_llr(history, model);
            // same equality guard band as qlrt_decide: histories that keep the
            // posterior exactly at the tolerance boundary must resolve to accept
            record.decision = record.cumulative_ratio > np_threshold(belief0, beta) * (1.0 + 1e-12) ? 1 : 0;

            record.belief_after = posterior_update(belief, stage.plan, model, {record.signal, record.mind});
        } catch (const Error& error) {
            trace.aborted = true;
            trace.abort_reason = "stage " + std::to_string(j) + ": " + error.what();
            break;
        }
        belief = record.belief_after;
        trace.stages.push_back(std::move(record));
    }
    return trace;
}

}  // namespace travesty
