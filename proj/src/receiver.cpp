#include "travesty/receiver.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace travesty {

namespace {

void check_outcome(const ProspectPlan& plan, const SignalModel& model, Outcome outcome) {
    if (plan.size() != model.size()) throw ArgumentError("plan and model disagree on the signal alphabet");
    if (outcome.signal < 0 || outcome.signal >= model.size()) throw ArgumentError("outcome signal index out of range");
    if (outcome.mind < 0 || outcome.mind >= plan.mind_states()) throw ArgumentError("outcome mind index out of range");
}

}  // namespace

void validate(const Belief& belief) {
    if (!(belief.pH1 >= 0.0 && belief.pH1 <= 1.0 && belief.pH0 >= 0.0 && belief.pH0 <= 1.0))
        throw ValidationError("belief components must lie in [0,1]");
    if (std::abs(belief.pH1 + belief.pH0 - 1.0) > kBeliefTolerance)
        throw ValidationError("belief components must sum to 1, got " + std::to_string(belief.pH1 + belief.pH0));
}

double np_threshold(const Belief& belief, double beta) {
    if (!(beta > 0.0 && beta < 1.0)) throw ArgumentError("tolerance beta must lie in (0,1)");
    validate(belief);
    if (belief.pH1 == 0.0) return std::numeric_limits<double>::infinity();
    return (1.0 / beta - 1.0) * belief.pH0 / belief.pH1;
}

Belief posterior_update(const Belief& belief, const ProspectPlan& plan, const SignalModel& model, Outcome outcome) {
    validate(belief);
    check_outcome(plan, model, outcome);
    const double a = plan.a(outcome.signal, outcome.mind);
    const double b = plan.b(outcome.signal, outcome.mind);
    const double w1 = belief.pH1 * model.f1(outcome.signal) * a * a;
    const double w0 = belief.pH0 * model.f0(outcome.signal) * b * b;
    const double total = w1 + w0;
    if (total <= 0.0)
        throw UndefinedPosteriorError("outcome (signal " +
                                      model.signals[static_cast<std::size_t>(outcome.signal)] + ", mind " +
                                      std::to_string(outcome.mind) + ") has zero probability under the current belief");
    return Belief{w1 / total, w0 / total};
}

int qlrt_decide(const Belief& belief, double beta, const SignalModel& model, const ProspectPlan& plan,
                Outcome outcome) {
    check_outcome(plan, model, outcome);
    const double threshold = np_threshold(belief, beta);
    const double a = plan.a(outcome.signal, outcome.mind);
    const double b = plan.b(outcome.signal, outcome.mind);
    const double num = model.f1(outcome.signal) * a * a;
    const double den = model.f0(outcome.signal) * b * b;
    if (num == 0.0) return 0;  // unreachable under H1; also covers the 0/0 outcome
    if (den == 0.0) return 1;  // posterior pH0 is 0, below any tolerance
    // Agreement within one part in 1e12 counts as threshold equality, which the
    // tie-break resolves to accept. Boundary components synthesized to sit exactly
    // on the threshold land here after sqrt/square roundoff.
    return num > threshold * den * (1.0 + 1e-12) ? 1 : 0;
}

DecisionRule best_response(const Belief& belief, double beta, const SignalModel& model, const ProspectPlan& plan) {
    DecisionRule rule;
    rule.beta = beta;
    for (Eigen::Index s = 0; s < plan.size(); ++s)
        for (Eigen::Index k = 0; k < plan.mind_states(); ++k)
            if (qlrt_decide(belief, beta, model, plan, {s, k}) == 1) rule.rejected.insert({s, k});
    return rule;
}

DensityOperator build_rejection_projector(const DecisionRule& rule, const ProspectPlan& plan) {
    const Eigen::Index K = plan.mind_states();
    DensityOperator projector;
    projector.mind_states = K;
    projector.blocks.assign(static_cast<std::size_t>(plan.size()), Eigen::MatrixXd::Zero(K, K));

    for (Eigen::Index s = 0; s < plan.size(); ++s) {
        std::vector<Eigen::Index> rejected_minds;
        for (Eigen::Index k = 0; k < K; ++k)
            if (rule.rejects(s, k)) rejected_minds.push_back(k);
        if (rejected_minds.empty()) continue;
        const double fill = 1.0 / static_cast<double>(rejected_minds.size());
        auto& block = projector.blocks[static_cast<std::size_t>(s)];
        for (Eigen::Index k : rejected_minds)
            for (Eigen::Index k2 : rejected_minds) block(k, k2) = fill;
    }
    return projector;
}

}  // namespace travesty
