#pragma once

#include <set>
#include <utility>

#include <Eigen/Core>

#include "travesty/prospect.hpp"
#include "travesty/signal_model.hpp"

namespace travesty {

// Belief over the defender's private type: pH1 for decoy, pH0 for normal sensor.
struct Belief {
    double pH1 = 0.5;
    double pH0 = 0.5;
};

inline constexpr double kBeliefTolerance = 1e-12;

void validate(const Belief& belief);

// One measured prospect basis element: classical signal index plus mind index.
struct Outcome {
    Eigen::Index signal = 0;
    Eigen::Index mind = 0;
};

// Deterministic rejection rule over (signal, mind) outcomes at tolerance beta.
struct DecisionRule {
    double beta = 0.5;
    std::set<std::pair<Eigen::Index, Eigen::Index>> rejected;

    bool rejects(Eigen::Index signal, Eigen::Index mind) const { return rejected.count({signal, mind}) > 0; }
};

// Neyman-Pearson threshold (1/beta - 1) * pH0/pH1 the per-outcome likelihood
// ratio is compared against. +inf when pH1 = 0.
double np_threshold(const Belief& belief, double beta);

// Bayes update of the type belief after measuring `outcome` under `plan`:
// pHx' is proportional to pHx * f_x(s) * amplitude_x(s,k)^2. Throws
// UndefinedPosteriorError when the outcome has zero probability.
Belief posterior_update(const Belief& belief, const ProspectPlan& plan, const SignalModel& model, Outcome outcome);

// Per-outcome likelihood-ratio decision: 1 (reject: treat as decoy, do not
// access) iff f1(s) a_sk^2 > T f0(s) b_sk^2 with T = np_threshold(belief, beta).
// Threshold equality accepts, with a relative 1e-12 guard band so components
// constructed to sit on the boundary resolve to accept after roundoff; a zero
// denominator with positive numerator rejects.
int qlrt_decide(const Belief& belief, double beta, const SignalModel& model, const ProspectPlan& plan,
                Outcome outcome);

// The constrained-optimal rule: reject every outcome qlrt_decide flags.
DecisionRule best_response(const Belief& belief, double beta, const SignalModel& model, const ProspectPlan& plan);

// Projector onto the rejection region, stored block-diagonally like a density
// operator but not trace-1: within each signal, every entry over the rejected
// mind indices equals 1/N_s (N_s = rejected count at s, diagonal included).
// Symmetric and idempotent by construction.
DensityOperator build_rejection_projector(const DecisionRule& rule, const ProspectPlan& plan);

}  // namespace travesty
