#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "travesty/equilibrium.hpp"
#include "travesty/rng.hpp"

namespace travesty {

enum class TrueType { Decoy, Normal };

// Normal-type stage convention. Static keeps u0 = 0 everywhere, consistent
// with the one-shot equilibrium; DynamicPaper ("dynamic-paper" on the CLI)
// sets u0 = 1 on the rejection region instead and is kept for comparison runs.
enum class U0Convention { Static, DynamicPaper };

struct GameConfig {
    Eigen::Index horizon = 1;
    TrueType true_type = TrueType::Decoy;
    std::vector<double> beta_schedule;  // one tolerance per stage
    double zeta = 0.0;
    Eigen::Index K = 4;
    std::uint64_t seed = 0;
    U0Convention u0_convention = U0Convention::Static;
};

void validate(const GameConfig& config);

// Stage-j defender strategy given the running belief. tau is computed from the
// stage belief; u1 is 0 where tau > 1 and 1 - tau elsewhere; u0 follows the
// selected convention. The plan realizes (u1, q1) / (u0, q0) per signal.
struct StageStrategy {
    Eigen::VectorXd tau;
    Eigen::VectorXd u1;
    Eigen::VectorXd u0;
    ProspectPlan plan;
};

StageStrategy stage_equilibrium(const Belief& belief, double beta, double zeta, Eigen::Index K,
                                const SignalModel& model, U0Convention convention);

// Draws a signal index from f1 (decoy) or f0 (normal sensor).
Eigen::Index sample_signal(const SignalModel& model, TrueType true_type, SplitMix64& rng);

// One measured outcome together with the coefficient rows in force when it was
// produced (stage plans change as the belief moves).
struct HistoryEntry {
    Eigen::Index signal = 0;
    Eigen::Index mind = 0;
    CoefficientRow a_row;
    CoefficientRow b_row;
};

// Product over the history of f1(s_t) a^2 / (f0(s_t) b^2). Empty history gives 1.
// A zero numerator anywhere forces 0; otherwise a zero denominator forces +inf.
double cumulative_llr(const std::vector<HistoryEntry>& history, const SignalModel& model);

struct StageRecord {
    Eigen::Index stage = 0;  // 1-based
    Eigen::Index signal = 0;
    Eigen::Index mind = 0;
    Eigen::VectorXd tau;
    Eigen::VectorXd u1;
    Eigen::VectorXd u0;
    Belief belief_before;
    Belief belief_after;
    int decision = 0;
    double cumulative_ratio = 1.0;
};

struct GameTrace {
    GameConfig config;
    Belief belief0;
    std::vector<StageRecord> stages;
    bool aborted = false;
    std::string abort_reason;
};

// Plays the N-stage game: per stage, recompute the equilibrium strategy from the
// running belief, draw (signal, mind) for the true type, decide by comparing the
// cumulative likelihood ratio against (1/beta_j - 1) pH0/pH1 at the *initial*
// prior, then Bayes-update the belief. Deterministic for a fixed config: signal
// draws use RNG stream 0 and mind draws stream 1 of config.seed.
GameTrace simulate(const GameConfig& config, const SignalModel& model, const Belief& belief0);

}  // namespace travesty
