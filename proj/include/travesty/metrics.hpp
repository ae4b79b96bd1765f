#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "travesty/equilibrium.hpp"

namespace travesty {

// Detection performance at one (zeta, beta) grid point. PD/PF are the
// manipulated attacker's rates, PDbar/PFbar the fully rational (classical
// likelihood-ratio test) rates, QA their detection ratio.
struct RatePoint {
    double beta = 0.0;
    double zeta = 0.0;
    double PD = 0.0;
    double PF = 0.0;
    double PDbar = 0.0;
    double PFbar = 0.0;
    double QA = 1.0;
};

// Attacker rates under manipulation: PD = sum_s f1(s) (u1(s)+q1(s)),
// PF = sum_s f0(s) (u0(s)+q0(s)). Both are theorems of the calibration rule to
// lie in [0,1]; a violation aborts loudly rather than being clamped.
std::pair<double, double> detection_rates(const EquilibriumSolution& sol, const SignalModel& model);

// Fully rational benchmark: with T = (1/beta - 1) pH0/pH1, sums f1 and f0 over
// the classical rejection set {s : f1(s)/f0(s) > T}.
std::pair<double, double> classical_rates(const SignalModel& model, const Belief& belief, double beta);

// PD / PDbar, with the 0/0 convention QA = 1 (empty classical rejection implies
// empty manipulated rejection).
double quantum_advantage(double PD, double PDbar);

// Full static solve at every (zeta, beta) grid point, rows ordered by (zeta,
// beta). The ROC curve plots PD against PFbar; the manipulated PF is reported
// alongside (it is identically 0 at the static equilibrium).
std::vector<RatePoint> roc_sweep(const SignalModel& model, const Belief& belief, const std::vector<double>& zetas,
                                 const std::vector<double>& beta_grid, Eigen::Index K = 4);

}  // namespace travesty
