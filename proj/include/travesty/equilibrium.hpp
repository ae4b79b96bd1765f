#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "travesty/prospect.hpp"
#include "travesty/receiver.hpp"
#include "travesty/signal_model.hpp"

namespace travesty {

// Static equilibrium of the one-shot game. Per-signal vectors are aligned with
// the model's signal order. At equilibrium u0 is identically zero, u1(s) is
// 1 - tau(s) on the classical rejection region and 0 elsewhere, and each
// attraction factor follows the calibration rule.
struct EquilibriumSolution {
    Belief belief;
    double beta = 0.5;
    double zeta = 0.0;
    Eigen::VectorXd tau;  // +inf where f1(s) = 0
    Eigen::VectorXd u1;
    Eigen::VectorXd u0;
    Eigen::VectorXd q1;
    Eigen::VectorXd q0;
    std::vector<Eigen::Index> classical_rejection;  // ascending signal indices with tau(s) < 1
    ProspectPlan plan;
    DecisionRule rule;
};

// Acceptance-boundary threshold tau(s) = (1/beta - 1) * (pH0 f0(s)) / (pH1 f1(s)).
// Conventions: +inf when f1(s) = 0, and 0 when f0(s) = 0 < f1(s). A belief with
// pH1 = 0 is degenerate and rejected.
Eigen::VectorXd compute_tau(const Belief& belief, double beta, const SignalModel& model);

// Closed-form defender optimum plus the induced receiver best response.
// For each rejection-region signal the a-row realizes (u1, q1) on the canonical
// rejected pair while b concentrates on the accepted slot; elsewhere both rows
// pool on the accepted slot. Requires K >= 3.
EquilibriumSolution solve_static(const Belief& belief, double beta, double zeta, Eigen::Index K,
                                 const SignalModel& model);

struct EquilibriumReport {
    bool receiver_rational = true;
    bool defender_rational = true;
    bool belief_consistent = true;
    std::string counterexample;  // first violation found, empty when all three hold

    bool all() const { return receiver_rational && defender_rational && belief_consistent; }
};

// Checks the three equilibrium conditions against an independent route:
// the receiver side by recomputing the best response, the defender side by a
// per-signal grid deviation search with step `tol`, and belief consistency by
// comparing posterior_update with the Bayes formula evaluated on the assembled
// density operators.
EquilibriumReport verify_equilibrium(const EquilibriumSolution& sol, const SignalModel& model, double tol);

// Independent oracle for the defender optimum: per signal, exhaustively scan
// u1(s) over {0, gridStep, 2 gridStep, ..., 1} for the smallest value meeting
// the acceptance-feasibility constraint 1 - u1(s) <= tau(s), which minimizes
// f1(s) u1(s). gridStep must lie in (0, 0.1].
Eigen::VectorXd brute_force_defender(const SignalModel& model, const Belief& belief, double beta, double grid_step);

}  // namespace travesty
