#include "travesty/equilibrium.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace travesty {

namespace {

constexpr double kFeasibilitySlack = 1e-12;

std::vector<CoefficientRow> matrix_rows(const Eigen::MatrixXd& m) {
    std::vector<CoefficientRow> rows;
    rows.reserve(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index s = 0; s < m.rows(); ++s) rows.emplace_back(m.row(s).transpose());
    return rows;
}

}  // namespace

Eigen::VectorXd compute_tau(const Belief& belief, double beta, const SignalModel& model) {
    if (!(beta > 0.0 && beta < 1.0)) throw ArgumentError("tolerance beta must lie in (0,1)");
    validate(belief);
    if (belief.pH1 == 0.0) throw ArgumentError("degenerate belief: pH1 = 0 leaves the defender problem undefined");
    validate(model);

    const double prior_ratio = (1.0 / beta - 1.0) * belief.pH0 / belief.pH1;
    Eigen::VectorXd tau(model.size());
    for (Eigen::Index s = 0; s < model.size(); ++s) {
        if (model.f1(s) == 0.0)
            tau(s) = std::numeric_limits<double>::infinity();
        else if (model.f0(s) == 0.0)
            tau(s) = 0.0;
        else
            tau(s) = prior_ratio * model.f0(s) / model.f1(s);
    }
    return tau;
}

EquilibriumSolution solve_static(const Belief& belief, double beta, double zeta, Eigen::Index K,
                                 const SignalModel& model) {
    if (K < 3) throw ArgumentError("static equilibrium synthesis needs K >= 3");
    if (!(zeta >= -1.0 && zeta <= 1.0)) throw ArgumentError("calibration zeta must lie in [-1,1]");

    EquilibriumSolution sol;
    sol.belief = belief;
    sol.beta = beta;
    sol.zeta = zeta;
    sol.tau = compute_tau(belief, beta, model);

    const Eigen::Index S = model.size();
    sol.u1 = Eigen::VectorXd::Zero(S);
    sol.u0 = Eigen::VectorXd::Zero(S);
    sol.q1 = Eigen::VectorXd::Zero(S);
    sol.q0 = Eigen::VectorXd::Zero(S);

    const SynthesisLayout layout{};
    sol.plan.signals = model.signals;
    sol.plan.a = Eigen::MatrixXd::Zero(S, K);
    sol.plan.b = Eigen::MatrixXd::Zero(S, K);

    for (Eigen::Index s = 0; s < S; ++s) {
        sol.plan.b.row(s) = one_hot_row(K, layout.accepted).transpose();
        if (sol.tau(s) < 1.0) {
            sol.classical_rejection.push_back(s);
            sol.u1(s) = 1.0 - sol.tau(s);
            sol.q1(s) = calibrated_attraction(sol.u1(s), zeta);
            CoefficientRow a_row = synthesize_coefficients(sol.u1(s), sol.q1(s), K, layout);
            // sqrt(tau) rather than sqrt(1 - u1): for tau near 0 the subtraction
            // loses the relative precision the boundary comparison depends on
            a_row(layout.accepted) = std::sqrt(sol.tau(s));
            sol.plan.a.row(s) = a_row.transpose();
        } else {
            sol.plan.a.row(s) = one_hot_row(K, layout.accepted).transpose();
        }
        sol.q0(s) = calibrated_attraction(sol.u0(s), zeta);
    }

    sol.rule = best_response(belief, beta, model, sol.plan);

    // The induced response must reject exactly the mass-bearing rejected-pair
    // components of a; anything else indicates broken synthesis.
    DecisionRule expected;
    expected.beta = beta;
    for (Eigen::Index s : sol.classical_rejection) {
        if (sol.plan.a(s, layout.rejected_first) != 0.0) expected.rejected.insert({s, layout.rejected_first});
        if (sol.plan.a(s, layout.rejected_second) != 0.0) expected.rejected.insert({s, layout.rejected_second});
    }
    TRAVESTY_INTERNAL_CHECK(expected.rejected == sol.rule.rejected);

    return sol;
}

EquilibriumReport verify_equilibrium(const EquilibriumSolution& sol, const SignalModel& model, double tol) {
    if (!(tol > 0.0 && tol <= 1.0)) throw ArgumentError("verification tolerance must lie in (0,1]");
    EquilibriumReport report;

    const DecisionRule response = best_response(sol.belief, sol.beta, model, sol.plan);
    if (response.rejected != sol.rule.rejected) {
        report.receiver_rational = false;
        std::ostringstream msg;
        for (const auto& outcome : response.rejected)
            if (!sol.rule.rejected.count(outcome)) {
                msg << "receiver best response rejects (" << outcome.first << "," << outcome.second
                    << ") but the rule accepts it";
                break;
            }
        if (msg.str().empty())
            for (const auto& outcome : sol.rule.rejected)
                if (!response.rejected.count(outcome)) {
                    msg << "rule rejects (" << outcome.first << "," << outcome.second
                        << ") but the receiver best response accepts it";
                    break;
                }
        report.counterexample = msg.str();
    }

    const Eigen::VectorXd tau = compute_tau(sol.belief, sol.beta, model);
    const auto steps = static_cast<Eigen::Index>(std::llround(1.0 / tol));
    for (Eigen::Index s = 0; s < model.size() && report.defender_rational; ++s) {
        for (Eigen::Index i = 0; i <= steps; ++i) {
            const double u = i == steps ? 1.0 : static_cast<double>(i) * tol;
            if (1.0 - u > tau(s) + kFeasibilitySlack) continue;  // accepted slot would flip to rejection
            if (model.f1(s) * u < model.f1(s) * sol.u1(s) - 1e-12) {
                report.defender_rational = false;
                std::ostringstream msg;
                msg << "defender deviation u1(" << model.signals[static_cast<std::size_t>(s)] << ") = " << u
                    << " lowers the objective against " << sol.u1(s);
                if (report.counterexample.empty()) report.counterexample = msg.str();
                break;
            }
        }
    }

    const DensityOperator rho1 = assemble_density(model.f1, matrix_rows(sol.plan.a));
    const DensityOperator rho0 = assemble_density(model.f0, matrix_rows(sol.plan.b));
    for (Eigen::Index s = 0; s < model.size() && report.belief_consistent; ++s) {
        for (Eigen::Index k = 0; k < sol.plan.mind_states(); ++k) {
            const double w1 = sol.belief.pH1 * rho1.entry(s, k, s, k);
            const double w0 = sol.belief.pH0 * rho0.entry(s, k, s, k);
            if (w1 + w0 <= 0.0) continue;
            const Belief via_density{w1 / (w1 + w0), w0 / (w1 + w0)};
            const Belief via_update = posterior_update(sol.belief, sol.plan, model, {s, k});
            if (std::abs(via_density.pH1 - via_update.pH1) > tol ||
                std::abs(via_density.pH0 - via_update.pH0) > tol) {
                report.belief_consistent = false;
                std::ostringstream msg;
                msg << "posterior mismatch at (" << s << "," << k << "): " << via_update.pH1 << " vs "
                    << via_density.pH1;
                if (report.counterexample.empty()) report.counterexample = msg.str();
                break;
            }
        }
    }

    return report;
}

Eigen::VectorXd brute_force_defender(const SignalModel& model, const Belief& belief, double beta, double grid_step) {
    if (!(grid_step > 0.0 && grid_step <= 0.1)) throw ArgumentError("grid step must lie in (0, 0.1]");
    const Eigen::VectorXd tau = compute_tau(belief, beta, model);
    const auto steps = static_cast<Eigen::Index>(std::llround(1.0 / grid_step));

    Eigen::VectorXd best = Eigen::VectorXd::Zero(model.size());
    for (Eigen::Index s = 0; s < model.size(); ++s) {
        double minimizer = 1.0;
        for (Eigen::Index i = 0; i <= steps; ++i) {
            const double u = i == steps ? 1.0 : static_cast<double>(i) * grid_step;
            if (1.0 - u <= tau(s) + kFeasibilitySlack) {
                minimizer = u;
                break;  // grid is scanned upward, the first feasible point minimizes f1(s) u
            }
        }
        best(s) = minimizer;
    }
    return best;
}

}  // namespace travesty
