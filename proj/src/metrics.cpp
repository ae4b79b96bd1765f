#include "travesty/metrics.hpp"

#include <algorithm>

namespace travesty {

std::pair<double, double> detection_rates(const EquilibriumSolution& sol, const SignalModel& model) {
    if (sol.u1.size() != model.size()) throw ArgumentError("solution and model disagree on the signal alphabet");
    const double PD = (model.f1.array() * (sol.u1 + sol.q1).array()).sum();
    const double PF = (model.f0.array() * (sol.u0 + sol.q0).array()).sum();
    TRAVESTY_INTERNAL_CHECK(PD >= 0.0 && PD <= 1.0);
    TRAVESTY_INTERNAL_CHECK(PF >= 0.0 && PF <= 1.0);
    return {PD, PF};
}

std::pair<double, double> classical_rates(const SignalModel& model, const Belief& belief, double beta) {
    const double threshold = np_threshold(belief, beta);
    double PDbar = 0.0, PFbar = 0.0;
    for (Eigen::Index s = 0; s < model.size(); ++s) {
        if (likelihood_ratio(model, s) > threshold) {
            PDbar += model.f1(s);
            PFbar += model.f0(s);
        }
    }
    return {PDbar, PFbar};
}

double quantum_advantage(double PD, double PDbar) {
    if (PDbar == 0.0) return 1.0;
    return PD / PDbar;
}

std::vector<RatePoint> roc_sweep(const SignalModel& model, const Belief& belief, const std::vector<double>& zetas,
                                 const std::vector<double>& beta_grid, Eigen::Index K) {
    if (zetas.empty() || beta_grid.empty()) throw ArgumentError("roc sweep needs nonempty zeta and beta grids");
    std::vector<RatePoint> points;
    points.reserve(zetas.size() * beta_grid.size());
    for (double zeta : zetas) {
        for (double beta : beta_grid) {
            const EquilibriumSolution sol = solve_static(belief, beta, zeta, K, model);
            RatePoint point;
            point.beta = beta;
            point.zeta = zeta;
            std::tie(point.PD, point.PF) = detection_rates(sol, model);
            std::tie(point.PDbar, point.PFbar) = classical_rates(model, belief, beta);
            point.QA = quantum_advantage(point.PD, point.PDbar);
            points.push_back(point);
        }
    }
    std::stable_sort(points.begin(), points.end(), [](const RatePoint& lhs, const RatePoint& rhs) {
        return lhs.zeta != rhs.zeta ? lhs.zeta < rhs.zeta : lhs.beta < rhs.beta;
    });
    return points;
}

}  // namespace travesty
