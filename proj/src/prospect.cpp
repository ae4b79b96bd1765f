#include "travesty/prospect.hpp"

#include <cmath>
#include <sstream>

#include "travesty/signal_model.hpp"

namespace travesty {

namespace {

void check_rejected_set(const CoefficientRow& row, const std::vector<Eigen::Index>& rejected) {
    std::vector<bool> seen(static_cast<std::size_t>(row.size()), false);
    for (Eigen::Index k : rejected) {
        if (k < 0 || k >= row.size()) throw ArgumentError("rejected mind index " + std::to_string(k) + " out of range");
        if (seen[static_cast<std::size_t>(k)])
            throw ArgumentError("rejected mind index " + std::to_string(k) + " listed twice");
        seen[static_cast<std::size_t>(k)] = true;
    }
}

double sqrt_clamped(double x) {
    // Guards the radicands u +- q against -0.0 scale roundoff.
    return std::sqrt(x < 0.0 ? 0.0 : x);
}

}  // namespace

double DensityOperator::entry(Eigen::Index s, Eigen::Index k, Eigen::Index s2, Eigen::Index k2) const {
    if (s < 0 || s >= size() || s2 < 0 || s2 >= size() || k < 0 || k >= mind_states || k2 < 0 || k2 >= mind_states)
        throw ArgumentError("density operator index out of range");
    if (s != s2) return 0.0;
    return blocks[static_cast<std::size_t>(s)](k, k2);
}

double DensityOperator::trace() const {
    double t = 0.0;
    for (const auto& block : blocks) t += block.trace();
    return t;
}

Eigen::MatrixXd DensityOperator::dense() const {
    const Eigen::Index n = size() * mind_states;
    Eigen::MatrixXd full = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index s = 0; s < size(); ++s)
        full.block(s * mind_states, s * mind_states, mind_states, mind_states) = blocks[static_cast<std::size_t>(s)];
    return full;
}

double utility_factor(const CoefficientRow& row, const std::vector<Eigen::Index>& rejected) {
    check_rejected_set(row, rejected);
    double u = 0.0;
    for (Eigen::Index k : rejected) u += row(k) * row(k);
    return u;
}

double structural_attraction(const CoefficientRow& row, const std::vector<Eigen::Index>& rejected) {
    check_rejected_set(row, rejected);
    double sum = 0.0, sum_sq = 0.0;
    for (Eigen::Index k : rejected) {
        sum += row(k);
        sum_sq += row(k) * row(k);
    }
    return sum * sum - sum_sq;
}

double calibrated_attraction(double u, double zeta) {
    if (!(u >= 0.0 && u <= 1.0)) throw ArgumentError("utility factor must lie in [0,1], got " + std::to_string(u));
    if (!(zeta >= -1.0 && zeta <= 1.0))
        throw ArgumentError("calibration zeta must lie in [-1,1], got " + std::to_string(zeta));
    return zeta * std::min(u, 1.0 - u);
}

CoefficientRow synthesize_coefficients(double u, double q, Eigen::Index K, SynthesisLayout layout) {
    if (!(u >= 0.0 && u <= 1.0)) throw ArgumentError("utility factor must lie in [0,1], got " + std::to_string(u));
    if (std::abs(q) > u + 1e-15) {
        std::ostringstream msg;
        msg << "no coefficient row realizes (u=" << u << ", q=" << q << "): |q| must not exceed u";
        throw SynthesisError(msg.str());
    }

    const Eigen::Index min_k = u == 0.0 ? 1 : (u == 1.0 ? 2 : 3);
    if (K < min_k)
        throw ArgumentError("mind space of size " + std::to_string(K) + " is too small to realize u=" +
                            std::to_string(u) + " (need K >= " + std::to_string(min_k) + ")");

    const bool rejected_used = u > 0.0;
    const bool accepted_used = u < 1.0;
    if (K < 3) {
        // Degenerate layouts keep only the slots that carry mass in range.
        if (!rejected_used) layout.rejected_first = 0, layout.rejected_second = std::min<Eigen::Index>(1, K - 1);
        if (layout.accepted >= K) layout.accepted = K - 1;
    }
    if (rejected_used) {
        if (layout.rejected_first < 0 || layout.rejected_first >= K || layout.rejected_second < 0 ||
            layout.rejected_second >= K)
            throw ArgumentError("rejected mind indices out of range");
        if (layout.rejected_first == layout.rejected_second)
            throw ArgumentError("rejected pair indices collide at " + std::to_string(layout.rejected_first));
    }
    if (accepted_used) {
        if (layout.accepted < 0 || layout.accepted >= K) throw ArgumentError("accepted mind index out of range");
        if (rejected_used && (layout.accepted == layout.rejected_first || layout.accepted == layout.rejected_second))
            throw ArgumentError("accepted mind index collides with the rejected pair");
    }

    const double root_plus = sqrt_clamped(u + q);
    const double root_minus = sqrt_clamped(u - q);
    CoefficientRow row = CoefficientRow::Zero(K);
    if (rejected_used) {
        row(layout.rejected_first) = 0.5 * (root_plus + root_minus);
        row(layout.rejected_second) = 0.5 * (root_plus - root_minus);
    }
    if (accepted_used) row(layout.accepted) = sqrt_clamped(1.0 - u);
    return row;
}

CoefficientRow uniform_prospect(Eigen::Index K) {
    if (K < 1) throw ArgumentError("mind space needs at least one basis state");
    return CoefficientRow::Constant(K, 1.0 / std::sqrt(static_cast<double>(K)));
}

CoefficientRow one_hot_row(Eigen::Index K, Eigen::Index index) {
    if (K < 1) throw ArgumentError("mind space needs at least one basis state");
    if (index < 0 || index >= K) throw ArgumentError("one-hot index out of range");
    CoefficientRow row = CoefficientRow::Zero(K);
    row(index) = 1.0;
    return row;
}

DensityOperator assemble_density(const Eigen::VectorXd& pmf, const std::vector<CoefficientRow>& rows) {
    if (static_cast<std::size_t>(pmf.size()) != rows.size())
        throw ArgumentError("pmf and coefficient rows must cover the same signal set");
    if (std::abs(pmf.sum() - 1.0) > kPmfMassTolerance || (pmf.array() < 0.0).any())
        throw ValidationError("density assembly requires a normalized pmf");

    Eigen::Index K = 0;
    for (const auto& row : rows)
        if (row.size() > 0) K = row.size();
    if (K == 0) throw ArgumentError("no coefficient rows supplied");

    DensityOperator op;
    op.mind_states = K;
    op.blocks.reserve(rows.size());
    for (Eigen::Index s = 0; s < pmf.size(); ++s) {
        const auto& row = rows[static_cast<std::size_t>(s)];
        if (row.size() == 0) {
            if (pmf(s) > 0.0)
                throw ArgumentError("missing coefficient row for signal index " + std::to_string(s) +
                                    " with positive mass");
            op.blocks.emplace_back(Eigen::MatrixXd::Zero(K, K));
            continue;
        }
        if (row.size() != K) throw ArgumentError("coefficient rows disagree on the mind-space size");
        if (std::abs(row.squaredNorm() - 1.0) > kRowNormTolerance)
            throw ValidationError("coefficient row for signal index " + std::to_string(s) + " is not unit norm");
        // outer product first: r_k * r_k' commutes exactly, keeping the block bit-symmetric
        op.blocks.emplace_back(pmf(s) * (row * row.transpose()).eval());
    }
    return op;
}

void validate_plan(const ProspectPlan& plan) {
    if (plan.a.rows() != plan.b.rows() || plan.a.cols() != plan.b.cols())
        throw ValidationError("coefficient matrices a and b disagree in shape");
    if (static_cast<Eigen::Index>(plan.signals.size()) != plan.a.rows())
        throw ValidationError("plan signal set does not match the coefficient matrices");
    if (plan.mind_states() < 1) throw ValidationError("plan needs at least one mind state");
    for (Eigen::Index s = 0; s < plan.size(); ++s) {
        if (std::abs(plan.a.row(s).squaredNorm() - 1.0) > kRowNormTolerance)
            throw ValidationError("a-row for signal '" + plan.signals[static_cast<std::size_t>(s)] +
                                  "' is not unit norm");
        if (std::abs(plan.b.row(s).squaredNorm() - 1.0) > kRowNormTolerance)
            throw ValidationError("b-row for signal '" + plan.signals[static_cast<std::size_t>(s)] +
                                  "' is not unit norm");
    }
}

}  // namespace travesty
