#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "travesty/errors.hpp"

namespace travesty {

// A coefficient row holds the K signed amplitudes a generator attaches to one
// classical signal, one amplitude per mind basis state. Valid rows have unit norm.
using CoefficientRow = Eigen::VectorXd;

inline constexpr double kRowNormTolerance = 1e-9;

// Per-type generator coefficients: row s of `a` is the decoy-type (H1) row for
// signal s, row s of `b` the normal-type (H0) row. Both are S x K.
// Immutable value type; all operations below are pure.
struct ProspectPlan {
    std::vector<std::string> signals;
    Eigen::MatrixXd a;
    Eigen::MatrixXd b;

    Eigen::Index size() const { return a.rows(); }
    Eigen::Index mind_states() const { return a.cols(); }
};

// Symmetric operator that is block-diagonal across signals: entry ((s,k),(s',k'))
// is blocks[s](k,k') when s == s' and 0 otherwise. Density operators are stored
// this way (each block is pmf(s) times a rank-1 outer product); the rejection
// projector reuses the shape without the trace-1 normalization.
struct DensityOperator {
    Eigen::Index mind_states = 0;
    std::vector<Eigen::MatrixXd> blocks;

    Eigen::Index size() const { return static_cast<Eigen::Index>(blocks.size()); }
    double entry(Eigen::Index s, Eigen::Index k, Eigen::Index s2, Eigen::Index k2) const;
    double trace() const;
    Eigen::MatrixXd dense() const;
};

// Where synthesized rows place their mass. Defaults follow the canonical layout
// (rejected pair at mind indices 0 and 1, accepted mass at index 2), degraded
// for K < 3 where only the structurally used slots must exist.
struct SynthesisLayout {
    Eigen::Index rejected_first = 0;
    Eigen::Index rejected_second = 1;
    Eigen::Index accepted = 2;
};

// Classical share of the rejection probability: sum of squared amplitudes over
// the rejected mind indices (0-based). Indices must be unique and in range.
double utility_factor(const CoefficientRow& row, const std::vector<Eigen::Index>& rejected);

// Interference share: sum of cross products amplitude_k * amplitude_k' over
// distinct rejected index pairs.
double structural_attraction(const CoefficientRow& row, const std::vector<Eigen::Index>& rejected);

// Calibration rule tying the attraction factor to the utility factor:
// zeta * min{u, 1-u}, zeta in [-1,1].
double calibrated_attraction(double u, double zeta);

// Builds the K-amplitude row realizing utility factor u and attraction factor q
// exactly: amplitudes (sqrt(u+q)+sqrt(u-q))/2 and (sqrt(u+q)-sqrt(u-q))/2 on the
// rejected pair, sqrt(1-u) on the accepted slot, zero elsewhere. Requires |q| <= u;
// K >= 3 when 0 < u < 1, K >= 2 when u = 1, K >= 1 when u = 0.
CoefficientRow synthesize_coefficients(double u, double q, Eigen::Index K, SynthesisLayout layout = {});

// Uninformed generator row: every amplitude 1/sqrt(K).
CoefficientRow uniform_prospect(Eigen::Index K);

// Row with amplitude 1 at `index`, 0 elsewhere.
CoefficientRow one_hot_row(Eigen::Index K, Eigen::Index index);

// Mixed strategy as a density operator: block s is pmf(s) * row_s * row_s^T.
// Rows for zero-mass signals may be empty (size-0); a missing row under positive
// mass is an error, as is a non-unit row.
DensityOperator assemble_density(const Eigen::VectorXd& pmf, const std::vector<CoefficientRow>& rows);

// Shape and unit-norm checks for both coefficient matrices.
void validate_plan(const ProspectPlan& plan);

}  // namespace travesty
