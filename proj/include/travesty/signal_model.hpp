#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "travesty/errors.hpp"

namespace travesty {

// Finite signal alphabet with one pmf per hypothesis: f1 under H1 (decoy),
// f0 under H0 (normal sensor). Entries of f1/f0 are aligned with `signals`.
// Immutable after construction; safe to share across threads.
struct SignalModel {
    std::vector<std::string> signals;
    Eigen::VectorXd f1;
    Eigen::VectorXd f0;

    Eigen::Index size() const { return static_cast<Eigen::Index>(signals.size()); }
};

inline constexpr double kPmfMassTolerance = 1e-12;

// Two-signal Bernoulli model over the alphabet {"0", "1"} with
// f1(1) = theta1 and f0(1) = theta0.
SignalModel bernoulli_model(double theta1, double theta0);

// Throws ValidationError naming the offending pmf (and signal, for range
// violations) when either pmf fails to be a probability vector.
void validate(const SignalModel& model);

// Index of a signal label; throws ArgumentError for unknown labels.
Eigen::Index signal_index(const SignalModel& model, const std::string& signal);

// f1(s)/f0(s) with the conventions: +inf when f0(s)=0 < f1(s), and 0 whenever
// f1(s)=0 (the 0/0 case included — such a signal can never be sampled).
double likelihood_ratio(const SignalModel& model, Eigen::Index s);
double likelihood_ratio(const SignalModel& model, const std::string& signal);

// CSV exchange format: header `signal,f1,f0`, one row per signal.
// Duplicate signal identifiers are rejected. The parsed model is validated.
SignalModel read_model_csv(std::istream& in);
void write_model_csv(std::ostream& out, const SignalModel& model);

}  // namespace travesty
