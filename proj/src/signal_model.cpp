#include "travesty/signal_model.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace travesty {

namespace {

void check_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0))
        throw ValidationError(std::string(name) + " must lie in [0,1], got " + std::to_string(p));
}

}  // namespace

SignalModel bernoulli_model(double theta1, double theta0) {
    check_probability(theta1, "theta1");
    check_probability(theta0, "theta0");
    SignalModel model;
    model.signals = {"0", "1"};
    model.f1 = Eigen::Vector2d(1.0 - theta1, theta1);
    model.f0 = Eigen::Vector2d(1.0 - theta0, theta0);
    return model;
}

void validate(const SignalModel& model) {
    if (model.signals.empty()) throw ValidationError("signal model has an empty alphabet");
    if (model.f1.size() != model.size() || model.f0.size() != model.size())
        throw ValidationError("pmf length does not match the signal alphabet");

    const struct {
        const char* name;
        const Eigen::VectorXd& pmf;
    } pmfs[] = {{"f1", model.f1}, {"f0", model.f0}};

    for (const auto& [name, pmf] : pmfs) {
        for (Eigen::Index i = 0; i < pmf.size(); ++i) {
            if (!(pmf(i) >= 0.0 && pmf(i) <= 1.0))
                throw ValidationError(std::string(name) + "(" + model.signals[static_cast<std::size_t>(i)] +
                                      ") = " + std::to_string(pmf(i)) + " is outside [0,1]");
        }
        const double mass = pmf.sum();
        if (std::abs(mass - 1.0) > kPmfMassTolerance) {
            std::ostringstream msg;
            msg << name << " sums to " << mass << " (off by " << mass - 1.0 << ", tolerance " << kPmfMassTolerance
                << ")";
            throw ValidationError(msg.str());
        }
    }
}

Eigen::Index signal_index(const SignalModel& model, const std::string& signal) {
    for (std::size_t i = 0; i < model.signals.size(); ++i)
        if (model.signals[i] == signal) return static_cast<Eigen::Index>(i);
    throw ArgumentError("unknown signal '" + signal + "'");
}

double likelihood_ratio(const SignalModel& model, Eigen::Index s) {
    if (s < 0 || s >= model.size()) throw ArgumentError("signal index out of range");
    const double num = model.f1(s);
    const double den = model.f0(s);
    if (num == 0.0) return 0.0;
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    return num / den;
}

double likelihood_ratio(const SignalModel& model, const std::string& signal) {
    return likelihood_ratio(model, signal_index(model, signal));
}

SignalModel read_model_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty signal-model CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "signal,f1,f0") throw ParseError("expected header 'signal,f1,f0', got '" + line + "'", 1);

    SignalModel model;
    std::vector<double> f1, f0;
    std::unordered_set<std::string> seen;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string signal, v1, v0;
        if (!std::getline(row, signal, ',') || !std::getline(row, v1, ',') || !std::getline(row, v0))
            throw ParseError("expected three comma-separated fields", line_no);
        if (!seen.insert(signal).second) throw ParseError("duplicate signal identifier '" + signal + "'", line_no);
        try {
            std::size_t used = 0;
            const double p1 = std::stod(v1, &used);
            if (used != v1.size()) throw std::invalid_argument(v1);
            const double p0 = std::stod(v0, &used);
            if (used != v0.size()) throw std::invalid_argument(v0);
            model.signals.push_back(signal);
            f1.push_back(p1);
            f0.push_back(p0);
        } catch (const std::logic_error&) {
            throw ParseError("malformed probability value", line_no);
        }
    }
    if (model.signals.empty()) throw ParseError("signal-model CSV has no data rows");
    model.f1 = Eigen::Map<const Eigen::VectorXd>(f1.data(), static_cast<Eigen::Index>(f1.size()));
    model.f0 = Eigen::Map<const Eigen::VectorXd>(f0.data(), static_cast<Eigen::Index>(f0.size()));
    validate(model);
    return model;
}

void write_model_csv(std::ostream& out, const SignalModel& model) {
    out << "signal,f1,f0\n";
    out.precision(17);
    for (Eigen::Index i = 0; i < model.size(); ++i)
        out << model.signals[static_cast<std::size_t>(i)] << ',' << model.f1(i) << ',' << model.f0(i) << '\n';
}

}  // namespace travesty
