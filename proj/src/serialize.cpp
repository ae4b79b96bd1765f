#include "travesty/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace travesty {

namespace {

std::string printf_double(const char* spec, double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), spec, value);
    return buffer;
}

Json pmf_map(const std::vector<std::string>& signals, const Eigen::VectorXd& values, const NumberFormat& format) {
    Json map = Json::object();
    for (Eigen::Index s = 0; s < values.size(); ++s) map[signals[static_cast<std::size_t>(s)]] = json_number(values(s), format);
    return map;
}

}  // namespace

double round_to_6_digits(double value) {
    if (value == 0.0 || !std::isfinite(value)) return value;
    const double magnitude = std::floor(std::log10(std::abs(value)));
    const double scale = std::pow(10.0, 5.0 - magnitude);
    return std::round(value * scale) / scale;
}

Json json_number(double value, const NumberFormat& format) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (format.full_precision) return printf_double("%.17g", value);
    return round_to_6_digits(value);
}

std::string to_string(TrueType type) { return type == TrueType::Decoy ? "decoy" : "normal"; }

std::string to_string(U0Convention convention) {
    return convention == U0Convention::Static ? "static" : "dynamic-paper";
}

TrueType true_type_from_string(const std::string& name) {
    if (name == "decoy") return TrueType::Decoy;
    if (name == "normal") return TrueType::Normal;
    throw ArgumentError("unknown true type '" + name + "'");
}

U0Convention u0_convention_from_string(const std::string& name) {
    if (name == "static") return U0Convention::Static;
    if (name == "dynamic-paper") return U0Convention::DynamicPaper;
    throw ArgumentError("unknown u0 convention '" + name + "'");
}

Json plan_to_json(const ProspectPlan& plan, const NumberFormat& format) {
    Json json;
    json["K"] = plan.mind_states();
    json["signals"] = plan.signals;
    Json a = Json::object(), b = Json::object();
    for (Eigen::Index s = 0; s < plan.size(); ++s) {
        Json a_row = Json::array(), b_row = Json::array();
        for (Eigen::Index k = 0; k < plan.mind_states(); ++k) {
            a_row.push_back(json_number(plan.a(s, k), format));
            b_row.push_back(json_number(plan.b(s, k), format));
        }
        a[plan.signals[static_cast<std::size_t>(s)]] = std::move(a_row);
        b[plan.signals[static_cast<std::size_t>(s)]] = std::move(b_row);
    }
    json["a"] = std::move(a);
    json["b"] = std::move(b);
    return json;
}

namespace {

double number_from_json(const Json& value) {
    if (value.is_string()) {
        const std::string& text = value.get_ref<const std::string&>();
        if (text == "inf") return std::numeric_limits<double>::infinity();
        if (text == "-inf") return -std::numeric_limits<double>::infinity();
        return std::stod(text);
    }
    return value.get<double>();
}

}  // namespace

ProspectPlan plan_from_json(const Json& json) {
    ProspectPlan plan;
    const auto K = json.at("K").get<Eigen::Index>();
    plan.signals = json.at("signals").get<std::vector<std::string>>();
    const auto S = static_cast<Eigen::Index>(plan.signals.size());
    plan.a = Eigen::MatrixXd::Zero(S, K);
    plan.b = Eigen::MatrixXd::Zero(S, K);
    for (Eigen::Index s = 0; s < S; ++s) {
        const auto& a_row = json.at("a").at(plan.signals[static_cast<std::size_t>(s)]);
        const auto& b_row = json.at("b").at(plan.signals[static_cast<std::size_t>(s)]);
        if (static_cast<Eigen::Index>(a_row.size()) != K || static_cast<Eigen::Index>(b_row.size()) != K)
            throw ValidationError("plan rows must carry exactly K amplitudes");
        for (Eigen::Index k = 0; k < K; ++k) {
            plan.a(s, k) = number_from_json(a_row[static_cast<std::size_t>(k)]);
            plan.b(s, k) = number_from_json(b_row[static_cast<std::size_t>(k)]);
        }
    }
    validate_plan(plan);
    return plan;
}

Json rule_to_json(const DecisionRule& rule, const std::vector<std::string>& signals, const NumberFormat& format) {
    Json json;
    json["beta"] = json_number(rule.beta, format);
    Json rejected = Json::array();
    for (const auto& [s, k] : rule.rejected)
        rejected.push_back(Json::array({signals[static_cast<std::size_t>(s)], k}));
    json["rejected"] = std::move(rejected);
    return json;
}

Json solution_to_json(const EquilibriumSolution& sol, const NumberFormat& format) {
    Json json;
    json["beta"] = json_number(sol.beta, format);
    json["zeta"] = json_number(sol.zeta, format);
    json["belief"] = belief_to_json(sol.belief, format);
    json["tau"] = pmf_map(sol.plan.signals, sol.tau, format);
    json["u1"] = pmf_map(sol.plan.signals, sol.u1, format);
    json["u0"] = pmf_map(sol.plan.signals, sol.u0, format);
    json["q1"] = pmf_map(sol.plan.signals, sol.q1, format);
    Json rejection = Json::array();
    for (Eigen::Index s : sol.classical_rejection) rejection.push_back(sol.plan.signals[static_cast<std::size_t>(s)]);
    json["classical_rejection"] = std::move(rejection);
    json["plan"] = plan_to_json(sol.plan, format);
    return json;
}

Json model_to_json(const SignalModel& model, const NumberFormat& format) {
    Json json;
    json["signals"] = model.signals;
    json["f1"] = pmf_map(model.signals, model.f1, format);
    json["f0"] = pmf_map(model.signals, model.f0, format);
    return json;
}

Json belief_to_json(const Belief& belief, const NumberFormat& format) {
    Json json;
    json["pH1"] = json_number(belief.pH1, format);
    json["pH0"] = json_number(belief.pH0, format);
    return json;
}

Json config_to_json(const GameConfig& config, const NumberFormat& format) {
    Json json;
    json["horizon"] = config.horizon;
    json["true_type"] = to_string(config.true_type);
    Json schedule = Json::array();
    for (double beta : config.beta_schedule) schedule.push_back(json_number(beta, format));
    json["beta_schedule"] = std::move(schedule);
    json["zeta"] = json_number(config.zeta, format);
    json["K"] = config.K;
    json["seed"] = config.seed;
    json["u0_convention"] = to_string(config.u0_convention);
    return json;
}

std::string roc_to_csv(const std::vector<RatePoint>& points) {
    std::ostringstream csv;
    csv << "zeta,beta,PF_quantum,PD_quantum,PF_classical,PD_classical,QA\n";
    for (const auto& point : points) {
        csv << printf_double("%.6g", point.zeta) << ',' << printf_double("%.6g", point.beta) << ','
            << printf_double("%.6g", point.PF) << ',' << printf_double("%.6g", point.PD) << ','
            << printf_double("%.6g", point.PFbar) << ',' << printf_double("%.6g", point.PDbar) << ','
            << printf_double("%.6g", point.QA) << '\n';
    }
    return csv.str();
}

std::string trace_to_jsonl(const GameTrace& trace, const SignalModel& model, const NumberFormat& format) {
    std::ostringstream out;
    Json meta;
    meta["type"] = "meta";
    meta["config"] = config_to_json(trace.config, format);
    meta["model"] = model_to_json(model, format);
    meta["belief0"] = belief_to_json(trace.belief0, format);
    // Two belief conventions are in play: stage thresholds tau track the running
    // posterior, while the cumulative decision threshold stays at the initial prior.
    meta["stage_tau_belief"] = "posterior";
    meta["cumulative_threshold_belief"] = "initial-prior";
    out << meta.dump() << '\n';

    for (const auto& record : trace.stages) {
        Json line;
        line["type"] = "stage";
        line["stage"] = record.stage;
        line["signal"] = model.signals[static_cast<std::size_t>(record.signal)];
        line["mind_index"] = record.mind;
        line["tau"] = pmf_map(model.signals, record.tau, format);
        line["u1"] = pmf_map(model.signals, record.u1, format);
        line["u0"] = pmf_map(model.signals, record.u0, format);
        line["belief_before"] = belief_to_json(record.belief_before, format);
        line["belief_after"] = belief_to_json(record.belief_after, format);
        line["decision"] = record.decision;
        line["cumulative_ratio"] = json_number(record.cumulative_ratio, format);
        out << line.dump() << '\n';
    }
    if (trace.aborted) {
        Json line;
        line["type"] = "abort";
        line["reason"] = trace.abort_reason;
        out << line.dump() << '\n';
    }
    return out.str();
}

Json ingest_report_json(const TrafficSummary& summary, const Belief& belief, const SignalModel& model,
                        const NumberFormat& format) {
    Json json;
    Json counts;
    counts["total_records"] = summary.total_records;
    counts["attack_records"] = summary.attack_records;
    counts["normal_records"] = summary.normal_records;
    counts["attack_login_success"] = summary.attack_login_success;
    counts["normal_login_success"] = summary.normal_login_success;
    counts["skipped_rows"] = summary.skipped_rows;
    json["summary"] = std::move(counts);
    json["belief"] = belief_to_json(belief, format);
    json["model"] = model_to_json(model, format);

    const double attack_rate = attack_success_rate(summary);
    const double normal_rate = normal_success_rate(summary);
    Json rates;
    rates["attack_login_success_rate"] = json_number(attack_rate, format);
    rates["normal_login_success_rate"] = json_number(normal_rate, format);
    json["rates"] = std::move(rates);

    Json quoted;
    quoted["theta1"] = json_number(kQuotedTheta1, format);
    quoted["theta0"] = json_number(kQuotedTheta0, format);
    quoted["pH1"] = json_number(kQuotedPriorH1, format);
    quoted["theta0_vs_normal_success_gap"] = json_number(kQuotedTheta0 - normal_rate, format);
    quoted["note"] =
        "the count-derived normal login success rate does not reproduce the quoted rounded theta0; "
        "both values are reported and the count-derived model is the one returned";
    json["quoted_reference"] = std::move(quoted);
    return json;
}

std::string content_digest(const std::string& content) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char byte : content) {
        hash ^= byte;
        hash *= 0x100000001b3ULL;
    }
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "fnv1a64:%016llx", static_cast<unsigned long long>(hash));
    return buffer;
}

}  // namespace travesty
