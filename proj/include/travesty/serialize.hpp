#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "travesty/dynamic_game.hpp"
#include "travesty/equilibrium.hpp"
#include "travesty/metrics.hpp"
#include "travesty/traffic_ingest.hpp"

namespace travesty {

using Json = nlohmann::ordered_json;

// Output numbers carry 6 significant digits by default; full precision switches
// to 17-digit decimal strings so no bits are lost to JSON number parsing.
struct NumberFormat {
    bool full_precision = false;
};

// Rounds to 6 significant decimal digits (identity for 0, infinities, NaN).
double round_to_6_digits(double value);

// JSON scalar under the active format. Infinities become the strings
// "inf" / "-inf" in both modes since JSON has no literal for them.
Json json_number(double value, const NumberFormat& format = {});

std::string to_string(TrueType type);
std::string to_string(U0Convention convention);
TrueType true_type_from_string(const std::string& name);
U0Convention u0_convention_from_string(const std::string& name);

// {"K":, "signals": [...], "a": {signal: [K]}, "b": {signal: [K]}}
Json plan_to_json(const ProspectPlan& plan, const NumberFormat& format = {});
ProspectPlan plan_from_json(const Json& json);

// {"beta": , "rejected": [[signal, k], ...]}
Json rule_to_json(const DecisionRule& rule, const std::vector<std::string>& signals,
                  const NumberFormat& format = {});

// {"beta","zeta","belief":{"pH1","pH0"},"tau":{s:},"u1":{},"u0":{},"q1":{},
//  "classical_rejection":[...],"plan":{...}}
Json solution_to_json(const EquilibriumSolution& sol, const NumberFormat& format = {});

Json model_to_json(const SignalModel& model, const NumberFormat& format = {});
Json belief_to_json(const Belief& belief, const NumberFormat& format = {});
Json config_to_json(const GameConfig& config, const NumberFormat& format = {});

// CSV with header zeta,beta,PF_quantum,PD_quantum,PF_classical,PD_classical,QA,
// one row per grid point in sweep order.
std::string roc_to_csv(const std::vector<RatePoint>& points);

// JSON-lines trace: a meta line echoing the full configuration, then one line
// per stage record (and a final abort line when the run stopped early).
std::string trace_to_jsonl(const GameTrace& trace, const SignalModel& model, const NumberFormat& format = {});

// Ingest result: counts, estimated belief/model, success rates, and the
// comparison against the quoted rounded parameters (the 0.714-vs-0.719 gap is
// reported explicitly, not folded into either value).
Json ingest_report_json(const TrafficSummary& summary, const Belief& belief, const SignalModel& model,
                        const NumberFormat& format = {});

// FNV-1a 64-bit content digest, rendered as "fnv1a64:<16 hex digits>".
std::string content_digest(const std::string& content);

}  // namespace travesty
