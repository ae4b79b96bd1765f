#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "helpers.hpp"
#include "travesty/serialize.hpp"

using namespace travesty;

namespace {
const Belief kCasePrior{0.802, 0.198};
}

TEST_SUITE("serialize") {

TEST_CASE("six-significant-digit rounding") {
    CHECK(round_to_6_digits(0.89509970) == doctest::Approx(0.895100).epsilon(1e-12));
    CHECK(round_to_6_digits(33.282870) == doctest::Approx(33.2829).epsilon(1e-12));
    CHECK(round_to_6_digits(0.0) == 0.0);
    CHECK(std::isinf(round_to_6_digits(std::numeric_limits<double>::infinity())));

    CHECK(json_number(std::numeric_limits<double>::infinity()) == Json("inf"));
    CHECK(json_number(-std::numeric_limits<double>::infinity()) == Json("-inf"));
    NumberFormat full{true};
    CHECK(json_number(0.1, full).is_string());
    CHECK(std::stod(json_number(0.1, full).get<std::string>()) == 0.1);
}

TEST_CASE("plan json round trip at full precision") {
    const SignalModel model = bernoulli_model(0.008, 0.719);
    const EquilibriumSolution sol = solve_static(kCasePrior, 0.4, 0.2, 4, model);
    const Json json = plan_to_json(sol.plan, NumberFormat{true});
    CHECK(json.at("K") == 4);
    CHECK(json.at("signals") == Json::array({"0", "1"}));

    const ProspectPlan parsed = plan_from_json(json);
    CHECK((parsed.a - sol.plan.a).cwiseAbs().maxCoeff() == 0.0);
    CHECK((parsed.b - sol.plan.b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("solution json carries exactly the documented keys") {
    const SignalModel model = bernoulli_model(0.008, 0.719);
    const EquilibriumSolution sol = solve_static(kCasePrior, 0.4, 0.2, 4, model);
    const Json json = solution_to_json(sol);

    const std::vector<std::string> expected{"beta", "zeta",  "belief",              "tau", "u1",
                                            "u0",   "q1",    "classical_rejection", "plan"};
    REQUIRE(json.size() == expected.size());
    std::size_t slot = 0;
    for (auto it = json.begin(); it != json.end(); ++it, ++slot) CHECK(it.key() == expected[slot]);

    CHECK(json.at("u1").at("0").get<double>() == doctest::Approx(0.8951).epsilon(1e-6));
    CHECK(json.at("classical_rejection") == Json::array({"0"}));
    CHECK(json.at("belief").at("pH1").get<double>() == doctest::Approx(0.802).epsilon(1e-12));
}

TEST_CASE("infinite tau serializes as a string sentinel") {
    const SignalModel edge = bernoulli_model(0.0, 0.5);
    const EquilibriumSolution sol = solve_static(kCasePrior, 0.4, 0.2, 4, edge);
    const Json json = solution_to_json(sol);
    CHECK(json.at("tau").at("1") == Json("inf"));
}

TEST_CASE("decision rule json") {
    DecisionRule rule;
    rule.beta = 0.4;
    rule.rejected = {{0, 0}, {0, 1}};
    const Json json = rule_to_json(rule, {"0", "1"});
    CHECK(json.at("beta").get<double>() == 0.4);
    CHECK(json.at("rejected") == Json::array({Json::array({"0", 0}), Json::array({"0", 1})}));
}

TEST_CASE("roc csv layout") {
    const SignalModel model = bernoulli_model(0.008, 0.719);
    const auto points = roc_sweep(model, kCasePrior, {0.05, 0.2}, {0.2, 0.4, 0.6});
    const std::string csv = roc_to_csv(points);
    std::istringstream lines(csv);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "zeta,beta,PF_quantum,PD_quantum,PF_classical,PD_classical,QA");
    int rows = 0;
    while (std::getline(lines, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 6);
}

TEST_CASE("trace jsonl shape") {
    const SignalModel model = bernoulli_model(0.008, 0.719);
    GameConfig config;
    config.horizon = 5;
    config.beta_schedule.assign(5, 0.4);
    config.zeta = 0.5;
    config.seed = 99;
    const GameTrace trace = simulate(config, model, kCasePrior);
    const std::string jsonl = trace_to_jsonl(trace, model);

    std::istringstream lines(jsonl);
    std::string line;
    REQUIRE(std::getline(lines, line));
    const Json meta = Json::parse(line);
    CHECK(meta.at("type") == "meta");
    CHECK(meta.at("config").at("horizon") == 5);
    CHECK(meta.at("config").at("u0_convention") == "static");
    CHECK(meta.at("cumulative_threshold_belief") == "initial-prior");

    int stage_lines = 0;
    while (std::getline(lines, line)) {
        const Json stage = Json::parse(line);
        CHECK(stage.at("type") == "stage");
        CHECK(stage.at("stage").get<int>() == ++stage_lines);
        CHECK(stage.at("belief_after").contains("pH1"));
    }
    CHECK(stage_lines == 5);
}

TEST_CASE("aborted trace ends with an abort line") {
    SignalModel model;
    model.signals = {"0", "1"};
    model.f1 = Eigen::Vector2d(1.0, 0.0);
    model.f0 = Eigen::Vector2d(0.0, 1.0);
    GameConfig config;
    config.horizon = 3;
    config.beta_schedule.assign(3, 0.4);
    config.true_type = TrueType::Normal;
    const GameTrace trace = simulate(config, model, Belief{1.0, 0.0});
    REQUIRE(trace.aborted);

    const std::string jsonl = trace_to_jsonl(trace, model);
    std::istringstream lines(jsonl);
    std::string line, last;
    while (std::getline(lines, line)) last = line;
    const Json abort = Json::parse(last);
    CHECK(abort.at("type") == "abort");
    CHECK_FALSE(abort.at("reason").get<std::string>().empty());
}

TEST_CASE("enum names round trip") {
    CHECK(true_type_from_string(to_string(TrueType::Decoy)) == TrueType::Decoy);
    CHECK(true_type_from_string(to_string(TrueType::Normal)) == TrueType::Normal);
    CHECK(u0_convention_from_string(to_string(U0Convention::DynamicPaper)) == U0Convention::DynamicPaper);
    CHECK_THROWS_AS(true_type_from_string("sensor"), ArgumentError);
    CHECK_THROWS_AS(u0_convention_from_string("classic"), ArgumentError);
}

TEST_CASE("content digest matches the FNV-1a test vector") {
    CHECK(content_digest("abc") == "fnv1a64:e71fa2190541574b");
    CHECK(content_digest("") == "fnv1a64:cbf29ce484222325");
}

}  // TEST_SUITE
