// travesty: command-line front end for the decoy-signaling solver.
// Subcommands: solve (static equilibrium), roc (beta x zeta sweep),
// simulate (multi-stage game trace), ingest (traffic-count model estimation).
// Exit codes: 0 success, 1 domain error, 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "travesty/serialize.hpp"
#include "travesty/svg.hpp"
#include "travesty/traffic_ingest.hpp"

namespace fs = std::filesystem;
using travesty::Belief;
using travesty::Json;
using travesty::NumberFormat;
using travesty::SignalModel;

namespace {

constexpr const char* kToolVersion = "travesty 1.0.0";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// start:stop:step (start inclusive; stop kept when a grid point lands on it
// within floating tolerance), or a comma-separated list, or a single value.
std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> values;
    const auto to_double = [&](const std::string& text) {
        try {
            std::size_t used = 0;
            const double value = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return value;
        } catch (const std::exception&) {
            throw UsageError("malformed number '" + text + "' in grid '" + spec + "'");
        }
    };

    if (spec.find(':') != std::string::npos) {
        std::istringstream in(spec);
        std::string start_text, stop_text, step_text;
        if (!std::getline(in, start_text, ':') || !std::getline(in, stop_text, ':') ||
            !std::getline(in, step_text) || step_text.empty())
            throw UsageError("grid '" + spec + "' must follow start:stop:step");
        const double start = to_double(start_text);
        const double stop = to_double(stop_text);
        const double step = to_double(step_text);
        if (step <= 0.0) throw UsageError("grid step must be positive");
        if (stop < start) throw UsageError("grid stop must not precede start");
        for (long k = 0;; ++k) {
            const double value = start + static_cast<double>(k) * step;
            if (value > stop + step * 1e-9) break;
            values.push_back(value);
        }
        return values;
    }

    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) values.push_back(to_double(item));
    if (values.empty()) throw UsageError("empty grid '" + spec + "'");
    return values;
}

void require_beta(double beta) {
    if (!(beta > 0.0 && beta < 1.0)) throw UsageError("beta must lie in (0,1), got " + std::to_string(beta));
}

void require_zeta(double zeta) {
    if (!(zeta >= -1.0 && zeta <= 1.0)) throw UsageError("zeta must lie in [-1,1], got " + std::to_string(zeta));
}

void require_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) throw UsageError(std::string(name) + " must lie in [0,1]");
}

std::string read_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw travesty::Error("cannot open '" + path + "'");
    std::ostringstream content;
    content << file.rdbuf();
    return content.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw travesty::Error("cannot write '" + path.string() + "'");
    file << content;
}

// Options shared by the model-consuming subcommands.
struct ModelArgs {
    double theta1 = -1.0;
    double theta0 = -1.0;
    std::string model_csv;
    double ph1 = -1.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--theta1", theta1, "Decoy-side Bernoulli parameter f1(1)");
        cmd->add_option("--theta0", theta0, "Normal-side Bernoulli parameter f0(1)");
        cmd->add_option("--model-csv", model_csv, "Signal model CSV (header signal,f1,f0)");
        cmd->add_option("--ph1", ph1, "Prior probability of the decoy type")->required();
    }

    SignalModel resolve(Json& digests) const {
        if (!model_csv.empty()) {
            const std::string content = read_file(model_csv);
            digests[model_csv] = travesty::content_digest(content);
            std::istringstream in(content);
            return travesty::read_model_csv(in);
        }
        if (theta1 < 0.0 || theta0 < 0.0)
            throw UsageError("either --model-csv or both --theta1 and --theta0 are required");
        require_probability(theta1, "theta1");
        require_probability(theta0, "theta0");
        return travesty::bernoulli_model(theta1, theta0);
    }

    Belief belief() const {
        require_probability(ph1, "ph1");
        return Belief{ph1, 1.0 - ph1};
    }

    Json echo(const NumberFormat& format) const {
        Json json;
        json["theta1"] = theta1 < 0.0 ? Json(nullptr) : travesty::json_number(theta1, format);
        json["theta0"] = theta0 < 0.0 ? Json(nullptr) : travesty::json_number(theta0, format);
        json["model_csv"] = model_csv;
        json["ph1"] = travesty::json_number(ph1, format);
        return json;
    }
};

struct OutputArgs {
    std::string out_dir = ".";
    bool dry_run = false;
    bool full_precision = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();
        cmd->add_flag("--dry-run", dry_run, "Print the resolved configuration and write nothing");
        cmd->add_flag("--full-precision", full_precision, "Emit JSON numbers as 17-digit decimal strings");
    }

    NumberFormat format() const { return NumberFormat{full_precision}; }
};

Json make_manifest(const std::string& command, Json resolved_config, Json input_digests,
                   const std::vector<std::string>& outputs) {
    Json manifest;
    manifest["command"] = command;
    manifest["tool_version"] = kToolVersion;
    manifest["resolved_config"] = std::move(resolved_config);
    manifest["input_digests"] = std::move(input_digests);
    manifest["outputs"] = outputs;
    return manifest;
}

// Dry runs print the manifest and stop; real runs get their output directory.
bool handle_dry_run(const OutputArgs& output, const Json& manifest) {
    if (output.dry_run) {
        std::cout << manifest.dump(2) << '\n';
        return true;
    }
    fs::create_directories(output.out_dir);
    return false;
}

void emit(const OutputArgs& output, const std::string& command, const Json& manifest,
          const std::vector<std::pair<std::string, std::string>>& files) {
    for (const auto& [name, content] : files) write_file(fs::path(output.out_dir) / name, content);
    write_file(fs::path(output.out_dir) / (command + ".manifest.json"), manifest.dump(2) + "\n");
}

void run_solve(const ModelArgs& model_args, const OutputArgs& output, double beta, double zeta, Eigen::Index K) {
    require_beta(beta);
    require_zeta(zeta);
    const NumberFormat format = output.format();

    Json digests = Json::object();
    const SignalModel model = model_args.resolve(digests);
    Json config = model_args.echo(format);
    config["beta"] = travesty::json_number(beta, format);
    config["zeta"] = travesty::json_number(zeta, format);
    config["K"] = K;
    config["out"] = output.out_dir;
    config["full_precision"] = output.full_precision;

    const Json manifest = make_manifest("solve", config, digests, {"solve.json"});
    if (handle_dry_run(output, manifest)) return;

    const travesty::EquilibriumSolution sol = travesty::solve_static(model_args.belief(), beta, zeta, K, model);
    const Json solution = travesty::solution_to_json(sol, format);
    std::cout << solution.dump(2) << '\n';
    emit(output, "solve", manifest, {{"solve.json", solution.dump(2) + "\n"}});
}

void run_roc(const ModelArgs& model_args, const OutputArgs& output, const std::string& zeta_spec,
             const std::string& beta_spec, Eigen::Index K, bool plot) {
    const std::vector<double> zetas = parse_grid(zeta_spec);
    const std::vector<double> betas = parse_grid(beta_spec);
    for (double zeta : zetas) require_zeta(zeta);
    for (double beta : betas) require_beta(beta);
    const NumberFormat format = output.format();

    Json digests = Json::object();
    const SignalModel model = model_args.resolve(digests);
    Json config = model_args.echo(format);
    config["zeta"] = zeta_spec;
    config["beta_grid"] = beta_spec;
    config["K"] = K;
    config["plot"] = plot;
    config["out"] = output.out_dir;
    config["full_precision"] = output.full_precision;

    std::vector<std::string> outputs{"roc.csv"};
    if (plot) outputs.push_back("roc.svg");
    const Json manifest = make_manifest("roc", config, digests, outputs);
    if (handle_dry_run(output, manifest)) return;

    const auto points = travesty::roc_sweep(model, model_args.belief(), zetas, betas, K);
    std::vector<std::pair<std::string, std::string>> files{{"roc.csv", travesty::roc_to_csv(points)}};
    if (plot) files.push_back({"roc.svg", travesty::roc_svg(points)});
    emit(output, "roc", manifest, files);
    std::cout << "wrote " << (fs::path(output.out_dir) / "roc.csv").string() << " (" << points.size() << " rows)\n";
}

void run_simulate(const ModelArgs& model_args, const OutputArgs& output, double beta, double zeta, Eigen::Index K,
                  Eigen::Index horizon, std::uint64_t seed, const std::string& true_type,
                  const std::string& convention, bool plot) {
    require_beta(beta);
    require_zeta(zeta);
    if (horizon < 1) throw UsageError("horizon must be at least 1");
    const NumberFormat format = output.format();

    travesty::GameConfig game;
    game.horizon = horizon;
    game.beta_schedule.assign(static_cast<std::size_t>(horizon), beta);
    game.zeta = zeta;
    game.K = K;
    game.seed = seed;
    try {
        game.true_type = travesty::true_type_from_string(true_type);
        game.u0_convention = travesty::u0_convention_from_string(convention);
    } catch (const travesty::ArgumentError& error) {
        throw UsageError(error.what());
    }

    Json digests = Json::object();
    const SignalModel model = model_args.resolve(digests);
    Json config = model_args.echo(format);
    config["game"] = travesty::config_to_json(game, format);
    config["plot"] = plot;
    config["out"] = output.out_dir;
    config["full_precision"] = output.full_precision;

    std::vector<std::string> outputs{"trace.jsonl"};
    if (plot) outputs.push_back("trace.svg");
    const Json manifest = make_manifest("simulate", config, digests, outputs);
    if (handle_dry_run(output, manifest)) return;

    const travesty::GameTrace trace = travesty::simulate(game, model, model_args.belief());
    std::vector<std::pair<std::string, std::string>> files{
        {"trace.jsonl", travesty::trace_to_jsonl(trace, model, format)}};
    if (plot) files.push_back({"trace.svg", travesty::trace_svg(trace, model)});
    emit(output, "simulate", manifest, files);

    std::cout << "wrote " << (fs::path(output.out_dir) / "trace.jsonl").string() << " (" << trace.stages.size()
              << " stages" << (trace.aborted ? ", aborted: " + trace.abort_reason : "") << ")\n";
}

void run_ingest(const OutputArgs& output, const std::string& input, int label_col, int login_col,
                const std::string& delimiter, bool strict, const std::vector<std::string>& attack_labels) {
    if (delimiter.size() != 1) throw UsageError("delimiter must be a single character");
    if (label_col < 0 || login_col < 0) throw UsageError("column indices must be nonnegative");
    const NumberFormat format = output.format();

    travesty::RecordSchema schema;
    schema.label_column = label_col;
    schema.login_column = login_col;
    schema.delimiter = delimiter[0];
    schema.strict = strict;
    schema.attack_labels.insert(attack_labels.begin(), attack_labels.end());

    Json config;
    config["input"] = input;
    config["label_col"] = label_col;
    config["login_col"] = login_col;
    config["delimiter"] = delimiter;
    config["strict"] = strict;
    config["attack_labels"] = attack_labels;
    config["out"] = output.out_dir;
    config["full_precision"] = output.full_precision;

    Json manifest = make_manifest("ingest", config, Json::object(), {"ingest.json"});
    if (output.dry_run) {
        std::cout << manifest.dump(2) << '\n';
        return;
    }

    const std::string content = travesty::load_text_auto(input);
    manifest["input_digests"][input] = travesty::content_digest(content);
    fs::create_directories(output.out_dir);

    std::istringstream in(content);
    const travesty::TrafficSummary summary = travesty::parse_records(in, schema);
    const auto [belief, model] = travesty::estimate_model(summary);
    const Json report = travesty::ingest_report_json(summary, belief, model, format);
    std::cout << report.dump(2) << '\n';
    emit(output, "ingest", manifest, {{"ingest.json", report.dump(2) + "\n"}});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solver and simulator for the decoy/normal-sensor signaling game"};
    app.require_subcommand(1);

    auto* solve = app.add_subcommand("solve", "Static equilibrium at one (beta, zeta) point");
    ModelArgs solve_model;
    OutputArgs solve_output;
    double solve_beta = 0.4, solve_zeta = 0.0;
    Eigen::Index solve_K = 4;
    solve_model.attach(solve);
    solve_output.attach(solve);
    solve->add_option("--beta", solve_beta, "False-alarm tolerance in (0,1)")->required();
    solve->add_option("--zeta", solve_zeta, "Calibration parameter in [-1,1]")->capture_default_str();
    solve->add_option("--K", solve_K, "Mind-space size (>= 3)")->capture_default_str();
    solve->callback([&] { run_solve(solve_model, solve_output, solve_beta, solve_zeta, solve_K); });

    auto* roc = app.add_subcommand("roc", "Detection-rate sweep over a beta grid and zeta list");
    ModelArgs roc_model;
    OutputArgs roc_output;
    std::string roc_zetas = "0.2", roc_betas = "0.01:0.99:0.01";
    Eigen::Index roc_K = 4;
    bool roc_plot = false;
    roc_model.attach(roc);
    roc_output.attach(roc);
    roc->add_option("--zeta", roc_zetas, "Comma list of calibration values")->capture_default_str();
    roc->add_option("--beta-grid", roc_betas, "start:stop:step grid or comma list")->capture_default_str();
    roc->add_option("--K", roc_K, "Mind-space size (>= 3)")->capture_default_str();
    roc->add_flag("--plot", roc_plot, "Also write an SVG of the curves");
    roc->callback([&] { run_roc(roc_model, roc_output, roc_zetas, roc_betas, roc_K, roc_plot); });

    auto* simulate = app.add_subcommand("simulate", "Multi-stage game trace");
    ModelArgs sim_model;
    OutputArgs sim_output;
    double sim_beta = 0.4, sim_zeta = 0.5;
    Eigen::Index sim_K = 4, sim_horizon = 30;
    std::uint64_t sim_seed = 0;
    std::string sim_type = "decoy", sim_convention = "static";
    bool sim_plot = false;
    sim_model.attach(simulate);
    sim_output.attach(simulate);
    simulate->add_option("--beta", sim_beta, "Per-stage false-alarm tolerance")->capture_default_str();
    simulate->add_option("--zeta", sim_zeta, "Calibration parameter in [-1,1]")->capture_default_str();
    simulate->add_option("--K", sim_K, "Mind-space size (>= 3)")->capture_default_str();
    simulate->add_option("--horizon", sim_horizon, "Number of stages")->capture_default_str();
    simulate->add_option("--seed", sim_seed, "RNG seed (streams split per draw kind)")->capture_default_str();
    simulate->add_option("--true-type", sim_type, "decoy|normal")->capture_default_str();
    simulate->add_option("--u0-convention", sim_convention, "static|dynamic-paper")->capture_default_str();
    simulate->add_flag("--plot", sim_plot, "Also write an SVG of the trajectories");
    simulate->callback([&] {
        run_simulate(sim_model, sim_output, sim_beta, sim_zeta, sim_K, sim_horizon, sim_seed, sim_type,
                     sim_convention, sim_plot);
    });

    auto* ingest = app.add_subcommand("ingest", "Estimate the prior and Bernoulli model from connection records");
    OutputArgs ingest_output;
    std::string ingest_input, ingest_delimiter = ",";
    int ingest_label_col = 41, ingest_login_col = 11;
    bool ingest_strict = false;
    std::vector<std::string> ingest_attack_labels;
    ingest_output.attach(ingest);
    ingest->add_option("input", ingest_input, "Record file (gzip accepted)")->required();
    ingest->add_option("--label-col", ingest_label_col, "0-based label column")->capture_default_str();
    ingest->add_option("--login-col", ingest_login_col, "0-based login-success column")->capture_default_str();
    ingest->add_option("--delimiter", ingest_delimiter, "Field delimiter")->capture_default_str();
    ingest->add_flag("--strict", ingest_strict, "Fail on malformed rows instead of skipping them");
    ingest->add_option("--attack-label", ingest_attack_labels,
                       "Explicit attack label (repeatable; default: every non-normal label)");
    ingest->callback([&] {
        run_ingest(ingest_output, ingest_input, ingest_label_col, ingest_login_col, ingest_delimiter, ingest_strict,
                   ingest_attack_labels);
    });

    try {
        app.parse(argc, argv);
        return 0;
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& parse_error) {
        app.exit(parse_error);
        return 2;
    } catch (const UsageError& usage) {
        std::cerr << "usage error: " << usage.what() << '\n';
        return 2;
    } catch (const travesty::Error& domain) {
        std::cerr << "error: " << domain.what() << '\n';
        return 1;
    } catch (const std::exception& unexpected) {
        std::cerr << "internal error: " << unexpected.what() << '\n';
        return 1;
    }
}
