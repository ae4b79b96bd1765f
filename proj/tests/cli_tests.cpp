// End-to-end checks of the travesty binary: exit codes, file outputs,
// manifests, determinism, and the dry-run contract. Takes the binary path as
// argv[1] (wired up by ctest).

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>
#include <zlib.h>

#include "helpers.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

std::string g_binary;
int g_failures = 0;

void check(bool condition, const std::string& label) {
    if (condition) {
        std::cout << "  ok: " << label << '\n';
    } else {
        std::cout << "  FAILED: " << label << '\n';
        ++g_failures;
    }
}

int run(const std::string& args, const std::string& capture = "cli_work/last_output.txt") {
    const std::string command = g_binary + " " + args + " > " + capture + " 2>&1";
    const int status = std::system(command.c_str());
    if (status == -1) return -1;
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream file(path, std::ios::binary);
    std::ostringstream content;
    content << file.rdbuf();
    return content.str();
}

Json parse_file(const fs::path& path) { return Json::parse(slurp(path)); }

std::size_t line_count(const std::string& text) {
    std::size_t lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    return lines;
}

const std::string kCaseFlags = "--theta1 0.008 --theta0 0.719 --ph1 0.802";

void test_solve() {
    std::cout << "solve:\n";
    check(run("solve " + kCaseFlags + " --beta 0.4 --zeta 0.2 --K 4 --out cli_work/solve") == 0, "exit 0");
    const Json solution = parse_file("cli_work/solve/solve.json");
    check(std::abs(solution.at("u1").at("0").get<double>() - 0.8951) < 1e-9, "u1(0) = 0.895100 at six digits");
    check(solution.at("u1").at("1").get<double>() == 0.0, "u1(1) = 0");
    check(solution.at("classical_rejection") == Json::array({"0"}), "classical rejection names signal 0");

    const Json manifest = parse_file("cli_work/solve/solve.manifest.json");
    check(manifest.at("command") == "solve", "manifest names the command");
    check(manifest.contains("tool_version"), "manifest carries the tool version");
    check(manifest.at("resolved_config").at("beta").get<double>() == 0.4, "manifest echoes beta");
    check(manifest.at("resolved_config").at("K").get<int>() == 4, "manifest echoes the K default path");

    check(run("solve " + kCaseFlags + " --beta 0.4 --full-precision --out cli_work/solve_full") == 0,
          "full-precision exit 0");
    const Json full = parse_file("cli_work/solve_full/solve.json");
    check(full.at("u1").at("0").is_string(), "full precision uses decimal strings");
    check(std::abs(std::stod(full.at("u1").at("0").get<std::string>()) - 0.89509970) < 1e-7,
          "full-precision value round trips");

    {
        std::ofstream csv("cli_work/model.csv", std::ios::binary);
        csv << "signal,f1,f0\n0,0.992,0.281\n1,0.008,0.719\n";
    }
    check(run("solve --model-csv cli_work/model.csv --ph1 0.802 --beta 0.4 --zeta 0.2 --out cli_work/solve_csv") == 0,
          "model-csv path exit 0");
    const Json from_csv = parse_file("cli_work/solve_csv/solve.json");
    check(std::abs(from_csv.at("u1").at("0").get<double>() - 0.8951) < 1e-9, "model-csv solve matches");
    const Json csv_manifest = parse_file("cli_work/solve_csv/solve.manifest.json");
    check(csv_manifest.at("input_digests").contains("cli_work/model.csv"), "model digest recorded");
}

void test_usage_errors() {
    std::cout << "usage errors:\n";
    check(run("solve " + kCaseFlags + " --beta 1.5") == 2, "beta outside (0,1) exits 2");
    check(run("solve " + kCaseFlags + " --beta 0.4 --frobnicate") == 2, "unknown flag exits 2");
    check(run("solve --beta 0.4") == 2, "missing required flags exits 2");
    check(run("roc " + kCaseFlags + " --beta-grid 0.2:0.1:0.05") == 2, "backwards grid exits 2");
    check(run("frobnicate") == 2, "unknown subcommand exits 2");
    check(run("--help") == 0, "--help exits 0");
}

void test_domain_errors() {
    std::cout << "domain errors:\n";
    check(run("solve --model-csv cli_work/not_there.csv --ph1 0.8 --beta 0.4") == 1, "missing model file exits 1");
    check(run("solve --theta1 0.008 --theta0 0.719 --ph1 0 --beta 0.4") == 1, "degenerate belief exits 1");
    check(run("ingest cli_work/not_there.csv --out cli_work/i0") == 1, "missing record file exits 1");
}

void test_roc() {
    std::cout << "roc:\n";
    const std::string flags = "roc " + kCaseFlags + " --zeta 0.05,0.2,0.5 --beta-grid 0.01:0.99:0.01";
    check(run(flags + " --out cli_work/roc_a") == 0, "exit 0");
    const std::string csv = slurp("cli_work/roc_a/roc.csv");
    check(line_count(csv) == 1 + 3 * 99, "header plus 3 x 99 rows");
    check(csv.rfind("zeta,beta,PF_quantum,PD_quantum,PF_classical,PD_classical,QA\n", 0) == 0, "exact header");

    check(run(flags + " --out cli_work/roc_b") == 0, "second run exit 0");
    check(slurp("cli_work/roc_b/roc.csv") == csv, "byte-identical across reruns");

    check(run(flags + " --plot --out cli_work/roc_plot") == 0, "plot run exit 0");
    const std::string svg = slurp("cli_work/roc_plot/roc.svg");
    check(svg.find("P_F (classical)") != std::string::npos, "x axis label");
    check(svg.find("P_D (quantum)") != std::string::npos, "y axis label");
    check(svg.find("<polyline") != std::string::npos, "curves present");
}

void test_simulate() {
    std::cout << "simulate:\n";
    const std::string flags =
        "simulate " + kCaseFlags + " --beta 0.4 --zeta 0.5 --K 4 --horizon 30 --seed 77 --true-type decoy";
    check(run(flags + " --out cli_work/sim_a") == 0, "exit 0");
    const std::string jsonl = slurp("cli_work/sim_a/trace.jsonl");
    check(line_count(jsonl) == 31, "meta line plus 30 stages");

    std::istringstream lines(jsonl);
    std::string first;
    std::getline(lines, first);
    const Json meta = Json::parse(first);
    check(meta.at("type") == "meta", "meta header line");
    check(meta.at("config").at("seed").get<std::uint64_t>() == 77, "seed echoed");
    check(meta.at("config").at("true_type") == "decoy", "true type echoed");

    check(run(flags + " --out cli_work/sim_b") == 0, "second run exit 0");
    check(slurp("cli_work/sim_b/trace.jsonl") == jsonl, "byte-identical across reruns");

    check(run(flags + " --plot --out cli_work/sim_plot") == 0, "plot run exit 0");
    check(slurp("cli_work/sim_plot/trace.svg").find("<svg") != std::string::npos, "svg written");

    check(run("simulate " + kCaseFlags + " --true-type sensor") == 2, "bad true-type exits 2");
}

void test_ingest() {
    std::cout << "ingest:\n";
    const std::string records = travesty::testing::synthetic_records(523, 41, 311, 212);
    {
        std::ofstream file("cli_work/records.csv", std::ios::binary);
        file << records;
    }
    check(run("ingest cli_work/records.csv --label-col 2 --login-col 1 --out cli_work/ing_a") == 0, "exit 0");
    const Json report = parse_file("cli_work/ing_a/ingest.json");
    check(report.at("summary").at("attack_records") == 523, "attack count");
    check(report.at("summary").at("normal_login_success") == 212, "normal success count");
    check(std::abs(report.at("belief").at("pH1").get<double>() - 523.0 / 834.0) < 1e-6, "estimated prior");
    check(report.at("quoted_reference").contains("theta0_vs_normal_success_gap"), "theta0 gap is reported");

    gzFile gz = gzopen("cli_work/records.csv.gz", "wb");
    gzwrite(gz, records.data(), static_cast<unsigned>(records.size()));
    gzclose(gz);
    check(run("ingest cli_work/records.csv.gz --label-col 2 --login-col 1 --out cli_work/ing_gz") == 0,
          "gzip input exit 0");
    const Json gz_report = parse_file("cli_work/ing_gz/ingest.json");
    check(gz_report.at("summary") == report.at("summary"), "gzip and plain inputs agree");

    const Json manifest = parse_file("cli_work/ing_a/ingest.manifest.json");
    check(manifest.at("input_digests").contains("cli_work/records.csv"), "input digest recorded");

    check(run("ingest cli_work/records.csv --label-col 2 --login-col 1 --attack-label neptune. "
              "--out cli_work/ing_explicit") == 0,
          "explicit attack label exit 0");
    const Json explicit_report = parse_file("cli_work/ing_explicit/ingest.json");
    check(explicit_report.at("summary").at("attack_records") == 523, "explicit label keeps the attack class");

    check(run("ingest cli_work/records.csv --label-col 2 --login-col 1 --attack-label nosuch. "
              "--out cli_work/ing_skip") == 1,
          "attack set that matches nothing empties the class and exits 1");
}

void test_dry_run() {
    std::cout << "dry run:\n";
    check(run("solve " + kCaseFlags + " --beta 0.4 --dry-run --out cli_work/dry", "cli_work/dry_stdout.txt") == 0,
          "exit 0");
    const std::string printed = slurp("cli_work/dry_stdout.txt");
    check(printed.find("resolved_config") != std::string::npos, "prints the resolved config");
    check(!fs::exists("cli_work/dry"), "writes nothing");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_tests <path-to-travesty-binary>\n";
        return 2;
    }
    g_binary = argv[1];
    fs::remove_all("cli_work");
    fs::create_directories("cli_work");

    test_solve();
    test_usage_errors();
    test_domain_errors();
    test_roc();
    test_simulate();
    test_ingest();
    test_dry_run();

    if (g_failures == 0) {
        std::cout << "all cli checks passed\n";
        return 0;
    }
    std::cout << g_failures << " cli check(s) failed\n";
    return 1;
}
