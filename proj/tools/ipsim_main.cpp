// ipsim: verification suites, benchmark runs, and closed-form cost reports
// for hybrid interaction-picture simulation protocols.
//
// Exit codes: 0 success, 1 failed checks or failed rows, 2 usage/config error.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "ipsim/bench.hpp"

namespace {

int cmd_verify(const std::string& suite, double tol, std::uint64_t seed,
               const std::string& out_dir) {
  std::vector<std::string> suites;
  if (suite == "all") {
    suites = ipsim::bench::verify_suites();
  } else {
    suites.push_back(suite);
  }
  bool all_pass = true;
  for (const auto& name : suites) {
    const ipsim::bench::VerifyReport rep = ipsim::bench::verify(name, tol, seed);
    std::cout << rep.to_text();
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      ipsim::bench::write_file(out_dir + "/" + name + ".json", rep.to_json());
    }
    all_pass = all_pass && rep.all_pass();
  }
  return all_pass ? 0 : 1;
}

int cmd_run(const std::string& config_path, const std::string& out_path,
            const std::string& format) {
  const ipsim::bench::ExperimentConfig cfg = ipsim::bench::load_config(config_path);
  const std::vector<ipsim::bench::ResultRow> rows = ipsim::bench::run(cfg);

  std::string payload;
  if (format == "csv") {
    payload = ipsim::bench::emit_csv(rows, cfg.emit_timing);
  } else if (format == "json") {
    payload = ipsim::bench::emit_json(rows, cfg.emit_timing);
  } else if (format == "svg") {
    payload = ipsim::bench::emit_svg(rows, cfg.sweep ? cfg.sweep->param : "");
  } else {
    throw ipsim::Error("run: unknown format '" + format + "'");
  }
  ipsim::bench::write_file(out_path, payload);

  std::size_t failed = 0;
  for (const auto& row : rows) {
    if (!row.status.empty()) {
      ++failed;
      std::cerr << "row " << row.model << "/" << row.protocol << ": "
                << row.status << "\n";
    }
  }
  std::cout << "rows " << rows.size() << ", failed " << failed << ", wrote "
            << out_path << "\n";
  return failed == 0 ? 0 : 1;
}

int cmd_resources(const std::string& model,
                  const std::vector<std::string>& kvs,
                  const std::string& format) {
  std::map<std::string, double> params;
  for (const auto& kv : kvs) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ipsim::Error("resources: --params expects K=V, got '" + kv + "'");
    }
    std::size_t used = 0;
    const double v = std::stod(kv.substr(eq + 1), &used);
    if (used != kv.size() - eq - 1) {
      throw ipsim::Error("resources: bad numeric value in '" + kv + "'");
    }
    params[kv.substr(0, eq)] = v;
  }
  const ipsim::CostReport rep = ipsim::gate_complexity_report(model, params);
  if (format != "json") {
    throw ipsim::Error("resources: unknown format '" + format + "'");
  }
  std::cout << rep.to_json();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hybrid interaction-picture simulation toolkit"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite;
  double tol = 1.0;
  std::uint64_t seed = 7;
  std::string out_dir;
  verify->add_option("--suite", suite, "suite name, or 'all'")->required();
  verify->add_option("--seed", seed, "base seed for randomized checks");
  verify->add_option("--tol", tol, "tolerance scale for numerical-noise checks");
  verify->add_option("--out", out_dir, "directory for per-suite JSON reports");

  auto* run = app.add_subcommand("run", "execute a benchmark config");
  std::string config_path, out_path, format = "csv";
  run->add_option("--config", config_path, "JSON experiment config")->required();
  run->add_option("--out", out_path, "output file")->required();
  run->add_option("--format", format, "csv | json | svg");

  auto* resources = app.add_subcommand("resources", "closed-form cost report");
  std::string model, res_format = "json";
  std::vector<std::string> kvs;
  resources->add_option("--model", model, "cost model key")->required();
  resources->add_option("--params", kvs, "K=V pairs");
  resources->add_option("--format", res_format, "json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(suite, tol, seed, out_dir);
    if (run->parsed()) return cmd_run(config_path, out_path, format);
    if (resources->parsed()) return cmd_resources(model, kvs, res_format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
