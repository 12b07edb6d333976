#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include "ipsim/bench.hpp"
#include "json.hpp"

using namespace ipsim;
using namespace ipsim::bench;

namespace {

const char* kSweepConfig = R"({
  "schema": 1,
  "model": {"kind": "random", "N": 2, "terms": 3, "frame": ["H_1"]},
  "protocol": {"kind": "hybrid_tq"},
  "t": 0.5,
  "eps": 0.05,
  "seed": 9,
  "sweep": {"param": "r", "values": [1, 2, 4]}
})";

}  // namespace

TEST_SUITE("bench") {

TEST_CASE("config parsing applies defaults and validates fields") {
  const ExperimentConfig cfg = parse_config(R"({"schema": 1})");
  CHECK(cfg.model.kind == "random");
  CHECK(cfg.protocol.kind == "exact");
  CHECK(cfg.t == 1.0);
  CHECK(cfg.eps == 0.01);
  CHECK(cfg.seed == 1);
  CHECK(!cfg.emit_timing);
  CHECK(!cfg.sweep.has_value());

  CHECK_THROWS_AS(parse_config("not json"), Error);
  CHECK_THROWS_AS(parse_config(R"({"schema": 2})"), Error);
  CHECK_THROWS_AS(parse_config(R"({"schema": 1, "t": "soon"})"), Error);
  CHECK_THROWS_AS(parse_config(R"({"schema": 1, "protocol": {"kind": "warp"}})"),
                  Error);
  CHECK_THROWS_AS(parse_config(R"({"schema": 1, "model": {"kind": "banana"}})"),
                  Error);
  CHECK_THROWS_AS(
      parse_config(R"({"schema": 1, "sweep": {"param": "flavor", "values": [1]}})"),
      Error);
  CHECK_THROWS_AS(
      parse_config(R"({"schema": 1, "sweep": {"param": "t", "values": []}})"),
      Error);
  CHECK_THROWS_AS(parse_config(R"({"schema": 1, "unknown_key": 3})"), Error);
}

TEST_CASE("config files round-trip through load_config") {
  const std::string path = "bench_test_config.json";
  write_file(path, kSweepConfig);
  const ExperimentConfig cfg = load_config(path);
  CHECK(cfg.model.frame == std::vector<std::string>{"H_1"});
  REQUIRE(cfg.sweep.has_value());
  CHECK(cfg.sweep->param == "r");
  CHECK(cfg.sweep->values.size() == 3);
  CHECK(cfg.sweep->values[2].number == 4.0);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_config("does_not_exist_anywhere.json"), Error);
}

TEST_CASE("runs are deterministic row-for-row") {
  const ExperimentConfig cfg = parse_config(kSweepConfig);
  const std::vector<ResultRow> a = run(cfg);
  const std::vector<ResultRow> b = run(cfg);
  REQUIRE(a.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(a[k].status.empty());
    CHECK(a[k].r == b[k].r);
    REQUIRE(a[k].error_lower.has_value());
    CHECK(*a[k].error_lower == *b[k].error_lower);
    CHECK(*a[k].error_upper == *b[k].error_upper);
    CHECK(*a[k].bound == *b[k].bound);
  }
  CHECK(emit_csv(a, false) == emit_csv(b, false));
  // Errors shrink as the budget grows.
  CHECK(*a[2].error_lower < *a[0].error_lower);
}

TEST_CASE("per-row failures are recorded without aborting the sweep") {
  ExperimentConfig cfg = parse_config(R"({
    "schema": 1,
    "model": {"kind": "random"},
    "protocol": {"kind": "trotter"},
    "sweep": {"param": "order", "values": [1, 3, 2]}
  })");
  const std::vector<ResultRow> rows = run(cfg);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].status.empty());
  CHECK(!rows[1].status.empty());  // order 3 is not a valid product formula
  CHECK(rows[2].status.empty());
  CHECK(!rows[1].error_lower.has_value());
}

TEST_CASE("csv header is pinned and timing is opt-in") {
  const ExperimentConfig cfg = parse_config(R"({"schema": 1})");
  const std::vector<ResultRow> rows = run(cfg);
  const std::string csv = emit_csv(rows, false);
  const std::string header = csv.substr(0, csv.find('\n'));
  CHECK(header ==
        "model,protocol,N,cutoff,a,g,m,lambda,mu,theta,t,epsilon,r,"
        "error_lower,error_upper,bound,calls_prepare,calls_select,calls_Wl,"
        "calls_Wk,toffoli,wall_ms,seed");
  // Without timing the wall_ms column exists but stays empty.
  const std::string row1 = csv.substr(csv.find('\n') + 1);
  CHECK(row1.find(",,") != std::string::npos);

  std::vector<ResultRow> timed = rows;
  timed[0].wall_ms = 12.5;
  const std::string with = emit_csv(timed, true);
  const std::string without = emit_csv(timed, false);
  CHECK(with.find("12.5") != std::string::npos);
  CHECK(without.find("12.5") == std::string::npos);
}

TEST_CASE("json emission parses and mirrors the rows") {
  ExperimentConfig cfg = parse_config(kSweepConfig);
  const std::vector<ResultRow> rows = run(cfg);
  const nlohmann::json j = nlohmann::json::parse(emit_json(rows, false));
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 3);
  CHECK(j[0].at("model") == "random");
  CHECK(j[0].at("protocol") == "hybrid_tq");
  CHECK(j[0].at("r").get<long long>() == *rows[0].r);
  CHECK(j[0].at("error_upper").get<double>() ==
        doctest::Approx(*rows[0].error_upper));
  CHECK(!j[0].contains("wall_ms"));   // timing disabled
  CHECK(!j[0].contains("status"));    // ok rows omit status
  CHECK(j[0].at("N").get<long long>() == 2);  // qubit count
  CHECK(!j[0].contains("cutoff"));    // lattice-only field stays absent

  ResultRow broken;
  broken.model = "random";
  broken.protocol = "trotter";
  broken.status = "boom";
  broken.seed = 3;
  const nlohmann::json jb = nlohmann::json::parse(emit_json({broken}, false));
  CHECK(jb[0].at("status") == "boom");
}

TEST_CASE("svg plots one series per protocol against the sweep parameter") {
  ExperimentConfig cfg = parse_config(R"({
    "schema": 1,
    "model": {"kind": "random", "frame": ["H_1"]},
    "protocol": {"kind": "hybrid_tq"},
    "t": 0.5, "eps": 0.05,
    "sweep": {"param": "protocol",
              "values": ["trotter", "qdrift", "hybrid_tq"]}
  })");
  const std::vector<ResultRow> rows = run(cfg);
  const std::string svg = emit_svg(rows, "protocol");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") == svg.size() - 7);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(svg.find("trotter") != std::string::npos);
  CHECK(svg.find("hybrid_tq") != std::string::npos);
  CHECK(emit_svg(rows, "protocol") == svg);  // deterministic

  ResultRow failed;
  failed.status = "broken";
  CHECK_THROWS_AS(emit_svg({failed}, "t"), Error);  // nothing plottable
}

TEST_CASE("verification suites are enumerable and strict about names") {
  const std::vector<std::string> suites = verify_suites();
  CHECK(suites.size() == 9);
  CHECK(std::find(suites.begin(), suites.end(), "norms") != suites.end());
  CHECK(std::find(suites.begin(), suites.end(), "resources") != suites.end());
  CHECK_THROWS_AS(verify("nope"), Error);
  CHECK_THROWS_AS(verify("norms", 0.0), Error);
}

TEST_CASE("one fast suite passes end to end and serializes") {
  const VerifyReport rep = verify("norms");
  CHECK(rep.suite == "norms");
  CHECK(rep.all_pass());
  CHECK(!rep.checks.empty());
  const std::string text = rep.to_text();
  CHECK(text.find("PASS") != std::string::npos);
  CHECK(text.find("ALL PASS") != std::string::npos);
  const nlohmann::json j = nlohmann::json::parse(rep.to_json());
  CHECK(j.at("suite") == "norms");
  CHECK(j.at("all_pass").get<bool>());
  CHECK(j.at("checks").size() == rep.checks.size());
  for (const auto& c : j.at("checks")) {
    CHECK(c.contains("name"));
    CHECK(c.contains("anchor"));
    CHECK(c.contains("measured"));
    CHECK(c.contains("bound"));
    CHECK(c.at("pass").is_boolean());
  }
}

TEST_CASE("write_file creates parents and reports unwritable paths") {
  const std::string nested = "bench_test_dir/sub/out.txt";
  write_file(nested, "hello");
  std::ifstream in(nested);
  std::string content;
  std::getline(in, content);
  CHECK(content == "hello");
  in.close();
  std::remove(nested.c_str());
  CHECK_THROWS_AS(write_file("/proc/definitely/not/writable/x.txt", "y"), Error);
}

}  // TEST_SUITE
