#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ipsim/constraints.hpp"
#include "ipsim/hybrid.hpp"
#include "ipsim/models.hpp"
#include "ipsim/resources.hpp"

namespace ipsim::bench {

// ---------------------------------------------------------------------------
// Experiment configuration (JSON, "schema": 1)
// ---------------------------------------------------------------------------

struct ModelSpec {
  std::string kind = "random";  // schwinger | neutrino | penalty | random
  SchwingerParams schwinger;
  NeutrinoParams neutrino;
  // penalty model: single-qubit-per-site free Hamiltonian with a diagonal
  // constraint projector; h_free "x" (sum of X_i) or "random".
  int penalty_qubits = 1;
  std::string penalty_h_free = "x";
  double lambda_pen = 10.0;
  // random model: seeded SumHamiltonian on `random_qubits` qubits.
  int random_qubits = 2;
  int random_terms = 3;
  std::vector<std::string> frame;  // empty = model default frame labels
};

struct ProtocolSpec {
  std::string kind = "exact";  // exact | trotter | qdrift | hybrid_tq |
                               // hybrid_qq | hybrid_tqq
  int order = 1;               // trotter
  long long r = 0;             // 0 = use each protocol's prescription
  std::string mode = "exact-channel";  // exact-channel | sampled
};

struct Caps {
  long long max_dim = 16384;
  long long max_r = 1000000;
  long long max_trajectories = 100000;
};

struct SweepValue {
  std::string text;  // as written in the config (used for protocol sweeps)
  double number = 0.0;
  bool is_number = false;
};

struct SweepSpec {
  std::string param;  // t | eps | r | order | trajectories | protocol |
                      // lambda | mu | theta | N | cutoff | a | g | m |
                      // lambda_pen
  std::vector<SweepValue> values;
};

struct ExperimentConfig {
  int schema = 1;
  ModelSpec model;
  ProtocolSpec protocol;
  double t = 1.0;
  double eps = 0.01;
  std::uint64_t seed = 1;
  int trajectories = 1;
  bool emit_timing = false;  // wall_ms stays empty unless enabled
  Caps caps;
  std::optional<SweepSpec> sweep;
};

// Parses and validates a schema-1 JSON config; throws Error with a
// field-level message on malformed input.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------

struct ResultRow {
  std::string model;
  std::string protocol;
  std::string status;  // empty = ok; else error text (metrics left empty)
  std::optional<long long> n_sites, cutoff;
  std::optional<double> a, g, m, lambda, mu, theta;
  double t = 0.0;
  double eps = 0.0;
  std::optional<long long> r;
  std::optional<double> error_lower, error_upper, bound;
  std::optional<long long> calls_prepare, calls_select, calls_wl, calls_wk;
  std::optional<long long> toffoli;
  std::optional<double> wall_ms;
  std::uint64_t seed = 0;
};

// One row per sweep point (single row without a sweep), in sweep order.
// Rows are computed independently (parallel across IPSIM_THREADS) and are
// deterministic functions of (config, seed); per-row failures are recorded
// in row.status and do not abort the run.
std::vector<ResultRow> run(const ExperimentConfig& config);

// ---------------------------------------------------------------------------
// Verification suites
// ---------------------------------------------------------------------------

struct VerifyCheck {
  std::string name;    // short stable identifier
  std::string anchor;  // descriptive claim the check pins down
  double measured = 0.0;
  double bound = 0.0;  // tolerance or bound compared against
  bool pass = false;
  double margin = 0.0;  // bound - measured (or |measured| slack, per check)
};

struct VerifyReport {
  std::string suite;
  std::vector<VerifyCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }
  std::string to_text() const;
  std::string to_json() const;
};

// suite in {norms, qdrift_bounds, trotter_bounds, qubitization, hybrids,
// schwinger, neutrino, constraints, resources}.  tol scales each check's
// tolerance (bounds stated by theorems are never loosened below their
// stated values).
VerifyReport verify(const std::string& suite, double tol = 1.0,
                    std::uint64_t seed = 7);

std::vector<std::string> verify_suites();

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

// Exact header; absent fields are empty; doubles printed with %.12g.
// wall_ms is emitted only when emit_timing is set (byte determinism).
std::string emit_csv(const std::vector<ResultRow>& rows, bool emit_timing);
std::string emit_json(const std::vector<ResultRow>& rows, bool emit_timing);
// Self-contained 800x600 log-log plot, one polyline series per protocol,
// x = sweep parameter, y = error_upper (bound when errors are absent).
std::string emit_svg(const std::vector<ResultRow>& rows,
                     const std::string& sweep_param);

void write_file(const std::string& path, const std::string& content);

}  // namespace ipsim::bench
