#pragma once

#include <map>
#include <string>

#include "ipsim/linops.hpp"

namespace ipsim {

// ---------------------------------------------------------------------------
// Closed-form cost calculators (pure arithmetic; no simulation)
// ---------------------------------------------------------------------------

// Toffoli count for the state-preparation pair: 2(N-1)(8k-8) with
// k = ceil(log2(8(N-1))) control qubits.  N >= 2.
long long toffoli_prepare(long long n_sites);

// Stage breakdown of the term-selection walk step.  Log cutoffs are base-2
// with ceiling (they count qubits); c_q and c_d are the configurable
// constants of the charge-shift and diagonal-phase stages.
struct SelectToffoli {
  long long select_paulis = 0;  // control distribution over Pauli stages: 4N-1
  long long ctrl_raising = 0;   // controlled incrementers: (N-1)(21 log2(L)-11)
  long long charge_ops = 0;     // charge shifts: 2(N-1) * c_q * log2(L)
  long long diag_sim = 0;       // diagonal phase arithmetic: c_d * N * log2(L)^2
  long long total() const {
    return select_paulis + ctrl_raising + charge_ops + diag_sim;
  }
};

SelectToffoli toffoli_select(long long n_sites, long long cutoff,
                             double c_q = 1.0, double c_d = 1.0);

// Multiply-controlled Z on the N-1 unary control qubits: max(8(N-1)-16, 0).
long long toffoli_mcz(long long n_sites);

// Closed-form segment count for the hopping-split hybrid on the lattice
// gauge model: ceil(65 (N-1) t^2 / (128 a^2 eps)).
long long schwinger_hybrid_segments(long long n_sites, double a, double t,
                                    double eps);

// Query-count formula for one protocol row with all big-O constants set to 1.
// Methods and their required parameters:
//   trotter               : alpha_comm, t, eps, p
//   qdrift                : sum_norm, t, eps
//   qubitization          : lambda, t, eps
//   trotter_qdrift_ip     : sum_norm_sq, c_comm, t, eps
//   qdrift_qubitization_ip: lambda_alpha, rest_norm, t, eps
// Missing parameters raise Error naming the parameter.
double table1_queries(const std::string& method,
                      const std::map<std::string, double>& params);

struct CostReport {
  std::string model;
  double value = 0.0;  // the closed-form gate/exponential count
  std::map<std::string, long long> toffoli_by_stage;
  std::map<std::string, double> query_totals;
  std::map<std::string, double> sensitivity;  // param -> value at 2x param
  std::map<std::string, double> constants;    // configurable multipliers used
  std::string to_json() const;
};

// Evaluates the model's closed-form gate complexity with unit constants and
// reports per-parameter sensitivity (value with each parameter doubled).
// Models:
//   schwinger_cor53 : N^3 t^2/(a^2 eps) * LL(N t/(a eps)) * ln^2(N*Lambda)
//                     params N, Lambda, a, t, eps (optional c_Q, c_D)
//   schwinger_cor54 : N^2 t^2/(a^2 eps) * LL(N t^2/(a^2 eps^2)) * ln^2(Lambda)
//                     params N, Lambda, a, t, eps (optional c_Q, c_D)
//   neutrino_trotter: N^3 (mu^2 + theta*lambda) t^2 / eps
//                     params N, mu, theta, lambda, t, eps
//   neutrino_hybrid : N^3 mu^2 t^2 / eps     params N, mu, t, eps
// where LL(x) = ln(x) / max(1, ln(ln(x))), clamped to >= 1.
CostReport gate_complexity_report(const std::string& model,
                                  const std::map<std::string, double>& params);

}  // namespace ipsim
