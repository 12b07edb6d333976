#pragma once

#include "ipsim/hybrid.hpp"
#include "ipsim/models.hpp"

namespace ipsim {

// ---------------------------------------------------------------------------
// Penalty-constrained dynamics
// ---------------------------------------------------------------------------

// Infinite-penalty limit of evolution under H_f + lambda*P, restricted to the
// feasible sector: returns e^{-i Pbar H_f Pbar t} psi0 with Pbar = I - P.
// Requires psi0 in null(P) (to 1e-9); the output stays there.
Vector zeno_evolution(const PenaltySystem& sys, double t, const Vector& psi0);

// || e^{-i(H_f + lambda*P) t} psi0 - zeno_evolution(sys, t, psi0) ||_2.
// Decays as ||H_f||^2 t / lambda; warns on stderr when lambda <= 2||H_f||
// (weak subspace separation), but still computes.
double penalty_error(const PenaltySystem& sys, double t, const Vector& psi0);

// Penalty strength sufficient for feasible-sector error <= eps at time t.
double min_lambda(double hf_norm, double t, double eps);

struct GaussFilteredResult {
  HybridResult hybrid;
  double leakage = 0.0;         // sqrt(<P_violating>) after the channel
  double state_mismatch = 0.0;  // trace distance to exact penalized evolution
  long long physical_dim = 0;   // charge-sector dimension
};

// Lattice gauge evolution with the charge-constraint penalty as the
// interaction frame: H = H_E + H_M + H_h + lambda_pen * P_violating, frame
// {"H_pen"}.  The frame term is excluded from the commutator and norm
// accounting, so the segment count and ledger do not depend on lambda_pen.
// The initial state for the leakage/mismatch checks is the normalized
// projection of the uniform vector onto the physical sector.
GaussFilteredResult gauss_filtered_hybrid(const SchwingerParams& p,
                                          double lambda_pen, double t,
                                          double eps,
                                          const HybridOptions& opt = {});

}  // namespace ipsim
