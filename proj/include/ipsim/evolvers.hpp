#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ipsim/channels.hpp"
#include "ipsim/models.hpp"

namespace ipsim {

// ---------------------------------------------------------------------------
// Cost accounting
// ---------------------------------------------------------------------------

// Oracle-call counters for a simulation protocol.  `calls_wk` counts
// exponentials (or block-encoded walk queries) of the non-frame terms, keyed
// by term label; `calls_wl_frame` counts frame-exponential applications after
// collapsing adjacent conjugation factors.
struct CostLedger {
  std::map<std::string, long long> calls_wk;
  long long calls_wl_frame = 0;
  long long calls_prepare = 0;
  long long calls_select = 0;
  long long toffoli_estimate = 0;

  long long total_wk() const;
  CostLedger& operator+=(const CostLedger& other);
  bool operator==(const CostLedger&) const = default;
};

// ---------------------------------------------------------------------------
// Reference evolution and Trotter products
// ---------------------------------------------------------------------------

// e^{-iHt} for the full sum, by dense eigendecomposition.
Matrix exact_evolution(const SumHamiltonian& h, double t);

struct TrotterResult {
  Matrix u;
  CostLedger ledger;  // exponential count per term label
};

// r steps of the product formula of the given order (1, 2, or even 2k >= 4,
// built by the standard recursive construction).  Terms are applied in stored
// order; for order 1 each step is  e^{-i H_1 dt} ... e^{-i H_L dt}  read
// right-to-left (the first term acts first).
TrotterResult trotter_product(const SumHamiltonian& h, double t, int r, int order);

// ---------------------------------------------------------------------------
// Time-dependent splitting
// ---------------------------------------------------------------------------

using LabeledTdHam = std::pair<std::string, TimeDependentHam>;

// First-order splitting factors of a labeled time-dependent sum on [t0, t1]:
// the product of the returned factors' time-ordered exponentials (first
// factor rightmost) approximates the time-ordered exponential of the sum.
std::vector<TimeDependentHam> trotter_split_td(const std::vector<LabeledTdHam>& terms,
                                               double t0, double t1);

// One-step splitting error bound (1/2) sum_l max_{u,v} ||[H_l(u), sum_{q>l}
// H_q(v)]|| (t1-t0)^2 with the max taken over a `grid` x `grid` sample.
double td_split_error_bound(const std::vector<LabeledTdHam>& terms, double t0,
                            double t1, int grid = 17);

// ---------------------------------------------------------------------------
// Continuous qDRIFT
// ---------------------------------------------------------------------------

// Sampling plan for H(tau) on [t0, t1]: r segments of equal probability mass
// under p(tau) = ||H(tau)|| / integral ||H||, realized through a 1024-point
// monotone piecewise-linear table of the cumulative norm integral.
struct QdriftPlan {
  double t0 = 0.0, t1 = 0.0;
  int segments = 0;
  double total_mass = 0.0;             // integral of ||H(tau)|| over [t0, t1]
  std::vector<double> boundaries;      // size segments + 1
  std::vector<double> grid_times;      // table abscissae
  std::vector<double> grid_cumulative; // cumulative norm integral at grid_times

  // Inverse of the cumulative mass fraction: u in [0, 1] -> time in [t0, t1].
  double time_at_mass_fraction(double u) const;
  double norm_at_time(double tau) const;  // piecewise-linear density numerator
};

QdriftPlan qdrift_plan(const TimeDependentHam& h, double t0, double t1, int r,
                       bool uniform_time = false);

// Exact mixed-unitary channel of one continuous-qDRIFT segment:
//   rho -> integral p(tau) e^{-iH(tau)/p(tau)} rho e^{+iH(tau)/p(tau)} dtau,
// discretized by `quad_points` Gauss-Legendre nodes on [t0, t1].  The
// branch probabilities are renormalized; the pre-normalization residual is
// written to `renorm_residual` when given.  Throws if p vanishes anywhere.
Channel qdrift_channel_exact(const TimeDependentHam& h, double t0, double t1,
                             int quad_points = 64, double* renorm_residual = nullptr);

struct QdriftTrajectory {
  Matrix u;           // product of sampled exponentials
  CostLedger ledger;  // r oracle calls under `label`
};

// One sampled r-segment qDRIFT trajectory with the plan above.  Bit-exact
// reproducible for fixed (inputs, seed).
QdriftTrajectory qdrift_sample(const TimeDependentHam& h, double t0, double t1,
                               int r, std::uint64_t seed,
                               const std::string& label = "H");

// ---------------------------------------------------------------------------
// Interaction frame
// ---------------------------------------------------------------------------

// H_I(tau) = e^{+iF tau} (sum of non-frame terms) e^{-iF tau} with F the sum
// of the frame terms.  The norm profile is constant (unitary invariance).
TimeDependentHam interaction_frame(const SumHamiltonian& h,
                                   const std::vector<std::string>& frame_labels,
                                   double t0, double t1);

// Gauss-Legendre nodes and weights on [-1, 1] (cached per order).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace ipsim
