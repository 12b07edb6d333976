#pragma once

#include <string>
#include <vector>

#include "ipsim/linops.hpp"

namespace ipsim {

// ---------------------------------------------------------------------------
// Labeled sums of Hermitian terms
// ---------------------------------------------------------------------------

struct SumTerm {
  std::string label;
  Matrix op;  // Hermitian
  // Diagonal in the stored basis, hence cheap to exponentiate for any
  // duration (the natural frame candidates).
  bool fast_forwardable = false;
};

class SumHamiltonian {
 public:
  explicit SumHamiltonian(std::vector<SumTerm> terms);

  const std::vector<SumTerm>& terms() const { return terms_; }
  Eigen::Index dim() const { return dim_; }

  bool has(const std::string& label) const;
  const SumTerm& term(const std::string& label) const;

  Matrix total() const;
  Matrix sum_of(const std::vector<std::string>& labels) const;
  Matrix sum_excluding(const std::vector<std::string>& labels) const;
  std::vector<const SumTerm*> terms_excluding(const std::vector<std::string>& labels) const;

  SumHamiltonian with_term(SumTerm extra) const;

 private:
  std::vector<SumTerm> terms_;
  Eigen::Index dim_ = 0;
};

// ---------------------------------------------------------------------------
// Linear combinations of unitaries
// ---------------------------------------------------------------------------

// H = sum_l w_l U_l with strictly positive weights; phases live inside the
// unitaries.  lambda = sum_l w_l is the induced one-norm.
struct LcuDecomposition {
  std::vector<double> weights;
  std::vector<Matrix> unitaries;

  std::size_t size() const { return weights.size(); }
  double lambda() const;
  Matrix reconstruct() const;
  // Checks: positive weights, unitary terms (1e-10), Hermitian sum (1e-10).
  void validate() const;
};

// Pauli-basis LCU of an arbitrary Hermitian operator on n qubits: weights are
// |coefficient|, unitaries are (sign) x (Pauli string), so every term is
// self-inverse.  Coefficients below `cutoff` are dropped.
LcuDecomposition pauli_lcu(const Matrix& h, double cutoff = 1e-12);

// ---------------------------------------------------------------------------
// Lattice Schwinger model (staggered fermions, truncated links)
// ---------------------------------------------------------------------------

// N staggered sites (N >= 2), N-1 links for open boundary.  Each link carries a
// (2*cutoff+1)-dimensional electric register with eigenvalues -cutoff..cutoff;
// the raising operator wraps cyclically at the truncation boundary.  Tensor
// order: qubits (sites) first, then link registers, each factor ordered
// left-to-right by index.
struct SchwingerParams {
  int sites = 2;
  int cutoff = 1;
  double a = 1.0;  // lattice spacing
  double g = 1.0;  // coupling
  double m = 0.5;  // fermion mass
  bool periodic = false;
  Eigen::Index max_dim = 16384;
};

// Terms: "H_E" (electric, diagonal), "H_M" (mass, diagonal), "H_h" (hopping).
SumHamiltonian build_schwinger(const SchwingerParams& p);

// Same model with the hopping split by link parity into "H_h_even"/"H_h_odd"
// (every pair of same-parity link terms commutes).
SumHamiltonian build_schwinger_split(const SchwingerParams& p);

enum class LinkParity { All, Even, Odd };

// LCU of the hopping term: 8 unitaries per included link, each of weight
// 1/(8a), so lambda = (links)/a when all links are included.
LcuDecomposition lcu_of_hopping(const SchwingerParams& p,
                                LinkParity parity = LinkParity::All);

// Projector onto the joint kernel of the per-site Gauss operators
//   G(s) = E(s) - E(s-1) - q(s),
// with staggered charges q(s) = n(s) on even sites and n(s) - 1 on odd sites
// (occupied = qubit |1>).  Diagonal in the computational basis; commutes with
// the full Schwinger Hamiltonian.
Matrix gauss_projector(const SchwingerParams& p);

// ---------------------------------------------------------------------------
// Collective neutrino model
// ---------------------------------------------------------------------------

// H = sum_i (omega_i/2) B . sigma_i + (lambda/2) sum_i Z_i
//     + (mu/2N) sum_{i<j} J_ij sigma_i . sigma_j,
// with B = (sin 2theta, 0, -cos 2theta).
struct NeutrinoParams {
  int count = 4;
  std::vector<double> omegas;       // size `count`
  double theta = 0.15;              // mixing angle
  double lambda_e = 1.0;            // matter potential
  double mu = 1.0;                  // neutrino-neutrino strength
  Eigen::MatrixXd coupling;         // J_ij, symmetric; empty means all-ones
};

// Terms: "H_vac", "H_matter" (diagonal), "H_nunu".
SumHamiltonian build_neutrino(const NeutrinoParams& p);

// Interaction-picture Hamiltonian in the matter frame, as the closed form
//   sin 2theta sum_i (omega_i/2) (cos(lambda t) X_i - sin(lambda t) Y_i)
//   - cos 2theta sum_i (omega_i/2) Z_i  + (mu/2N) sum_{i<j} J_ij sigma_i.sigma_j.
// Equal to e^{+i h_m t} (H_vac + H_nunu) e^{-i h_m t} with h_m = (lambda/2) sum Z.
// The norm profile is constant in t.
TimeDependentHam neutrino_ip_ham(const NeutrinoParams& p, double t1, double t0 = 0.0);

// ---------------------------------------------------------------------------
// Penalty-constrained systems
// ---------------------------------------------------------------------------

// H = h_free + lambda_pen * projector, with `projector` the projector onto
// the infeasible region.
struct PenaltySystem {
  Matrix h_free;
  Matrix projector;
  double lambda_pen = 0.0;
};

void validate_penalty(const PenaltySystem& sys);

// SumHamiltonian with terms "H_f" and "H_pen" (= lambda_pen * projector,
// fast-forwardable when the projector is diagonal).
SumHamiltonian build_penalty(const PenaltySystem& sys);

}  // namespace ipsim
