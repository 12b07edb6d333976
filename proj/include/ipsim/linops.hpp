#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>

#include "ipsim/rng.hpp"

namespace ipsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Norms
// ---------------------------------------------------------------------------

enum class Schatten { One, Two, Inf };

// Schatten p-norm of an arbitrary complex matrix.  One = trace norm,
// Two = Frobenius, Inf = spectral (largest singular value).  Hermitian and
// anti-Hermitian inputs take an eigenvalue path, which stays cheap and exact
// for the large structured operators this library produces; everything else
// goes through an SVD.
double schatten_norm(const Matrix& a, Schatten p);

double spectral_norm(const Matrix& a);  // schatten_norm(a, Inf)
double trace_norm(const Matrix& a);     // schatten_norm(a, One)

bool is_hermitian(const Matrix& a, double rel_tol = 1e-12);
bool is_unitary(const Matrix& u, double tol = 1e-10);

// ---------------------------------------------------------------------------
// Strongly typed operators
// ---------------------------------------------------------------------------

// A Hermitian operator, validated and symmetrized on construction so that
// downstream eigendecompositions are well posed.
class HermitianOp {
 public:
  explicit HermitianOp(Matrix a, double rel_tol = 1e-12);
  const Matrix& mat() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

 private:
  Matrix mat_;
};

// A unitary operator, validated on construction (||U'U - I||_inf <= tol).
class UnitaryOp {
 public:
  explicit UnitaryOp(Matrix u, double tol = 1e-10);
  const Matrix& mat() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

 private:
  Matrix mat_;
};

// e^{-iHt} for Hermitian h via eigendecomposition.  `expmi` is the raw-matrix
// workhorse used internally; the typed overload validates both endpoints.
Matrix expmi(const Matrix& h, double t);
UnitaryOp expm_hermitian(const HermitianOp& h, double t);

// Cached eigendecomposition of a Hermitian matrix: repeated exponentials of
// the same generator at different durations cost one decomposition total.
class HermitianExp {
 public:
  explicit HermitianExp(const Matrix& h);
  Matrix at(double t) const;  // e^{-iHt}
  Eigen::Index dim() const { return vecs_.rows(); }

 private:
  Eigen::VectorXd vals_;
  Matrix vecs_;
};

// ---------------------------------------------------------------------------
// Time-dependent Hamiltonians
// ---------------------------------------------------------------------------

// H(tau) on a fixed domain [t0, t1], carried as an evaluator plus a spectral
// norm profile.  The profile is consulted by the qDRIFT machinery, so for
// interaction-picture Hamiltonians (constant norm) it should be O(1).
class TimeDependentHam {
 public:
  using Evaluator = std::function<Matrix(double)>;
  using NormProfile = std::function<double(double)>;

  TimeDependentHam(Evaluator eval, NormProfile norm, double t0, double t1,
                   Eigen::Index dim);
  static TimeDependentHam constant(Matrix h, double t0, double t1);

  Matrix operator()(double tau) const;
  double norm_at(double tau) const;
  double t0() const { return t0_; }
  double t1() const { return t1_; }
  Eigen::Index dim() const { return dim_; }

  // Same evaluator restricted to a subinterval of the domain.
  TimeDependentHam restricted(double a, double b) const;

 private:
  Evaluator eval_;
  NormProfile norm_;
  double t0_, t1_;
  Eigen::Index dim_;
};

// Time-ordered exponential T exp(-i \int_{t0}^{t1} H(tau) dtau) by midpoint
// products, with step halving until successive refinements differ by less
// than `tol` in spectral norm.  Throws if the refinement fails to converge
// within `max_halvings` doublings.
Matrix time_ordered_exp(const TimeDependentHam& h, double t0, double t1,
                        double tol, int max_halvings = 22);

// ---------------------------------------------------------------------------
// Elementary constructions
// ---------------------------------------------------------------------------

Matrix kron(const Matrix& a, const Matrix& b);

// Pauli matrices and common small operators.
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix identity(Eigen::Index dim);

// M acting on qubit `site` (1-based) of an n-qubit register; site 1 is the
// leftmost tensor factor.
Matrix op_on_qubit(const Matrix& m, int site, int n_qubits);

// Seeded random objects (deterministic across platforms via ipsim::Rng).
Matrix random_hermitian(Eigen::Index dim, Rng& rng, double scale = 1.0);
Matrix random_unitary(Eigen::Index dim, Rng& rng);
Vector random_state(Eigen::Index dim, Rng& rng);
Matrix random_density(Eigen::Index dim, Rng& rng);

}  // namespace ipsim
