#include "ipsim/linops.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace ipsim {

namespace {

void require_square(const Matrix& a, const char* where) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw Error(std::string(where) + ": matrix must be square and non-empty");
  if (!a.allFinite()) throw Error(std::string(where) + ": non-finite entries");
}

// Largest |eigenvalue| of a Hermitian matrix without forming eigenvectors.
double hermitian_spectral_norm(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error("spectral norm: eigensolver failed");
  const auto& v = es.eigenvalues();
  return std::max(std::abs(v(0)), std::abs(v(v.size() - 1)));
}

Eigen::VectorXd singular_values(const Matrix& a) {
  // BDCSVD is faster for anything beyond toy sizes; JacobiSVD is more
  // accurate on tiny inputs.
  if (a.rows() <= 16) return Eigen::JacobiSVD<Matrix>(a).singularValues();
  return Eigen::BDCSVD<Matrix>(a).singularValues();
}

}  // namespace

double schatten_norm(const Matrix& a, Schatten p) {
  require_square(a, "schatten_norm");
  if (p == Schatten::Two) return a.norm();

  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;

  // Hermitian / anti-Hermitian fast paths (the common case here: Hamiltonians,
  // commutators, Choi differences).
  const double herm_defect = (a - a.adjoint()).cwiseAbs().maxCoeff();
  const double anti_defect = (a + a.adjoint()).cwiseAbs().maxCoeff();
  const double tol = 1e-13 * scale * static_cast<double>(a.rows());
  if (herm_defect <= tol || anti_defect <= tol) {
    const Matrix h = (herm_defect <= tol)
                         ? Matrix(((a + a.adjoint()) * 0.5))
                         : Matrix((Complex(0, 1) * (a - a.adjoint()) * 0.5));
    if (p == Schatten::Inf) return hermitian_spectral_norm(h);
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw Error("schatten_norm: eigensolver failed");
    return es.eigenvalues().cwiseAbs().sum();
  }

  const Eigen::VectorXd sv = singular_values(a);
  return (p == Schatten::Inf) ? sv(0) : sv.sum();
}

double spectral_norm(const Matrix& a) { return schatten_norm(a, Schatten::Inf); }
double trace_norm(const Matrix& a) { return schatten_norm(a, Schatten::One); }

bool is_hermitian(const Matrix& a, double rel_tol) {
  if (a.rows() != a.cols() || !a.allFinite()) return false;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

bool is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols() || !u.allFinite()) return false;
  Matrix d = u.adjoint() * u;
  d.diagonal().array() -= 1.0;
  return d.cwiseAbs().maxCoeff() <= tol;
}

HermitianOp::HermitianOp(Matrix a, double rel_tol) {
  require_square(a, "HermitianOp");
  if (!is_hermitian(a, rel_tol))
    throw Error("HermitianOp: input is not Hermitian within tolerance");
  mat_ = (a + a.adjoint()) * 0.5;
}

UnitaryOp::UnitaryOp(Matrix u, double tol) {
  require_square(u, "UnitaryOp");
  if (!is_unitary(u, tol)) throw Error("UnitaryOp: input is not unitary within tolerance");
  mat_ = std::move(u);
}

Matrix expmi(const Matrix& h, double t) {
  require_square(h, "expmi");
  Eigen::SelfAdjointEigenSolver<Matrix> es((h + h.adjoint()) * 0.5);
  if (es.info() != Eigen::Success) throw Error("expmi: eigensolver failed");
  const Eigen::Index n = h.rows();
  Vector phases(n);
  for (Eigen::Index k = 0; k < n; ++k)
    phases(k) = std::polar(1.0, -es.eigenvalues()(k) * t);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

UnitaryOp expm_hermitian(const HermitianOp& h, double t) {
  return UnitaryOp(expmi(h.mat(), t));
}

HermitianExp::HermitianExp(const Matrix& h) {
  require_square(h, "HermitianExp");
  Eigen::SelfAdjointEigenSolver<Matrix> es((h + h.adjoint()) * 0.5);
  if (es.info() != Eigen::Success) throw Error("HermitianExp: eigensolver failed");
  vals_ = es.eigenvalues();
  vecs_ = es.eigenvectors();
}

Matrix HermitianExp::at(double t) const {
  Vector phases(vals_.size());
  for (Eigen::Index k = 0; k < vals_.size(); ++k)
    phases(k) = std::polar(1.0, -vals_(k) * t);
  return vecs_ * phases.asDiagonal() * vecs_.adjoint();
}

TimeDependentHam::TimeDependentHam(Evaluator eval, NormProfile norm, double t0,
                                   double t1, Eigen::Index dim)
    : eval_(std::move(eval)), norm_(std::move(norm)), t0_(t0), t1_(t1), dim_(dim) {
  if (!(t0 < t1)) throw Error("TimeDependentHam: domain must satisfy t0 < t1");
  if (dim <= 0) throw Error("TimeDependentHam: dimension must be positive");
  if (!eval_ || !norm_) throw Error("TimeDependentHam: evaluator and norm profile required");
}

TimeDependentHam TimeDependentHam::constant(Matrix h, double t0, double t1) {
  HermitianOp checked(std::move(h));
  const double n = spectral_norm(checked.mat());
  auto held = std::make_shared<Matrix>(checked.mat());
  return TimeDependentHam([held](double) { return *held; },
                          [n](double) { return n; }, t0, t1, held->rows());
}

Matrix TimeDependentHam::operator()(double tau) const {
  if (tau < t0_ - 1e-12 || tau > t1_ + 1e-12)
    throw Error("TimeDependentHam: evaluation outside domain");
  Matrix h = eval_(tau);
  if (h.rows() != dim_ || h.cols() != dim_)
    throw Error("TimeDependentHam: evaluator returned wrong dimension");
  return h;
}

double TimeDependentHam::norm_at(double tau) const {
  if (tau < t0_ - 1e-12 || tau > t1_ + 1e-12)
    throw Error("TimeDependentHam: norm evaluation outside domain");
  return norm_(tau);
}

TimeDependentHam TimeDependentHam::restricted(double a, double b) const {
  if (a < t0_ - 1e-12 || b > t1_ + 1e-12 || !(a < b))
    throw Error("TimeDependentHam: invalid restriction");
  return TimeDependentHam(eval_, norm_, a, b, dim_);
}

namespace {

Matrix midpoint_product(const TimeDependentHam& h, double t0, double t1, long steps) {
  const double dt = (t1 - t0) / static_cast<double>(steps);
  Matrix u = Matrix::Identity(h.dim(), h.dim());
  for (long k = 0; k < steps; ++k) {
    const double mid = t0 + (static_cast<double>(k) + 0.5) * dt;
    u = expmi(h(mid), dt) * u;
  }
  return u;
}

}  // namespace

Matrix time_ordered_exp(const TimeDependentHam& h, double t0, double t1,
                        double tol, int max_halvings) {
  if (!(t0 <= t1)) throw Error("time_ordered_exp: t0 must not exceed t1");
  if (t1 - t0 < 1e-15) return Matrix::Identity(h.dim(), h.dim());
  if (tol <= 0) throw Error("time_ordered_exp: tolerance must be positive");

  long steps = 8;
  Matrix coarse = midpoint_product(h, t0, t1, steps);
  for (int it = 0; it < max_halvings; ++it) {
    steps *= 2;
    Matrix fine = midpoint_product(h, t0, t1, steps);
    // Midpoint products converge at second order, so agreement of successive
    // refinements certifies the finer one to roughly diff/3.
    if (spectral_norm(fine - coarse) < tol) return fine;
    coarse.swap(fine);
  }
  throw Error("time_ordered_exp: no convergence within step budget");
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix identity(Eigen::Index dim) { return Matrix::Identity(dim, dim); }

Matrix op_on_qubit(const Matrix& m, int site, int n_qubits) {
  if (site < 1 || site > n_qubits) throw Error("op_on_qubit: site out of range");
  if (m.rows() != 2 || m.cols() != 2) throw Error("op_on_qubit: operator must be 2x2");
  const Eigen::Index left = Eigen::Index(1) << (site - 1);
  const Eigen::Index right = Eigen::Index(1) << (n_qubits - site);
  return kron(kron(identity(left), m), identity(right));
}

Matrix random_hermitian(Eigen::Index dim, Rng& rng, double scale) {
  Matrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      g(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
  return Matrix((g + g.adjoint()) * (0.5 * scale / std::sqrt(double(dim))));
}

Matrix random_unitary(Eigen::Index dim, Rng& rng) {
  Matrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      g(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase convention so the distribution is Haar.
  for (Eigen::Index k = 0; k < dim; ++k) {
    const Complex d = r(k, k);
    q.col(k) *= (std::abs(d) > 0) ? d / std::abs(d) : 1.0;
  }
  return q;
}

Vector random_state(Eigen::Index dim, Rng& rng) {
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    v(i) = Complex(rng.next_gaussian(), rng.next_gaussian());
  return v / v.norm();
}

Matrix random_density(Eigen::Index dim, Rng& rng) {
  Matrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      g(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
  Matrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

}  // namespace ipsim
