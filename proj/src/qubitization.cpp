#include "ipsim/qubitization.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace ipsim {

Matrix BlockEncoding::signal_block() const {
  if (ancilla_dim < 1 || system_dim < 1 ||
      unitary.rows() != ancilla_dim * system_dim || unitary.rows() != unitary.cols())
    throw Error("BlockEncoding: unitary dimension must equal ancilla_dim * system_dim");
  Matrix block(system_dim, system_dim);
  block = unitary.topLeftCorner(system_dim, system_dim);
  return Matrix(alpha * block);
}

namespace {

Eigen::Index padded_ancilla_dim(std::size_t terms) {
  Eigen::Index d = 1;
  while (d < static_cast<Eigen::Index>(terms)) d *= 2;
  return d;
}

}  // namespace

Matrix prepare_matrix(const LcuDecomposition& lcu) {
  lcu.validate();
  const double lambda = lcu.lambda();
  if (!(lambda > 0.0)) throw Error("prepare_matrix: zero total weight");
  const Eigen::Index da = padded_ancilla_dim(lcu.size());

  Eigen::VectorXd c = Eigen::VectorXd::Zero(da);
  for (std::size_t l = 0; l < lcu.size(); ++l)
    c(static_cast<Eigen::Index>(l)) = std::sqrt(lcu.weights[l] / lambda);

  // Householder reflection mapping e_0 to c; real and deterministic.
  Eigen::VectorXd v = -c;
  v(0) += 1.0;  // v = e_0 - c
  const double vn = v.norm();
  Matrix prep = Matrix::Identity(da, da);
  if (vn > 1e-14) {
    const Eigen::VectorXd u = v / vn;
    prep -= (2.0 * u * u.transpose()).cast<Complex>();
  }
  return prep;
}

Matrix select_matrix(const LcuDecomposition& lcu) {
  lcu.validate();
  const Eigen::Index da = padded_ancilla_dim(lcu.size());
  const Eigen::Index ds = lcu.unitaries.front().rows();
  Matrix sel = Matrix::Zero(da * ds, da * ds);
  for (Eigen::Index l = 0; l < da; ++l) {
    if (l < static_cast<Eigen::Index>(lcu.size()))
      sel.block(l * ds, l * ds, ds, ds) = lcu.unitaries[static_cast<std::size_t>(l)];
    else
      sel.block(l * ds, l * ds, ds, ds) = Matrix::Identity(ds, ds);
  }
  return sel;
}

Matrix select_prime(const LcuDecomposition& lcu, const Matrix& frame_ham, double t) {
  if (!is_hermitian(frame_ham, 1e-12))
    throw Error("select_prime: frame Hamiltonian must be Hermitian");
  const Eigen::Index ds = lcu.unitaries.front().rows();
  if (frame_ham.rows() != ds) throw Error("select_prime: frame dimension mismatch");
  const Eigen::Index da = padded_ancilla_dim(lcu.size());
  // e^{+iFt} = expmi(F, -t)
  const Matrix fwd = expmi(frame_ham, -t);
  const Matrix bwd = fwd.adjoint();
  const Matrix sel = select_matrix(lcu);
  return Matrix(kron(identity(da), fwd) * sel * kron(identity(da), bwd));
}

WalkOperator walk_operator(const LcuDecomposition& lcu) {
  WalkOperator w;
  w.lcu = lcu;
  w.select = select_matrix(lcu);
  const Matrix prep = prepare_matrix(lcu);
  w.ancilla_dim = prep.rows();
  w.system_dim = lcu.unitaries.front().rows();
  w.prepared = prep.col(0);

  const double lambda = lcu.lambda();
  Eigen::SelfAdjointEigenSolver<Matrix> es(lcu.reconstruct(), Eigen::EigenvaluesOnly);
  const double top = std::max(std::abs(es.eigenvalues()(0)),
                              std::abs(es.eigenvalues()(es.eigenvalues().size() - 1)));
  if (top > lambda * (1.0 + 1e-12))
    throw Error("walk_operator: |E_k| exceeds lambda; inconsistent decomposition");

  // Reflection about |L> (x) I, then SELECT.
  const Matrix refl =
      2.0 * kron(Matrix(w.prepared * w.prepared.adjoint()), identity(w.system_dim)) -
      identity(w.ancilla_dim * w.system_dim);
  w.matrix = refl * w.select;
  return w;
}

BlockEncoding ideal_evolution_encoding(const WalkOperator& w, double t) {
  const Eigen::Index da = w.ancilla_dim, ds = w.system_dim, dt = da * ds;
  const double lambda = w.lcu.lambda();

  Eigen::SelfAdjointEigenSolver<Matrix> es(w.lcu.reconstruct());
  if (es.info() != Eigen::Success)
    throw Error("ideal_evolution_encoding: eigensolver failed");

  // Invariant-plane basis: a_k = |L>|E_k>, and the normalized residual
  // phi_k of SELECT a_k orthogonal to every a_j.  The phi_k are then
  // orthonormalized among themselves; degenerate |E_k| = lambda planes
  // collapse to a single direction and contribute no partner.
  std::vector<Vector> a_vecs, phi_vecs;
  std::vector<double> energies;
  for (Eigen::Index k = 0; k < ds; ++k) {
    const double ek = es.eigenvalues()(k);
    Vector ak = Vector::Zero(dt);
    for (Eigen::Index l = 0; l < da; ++l)
      ak.segment(l * ds, ds) = w.prepared(l) * es.eigenvectors().col(k);
    a_vecs.push_back(ak);
    energies.push_back(ek);

    Vector resid = w.select * ak - (ek / lambda) * ak;
    // Orthogonalize against the a-plane (exact in theory; enforced here) and
    // previously accepted partners.
    for (const Vector& a : a_vecs) resid -= (a.dot(resid)) * a;
    for (const Vector& f : phi_vecs) resid -= (f.dot(resid)) * f;
    const double rn = resid.norm();
    if (rn > 1e-8) phi_vecs.push_back(Vector(resid / rn));
  }

  // Unitary with eigenphase e^{-i E_k t} on a_k, e^{+i E_k t} on the partner
  // span (any unimodular choice preserves the signal block), identity on the
  // orthogonal complement.
  Matrix v = Matrix::Identity(dt, dt);
  for (std::size_t k = 0; k < a_vecs.size(); ++k) {
    const Complex ph = std::polar(1.0, -energies[k] * t);
    v += (ph - 1.0) * (a_vecs[k] * a_vecs[k].adjoint());
  }
  for (std::size_t k = 0; k < phi_vecs.size(); ++k) {
    const double ek = (k < energies.size()) ? energies[k] : 0.0;
    const Complex ph = std::polar(1.0, ek * t);
    v += (ph - 1.0) * (phi_vecs[k] * phi_vecs[k].adjoint());
  }

  // Conjugating by PREPARE moves the phased block from the |L> sector to the
  // |0>-ancilla sector, where the encoding convention reads it off.
  const Matrix prep = prepare_matrix(w.lcu);
  BlockEncoding enc;
  enc.ancilla_dim = da;
  enc.system_dim = ds;
  enc.alpha = 1.0;
  enc.unitary = kron(prep.adjoint(), identity(ds)) * v * kron(prep, identity(ds));
  if (!is_unitary(enc.unitary, 1e-9))
    throw Error("ideal_evolution_encoding: synthesized operator lost unitarity");

  const Matrix target = expmi(w.lcu.reconstruct(), t);
  enc.epsilon = spectral_norm(enc.signal_block() - target);
  if (enc.epsilon > 1e-9)
    throw Error("ideal_evolution_encoding: block residual exceeds tolerance");
  return enc;
}

long long qubitization_query_cost(double alpha, double t, double eps) {
  if (!(alpha >= 0.0)) throw Error("qubitization_query_cost: alpha must be >= 0");
  if (!(eps > 0.0 && eps < 1.0))
    throw Error("qubitization_query_cost: eps must lie in (0, 1)");
  const double at = alpha * std::abs(t);
  const double logeps = std::log(1.0 / eps);
  if (at <= 0.0) return static_cast<long long>(std::ceil(logeps));
  const double cost = at + logeps / std::log(std::exp(1.0) + logeps / at);
  return static_cast<long long>(std::ceil(cost));
}

}  // namespace ipsim
