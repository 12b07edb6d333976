#include "ipsim/channels.hpp"

#include <cmath>
#include <utility>

namespace ipsim {

namespace {

void require_density_like(const Matrix& rho, Eigen::Index dim, const char* where) {
  if (rho.rows() != dim || rho.cols() != dim)
    throw Error(std::string(where) + ": state has wrong dimension");
  if (!rho.allFinite()) throw Error(std::string(where) + ": non-finite state");
}

// vec in the row-stacking sense: w(a*d + b) = U(a, b).  With this choice the
// Choi matrix of rho -> U rho U' is w w'.
Vector vec_rows(const Matrix& u) {
  const Eigen::Index d = u.rows();
  Vector w(d * d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) w(a * d + b) = u(a, b);
  return w;
}

Matrix unitary_superop(const Matrix& u) { return kron(u.conjugate(), u); }

}  // namespace

Channel Channel::unitary(Matrix u) {
  if (!is_unitary(u, 1e-10)) throw Error("Channel::unitary: not unitary");
  Channel c;
  c.kind_ = ChannelKind::Unitary;
  c.dim_ = u.rows();
  c.probs_ = {1.0};
  c.unitaries_.push_back(std::move(u));
  return c;
}

Channel Channel::mixed_unitary(std::vector<double> probs, std::vector<Matrix> us) {
  if (probs.empty() || probs.size() != us.size())
    throw Error("Channel::mixed_unitary: need matching, non-empty branch lists");
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw Error("Channel::mixed_unitary: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw Error("Channel::mixed_unitary: probabilities must sum to 1");
  const Eigen::Index d = us.front().rows();
  for (const Matrix& u : us)
    if (u.rows() != d || !is_unitary(u, 1e-9))
      throw Error("Channel::mixed_unitary: branch is not unitary");
  Channel c;
  c.kind_ = ChannelKind::MixedUnitary;
  c.dim_ = d;
  c.probs_ = std::move(probs);
  c.unitaries_ = std::move(us);
  return c;
}

Channel Channel::superoperator(Matrix s, Eigen::Index dim) {
  if (s.rows() != dim * dim || s.cols() != dim * dim)
    throw Error("Channel::superoperator: matrix must be dim^2 x dim^2");
  if (!s.allFinite()) throw Error("Channel::superoperator: non-finite entries");
  Channel c;
  c.kind_ = ChannelKind::Superoperator;
  c.dim_ = dim;
  c.super_ = std::move(s);
  return c;
}

Matrix Channel::apply(const Matrix& rho) const {
  require_density_like(rho, dim_, "Channel::apply");
  switch (kind_) {
    case ChannelKind::Unitary:
      return unitaries_[0] * rho * unitaries_[0].adjoint();
    case ChannelKind::MixedUnitary: {
      Matrix out = Matrix::Zero(dim_, dim_);
      for (std::size_t i = 0; i < probs_.size(); ++i)
        out += probs_[i] * (unitaries_[i] * rho * unitaries_[i].adjoint());
      return out;
    }
    case ChannelKind::Superoperator: {
      const Vector v = Eigen::Map<const Vector>(rho.data(), dim_ * dim_);
      Vector w = super_ * v;
      return Eigen::Map<const Matrix>(w.data(), dim_, dim_);
    }
  }
  throw Error("Channel::apply: unreachable");
}

Matrix Channel::superop() const {
  if (kind_ == ChannelKind::Superoperator) return super_;
  Matrix s = Matrix::Zero(dim_ * dim_, dim_ * dim_);
  for (std::size_t i = 0; i < probs_.size(); ++i)
    s += probs_[i] * unitary_superop(unitaries_[i]);
  return s;
}

Matrix Channel::choi() const {
  const Eigen::Index d = dim_;
  if (kind_ != ChannelKind::Superoperator && probs_.size() <= kCompactBranches) {
    Matrix j = Matrix::Zero(d * d, d * d);
    for (std::size_t i = 0; i < probs_.size(); ++i) {
      const Vector w = vec_rows(unitaries_[i]);
      j.noalias() += probs_[i] * (w * w.adjoint());
    }
    return j;
  }
  // Generic route: apply the superoperator to every |i><j| basis element.
  const Matrix s = superop();
  Matrix j = Matrix::Zero(d * d, d * d);
  Matrix eij = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index jj = 0; jj < d; ++jj) {
      eij(i, jj) = 1.0;
      const Vector v = Eigen::Map<const Vector>(eij.data(), d * d);
      Vector w = s * v;
      const Matrix phi = Eigen::Map<const Matrix>(w.data(), d, d);
      // Phi(|i><j|) lands in the block (row i, col jj) of the ancilla factor.
      for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = 0; b < d; ++b) j(a * d + i, b * d + jj) += phi(a, b);
      eij(i, jj) = 0.0;
    }
  }
  return j;
}

Channel Channel::compose_after(const Channel& inner) const {
  if (dim_ != inner.dim_) throw Error("Channel::compose_after: dimension mismatch");
  return Channel::superoperator(superop() * inner.superop(), dim_);
}

Matrix apply(const Channel& ch, const Matrix& rho) { return ch.apply(rho); }

double trace_distance(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw Error("trace_distance: dimension mismatch");
  if (!is_hermitian(rho, 1e-9) || !is_hermitian(sigma, 1e-9))
    throw Error("trace_distance: inputs must be Hermitian");
  return 0.5 * trace_norm(rho - sigma);
}

DiamondBracket diamond_bracket(const Channel& a, const Channel& b) {
  if (a.dim() != b.dim()) throw Error("diamond_bracket: dimension mismatch");
  return diamond_bracket_choi(a.choi() - b.choi(), a.dim());
}

DiamondBracket diamond_bracket_choi(const Matrix& choi_diff, Eigen::Index dim) {
  if (choi_diff.rows() != dim * dim || choi_diff.cols() != dim * dim)
    throw Error("diamond_bracket_choi: Choi matrix must be dim^2 x dim^2");
  const double t1 = trace_norm(choi_diff);
  DiamondBracket out;
  out.lower = t1 / static_cast<double>(dim);
  out.upper = t1;
  return out;
}

}  // namespace ipsim
