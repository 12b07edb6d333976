#pragma once

#include <vector>

#include "ipsim/linops.hpp"

namespace ipsim {

// ---------------------------------------------------------------------------
// Quantum channels
// ---------------------------------------------------------------------------

enum class ChannelKind { Unitary, MixedUnitary, Superoperator };

// A completely positive trace-preserving map on a `dim`-dimensional system,
// in one of three concrete forms.  Superoperators use the column-stacking
// convention: vec(U rho U') = (conj(U) (x) U) vec(rho).
class Channel {
 public:
  static Channel unitary(Matrix u);
  static Channel mixed_unitary(std::vector<double> probs, std::vector<Matrix> us);
  // `physical`: caller asserts the map is CPTP; mixtures built internally are.
  static Channel superoperator(Matrix s, Eigen::Index dim);

  ChannelKind kind() const { return kind_; }
  Eigen::Index dim() const { return dim_; }
  std::size_t branch_count() const { return unitaries_.size(); }

  Matrix apply(const Matrix& rho) const;
  Matrix superop() const;  // dim^2 x dim^2, column-stacking
  Matrix choi() const;     // unnormalized: sum_ij Phi(|i><j|) (x) |i><j|

  // this after inner:  rho -> this(inner(rho)).  Result is in superoperator
  // form; mixed-unitary inputs with more than `kCompactBranches` branches are
  // compacted automatically.
  Channel compose_after(const Channel& inner) const;

  static constexpr std::size_t kCompactBranches = 4096;

 private:
  Channel() = default;
  ChannelKind kind_ = ChannelKind::Unitary;
  Eigen::Index dim_ = 0;
  std::vector<double> probs_;
  std::vector<Matrix> unitaries_;
  Matrix super_;
};

// Convenience free function mirroring Channel::apply.
Matrix apply(const Channel& ch, const Matrix& rho);

// (1/2) || rho - sigma ||_1 for density matrices.
double trace_distance(const Matrix& rho, const Matrix& sigma);

// ---------------------------------------------------------------------------
// Diamond-norm bracketing
// ---------------------------------------------------------------------------

struct DiamondBracket {
  double lower = 0.0;  // ||J||_1 / dim  (distance at the maximally entangled input)
  double upper = 0.0;  // ||J||_1
};

// Bracket of || A - B ||_diamond via the Choi matrix of the difference:
//   ||J||_1 / dim  <=  ||A - B||_diamond  <=  ||J||_1.
// Both endpoints scale linearly in the difference map.
DiamondBracket diamond_bracket(const Channel& a, const Channel& b);

// Same bracket from a precomputed (unnormalized) Choi matrix of a
// Hermiticity-preserving difference map.
DiamondBracket diamond_bracket_choi(const Matrix& choi_diff, Eigen::Index dim);

}  // namespace ipsim
