#pragma once

#include "ipsim/models.hpp"

namespace ipsim {

// ---------------------------------------------------------------------------
// Block encodings
// ---------------------------------------------------------------------------

// A unitary on ancilla (x) system whose |0...0>-ancilla block, scaled by
// `alpha`, approximates a target operator within `epsilon` (spectral norm).
struct BlockEncoding {
  Matrix unitary;
  Eigen::Index ancilla_dim = 0;
  Eigen::Index system_dim = 0;
  double alpha = 1.0;
  double epsilon = 0.0;  // certified residual against the stated target

  // alpha * (<0| (x) I) U (|0> (x) I)
  Matrix signal_block() const;
};

// ---------------------------------------------------------------------------
// PREPARE / SELECT / walk operator
// ---------------------------------------------------------------------------

// PREPARE: a deterministic real-Householder completion of the column
// sqrt(w_l / lambda) on an ancilla register of dimension 2^ceil(log2 L).
Matrix prepare_matrix(const LcuDecomposition& lcu);

// SELECT = sum_l |l><l| (x) U_l, identity on padding rows.
Matrix select_matrix(const LcuDecomposition& lcu);

// Frame-conjugated SELECT: (I (x) e^{+i F t}) SELECT (I (x) e^{-i F t});
// equals the SELECT of the LCU whose unitaries are conjugated termwise.
Matrix select_prime(const LcuDecomposition& lcu, const Matrix& frame_ham, double t);

// W = (2 |L><L| (x) I - I) . SELECT with |L> = PREPARE |0>.  For every
// eigenvalue E_k of H = sum w_l U_l the spectrum of W contains
// e^{+- i arccos(E_k / lambda)} when the terms are self-inverse.
struct WalkOperator {
  Matrix matrix;
  Matrix select;
  Vector prepared;  // |L>, the prepared ancilla column
  LcuDecomposition lcu;
  Eigen::Index ancilla_dim = 0;
  Eigen::Index system_dim = 0;
};

WalkOperator walk_operator(const LcuDecomposition& lcu);

// Idealized evolution synthesis: using the invariant subspaces spanned by
// |L>|E_k> and their SELECT-residual partners, builds a unitary whose
// |0>-ancilla block equals e^{-iHt} exactly (alpha = 1).  This stands in for
// a phase-factor construction; epsilon records the measured residual.
BlockEncoding ideal_evolution_encoding(const WalkOperator& w, double t);

// Query count ceil( alpha |t| + ln(1/eps) / ln(e + ln(1/eps) / (alpha |t|)) ),
// with the alpha |t| = 0 limit pinned to ceil(ln(1/eps)).  Monotone
// non-decreasing in alpha |t| (for positive values) and in 1/eps.
long long qubitization_query_cost(double alpha, double t, double eps);

}  // namespace ipsim
