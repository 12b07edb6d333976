#include "ipsim/models.hpp"

#include <algorithm>
#include <cmath>

namespace ipsim {

// ---------------------------------------------------------------------------
// SumHamiltonian
// ---------------------------------------------------------------------------

SumHamiltonian::SumHamiltonian(std::vector<SumTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw Error("SumHamiltonian: need at least one term");
  dim_ = terms_.front().op.rows();
  for (const SumTerm& t : terms_) {
    if (t.label.empty()) throw Error("SumHamiltonian: empty term label");
    if (t.op.rows() != dim_ || t.op.cols() != dim_)
      throw Error("SumHamiltonian: term '" + t.label + "' has mismatched dimension");
    if (!is_hermitian(t.op, 1e-12))
      throw Error("SumHamiltonian: term '" + t.label + "' is not Hermitian");
    if (t.fast_forwardable) {
      Matrix off = t.op;
      off.diagonal().setZero();
      if (off.cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, t.op.cwiseAbs().maxCoeff()))
        throw Error("SumHamiltonian: term '" + t.label +
                    "' flagged fast-forwardable but not diagonal");
    }
  }
  for (std::size_t i = 0; i < terms_.size(); ++i)
    for (std::size_t j = i + 1; j < terms_.size(); ++j)
      if (terms_[i].label == terms_[j].label)
        throw Error("SumHamiltonian: duplicate label '" + terms_[i].label + "'");
}

bool SumHamiltonian::has(const std::string& label) const {
  for (const SumTerm& t : terms_)
    if (t.label == label) return true;
  return false;
}

const SumTerm& SumHamiltonian::term(const std::string& label) const {
  for (const SumTerm& t : terms_)
    if (t.label == label) return t;
  throw Error("SumHamiltonian: no term labeled '" + label + "'");
}

Matrix SumHamiltonian::total() const {
  Matrix h = Matrix::Zero(dim_, dim_);
  for (const SumTerm& t : terms_) h += t.op;
  return h;
}

Matrix SumHamiltonian::sum_of(const std::vector<std::string>& labels) const {
  Matrix h = Matrix::Zero(dim_, dim_);
  for (const std::string& l : labels) h += term(l).op;
  return h;
}

Matrix SumHamiltonian::sum_excluding(const std::vector<std::string>& labels) const {
  for (const std::string& l : labels)
    if (!has(l)) throw Error("SumHamiltonian: no term labeled '" + l + "'");
  Matrix h = Matrix::Zero(dim_, dim_);
  for (const SumTerm& t : terms_)
    if (std::find(labels.begin(), labels.end(), t.label) == labels.end()) h += t.op;
  return h;
}

std::vector<const SumTerm*> SumHamiltonian::terms_excluding(
    const std::vector<std::string>& labels) const {
  for (const std::string& l : labels)
    if (!has(l)) throw Error("SumHamiltonian: no term labeled '" + l + "'");
  std::vector<const SumTerm*> out;
  for (const SumTerm& t : terms_)
    if (std::find(labels.begin(), labels.end(), t.label) == labels.end())
      out.push_back(&t);
  return out;
}

SumHamiltonian SumHamiltonian::with_term(SumTerm extra) const {
  std::vector<SumTerm> ts = terms_;
  ts.push_back(std::move(extra));
  return SumHamiltonian(std::move(ts));
}

// ---------------------------------------------------------------------------
// LCU
// ---------------------------------------------------------------------------

double LcuDecomposition::lambda() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

Matrix LcuDecomposition::reconstruct() const {
  if (unitaries.empty()) throw Error("LcuDecomposition: empty decomposition");
  const Eigen::Index d = unitaries.front().rows();
  Matrix h = Matrix::Zero(d, d);
  for (std::size_t l = 0; l < weights.size(); ++l) h += weights[l] * unitaries[l];
  return h;
}

void LcuDecomposition::validate() const {
  if (weights.size() != unitaries.size())
    throw Error("LcuDecomposition: weight/unitary count mismatch");
  if (unitaries.empty()) throw Error("LcuDecomposition: empty decomposition");
  const Eigen::Index d = unitaries.front().rows();
  for (std::size_t l = 0; l < weights.size(); ++l) {
    if (!(weights[l] > 0.0)) throw Error("LcuDecomposition: weights must be positive");
    if (unitaries[l].rows() != d) throw Error("LcuDecomposition: dimension mismatch");
    if (!is_unitary(unitaries[l], 1e-10))
      throw Error("LcuDecomposition: term is not unitary");
  }
  const Matrix h = reconstruct();
  if (!is_hermitian(h, 1e-10))
    throw Error("LcuDecomposition: reconstructed sum is not Hermitian");
}

LcuDecomposition pauli_lcu(const Matrix& h, double cutoff) {
  if (h.rows() != h.cols() || h.rows() == 0) throw Error("pauli_lcu: square input required");
  int n = 0;
  while ((Eigen::Index(1) << n) < h.rows()) ++n;
  if ((Eigen::Index(1) << n) != h.rows()) throw Error("pauli_lcu: dimension must be 2^n");
  if (!is_hermitian(h, 1e-10)) throw Error("pauli_lcu: input must be Hermitian");

  const Matrix paulis[4] = {identity(2), pauli_x(), pauli_y(), pauli_z()};
  LcuDecomposition out;
  std::vector<int> digits(static_cast<std::size_t>(n), 0);
  const long total = 1L << (2 * n);
  for (long idx = 0; idx < total; ++idx) {
    long rem = idx;
    Matrix p = Matrix::Identity(1, 1);
    for (int q = 0; q < n; ++q) {
      digits[q] = static_cast<int>(rem % 4);
      rem /= 4;
      p = kron(p, paulis[digits[q]]);
    }
    // Pauli strings are orthogonal under the Hilbert-Schmidt inner product,
    // and real coefficients are guaranteed by Hermiticity.
    const double c = (p.adjoint() * h).trace().real() / static_cast<double>(h.rows());
    if (std::abs(c) <= cutoff) continue;
    out.weights.push_back(std::abs(c));
    out.unitaries.push_back(c >= 0 ? p : Matrix(-p));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Schwinger model
// ---------------------------------------------------------------------------

namespace {

struct SchwingerLayout {
  int n_sites = 0;
  int n_links = 0;
  Eigen::Index link_dim = 0;
  Eigen::Index site_dim = 0;   // 2^N
  Eigen::Index field_dim = 0;  // link_dim^links
  Eigen::Index dim = 0;
};

SchwingerLayout layout_of(const SchwingerParams& p) {
  if (p.sites < 2) throw Error("schwinger: need at least two sites");
  if (p.cutoff < 1) throw Error("schwinger: cutoff must be at least 1");
  if (!(p.a > 0.0)) throw Error("schwinger: lattice spacing must be positive");
  if (p.periodic) throw Error("schwinger: periodic boundary not supported");
  SchwingerLayout lo;
  lo.n_sites = p.sites;
  lo.n_links = p.sites - 1;
  lo.link_dim = 2 * p.cutoff + 1;
  lo.site_dim = Eigen::Index(1) << p.sites;
  lo.field_dim = 1;
  for (int r = 0; r < lo.n_links; ++r) {
    lo.field_dim *= lo.link_dim;
    if (lo.site_dim * lo.field_dim > p.max_dim)
      throw Error("schwinger: total dimension exceeds the configured cap");
  }
  lo.dim = lo.site_dim * lo.field_dim;
  return lo;
}

// M on link r (1-based) within the link registers only (no site factor).
Matrix field_embed(const SchwingerLayout& lo, const Matrix& m, int r) {
  Eigen::Index left = 1, right = 1;
  for (int k = 1; k < r; ++k) left *= lo.link_dim;
  for (int k = r + 1; k <= lo.n_links; ++k) right *= lo.link_dim;
  return kron(kron(identity(left), m), identity(right));
}

// M on link r (1-based) tensored with identity on every other factor,
// embedded in the full site (x) link space.
Matrix op_on_link(const SchwingerLayout& lo, const Matrix& m, int r) {
  return kron(identity(lo.site_dim), field_embed(lo, m, r));
}

Matrix site_op(const SchwingerLayout& lo, const Matrix& m, int site) {
  return kron(op_on_qubit(m, site, lo.n_sites), identity(lo.field_dim));
}

Matrix electric_field_single(const SchwingerLayout& lo, int cutoff) {
  Matrix e = Matrix::Zero(lo.link_dim, lo.link_dim);
  for (Eigen::Index k = 0; k < lo.link_dim; ++k)
    e(k, k) = static_cast<double>(k) - cutoff;
  return e;
}

// Cyclic raising operator on one link: |eps> -> |eps+1>, wrapping the top of
// the truncated ladder back to the bottom.
Matrix raising_single(const SchwingerLayout& lo) {
  Matrix u = Matrix::Zero(lo.link_dim, lo.link_dim);
  for (Eigen::Index k = 0; k < lo.link_dim; ++k) u((k + 1) % lo.link_dim, k) = 1.0;
  return u;
}

Matrix electric_term(const SchwingerParams& p, const SchwingerLayout& lo) {
  Matrix h = Matrix::Zero(lo.dim, lo.dim);
  const Matrix e2 = electric_field_single(lo, p.cutoff) * electric_field_single(lo, p.cutoff);
  for (int r = 1; r <= lo.n_links; ++r) h += op_on_link(lo, e2, r);
  return Matrix(0.5 * p.g * p.g * p.a * h);
}

Matrix mass_term(const SchwingerParams& p, const SchwingerLayout& lo) {
  Matrix h = Matrix::Zero(lo.dim, lo.dim);
  for (int s = 1; s <= lo.n_sites; ++s) {
    const double sign = (s % 2 == 1) ? 1.0 : -1.0;  // (-1)^{s+1}
    h += sign * site_op(lo, pauli_z(), s);
  }
  return Matrix(0.5 * p.m * h);
}

bool link_included(int r, LinkParity parity) {
  switch (parity) {
    case LinkParity::All: return true;
    case LinkParity::Even: return r % 2 == 0;
    case LinkParity::Odd: return r % 2 == 1;
  }
  return false;
}

// Hopping term: (1/2a) sum_r [ U_r sminus_r splus_{r+1} + h.c. ], which in
// Pauli form reads
//   (1/8a) sum_r [ (U_r + U_r')(X_r X_{r+1} + Y_r Y_{r+1})
//                 + i (U_r - U_r')(X_r Y_{r+1} - Y_r X_{r+1}) ].
// The nearest-neighbour fermionic strings cancel, and each hop raises the
// intervening link so the per-site Gauss operators are conserved.
// Site and link factors commute (they act on disjoint registers), so each
// per-link piece is assembled as kron(site part, link part) rather than a
// product of full-dimension embeddings; this keeps construction O(dim^2).
Matrix hopping_term(const SchwingerParams& p, const SchwingerLayout& lo, LinkParity parity) {
  Matrix h = Matrix::Zero(lo.dim, lo.dim);
  const Matrix u1 = raising_single(lo);
  const Complex i1(0.0, 1.0);
  for (int r = 1; r <= lo.n_links; ++r) {
    if (!link_included(r, parity)) continue;
    const Matrix ur = field_embed(lo, u1, r);
    const Matrix ud = ur.adjoint();
    const Matrix xr = op_on_qubit(pauli_x(), r, lo.n_sites);
    const Matrix yr = op_on_qubit(pauli_y(), r, lo.n_sites);
    const Matrix xn = op_on_qubit(pauli_x(), r + 1, lo.n_sites);
    const Matrix yn = op_on_qubit(pauli_y(), r + 1, lo.n_sites);
    h += kron(Matrix(xr * xn + yr * yn), Matrix(ur + ud)) +
         kron(Matrix(xr * yn - yr * xn), Matrix(i1 * (ur - ud)));
  }
  return Matrix(h / (8.0 * p.a));
}

}  // namespace

SumHamiltonian build_schwinger(const SchwingerParams& p) {
  const SchwingerLayout lo = layout_of(p);
  std::vector<SumTerm> terms;
  terms.push_back({"H_E", electric_term(p, lo), true});
  terms.push_back({"H_M", mass_term(p, lo), true});
  terms.push_back({"H_h", hopping_term(p, lo, LinkParity::All), false});
  return SumHamiltonian(std::move(terms));
}

SumHamiltonian build_schwinger_split(const SchwingerParams& p) {
  const SchwingerLayout lo = layout_of(p);
  std::vector<SumTerm> terms;
  terms.push_back({"H_E", electric_term(p, lo), true});
  terms.push_back({"H_M", mass_term(p, lo), true});
  terms.push_back({"H_h_even", hopping_term(p, lo, LinkParity::Even), false});
  terms.push_back({"H_h_odd", hopping_term(p, lo, LinkParity::Odd), false});
  return SumHamiltonian(std::move(terms));
}

LcuDecomposition lcu_of_hopping(const SchwingerParams& p, LinkParity parity) {
  const SchwingerLayout lo = layout_of(p);
  const Matrix u1 = raising_single(lo);
  const double w = 1.0 / (8.0 * p.a);
  const Complex i1(0.0, 1.0);
  LcuDecomposition out;
  for (int r = 1; r <= lo.n_links; ++r) {
    if (!link_included(r, parity)) continue;
    const Matrix ur = field_embed(lo, u1, r);
    const Matrix ud = ur.adjoint();
    const Matrix xx = op_on_qubit(pauli_x(), r, lo.n_sites) * op_on_qubit(pauli_x(), r + 1, lo.n_sites);
    const Matrix yy = op_on_qubit(pauli_y(), r, lo.n_sites) * op_on_qubit(pauli_y(), r + 1, lo.n_sites);
    const Matrix xy = op_on_qubit(pauli_x(), r, lo.n_sites) * op_on_qubit(pauli_y(), r + 1, lo.n_sites);
    const Matrix yx = op_on_qubit(pauli_y(), r, lo.n_sites) * op_on_qubit(pauli_x(), r + 1, lo.n_sites);
    // Eight unit-weight pieces per link; the +-1, +-i phases are absorbed
    // into the unitaries so the weights stay positive.
    const Matrix us[8] = {kron(xx, ur),            kron(yy, ur),
                          kron(xx, ud),            kron(yy, ud),
                          kron(xy, Matrix(i1 * ur)),  kron(yx, Matrix(-i1 * ur)),
                          kron(xy, Matrix(-i1 * ud)), kron(yx, Matrix(i1 * ud))};
    for (const Matrix& u : us) {
      out.weights.push_back(w);
      out.unitaries.push_back(u);
    }
  }
  if (!out.weights.empty()) out.validate();
  return out;
}

Matrix gauss_projector(const SchwingerParams& p) {
  const SchwingerLayout lo = layout_of(p);
  Matrix proj = Matrix::Zero(lo.dim, lo.dim);
  // Basis index = site_index * field_dim + link_index, with site bit 1 the
  // most significant qubit and link 1 the most significant ladder digit.
  for (Eigen::Index idx = 0; idx < lo.dim; ++idx) {
    const Eigen::Index site_idx = idx / lo.field_dim;
    Eigen::Index link_idx = idx % lo.field_dim;
    std::vector<int> eps(static_cast<std::size_t>(lo.n_links) + 2, 0);  // eps[0]=eps[N]=0
    Eigen::Index denom = lo.field_dim;
    for (int r = 1; r <= lo.n_links; ++r) {
      denom /= lo.link_dim;
      eps[static_cast<std::size_t>(r)] = static_cast<int>(link_idx / denom) - p.cutoff;
      link_idx %= denom;
    }
    bool physical = true;
    for (int s = 1; s <= lo.n_sites && physical; ++s) {
      const int n_s = static_cast<int>((site_idx >> (lo.n_sites - s)) & 1);
      const int q_s = (s % 2 == 0) ? n_s : n_s - 1;
      const int left = (s >= 2) ? eps[static_cast<std::size_t>(s - 1)] : 0;
      const int right = (s <= lo.n_links) ? eps[static_cast<std::size_t>(s)] : 0;
      if (right - left - q_s != 0) physical = false;
    }
    if (physical) proj(idx, idx) = 1.0;
  }
  return proj;
}

// ---------------------------------------------------------------------------
// Collective neutrinos
// ---------------------------------------------------------------------------

namespace {

void check_neutrino(const NeutrinoParams& p) {
  if (p.count < 2) throw Error("neutrino: need at least two modes");
  if (p.omegas.size() != static_cast<std::size_t>(p.count))
    throw Error("neutrino: omegas must have one entry per mode");
  if (p.coupling.size() != 0 &&
      (p.coupling.rows() != p.count || p.coupling.cols() != p.count))
    throw Error("neutrino: coupling matrix must be count x count");
}

double coupling_at(const NeutrinoParams& p, int i, int j) {
  if (p.coupling.size() == 0) return 1.0;
  return 0.5 * (p.coupling(i, j) + p.coupling(j, i));
}

Matrix neutrino_exchange(const NeutrinoParams& p) {
  const int n = p.count;
  const Eigen::Index dim = Eigen::Index(1) << n;
  Matrix h = Matrix::Zero(dim, dim);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const double jij = coupling_at(p, i - 1, j - 1);
      if (jij == 0.0) continue;
      h += jij * (op_on_qubit(pauli_x(), i, n) * op_on_qubit(pauli_x(), j, n) +
                  op_on_qubit(pauli_y(), i, n) * op_on_qubit(pauli_y(), j, n) +
                  op_on_qubit(pauli_z(), i, n) * op_on_qubit(pauli_z(), j, n));
    }
  return Matrix(h * (p.mu / (2.0 * n)));
}

}  // namespace

SumHamiltonian build_neutrino(const NeutrinoParams& p) {
  check_neutrino(p);
  const int n = p.count;
  const Eigen::Index dim = Eigen::Index(1) << n;
  const double s2t = std::sin(2.0 * p.theta), c2t = std::cos(2.0 * p.theta);

  Matrix h_vac = Matrix::Zero(dim, dim);
  for (int i = 1; i <= n; ++i)
    h_vac += 0.5 * p.omegas[static_cast<std::size_t>(i - 1)] *
             (s2t * op_on_qubit(pauli_x(), i, n) - c2t * op_on_qubit(pauli_z(), i, n));

  Matrix h_mat = Matrix::Zero(dim, dim);
  for (int i = 1; i <= n; ++i) h_mat += 0.5 * p.lambda_e * op_on_qubit(pauli_z(), i, n);

  std::vector<SumTerm> terms;
  terms.push_back({"H_vac", std::move(h_vac), false});
  terms.push_back({"H_matter", std::move(h_mat), true});
  terms.push_back({"H_nunu", neutrino_exchange(p), false});
  return SumHamiltonian(std::move(terms));
}

TimeDependentHam neutrino_ip_ham(const NeutrinoParams& p, double t1, double t0) {
  check_neutrino(p);
  const int n = p.count;
  const Eigen::Index dim = Eigen::Index(1) << n;
  const double s2t = std::sin(2.0 * p.theta), c2t = std::cos(2.0 * p.theta);

  auto xs = std::make_shared<std::vector<Matrix>>();
  auto ys = std::make_shared<std::vector<Matrix>>();
  auto zpart = std::make_shared<Matrix>(Matrix::Zero(dim, dim));
  for (int i = 1; i <= n; ++i) {
    const double w = 0.5 * p.omegas[static_cast<std::size_t>(i - 1)];
    xs->push_back(Matrix(w * op_on_qubit(pauli_x(), i, n)));
    ys->push_back(Matrix(w * op_on_qubit(pauli_y(), i, n)));
    *zpart -= c2t * w * op_on_qubit(pauli_z(), i, n);
  }
  *zpart += neutrino_exchange(p);

  const double lambda = p.lambda_e;
  auto eval = [xs, ys, zpart, s2t, lambda](double tau) {
    const double c = std::cos(lambda * tau), s = std::sin(lambda * tau);
    Matrix h = *zpart;
    for (std::size_t i = 0; i < xs->size(); ++i)
      h += s2t * (c * (*xs)[i] - s * (*ys)[i]);
    return h;
  };
  // Unitary conjugation preserves the spectral norm, so the profile is the
  // norm at tau = 0.
  const double norm0 = spectral_norm(eval(0.0));
  return TimeDependentHam(eval, [norm0](double) { return norm0; }, t0, t1, dim);
}

// ---------------------------------------------------------------------------
// Penalty systems
// ---------------------------------------------------------------------------

void validate_penalty(const PenaltySystem& sys) {
  if (sys.h_free.rows() != sys.projector.rows() ||
      sys.h_free.cols() != sys.projector.cols())
    throw Error("penalty: dimension mismatch");
  if (!is_hermitian(sys.h_free, 1e-12)) throw Error("penalty: h_free must be Hermitian");
  if (!is_hermitian(sys.projector, 1e-12))
    throw Error("penalty: projector must be Hermitian");
  if ((sys.projector * sys.projector - sys.projector).cwiseAbs().maxCoeff() > 1e-10)
    throw Error("penalty: projector must be idempotent");
  Eigen::SelfAdjointEigenSolver<Matrix> es(sys.projector, Eigen::EigenvaluesOnly);
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double v = es.eigenvalues()(k);
    if (std::min(std::abs(v), std::abs(v - 1.0)) > 1e-8)
      throw Error("penalty: projector spectrum must be {0, 1}");
  }
  if (!(sys.lambda_pen >= 0.0)) throw Error("penalty: lambda_pen must be non-negative");
}

SumHamiltonian build_penalty(const PenaltySystem& sys) {
  validate_penalty(sys);
  Matrix off = sys.projector;
  off.diagonal().setZero();
  const bool diag = off.cwiseAbs().maxCoeff() <= 1e-12;
  std::vector<SumTerm> terms;
  terms.push_back({"H_f", sys.h_free, false});
  terms.push_back({"H_pen", Matrix(sys.lambda_pen * sys.projector), diag});
  return SumHamiltonian(std::move(terms));
}

}  // namespace ipsim
