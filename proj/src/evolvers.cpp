#include "ipsim/evolvers.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "ipsim/rng.hpp"

namespace ipsim {

// ---------------------------------------------------------------------------
// CostLedger
// ---------------------------------------------------------------------------

long long CostLedger::total_wk() const {
  long long s = 0;
  for (const auto& [label, n] : calls_wk) s += n;
  return s;
}

CostLedger& CostLedger::operator+=(const CostLedger& other) {
  for (const auto& [label, n] : other.calls_wk) calls_wk[label] += n;
  calls_wl_frame += other.calls_wl_frame;
  calls_prepare += other.calls_prepare;
  calls_select += other.calls_select;
  toffoli_estimate += other.toffoli_estimate;
  return *this;
}

// ---------------------------------------------------------------------------
// Exact evolution and Trotter products
// ---------------------------------------------------------------------------

Matrix exact_evolution(const SumHamiltonian& h, double t) {
  return expmi(h.total(), t);
}

namespace {

// Exponential factories per term, sharing one eigendecomposition each.
std::vector<HermitianExp> term_exps(const SumHamiltonian& h) {
  std::vector<HermitianExp> exps;
  exps.reserve(h.terms().size());
  for (const SumTerm& t : h.terms()) exps.emplace_back(t.op);
  return exps;
}

// One second-order (symmetric) step: half steps of terms 1..L-1, a full step
// of term L, then the half steps reversed.
Matrix strang_step(const std::vector<HermitianExp>& exps, const SumHamiltonian& h,
                   double dt, CostLedger& ledger) {
  const std::size_t L = exps.size();
  Matrix u = Matrix::Identity(h.dim(), h.dim());
  for (std::size_t k = 0; k < L - 1; ++k) {
    u = exps[k].at(0.5 * dt) * u;
    ledger.calls_wk[h.terms()[k].label] += 1;
  }
  u = exps[L - 1].at(dt) * u;
  ledger.calls_wk[h.terms()[L - 1].label] += 1;
  for (std::size_t k = L - 1; k-- > 0;) {
    u = exps[k].at(0.5 * dt) * u;
    ledger.calls_wk[h.terms()[k].label] += 1;
  }
  return u;
}

// Recursive Suzuki step of even order `ord` >= 2.  The order-(2k) fractions
// satisfy 4 u_k^{2k-1} + (1 - 4 u_k)^{2k-1} = 0, i.e.
// u_k = 1 / (4 - 4^{1/(2k-1)}).
Matrix suzuki_step(const std::vector<HermitianExp>& exps, const SumHamiltonian& h,
                   double dt, int ord, CostLedger& ledger) {
  if (ord == 2) return strang_step(exps, h, dt, ledger);
  const int k = ord / 2;
  const double uk = 1.0 / (4.0 - std::pow(4.0, 1.0 / (2.0 * k - 1.0)));
  const Matrix side = suzuki_step(exps, h, uk * dt, ord - 2, ledger);
  const Matrix mid = suzuki_step(exps, h, (1.0 - 4.0 * uk) * dt, ord - 2, ledger);
  Matrix u = side * side;
  u = mid * u;
  u = side * (side * u);
  return u;
}

}  // namespace

TrotterResult trotter_product(const SumHamiltonian& h, double t, int r, int order) {
  if (r < 1) throw Error("trotter_product: step count must be positive");
  if (!(order == 1 || (order >= 2 && order % 2 == 0)))
    throw Error("trotter_product: order must be 1, 2, or an even 2k");

  const std::vector<HermitianExp> exps = term_exps(h);
  const double dt = t / static_cast<double>(r);
  TrotterResult out;
  out.u = Matrix::Identity(h.dim(), h.dim());

  if (h.terms().size() == 1) {
    // Single term: the formula is exact at any order.
    out.u = exps[0].at(t);
    out.ledger.calls_wk[h.terms()[0].label] += r;
    return out;
  }

  for (int step = 0; step < r; ++step) {
    if (order == 1) {
      Matrix s = Matrix::Identity(h.dim(), h.dim());
      for (std::size_t k = 0; k < exps.size(); ++k) {
        s = exps[k].at(dt) * s;
        out.ledger.calls_wk[h.terms()[k].label] += 1;
      }
      out.u = s * out.u;
    } else {
      out.u = suzuki_step(exps, h, dt, order, out.ledger) * out.u;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Time-dependent splitting
// ---------------------------------------------------------------------------

std::vector<TimeDependentHam> trotter_split_td(const std::vector<LabeledTdHam>& terms,
                                               double t0, double t1) {
  if (terms.empty()) throw Error("trotter_split_td: need at least one term");
  std::vector<TimeDependentHam> out;
  out.reserve(terms.size());
  for (const auto& [label, ham] : terms) out.push_back(ham.restricted(t0, t1));
  return out;
}

double td_split_error_bound(const std::vector<LabeledTdHam>& terms, double t0,
                            double t1, int grid) {
  if (grid < 2) throw Error("td_split_error_bound: grid too small");
  const double dt = t1 - t0;
  double total = 0.0;
  for (std::size_t l = 0; l + 1 < terms.size(); ++l) {
    double worst = 0.0;
    for (int a = 0; a < grid; ++a) {
      const double u = t0 + dt * a / (grid - 1);
      const Matrix hl = terms[l].second(u);
      for (int b = 0; b < grid; ++b) {
        const double v = t0 + dt * b / (grid - 1);
        Matrix rest = Matrix::Zero(hl.rows(), hl.cols());
        for (std::size_t q = l + 1; q < terms.size(); ++q) rest += terms[q].second(v);
        worst = std::max(worst, spectral_norm(hl * rest - rest * hl));
      }
    }
    total += worst;
  }
  return 0.5 * total * dt * dt;
}

// ---------------------------------------------------------------------------
// Gauss-Legendre quadrature
// ---------------------------------------------------------------------------

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw Error("gauss_legendre: order must be positive");
  static std::mutex mu;
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) {
      nodes = it->second.first;
      weights = it->second.second;
      return;
    }
  }
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  // Newton iteration on P_n from the Chebyshev-based initial guess; the
  // recurrence also yields P_n' for the weight formula.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  std::lock_guard<std::mutex> lock(mu);
  cache[n] = {nodes, weights};
}

// ---------------------------------------------------------------------------
// qDRIFT plan
// ---------------------------------------------------------------------------

namespace {
constexpr int kTablePoints = 1024;
}

double QdriftPlan::norm_at_time(double tau) const {
  const auto& ts = grid_times;
  if (tau <= ts.front()) tau = ts.front();
  if (tau >= ts.back()) tau = ts.back();
  const auto it = std::upper_bound(ts.begin(), ts.end(), tau);
  const std::size_t j = std::min(ts.size() - 1, static_cast<std::size_t>(it - ts.begin()));
  const std::size_t i = j - 1;
  // The cumulative table is piecewise linear, so its density is piecewise
  // constant on grid cells.
  return (grid_cumulative[j] - grid_cumulative[i]) / (ts[j] - ts[i]);
}

double QdriftPlan::time_at_mass_fraction(double u) const {
  if (u <= 0.0) return t0;
  if (u >= 1.0) return t1;
  const double target = u * total_mass;
  const auto it = std::lower_bound(grid_cumulative.begin(), grid_cumulative.end(), target);
  std::size_t j = static_cast<std::size_t>(it - grid_cumulative.begin());
  if (j == 0) j = 1;
  const std::size_t i = j - 1;
  const double c0 = grid_cumulative[i], c1 = grid_cumulative[j];
  const double f = (c1 > c0) ? (target - c0) / (c1 - c0) : 0.0;
  return grid_times[i] + f * (grid_times[j] - grid_times[i]);
}

QdriftPlan qdrift_plan(const TimeDependentHam& h, double t0, double t1, int r,
                       bool uniform_time) {
  if (r < 1) throw Error("qdrift_plan: segment count must be positive");
  if (!(t0 < t1)) throw Error("qdrift_plan: need t0 < t1");

  QdriftPlan plan;
  plan.t0 = t0;
  plan.t1 = t1;
  plan.segments = r;
  plan.grid_times.resize(kTablePoints);
  plan.grid_cumulative.resize(kTablePoints);

  const double dt = (t1 - t0) / (kTablePoints - 1);
  double acc = 0.0;
  double prev = h.norm_at(t0);
  plan.grid_times[0] = t0;
  plan.grid_cumulative[0] = 0.0;
  for (int k = 1; k < kTablePoints; ++k) {
    const double tau = t0 + k * dt;
    const double cur = h.norm_at(tau);
    if (!(prev >= 0.0) || !(cur >= 0.0))
      throw Error("qdrift_plan: negative norm profile");
    acc += 0.5 * (prev + cur) * dt;
    plan.grid_times[static_cast<std::size_t>(k)] = tau;
    plan.grid_cumulative[static_cast<std::size_t>(k)] = acc;
    prev = cur;
  }
  plan.total_mass = acc;
  if (!(acc > 0.0)) throw Error("qdrift_plan: norm profile vanishes on the whole domain");

  plan.boundaries.resize(static_cast<std::size_t>(r) + 1);
  plan.boundaries.front() = t0;
  plan.boundaries.back() = t1;
  for (int k = 1; k < r; ++k) {
    const double b = uniform_time
                         ? t0 + (t1 - t0) * k / static_cast<double>(r)
                         : plan.time_at_mass_fraction(k / static_cast<double>(r));
    plan.boundaries[static_cast<std::size_t>(k)] = b;
  }
  for (std::size_t k = 0; k + 1 < plan.boundaries.size(); ++k)
    if (!(plan.boundaries[k] < plan.boundaries[k + 1]))
      throw Error("qdrift_plan: degenerate segment boundaries");
  return plan;
}

// ---------------------------------------------------------------------------
// Exact channel and sampling
// ---------------------------------------------------------------------------

Channel qdrift_channel_exact(const TimeDependentHam& h, double t0, double t1,
                             int quad_points, double* renorm_residual) {
  if (quad_points < 2) throw Error("qdrift_channel_exact: need at least 2 nodes");
  if (!(t0 < t1)) throw Error("qdrift_channel_exact: need t0 < t1");

  // Per-segment normalization: p(tau) = ||H(tau)|| / integral over [t0, t1].
  std::vector<double> xs, ws;
  gauss_legendre(quad_points, xs, ws);
  const double half = 0.5 * (t1 - t0), mid = 0.5 * (t0 + t1);

  double mass = 0.0;
  std::vector<double> taus(static_cast<std::size_t>(quad_points));
  std::vector<double> norms(static_cast<std::size_t>(quad_points));
  for (int i = 0; i < quad_points; ++i) {
    const double tau = mid + half * xs[static_cast<std::size_t>(i)];
    const double nrm = h.norm_at(tau);
    if (!(nrm > 0.0))
      throw Error("qdrift_channel_exact: norm profile vanishes inside the segment");
    taus[static_cast<std::size_t>(i)] = tau;
    norms[static_cast<std::size_t>(i)] = nrm;
    mass += ws[static_cast<std::size_t>(i)] * half * nrm;
  }

  std::vector<double> probs(static_cast<std::size_t>(quad_points));
  std::vector<Matrix> branches;
  branches.reserve(static_cast<std::size_t>(quad_points));
  double raw_total = 0.0;
  for (int i = 0; i < quad_points; ++i) {
    const double p_tau = norms[static_cast<std::size_t>(i)] / mass;  // density
    const double prob = ws[static_cast<std::size_t>(i)] * half * p_tau;
    probs[static_cast<std::size_t>(i)] = prob;
    raw_total += prob;
    branches.push_back(expmi(h(taus[static_cast<std::size_t>(i)]), 1.0 / p_tau));
  }
  if (renorm_residual) *renorm_residual = std::abs(raw_total - 1.0);
  for (double& p : probs) p /= raw_total;
  return Channel::mixed_unitary(std::move(probs), std::move(branches));
}

QdriftTrajectory qdrift_sample(const TimeDependentHam& h, double t0, double t1,
                               int r, std::uint64_t seed, const std::string& label) {
  const QdriftPlan plan = qdrift_plan(h, t0, t1, r);
  Rng rng(seed);
  QdriftTrajectory out;
  out.u = Matrix::Identity(h.dim(), h.dim());
  for (int k = 0; k < r; ++k) {
    // Draw within segment k by inverting the global mass table on the
    // segment's (1/r)-slab of probability mass.
    const double u = (k + rng.next_double()) / static_cast<double>(r);
    const double tau = plan.time_at_mass_fraction(u);
    // Per-segment density: table norm divided by the segment's mass (1/r of
    // the total).
    const double p_seg = plan.norm_at_time(tau) / (plan.total_mass / r);
    out.u = expmi(h(tau), 1.0 / p_seg) * out.u;
    out.ledger.calls_wk[label] += 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Interaction frame
// ---------------------------------------------------------------------------

TimeDependentHam interaction_frame(const SumHamiltonian& h,
                                   const std::vector<std::string>& frame_labels,
                                   double t0, double t1) {
  if (frame_labels.empty()) throw Error("interaction_frame: need a frame term");
  if (h.terms_excluding(frame_labels).empty())
    throw Error("interaction_frame: every term is in the frame; nothing to rotate");
  const Matrix rest = h.sum_excluding(frame_labels);
  auto frame_exp = std::make_shared<HermitianExp>(h.sum_of(frame_labels));
  auto rest_held = std::make_shared<Matrix>(rest);
  const double norm = spectral_norm(rest);
  auto eval = [frame_exp, rest_held](double tau) {
    // e^{-iF(-tau)} = e^{+iF tau}
    const Matrix u = frame_exp->at(-tau);
    return Matrix(u * (*rest_held) * u.adjoint());
  };
  return TimeDependentHam(eval, [norm](double) { return norm; }, t0, t1, h.dim());
}

}  // namespace ipsim
