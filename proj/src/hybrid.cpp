#include "ipsim/hybrid.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

namespace ipsim {

namespace {

struct RestTerm {
  std::string label;
  Matrix op;
  double norm = 0.0;
};

// Non-frame terms with nonvanishing norm; zero terms contribute neither
// evolution nor cost and would break the sampling normalization.
std::vector<RestTerm> active_rest(const SumHamiltonian& h,
                                  const std::vector<std::string>& frame_labels) {
  if (frame_labels.empty()) throw Error("hybrid: frame label set is empty");
  for (const auto& l : frame_labels) {
    if (!h.has(l)) throw Error("hybrid: unknown frame label '" + l + "'");
  }
  std::vector<RestTerm> rest;
  for (const SumTerm* term : h.terms_excluding(frame_labels)) {
    const double n = spectral_norm(term->op);
    if (n > 1e-14 * static_cast<double>(term->op.rows())) {
      rest.push_back(RestTerm{term->label, term->op, n});
    }
  }
  return rest;
}

long long checked_segments(double raw, const HybridOptions& opt) {
  long long r = 0;
  if (opt.r_override) {
    r = *opt.r_override;
    if (r < 1) throw Error("hybrid: r_override must be positive");
  } else {
    if (!(raw >= 0.0) || !std::isfinite(raw)) {
      throw Error("hybrid: non-finite segment prescription");
    }
    r = static_cast<long long>(std::ceil(raw));
    if (r < 1) r = 1;
  }
  if (r > opt.max_r) {
    std::ostringstream os;
    os << "hybrid: required segment count " << r << " exceeds cap " << opt.max_r;
    throw Error(os.str());
  }
  return r;
}

// Mixture over Gauss-Legendre nodes of branch(tau) on [a, b] with the uniform
// density 1/(b-a); node weights sum to 2, so each branch takes weight w_i / 2.
Channel node_mixture(double a, double b, int quad_points,
                     const std::function<Matrix(double)>& branch) {
  std::vector<double> nodes, weights;
  gauss_legendre(quad_points, nodes, weights);
  std::vector<double> probs(nodes.size());
  std::vector<Matrix> branches(nodes.size());
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    probs[i] = 0.5 * weights[i];
    branches[i] = branch(mid + half * nodes[i]);
  }
  return Channel::mixed_unitary(probs, branches);
}

DiamondBracket measure_vs_exact(const SumHamiltonian& h, double t,
                                const Channel& ch) {
  return diamond_bracket(Channel::unitary(exact_evolution(h, t)), ch);
}

}  // namespace

double commutator_constant(const SumHamiltonian& h,
                           const std::vector<std::string>& frame_labels) {
  const std::vector<const SumTerm*> rest = h.terms_excluding(frame_labels);
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < rest.size(); ++p) {
    Matrix tail = Matrix::Zero(rest[p]->op.rows(), rest[p]->op.cols());
    for (std::size_t q = p + 1; q < rest.size(); ++q) tail += rest[q]->op;
    total += spectral_norm(rest[p]->op * tail - tail * rest[p]->op);
  }
  return total;
}

HybridResult trotter_qdrift_ip(const SumHamiltonian& h,
                               const std::vector<std::string>& frame_labels,
                               double t, double eps, const HybridOptions& opt) {
  if (!(t > 0.0)) throw Error("trotter_qdrift_ip: t must be positive");
  if (!opt.r_override && !(eps > 0.0)) {
    throw Error("trotter_qdrift_ip: eps must be positive");
  }
  const Matrix frame_sum = h.sum_of(frame_labels);
  HermitianExp fexp(frame_sum);
  const std::vector<RestTerm> rest = active_rest(h, frame_labels);

  HybridResult out;
  if (rest.empty()) {
    out.channel = Channel::unitary(fexp.at(t));
    if (opt.measure) out.measured = measure_vs_exact(h, t, out.channel);
    return out;
  }

  double sum_norm_sq = 0.0;
  for (const auto& k : rest) sum_norm_sq += k.norm * k.norm;
  const double c_comm = commutator_constant(h, frame_labels);
  const double strength = c_comm + 4.0 * sum_norm_sq;
  const long long r = checked_segments(t * t / eps * strength, opt);
  const double dt = t / static_cast<double>(r);

  std::vector<Matrix> step_exp(rest.size());
  for (std::size_t k = 0; k < rest.size(); ++k) {
    step_exp[k] = expmi(rest[k].op, dt);
  }
  const auto branch_at = [&](std::size_t k, double tau) -> Matrix {
    return fexp.at(-tau) * step_exp[k] * fexp.at(tau);
  };

  const Eigen::Index dim = frame_sum.rows();
  if (opt.mode == HybridMode::ExactChannel) {
    Matrix s = Matrix::Identity(dim * dim, dim * dim);
    for (long long j = 0; j < r; ++j) {
      const double a = dt * static_cast<double>(j);
      for (std::size_t k = 0; k < rest.size(); ++k) {
        const Channel seg = node_mixture(
            a, a + dt, opt.quad_points,
            [&](double tau) { return branch_at(k, tau); });
        s = seg.superop() * s;
      }
    }
    const Channel lab = Channel::unitary(fexp.at(t));
    out.channel = Channel::superoperator(lab.superop() * s, dim);
  } else {
    if (opt.trajectories < 1) throw Error("hybrid: trajectories must be >= 1");
    Matrix s_avg = Matrix::Zero(dim * dim, dim * dim);
    for (int m = 0; m < opt.trajectories; ++m) {
      Rng rng = Rng::stream(opt.seed, static_cast<std::uint64_t>(m));
      Matrix u = Matrix::Identity(dim, dim);
      for (long long j = 0; j < r; ++j) {
        const double a = dt * static_cast<double>(j);
        for (std::size_t k = 0; k < rest.size(); ++k) {
          u = branch_at(k, a + rng.next_double() * dt) * u;
        }
      }
      u = fexp.at(t) * u;
      if (m == 0) out.sample = u;
      s_avg += Channel::unitary(u).superop();
    }
    s_avg /= static_cast<double>(opt.trajectories);
    out.channel = Channel::superoperator(s_avg, dim);
  }

  for (const auto& k : rest) out.ledger.calls_wk[k.label] = r;
  out.ledger.calls_wl_frame = 2 * r * static_cast<long long>(rest.size()) + 1;
  out.r_used = r;
  out.predicted_bound = t * t / static_cast<double>(r) * strength;
  if (opt.measure) out.measured = measure_vs_exact(h, t, out.channel);
  return out;
}

HybridResult qdrift_qubitization_ip(const SumHamiltonian& h,
                                    const std::vector<std::string>& frame_labels,
                                    const LcuDecomposition& lcu_alpha, double t,
                                    double eps, const HybridOptions& opt) {
  if (!(t > 0.0)) throw Error("qdrift_qubitization_ip: t must be positive");
  if (!(eps > 0.0)) throw Error("qdrift_qubitization_ip: eps must be positive");
  const Matrix frame_sum = h.sum_of(frame_labels);
  HermitianExp fexp(frame_sum);
  const std::vector<RestTerm> rest = active_rest(h, frame_labels);

  HybridResult out;
  if (rest.empty()) {
    out.channel = Channel::unitary(fexp.at(t));
    if (opt.measure) out.measured = measure_vs_exact(h, t, out.channel);
    return out;
  }

  Matrix rest_sum = Matrix::Zero(frame_sum.rows(), frame_sum.cols());
  std::string joined;
  for (const auto& k : rest) {
    rest_sum += k.op;
    joined += (joined.empty() ? "" : "+") + k.label;
  }
  const Matrix recon = lcu_alpha.reconstruct();
  const double mismatch = spectral_norm(recon - rest_sum);
  if (mismatch > 1e-9 * std::max(1.0, spectral_norm(rest_sum))) {
    throw Error("qdrift_qubitization_ip: LCU does not reconstruct the non-frame sum");
  }

  const double alpha_norm = spectral_norm(rest_sum);
  const long long r = checked_segments(8.0 * t * t * alpha_norm * alpha_norm / eps, opt);
  const double dt = t / static_cast<double>(r);
  const double delta = eps / (2.0 * static_cast<double>(r));

  const WalkOperator walk = walk_operator(lcu_alpha);
  const BlockEncoding enc = ideal_evolution_encoding(walk, dt);
  const Matrix block = enc.signal_block();
  const auto branch_at = [&](double tau) -> Matrix {
    return fexp.at(-tau) * block * fexp.at(tau);
  };

  const Eigen::Index dim = frame_sum.rows();
  if (opt.mode == HybridMode::ExactChannel) {
    Matrix s = Matrix::Identity(dim * dim, dim * dim);
    for (long long j = 0; j < r; ++j) {
      const double a = dt * static_cast<double>(j);
      const Channel seg = node_mixture(a, a + dt, opt.quad_points, branch_at);
      s = seg.superop() * s;
    }
    const Channel lab = Channel::unitary(fexp.at(t));
    out.channel = Channel::superoperator(lab.superop() * s, dim);
  } else {
    if (opt.trajectories < 1) throw Error("hybrid: trajectories must be >= 1");
    Matrix s_avg = Matrix::Zero(dim * dim, dim * dim);
    for (int m = 0; m < opt.trajectories; ++m) {
      Rng rng = Rng::stream(opt.seed, static_cast<std::uint64_t>(m));
      Matrix u = Matrix::Identity(dim, dim);
      for (long long j = 0; j < r; ++j) {
        const double a = dt * static_cast<double>(j);
        u = branch_at(a + rng.next_double() * dt) * u;
      }
      u = fexp.at(t) * u;
      if (m == 0) out.sample = u;
      s_avg += Channel::unitary(u).superop();
    }
    s_avg /= static_cast<double>(opt.trajectories);
    out.channel = Channel::superoperator(s_avg, dim);
  }

  const long long n_q = qubitization_query_cost(lcu_alpha.lambda(), dt, delta);
  out.ledger.calls_wk[joined] = r;
  out.ledger.calls_select = r * n_q;
  out.ledger.calls_prepare = 2 * r * n_q;
  out.ledger.calls_wl_frame = 2 * r + 1;
  out.r_used = r;
  out.predicted_bound =
      4.0 * t * t * alpha_norm * alpha_norm / static_cast<double>(r) +
      2.0 * static_cast<double>(r) * enc.epsilon;
  out.lambda_alpha = lcu_alpha.lambda();
  if (opt.measure) out.measured = measure_vs_exact(h, t, out.channel);
  return out;
}

HybridResult trotter_qdrift_qubitization_ip(
    const SumHamiltonian& h, const std::vector<std::string>& frame_labels,
    const std::map<std::string, LcuDecomposition>& lcus, double t, double eps,
    const HybridOptions& opt) {
  if (!(t > 0.0)) throw Error("trotter_qdrift_qubitization_ip: t must be positive");
  if (!(eps > 0.0)) throw Error("trotter_qdrift_qubitization_ip: eps must be positive");
  const Matrix frame_sum = h.sum_of(frame_labels);
  HermitianExp fexp(frame_sum);
  const std::vector<RestTerm> rest = active_rest(h, frame_labels);

  HybridResult out;
  if (rest.empty()) {
    out.channel = Channel::unitary(fexp.at(t));
    if (opt.measure) out.measured = measure_vs_exact(h, t, out.channel);
    return out;
  }

  double sum_norm_sq = 0.0;
  for (const auto& k : rest) sum_norm_sq += k.norm * k.norm;
  const double c_comm = commutator_constant(h, frame_labels);
  const double strength = c_comm + 4.0 * sum_norm_sq;
  const long long r = checked_segments(2.0 * t * t / eps * strength, opt);
  const double dt = t / static_cast<double>(r);
  const double delta =
      eps / (2.0 * static_cast<double>(r) * static_cast<double>(rest.size()));

  std::vector<Matrix> blocks(rest.size());
  std::vector<long long> queries(rest.size());
  double lambda_total = 0.0;
  double synth_residual = 0.0;
  for (std::size_t k = 0; k < rest.size(); ++k) {
    const auto it = lcus.find(rest[k].label);
    if (it == lcus.end()) {
      throw Error("trotter_qdrift_qubitization_ip: missing LCU for term '" +
                  rest[k].label + "'");
    }
    const double mismatch = spectral_norm(it->second.reconstruct() - rest[k].op);
    if (mismatch > 1e-9 * std::max(1.0, rest[k].norm)) {
      throw Error("trotter_qdrift_qubitization_ip: LCU for '" + rest[k].label +
                  "' does not reconstruct the term");
    }
    const WalkOperator walk = walk_operator(it->second);
    const BlockEncoding enc = ideal_evolution_encoding(walk, dt);
    blocks[k] = enc.signal_block();
    queries[k] = qubitization_query_cost(it->second.lambda(), dt, delta);
    lambda_total += it->second.lambda();
    synth_residual += 2.0 * static_cast<double>(r) * enc.epsilon;
  }
  const auto branch_at = [&](std::size_t k, double tau) -> Matrix {
    return fexp.at(-tau) * blocks[k] * fexp.at(tau);
  };

  const Eigen::Index dim = frame_sum.rows();
  if (opt.mode == HybridMode::ExactChannel) {
    Matrix s = Matrix::Identity(dim * dim, dim * dim);
    for (long long j = 0; j < r; ++j) {
      const double a = dt * static_cast<double>(j);
      for (std::size_t k = 0; k < rest.size(); ++k) {
        const Channel seg = node_mixture(
            a, a + dt, opt.quad_points,
            [&](double tau) { return branch_at(k, tau); });
        s = seg.superop() * s;
      }
    }
    const Channel lab = Channel::unitary(fexp.at(t));
    out.channel = Channel::superoperator(lab.superop() * s, dim);
  } else {
    if (opt.trajectories < 1) throw Error("hybrid: trajectories must be >= 1");
    Matrix s_avg = Matrix::Zero(dim * dim, dim * dim);
    for (int m = 0; m < opt.trajectories; ++m) {
      Rng rng = Rng::stream(opt.seed, static_cast<std::uint64_t>(m));
      Matrix u = Matrix::Identity(dim, dim);
      for (long long j = 0; j < r; ++j) {
        const double a = dt * static_cast<double>(j);
        for (std::size_t k = 0; k < rest.size(); ++k) {
          u = branch_at(k, a + rng.next_double() * dt) * u;
        }
      }
      u = fexp.at(t) * u;
      if (m == 0) out.sample = u;
      s_avg += Channel::unitary(u).superop();
    }
    s_avg /= static_cast<double>(opt.trajectories);
    out.channel = Channel::superoperator(s_avg, dim);
  }

  for (std::size_t k = 0; k < rest.size(); ++k) {
    out.ledger.calls_wk[rest[k].label] = r;
    out.ledger.calls_select += r * queries[k];
    out.ledger.calls_prepare += 2 * r * queries[k];
  }
  out.ledger.calls_wl_frame = 2 * r * static_cast<long long>(rest.size()) + 1;
  out.r_used = r;
  out.predicted_bound =
      t * t / static_cast<double>(r) * strength + synth_residual;
  out.lambda_alpha = lambda_total;
  if (opt.measure) out.measured = measure_vs_exact(h, t, out.channel);
  return out;
}

NeutrinoErrorPair neutrino_lab_vs_ip_error(const NeutrinoParams& p, double t,
                                           long long r) {
  const SumHamiltonian ham = build_neutrino(p);
  const Matrix exact = exact_evolution(ham, t);
  const Matrix lab = trotter_product(ham, t, r, 1).u;

  HybridOptions opt;
  opt.mode = HybridMode::ExactChannel;
  opt.quad_points = 16;
  opt.r_override = r;
  opt.measure = true;

  NeutrinoErrorPair out;
  out.lab_error = spectral_norm(exact - lab);
  out.ip_error =
      trotter_qdrift_ip(ham, {"H_matter"}, t, /*eps=*/1.0, opt).measured.lower;
  return out;
}

}  // namespace ipsim
