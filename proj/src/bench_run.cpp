#include <chrono>
#include <cmath>

#include "ipsim/bench.hpp"
#include "ipsim/parallel.hpp"

namespace ipsim::bench {

namespace {

// Exact-channel and measured-bracket paths build dim^2 x dim^2 superoperators;
// beyond this dimension the dense-channel representation is refused.
constexpr Eigen::Index kChannelDimCap = 32;

bool known_protocol(const std::string& kind) {
  return kind == "exact" || kind == "trotter" || kind == "qdrift" ||
         kind == "hybrid_tq" || kind == "hybrid_qq" || kind == "hybrid_tqq";
}

struct BuiltModel {
  SumHamiltonian ham;
  std::vector<std::string> frame;
  LcuDecomposition lcu_rest;                     // hybrid_qq
  std::map<std::string, LcuDecomposition> lcus;  // hybrid_tqq
};

void fill_generic_lcus(BuiltModel& bm, const std::string& proto) {
  if (proto == "hybrid_qq") {
    bm.lcu_rest = pauli_lcu(bm.ham.sum_excluding(bm.frame));
  } else if (proto == "hybrid_tqq") {
    for (const SumTerm* term : bm.ham.terms_excluding(bm.frame)) {
      bm.lcus[term->label] = pauli_lcu(term->op);
    }
  }
}

BuiltModel build_model(const ExperimentConfig& cfg) {
  const std::string& kind = cfg.model.kind;
  const std::string& proto = cfg.protocol.kind;

  if (kind == "schwinger") {
    SchwingerParams sp = cfg.model.schwinger;
    sp.max_dim = cfg.caps.max_dim;
    const bool split = proto == "hybrid_tq" || proto == "hybrid_tqq";
    BuiltModel bm{split ? build_schwinger_split(sp) : build_schwinger(sp),
                  cfg.model.frame,
                  {},
                  {}};
    if (bm.frame.empty()) bm.frame = {"H_E", "H_M"};
    if (proto == "hybrid_qq") bm.lcu_rest = lcu_of_hopping(sp, LinkParity::All);
    if (proto == "hybrid_tqq") {
      bm.lcus["H_h_even"] = lcu_of_hopping(sp, LinkParity::Even);
      bm.lcus["H_h_odd"] = lcu_of_hopping(sp, LinkParity::Odd);
    }
    return bm;
  }

  if (kind == "neutrino") {
    const NeutrinoParams& np = cfg.model.neutrino;
    if ((Eigen::Index(1) << np.count) > cfg.caps.max_dim) {
      throw Error("model: neutrino dimension exceeds cap");
    }
    BuiltModel bm{build_neutrino(np), cfg.model.frame, {}, {}};
    if (bm.frame.empty()) bm.frame = {"H_matter"};
    fill_generic_lcus(bm, proto);
    return bm;
  }

  if (kind == "penalty") {
    const int n = cfg.model.penalty_qubits;
    if (n < 1 || n > 14) throw Error("model: penalty qubit count out of range");
    const Eigen::Index dim = Eigen::Index(1) << n;
    if (dim > cfg.caps.max_dim) throw Error("model: penalty dimension exceeds cap");
    Matrix h_free;
    if (cfg.model.penalty_h_free == "x") {
      h_free = Matrix::Zero(dim, dim);
      for (int q = 1; q <= n; ++q) h_free += op_on_qubit(pauli_x(), q, n);
    } else if (cfg.model.penalty_h_free == "random") {
      Rng rng = Rng::stream(cfg.seed, 901);
      h_free = random_hermitian(dim, rng);
      h_free /= spectral_norm(h_free);
    } else {
      throw Error("model: penalty h_free must be 'x' or 'random'");
    }
    Matrix ket1 = Matrix::Zero(2, 2);
    ket1(1, 1) = 1.0;
    const Matrix proj = op_on_qubit(ket1, 1, n);
    const PenaltySystem sys{h_free, proj, cfg.model.lambda_pen};
    BuiltModel bm{build_penalty(sys), cfg.model.frame, {}, {}};
    if (bm.frame.empty()) bm.frame = {"H_pen"};
    fill_generic_lcus(bm, proto);
    return bm;
  }

  if (kind == "random") {
    const int n = cfg.model.random_qubits;
    if (n < 1 || n > 14) throw Error("model: random qubit count out of range");
    const Eigen::Index dim = Eigen::Index(1) << n;
    if (dim > cfg.caps.max_dim) throw Error("model: random dimension exceeds cap");
    if (cfg.model.random_terms < 1) throw Error("model: need at least one term");
    std::vector<SumTerm> terms;
    for (int k = 0; k < cfg.model.random_terms; ++k) {
      Rng rng = Rng::stream(cfg.seed, 800 + static_cast<std::uint64_t>(k));
      Matrix op = random_hermitian(dim, rng);
      op *= (0.25 + 0.75 * rng.next_double()) / spectral_norm(op);
      terms.push_back({"H_" + std::to_string(k + 1), op, false});
    }
    BuiltModel bm{SumHamiltonian(std::move(terms)), cfg.model.frame, {}, {}};
    if (bm.frame.empty()) bm.frame = {"H_1"};
    fill_generic_lcus(bm, proto);
    return bm;
  }

  throw Error("model: unknown kind '" + kind + "'");
}

void require_channel_dim(Eigen::Index dim) {
  if (dim > kChannelDimCap) {
    throw Error("channel representation needs dimension <= " +
                std::to_string(kChannelDimCap) + ", got " + std::to_string(dim));
  }
}

void fill_ledger(ResultRow& row, const CostLedger& ledger) {
  if (!ledger.calls_wk.empty()) row.calls_wk = ledger.total_wk();
  if (ledger.calls_wl_frame > 0) row.calls_wl = ledger.calls_wl_frame;
  if (ledger.calls_prepare > 0) row.calls_prepare = ledger.calls_prepare;
  if (ledger.calls_select > 0) row.calls_select = ledger.calls_select;
}

void run_trotter(const ExperimentConfig& cfg, const BuiltModel& bm,
                 ResultRow& row) {
  const double t = cfg.t;
  const double c_lab = commutator_constant(bm.ham, {});
  long long r = cfg.protocol.r;
  if (r <= 0) {
    // Prescription puts the diamond-norm bound c t^2 / r at eps.
    r = std::max<long long>(
        1, static_cast<long long>(std::ceil(c_lab * t * t / cfg.eps)));
  }
  if (r > cfg.caps.max_r) throw Error("trotter: segment count exceeds cap");
  const TrotterResult tr = trotter_product(bm.ham, t, static_cast<int>(r),
                                           cfg.protocol.order);
  require_channel_dim(bm.ham.dim());
  const DiamondBracket br =
      diamond_bracket(Channel::unitary(exact_evolution(bm.ham, t)),
                      Channel::unitary(tr.u));
  row.r = r;
  row.error_lower = br.lower;
  row.error_upper = br.upper;
  if (cfg.protocol.order == 1) {
    // Diamond-norm form of the first-order splitting bound: the spectral
    // bound (t^2/2r) sum ||[H_p, sum_q>p H_q]|| doubles under the channel map.
    row.bound = c_lab * t * t / static_cast<double>(r);
  }
  fill_ledger(row, tr.ledger);
}

// Term-sampling qDRIFT: each segment applies e^{-i H_k S dt / ||H_k||} with
// probability ||H_k|| / S, S = sum of term norms.  Diamond-distance bound
// 4 S^2 t^2 / r.
void run_qdrift(const ExperimentConfig& cfg, const BuiltModel& bm,
                ResultRow& row) {
  const double t = cfg.t;
  struct Active {
    std::string label;
    double norm;
    Matrix step;
  };
  double s_tot = 0.0;
  std::vector<const SumTerm*> live;
  for (const auto& term : bm.ham.terms()) {
    const double n = spectral_norm(term.op);
    if (n > 1e-14 * static_cast<double>(term.op.rows())) {
      live.push_back(&term);
      s_tot += n;
    }
  }
  require_channel_dim(bm.ham.dim());
  const Eigen::Index dim = bm.ham.dim();
  if (live.empty() || t == 0.0) {
    row.error_lower = 0.0;
    row.error_upper = 0.0;
    return;
  }

  long long r = cfg.protocol.r;
  if (r <= 0) {
    r = std::max<long long>(
        1, static_cast<long long>(std::ceil(4.0 * s_tot * s_tot * t * t / cfg.eps)));
  }
  if (r > cfg.caps.max_r) throw Error("qdrift: segment count exceeds cap");
  const double dt = t / static_cast<double>(r);

  std::vector<double> probs;
  std::vector<Matrix> branches;
  long long wk_total = 0;
  for (const SumTerm* term : live) {
    const double n = spectral_norm(term->op);
    probs.push_back(n / s_tot);
    branches.push_back(expmi(term->op, s_tot * dt / n));
  }

  Channel out = Channel::unitary(Matrix::Identity(dim, dim));
  if (cfg.protocol.mode == "exact-channel") {
    const Channel seg = Channel::mixed_unitary(probs, branches);
    Matrix s = Matrix::Identity(dim * dim, dim * dim);
    const Matrix seg_s = seg.superop();
    for (long long j = 0; j < r; ++j) s = seg_s * s;
    out = Channel::superoperator(s, dim);
    wk_total = r;
  } else {
    Matrix s_avg = Matrix::Zero(dim * dim, dim * dim);
    for (int m = 0; m < cfg.trajectories; ++m) {
      Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(m));
      Matrix u = Matrix::Identity(dim, dim);
      for (long long j = 0; j < r; ++j) {
        const double x = rng.next_double();
        double acc = 0.0;
        std::size_t pick = probs.size() - 1;
        for (std::size_t k = 0; k < probs.size(); ++k) {
          acc += probs[k];
          if (x < acc) {
            pick = k;
            break;
          }
        }
        u = branches[pick] * u;
      }
      s_avg += Channel::unitary(u).superop();
    }
    s_avg /= static_cast<double>(cfg.trajectories);
    out = Channel::superoperator(s_avg, dim);
    wk_total = r;
  }

  const DiamondBracket br =
      diamond_bracket(Channel::unitary(exact_evolution(bm.ham, t)), out);
  row.r = r;
  row.error_lower = br.lower;
  row.error_upper = br.upper;
  row.bound = 4.0 * s_tot * s_tot * t * t / static_cast<double>(r);
  CostLedger ledger;
  ledger.calls_wk["sampled"] = wk_total;
  fill_ledger(row, ledger);
}

void run_hybrid(const ExperimentConfig& cfg, const BuiltModel& bm,
                ResultRow& row) {
  require_channel_dim(bm.ham.dim());
  HybridOptions opt;
  opt.mode = cfg.protocol.mode == "sampled" ? HybridMode::Sampled
                                            : HybridMode::ExactChannel;
  opt.seed = cfg.seed;
  opt.trajectories = cfg.trajectories;
  opt.quad_points = 32;
  opt.max_r = cfg.caps.max_r;
  if (cfg.protocol.r > 0) opt.r_override = cfg.protocol.r;
  opt.measure = true;

  HybridResult res;
  if (cfg.protocol.kind == "hybrid_tq") {
    res = trotter_qdrift_ip(bm.ham, bm.frame, cfg.t, cfg.eps, opt);
  } else if (cfg.protocol.kind == "hybrid_qq") {
    res = qdrift_qubitization_ip(bm.ham, bm.frame, bm.lcu_rest, cfg.t, cfg.eps, opt);
  } else {
    res = trotter_qdrift_qubitization_ip(bm.ham, bm.frame, bm.lcus, cfg.t,
                                         cfg.eps, opt);
  }
  if (res.r_used > 0) row.r = res.r_used;
  row.error_lower = res.measured.lower;
  row.error_upper = res.measured.upper;
  row.bound = res.predicted_bound;
  fill_ledger(row, res.ledger);

  if (cfg.model.kind == "schwinger" &&
      (cfg.protocol.kind == "hybrid_qq" || cfg.protocol.kind == "hybrid_tqq") &&
      cfg.model.schwinger.cutoff >= 2) {
    const long long n = cfg.model.schwinger.sites;
    const SelectToffoli sel = toffoli_select(n, cfg.model.schwinger.cutoff);
    row.toffoli = toffoli_prepare(n) + toffoli_mcz(n) + sel.total();
  }
}

ResultRow echo_row(const ExperimentConfig& cfg) {
  ResultRow row;
  row.model = cfg.model.kind;
  row.protocol = cfg.protocol.kind;
  row.t = cfg.t;
  row.eps = cfg.eps;
  row.seed = cfg.seed;
  if (cfg.model.kind == "schwinger") {
    row.n_sites = cfg.model.schwinger.sites;
    row.cutoff = cfg.model.schwinger.cutoff;
    row.a = cfg.model.schwinger.a;
    row.g = cfg.model.schwinger.g;
    row.m = cfg.model.schwinger.m;
  } else if (cfg.model.kind == "neutrino") {
    row.n_sites = cfg.model.neutrino.count;
    row.lambda = cfg.model.neutrino.lambda_e;
    row.mu = cfg.model.neutrino.mu;
    row.theta = cfg.model.neutrino.theta;
  } else if (cfg.model.kind == "penalty") {
    row.n_sites = cfg.model.penalty_qubits;
    row.lambda = cfg.model.lambda_pen;
  } else {
    row.n_sites = cfg.model.random_qubits;
  }
  return row;
}

void apply_sweep_value(ExperimentConfig& cfg, const std::string& param,
                       const SweepValue& v) {
  const auto num = [&]() {
    if (!v.is_number) {
      throw Error("sweep: parameter '" + param + "' requires numeric values");
    }
    return v.number;
  };
  if (param == "t") {
    cfg.t = num();
  } else if (param == "eps") {
    cfg.eps = num();
  } else if (param == "r") {
    cfg.protocol.r = static_cast<long long>(num());
  } else if (param == "order") {
    cfg.protocol.order = static_cast<int>(num());
  } else if (param == "trajectories") {
    cfg.trajectories = static_cast<int>(num());
  } else if (param == "seed") {
    cfg.seed = static_cast<std::uint64_t>(num());
  } else if (param == "protocol") {
    if (v.is_number || !known_protocol(v.text)) {
      throw Error("sweep: protocol values must name a protocol kind");
    }
    cfg.protocol.kind = v.text;
  } else if (param == "N") {
    const int n = static_cast<int>(num());
    cfg.model.schwinger.sites = n;
    cfg.model.neutrino.count = n;
    cfg.model.penalty_qubits = n;
    cfg.model.random_qubits = n;
  } else if (param == "cutoff") {
    cfg.model.schwinger.cutoff = static_cast<int>(num());
  } else if (param == "a") {
    cfg.model.schwinger.a = num();
  } else if (param == "g") {
    cfg.model.schwinger.g = num();
  } else if (param == "m") {
    cfg.model.schwinger.m = num();
  } else if (param == "theta") {
    cfg.model.neutrino.theta = num();
  } else if (param == "mu") {
    cfg.model.neutrino.mu = num();
  } else if (param == "lambda") {
    cfg.model.neutrino.lambda_e = num();
    cfg.model.lambda_pen = num();
  } else if (param == "lambda_pen") {
    cfg.model.lambda_pen = num();
  } else {
    throw Error("sweep: unknown parameter '" + param + "'");
  }
}

ResultRow run_single(const ExperimentConfig& cfg) {
  ResultRow row = echo_row(cfg);
  const auto start = std::chrono::steady_clock::now();
  try {
    const BuiltModel bm = build_model(cfg);
    const std::string& proto = cfg.protocol.kind;
    if (proto == "exact") {
      // Reference protocol: by definition zero distance to itself.
      (void)exact_evolution(bm.ham, cfg.t);
      row.error_lower = 0.0;
      row.error_upper = 0.0;
    } else if (proto == "trotter") {
      run_trotter(cfg, bm, row);
    } else if (proto == "qdrift") {
      run_qdrift(cfg, bm, row);
    } else if (proto == "hybrid_tq" || proto == "hybrid_qq" ||
               proto == "hybrid_tqq") {
      run_hybrid(cfg, bm, row);
    } else {
      throw Error("protocol: unknown kind '" + proto + "'");
    }
  } catch (const std::exception& e) {
    row.status = e.what();
    row.error_lower.reset();
    row.error_upper.reset();
    row.bound.reset();
    row.r.reset();
  }
  const auto stop = std::chrono::steady_clock::now();
  row.wall_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  return row;
}

}  // namespace

std::vector<ResultRow> run(const ExperimentConfig& config) {
  if (!known_protocol(config.protocol.kind)) {
    throw Error("protocol: unknown kind '" + config.protocol.kind + "'");
  }
  std::vector<ExperimentConfig> points;
  if (config.sweep) {
    for (const auto& v : config.sweep->values) {
      ExperimentConfig c = config;
      c.sweep.reset();
      apply_sweep_value(c, config.sweep->param, v);
      points.push_back(std::move(c));
    }
  } else {
    points.push_back(config);
  }

  std::vector<ResultRow> rows(points.size());
  parallel_for_index(points.size(),
                     [&](std::size_t i) { rows[i] = run_single(points[i]); });
  return rows;
}

}  // namespace ipsim::bench
