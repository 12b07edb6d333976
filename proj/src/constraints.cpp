#include "ipsim/constraints.hpp"

#include <cmath>
#include <iostream>

namespace ipsim {

namespace {

Matrix feasible_projector(const PenaltySystem& sys) {
  const Eigen::Index d = sys.projector.rows();
  return Matrix::Identity(d, d) - sys.projector;
}

}  // namespace

Vector zeno_evolution(const PenaltySystem& sys, double t, const Vector& psi0) {
  validate_penalty(sys);
  if (psi0.size() != sys.h_free.rows()) {
    throw Error("zeno_evolution: state dimension mismatch");
  }
  const double infeasible = (sys.projector * psi0).norm();
  if (infeasible > 1e-9 * std::max(1.0, psi0.norm())) {
    throw Error("zeno_evolution: initial state leaves the feasible sector");
  }
  const Matrix pbar = feasible_projector(sys);
  return expmi(pbar * sys.h_free * pbar, t) * psi0;
}

double penalty_error(const PenaltySystem& sys, double t, const Vector& psi0) {
  validate_penalty(sys);
  const double hf_norm = spectral_norm(sys.h_free);
  if (sys.lambda_pen <= 2.0 * hf_norm) {
    std::cerr << "penalty_error: warning: penalty strength " << sys.lambda_pen
              << " <= 2*||H_f|| = " << 2.0 * hf_norm
              << "; subspace separation is weak\n";
  }
  const Matrix h_tot = sys.h_free + sys.lambda_pen * sys.projector;
  const Vector exact = expmi(h_tot, t) * psi0;
  const Vector zeno = zeno_evolution(sys, t, psi0);
  return (exact - zeno).norm();
}

double min_lambda(double hf_norm, double t, double eps) {
  if (!(eps > 0.0)) throw Error("min_lambda: eps must be positive");
  if (hf_norm < 0.0) throw Error("min_lambda: norm must be nonnegative");
  if (t < 0.0) throw Error("min_lambda: t must be nonnegative");
  return hf_norm * hf_norm * t / eps;
}

GaussFilteredResult gauss_filtered_hybrid(const SchwingerParams& p,
                                          double lambda_pen, double t,
                                          double eps, const HybridOptions& opt) {
  if (lambda_pen < 0.0) {
    throw Error("gauss_filtered_hybrid: penalty strength must be nonnegative");
  }
  const SumHamiltonian base = build_schwinger(p);
  const Matrix p_phys = gauss_projector(p);
  const Eigen::Index d = p_phys.rows();
  const Matrix p_inf = Matrix::Identity(d, d) - p_phys;
  const SumHamiltonian ham =
      base.with_term(SumTerm{"H_pen", lambda_pen * p_inf, true});

  GaussFilteredResult out;
  out.hybrid = trotter_qdrift_ip(ham, {"H_pen"}, t, eps, opt);
  out.physical_dim = static_cast<long long>(
      std::llround(p_phys.diagonal().real().sum()));
  if (out.physical_dim <= 0) {
    throw Error("gauss_filtered_hybrid: empty physical sector");
  }

  // Evolve the normalized uniform physical-sector state through the channel.
  Vector psi0 = p_phys * Vector::Ones(d);
  psi0 /= psi0.norm();
  const Matrix rho0 = psi0 * psi0.adjoint();
  const Matrix rho_t = out.hybrid.channel.apply(rho0);
  const double pop = (p_inf * rho_t).trace().real();
  out.leakage = std::sqrt(std::max(0.0, pop));

  const Matrix h_tot = ham.total();
  const Vector exact = expmi(h_tot, t) * psi0;
  out.state_mismatch = trace_distance(rho_t, exact * exact.adjoint());
  return out;
}

}  // namespace ipsim
