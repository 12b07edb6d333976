#include <doctest.h>

#include <cmath>

#include "ipsim/hybrid.hpp"

using namespace ipsim;

namespace {

SumHamiltonian pauli_triple(double a, double b, double c) {
  return SumHamiltonian({{"H_1", Matrix(a * pauli_z()), true},
                         {"H_2", Matrix(b * pauli_x()), false},
                         {"H_3", Matrix(c * pauli_y()), false}});
}

}  // namespace

TEST_SUITE("hybrid") {

TEST_CASE("commutator constant against a Pauli identity") {
  // [aZ, bX + cY] = 2i a (b Y - c X): norm 2a sqrt(b^2 + c^2).
  // [bX, cY] = 2i bc Z: norm 2bc.
  const double a = 0.9, b = 0.6, c = 0.4;
  const SumHamiltonian h = pauli_triple(a, b, c);
  const double want_full = 2 * a * std::sqrt(b * b + c * c) + 2 * b * c;
  CHECK(commutator_constant(h, {}) == doctest::Approx(want_full).epsilon(1e-12));
  // Excluding the Z term from both slots leaves only [bX, cY].
  CHECK(commutator_constant(h, {"H_1"}) ==
        doctest::Approx(2 * b * c).epsilon(1e-12));
  CHECK(commutator_constant(h, {"H_1", "H_2"}) == doctest::Approx(0.0));
  CHECK_THROWS_AS(commutator_constant(h, {"nope"}), Error);
}

TEST_CASE("split-then-sample protocol is exact when the rest terms commute") {
  // F = Z(x)I; rest terms proportional to I(x)X commute with F and each
  // other, so the interaction picture is constant and the one-segment channel
  // matches the exact evolution up to quadrature error.
  const Matrix f = op_on_qubit(pauli_z(), 1, 2);
  const Matrix v1 = op_on_qubit(pauli_x(), 2, 2);
  const Matrix v2 = Matrix(0.5 * v1);
  const SumHamiltonian h(
      {{"F", f, true}, {"V1", v1, false}, {"V2", v2, false}});
  HybridOptions opt;
  opt.r_override = 1;
  const HybridResult res = trotter_qdrift_ip(h, {"F"}, 0.8, 0.5, opt);
  CHECK(res.r_used == 1);
  CHECK(res.measured.lower < 1e-8);
  CHECK(res.ledger.calls_wk.at("V1") == 1);
  CHECK(res.ledger.calls_wk.at("V2") == 1);
}

TEST_CASE("default segment count follows the commutator prescription") {
  const SumHamiltonian h = pauli_triple(1.1, 0.7, 0.5);
  const double t = 0.5, eps = 0.05;
  const HybridResult res = trotter_qdrift_ip(h, {"H_1"}, t, eps);
  double sum_sq = 0.49 + 0.25;
  const double c_i = commutator_constant(h, {"H_1"});
  const long long want =
      static_cast<long long>(std::ceil(t * t / eps * (c_i + 4 * sum_sq)));
  CHECK(res.r_used == want);
  CHECK(res.predicted_bound <= eps + 1e-12);
  CHECK(res.measured.lower <= res.predicted_bound + 1e-9);
  // Ledger: r per non-frame term; frame exponentials 2 per call + 1.
  CHECK(res.ledger.calls_wk.at("H_2") == want);
  CHECK(res.ledger.calls_wk.at("H_3") == want);
  CHECK(res.ledger.calls_wl_frame == 2 * 2 * want + 1);
}

TEST_CASE("protocols reject unreasonable budgets and bad labels") {
  const SumHamiltonian h = pauli_triple(1.0, 0.8, 0.6);
  HybridOptions opt;
  opt.max_r = 3;
  CHECK_THROWS_AS(trotter_qdrift_ip(h, {"H_1"}, 2.0, 1e-6, opt), Error);
  CHECK_THROWS_AS(trotter_qdrift_ip(h, {"missing"}, 0.5, 0.1), Error);
  HybridOptions bad;
  bad.r_override = 0;
  CHECK_THROWS_AS(trotter_qdrift_ip(h, {"H_1"}, 0.5, 0.1, bad), Error);
  CHECK_THROWS_AS(trotter_qdrift_ip(h, {"H_1"}, 0.5, -0.1), Error);
}

TEST_CASE("measure=false skips the reference comparison") {
  const SumHamiltonian h = pauli_triple(1.0, 0.8, 0.6);
  HybridOptions opt;
  opt.measure = false;
  opt.r_override = 2;
  const HybridResult res = trotter_qdrift_ip(h, {"H_1"}, 0.5, 0.1, opt);
  CHECK(res.measured.lower == 0.0);
  CHECK(res.measured.upper == 0.0);
  CHECK(res.r_used == 2);
}

TEST_CASE("encoded-walk protocol obeys its budget split") {
  const SumHamiltonian h = pauli_triple(1.0, 0.7, 0.4);
  const LcuDecomposition lcu = pauli_lcu(h.sum_excluding({"H_1"}));
  const double t = 0.5, eps = 0.05;
  const HybridResult res = qdrift_qubitization_ip(h, {"H_1"}, lcu, t, eps);
  const double lam = lcu.lambda();
  CHECK(res.lambda_alpha == doctest::Approx(lam));
  // Segment prescription uses the rest-sum spectral norm; the per-segment
  // synthesis budget uses the LCU one-norm.
  const double rest_norm = spectral_norm(h.sum_excluding({"H_1"}));
  const long long r = static_cast<long long>(
      std::ceil(8 * t * t * rest_norm * rest_norm / eps));
  CHECK(res.r_used == r);
  // Per-segment synthesis budget delta = eps / (2r).
  const long long n_q = qubitization_query_cost(lam, t / static_cast<double>(r),
                                                eps / (2.0 * r));
  CHECK(res.ledger.calls_select == r * n_q);
  CHECK(res.ledger.calls_prepare == 2 * r * n_q);
  CHECK(res.ledger.calls_wl_frame == 2 * r + 1);
  CHECK(res.measured.lower <= res.predicted_bound + 1e-9);
  CHECK(res.predicted_bound <= eps + 1e-12);

  // The LCU must reconstruct the non-frame sum.
  const LcuDecomposition wrong = pauli_lcu(Matrix(2.0 * pauli_x()));
  CHECK_THROWS_AS(qdrift_qubitization_ip(h, {"H_1"}, wrong, t, eps), Error);
}

TEST_CASE("per-term encoded protocol needs an LCU for every active term") {
  const SumHamiltonian h = pauli_triple(1.0, 0.7, 0.4);
  std::map<std::string, LcuDecomposition> lcus;
  lcus["H_2"] = pauli_lcu(h.term("H_2").op);
  CHECK_THROWS_AS(
      trotter_qdrift_qubitization_ip(h, {"H_1"}, lcus, 0.5, 0.1), Error);
  lcus["H_3"] = pauli_lcu(h.term("H_3").op);
  const double t = 0.5, eps = 0.05;
  const HybridResult res =
      trotter_qdrift_qubitization_ip(h, {"H_1"}, lcus, t, eps);
  const double c_i = commutator_constant(h, {"H_1"});
  const double sum_sq = 0.49 + 0.16;
  const long long r =
      static_cast<long long>(std::ceil(2 * t * t / eps * (c_i + 4 * sum_sq)));
  CHECK(res.r_used == r);
  CHECK(res.measured.lower <= res.predicted_bound + 1e-9);
  CHECK(res.ledger.calls_wl_frame == 2 * 2 * r + 1);
  CHECK(res.ledger.calls_select > 0);
  CHECK(res.ledger.calls_prepare == 2 * res.ledger.calls_select);
}

TEST_CASE("sampled mode averages trajectories deterministically") {
  const SumHamiltonian h = pauli_triple(1.0, 0.7, 0.4);
  HybridOptions opt;
  opt.mode = HybridMode::Sampled;
  opt.trajectories = 4;
  opt.seed = 17;
  opt.r_override = 3;
  const HybridResult a = trotter_qdrift_ip(h, {"H_1"}, 0.6, 0.1, opt);
  const HybridResult b = trotter_qdrift_ip(h, {"H_1"}, 0.6, 0.1, opt);
  CHECK(a.sample.rows() == 2);
  CHECK(spectral_norm(a.sample - b.sample) == 0.0);
  CHECK(spectral_norm(a.channel.superop() - b.channel.superop()) == 0.0);
  CHECK(is_unitary(a.sample));

  opt.seed = 18;
  const HybridResult c = trotter_qdrift_ip(h, {"H_1"}, 0.6, 0.1, opt);
  CHECK(spectral_norm(a.sample - c.sample) > 1e-12);
  CHECK_THROWS_AS([&] {
    HybridOptions zero = opt;
    zero.trajectories = 0;
    return trotter_qdrift_ip(h, {"H_1"}, 0.6, 0.1, zero);
  }(), Error);
}

TEST_CASE("sampled averages concentrate with more trajectories") {
  const SumHamiltonian h = pauli_triple(1.0, 0.8, 0.5);
  HybridOptions few;
  few.mode = HybridMode::Sampled;
  few.trajectories = 8;
  few.seed = 5;
  few.r_override = 4;
  HybridOptions many = few;
  many.trajectories = 64;
  const double d_few =
      trotter_qdrift_ip(h, {"H_1"}, 0.7, 0.2, few).measured.lower;
  const double d_many =
      trotter_qdrift_ip(h, {"H_1"}, 0.7, 0.2, many).measured.lower;
  CHECK(d_many < d_few);
}

TEST_CASE("matter-frame comparison helper reports both errors") {
  NeutrinoParams p;
  p.count = 2;
  p.omegas = {0.9, 1.1};
  p.lambda_e = 6.0;
  p.mu = 1.5;
  const NeutrinoErrorPair pair = neutrino_lab_vs_ip_error(p, 1.0, 12);
  CHECK(pair.lab_error > 0.0);
  CHECK(pair.ip_error > 0.0);
  // Strong matter potential: the frame absorbs the dominant term, so the
  // rotating-frame protocol at equal budget beats the lab-frame splitting.
  CHECK(pair.ip_error < pair.lab_error);
  CHECK_THROWS_AS(neutrino_lab_vs_ip_error(p, 1.0, 0), Error);
}

}  // TEST_SUITE
