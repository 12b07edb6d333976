#include <doctest.h>

#include "ipsim/linops.hpp"

using namespace ipsim;

namespace {

// Independent exponential oracle: scaled-and-squared Taylor series of
// exp(-iHt), no eigendecomposition involved.
Matrix expm_taylor(const Matrix& h, double t) {
  const Eigen::Index d = h.rows();
  Matrix a = Complex(0.0, -t) * h;
  int squarings = 0;
  while (a.cwiseAbs().maxCoeff() * static_cast<double>(d) > 0.25) {
    a *= 0.5;
    ++squarings;
  }
  Matrix sum = Matrix::Identity(d, d);
  Matrix term = Matrix::Identity(d, d);
  for (int k = 1; k <= 24; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

}  // namespace

TEST_SUITE("linops") {

TEST_CASE("schatten norms against a constructed SVD") {
  Rng rng(21);
  const Matrix u = random_unitary(3, rng);
  const Matrix v = random_unitary(3, rng);
  Eigen::VectorXd sv(3);
  sv << 3.0, 2.0, 1.0;
  const Matrix a = u * sv.asDiagonal() * v.adjoint();
  CHECK(schatten_norm(a, Schatten::Inf) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(schatten_norm(a, Schatten::One) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(schatten_norm(a, Schatten::Two) ==
        doctest::Approx(std::sqrt(14.0)).epsilon(1e-12));
}

TEST_CASE("norms of Hermitian and anti-Hermitian inputs take the eigenvalue path") {
  Rng rng(22);
  const Matrix h = random_hermitian(6, rng);
  const Matrix k = Complex(0, 1) * h;  // anti-Hermitian
  // Reference through an explicit SVD on a perturbed-free copy.
  Eigen::JacobiSVD<Matrix> svd(h);
  CHECK(spectral_norm(h) ==
        doctest::Approx(svd.singularValues()(0)).epsilon(1e-12));
  CHECK(spectral_norm(k) == doctest::Approx(spectral_norm(h)).epsilon(1e-12));
  CHECK(trace_norm(k) == doctest::Approx(trace_norm(h)).epsilon(1e-12));
}

TEST_CASE("expmi matches a Taylor-series oracle") {
  Rng rng(23);
  const Matrix h = random_hermitian(6, rng);
  const Matrix got = expmi(h, 0.8);
  CHECK(spectral_norm(got - expm_taylor(h, 0.8)) < 1e-12);
  CHECK(is_unitary(got));
  CHECK(spectral_norm(expmi(h, 0.0) - Matrix::Identity(6, 6)) < 1e-14);
}

TEST_CASE("HermitianExp caches one decomposition for many durations") {
  Rng rng(24);
  const Matrix h = random_hermitian(5, rng);
  const HermitianExp e(h);
  for (const double t : {-1.3, 0.0, 0.4, 2.0}) {
    CHECK(spectral_norm(e.at(t) - expmi(h, t)) < 1e-12);
  }
  CHECK(spectral_norm(e.at(0.7) * e.at(-0.7) - Matrix::Identity(5, 5)) < 1e-13);
}

TEST_CASE("typed operators validate on construction") {
  Matrix bad(2, 2);
  bad << 1, 2, 3, 4;
  CHECK_THROWS_AS(UnitaryOp{bad}, Error);
  CHECK_THROWS_AS(HermitianOp{Matrix(bad)}, Error);
  CHECK_NOTHROW(UnitaryOp{pauli_y()});
  const HermitianOp h{Matrix(pauli_x())};
  CHECK(spectral_norm(expm_hermitian(h, 0.5).mat() - expmi(pauli_x(), 0.5)) <
        1e-14);
}

TEST_CASE("time-ordered exponential of a commuting family") {
  // H(tau) = cos(tau) Z commutes with itself at all times, so the ordered
  // exponential is exp(-i Z (sin t1 - sin t0)).
  const Matrix z = pauli_z();
  const TimeDependentHam h(
      [z](double tau) { return Matrix(std::cos(tau) * z); },
      [](double tau) { return std::abs(std::cos(tau)); }, 0.0, 1.2, 2);
  const Matrix got = time_ordered_exp(h, 0.1, 1.2, 1e-10);
  const Matrix want = expmi(z, std::sin(1.2) - std::sin(0.1));
  CHECK(spectral_norm(got - want) < 1e-8);
}

TEST_CASE("time-ordered exponential respects ordering for non-commuting profiles") {
  // H(tau) = X for tau < 1, Z for tau >= 1 on [0, 2]:  U = e^{-iZ} e^{-iX}.
  const TimeDependentHam h(
      [](double tau) { return tau < 1.0 ? pauli_x() : pauli_z(); },
      [](double) { return 1.0; }, 0.0, 2.0, 2);
  const Matrix got = time_ordered_exp(h, 0.0, 2.0, 1e-9);
  const Matrix want = expmi(pauli_z(), 1.0) * expmi(pauli_x(), 1.0);
  CHECK(spectral_norm(got - want) < 1e-6);
  CHECK(spectral_norm(got - expmi(pauli_x() + pauli_z(), 1.0)) > 0.1);
}

TEST_CASE("TimeDependentHam validates its domain") {
  const TimeDependentHam h = TimeDependentHam::constant(pauli_x(), 0.0, 1.0);
  CHECK(h.dim() == 2);
  CHECK(h.norm_at(0.5) == doctest::Approx(1.0));
  CHECK_THROWS_AS(h(1.5), Error);
  CHECK_THROWS_AS(h.restricted(0.5, 1.2), Error);
  const TimeDependentHam sub = h.restricted(0.2, 0.8);
  CHECK(sub.t0() == doctest::Approx(0.2));
  CHECK(spectral_norm(sub(0.5) - pauli_x()) == 0.0);
}

TEST_CASE("op_on_qubit places factors leftmost-first") {
  const Matrix z2 = op_on_qubit(pauli_z(), 2, 3);
  const Matrix want = kron(kron(identity(2), pauli_z()), identity(2));
  CHECK(spectral_norm(z2 - want) == 0.0);
  CHECK_THROWS_AS(op_on_qubit(pauli_z(), 4, 3), Error);
  CHECK_THROWS_AS(op_on_qubit(identity(3), 1, 2), Error);
}

TEST_CASE("kron dimensions and a hand example") {
  Matrix a(2, 2), b(2, 2);
  a << 1, 2, 3, 4;
  b << 0, 1, 1, 0;
  const Matrix k = kron(a, b);
  REQUIRE(k.rows() == 4);
  CHECK(k(0, 1) == Complex(1.0));
  CHECK(k(0, 0) == Complex(0.0));
  CHECK(k(2, 1) == Complex(3.0));
  CHECK(k(3, 2) == Complex(4.0));
}

TEST_CASE("pauli algebra sanity") {
  CHECK(spectral_norm(pauli_x() * pauli_y() - Complex(0, 1) * pauli_z()) < 1e-15);
  CHECK(spectral_norm(pauli_x() * pauli_x() - identity(2)) == 0.0);
}

TEST_CASE("random objects have the advertised invariants") {
  Rng rng(31);
  const Matrix h = random_hermitian(7, rng);
  CHECK(is_hermitian(h));
  const Matrix u = random_unitary(7, rng);
  CHECK(is_unitary(u));
  const Vector psi = random_state(7, rng);
  CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-12));
  const Matrix rho = random_density(7, rng);
  CHECK(is_hermitian(rho));
  CHECK(rho.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  CHECK(es.eigenvalues().minCoeff() > -1e-14);
}

TEST_CASE("seeded randomness is reproducible and stream-separated") {
  Rng a(5), b(5);
  const Matrix ha = random_hermitian(4, a);
  const Matrix hb = random_hermitian(4, b);
  CHECK(spectral_norm(ha - hb) == 0.0);
  Rng s0 = Rng::stream(5, 0), s1 = Rng::stream(5, 1);
  CHECK(spectral_norm(random_hermitian(4, s0) - random_hermitian(4, s1)) > 1e-3);
}

}  // TEST_SUITE
