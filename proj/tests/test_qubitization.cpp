#include <doctest.h>

#include <cmath>

#include "ipsim/qubitization.hpp"

using namespace ipsim;

namespace {

LcuDecomposition hand_lcu() {
  // H = 0.5 X + 0.5 Z, lambda = 1, eigenvalues +- 1/sqrt(2).
  LcuDecomposition lcu;
  lcu.weights = {0.5, 0.5};
  lcu.unitaries = {pauli_x(), pauli_z()};
  return lcu;
}

// Phases of a unitary's spectrum, sorted ascending in [-pi, pi].
std::vector<double> spectrum_phases(const Matrix& u) {
  Eigen::ComplexEigenSolver<Matrix> es(u);
  std::vector<double> ph;
  for (Eigen::Index k = 0; k < u.rows(); ++k)
    ph.push_back(std::arg(es.eigenvalues()(k)));
  std::sort(ph.begin(), ph.end());
  return ph;
}

}  // namespace

TEST_SUITE("qubitization") {

TEST_CASE("prepare column carries the weight amplitudes") {
  const LcuDecomposition lcu = hand_lcu();
  const Matrix prep = prepare_matrix(lcu);
  REQUIRE(prep.rows() == 2);  // L = 2 fits without padding
  CHECK(is_unitary(prep));
  CHECK(prep(0, 0).real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(prep(1, 0).real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(std::abs(prep(0, 0).imag()) < 1e-15);
}

TEST_CASE("select applies the right unitary per ancilla index with padding") {
  LcuDecomposition lcu;
  lcu.weights = {0.2, 0.3, 0.5};
  lcu.unitaries = {pauli_x(), pauli_y(), pauli_z()};
  const Matrix sel = select_matrix(lcu);
  REQUIRE(sel.rows() == 8);  // ancilla padded to 4
  CHECK(is_unitary(sel));
  for (int l = 0; l < 4; ++l) {
    const Matrix block = sel.block(2 * l, 2 * l, 2, 2);
    const Matrix want = l < 3 ? lcu.unitaries[static_cast<std::size_t>(l)]
                              : Matrix(identity(2));
    CHECK(spectral_norm(block - want) < 1e-14);
  }
  // Off-diagonal ancilla blocks vanish.
  CHECK(std::abs(sel(0, 2)) == 0.0);
  CHECK(std::abs(sel(5, 1)) == 0.0);
}

TEST_CASE("walk operator eigenphases are arccos of scaled eigenvalues") {
  const WalkOperator w = walk_operator(hand_lcu());
  CHECK(w.ancilla_dim == 2);
  CHECK(w.system_dim == 2);
  CHECK(is_unitary(w.matrix));
  // E/lambda = +-1/sqrt(2) -> phases +- pi/4 and +- 3 pi/4.
  const std::vector<double> ph = spectrum_phases(w.matrix);
  REQUIRE(ph.size() == 4);
  CHECK(ph[0] == doctest::Approx(-3 * M_PI / 4).epsilon(1e-10));
  CHECK(ph[1] == doctest::Approx(-M_PI / 4).epsilon(1e-10));
  CHECK(ph[2] == doctest::Approx(M_PI / 4).epsilon(1e-10));
  CHECK(ph[3] == doctest::Approx(3 * M_PI / 4).epsilon(1e-10));
  // <L| (x) I . W . |L> (x) I = H / lambda.
  const Matrix bra = kron(w.prepared.adjoint(), identity(2));
  const Matrix ket = kron(w.prepared, identity(2));
  CHECK(spectral_norm(bra * w.matrix * ket - 0.5 * (pauli_x() + pauli_z())) <
        1e-12);
}

TEST_CASE("walk operator of a random dense LCU keeps the signal block") {
  Rng rng(71);
  const Matrix h = random_hermitian(4, rng);
  const LcuDecomposition lcu = pauli_lcu(h);
  const WalkOperator w = walk_operator(lcu);
  const Matrix bra = kron(w.prepared.adjoint(), identity(4));
  const Matrix ket = kron(w.prepared, identity(4));
  CHECK(spectral_norm(bra * w.matrix * ket - h / lcu.lambda()) < 1e-11);

  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const std::vector<double> ph = spectrum_phases(w.matrix);
  for (Eigen::Index k = 0; k < 4; ++k) {
    const double want = std::acos(es.eigenvalues()(k) / lcu.lambda());
    const double got = *std::min_element(
        ph.begin(), ph.end(), [want](double a, double b) {
          return std::abs(a - want) < std::abs(b - want);
        });
    CHECK(std::abs(got - want) < 1e-9);
  }
}

TEST_CASE("evolution encoding reproduces the exponential exactly") {
  const LcuDecomposition lcu = hand_lcu();
  const WalkOperator w = walk_operator(lcu);
  const Matrix h = lcu.reconstruct();

  const BlockEncoding enc0 = ideal_evolution_encoding(w, 0.0);
  CHECK(spectral_norm(enc0.signal_block() - identity(2)) < 1e-12);

  const double t = 1.7;
  const BlockEncoding enc = ideal_evolution_encoding(w, t);
  CHECK(enc.alpha == doctest::Approx(1.0));
  CHECK(is_unitary(enc.unitary));
  CHECK(spectral_norm(enc.signal_block() - expmi(h, t)) < 1e-12);
  CHECK(enc.epsilon <= 1e-12);

  // Composing two encodings multiplies the blocks: ancilla returns to |0>.
  const Matrix twice = enc.unitary * enc.unitary;
  const Matrix block = twice.block(0, 0, 2, 2);
  CHECK(spectral_norm(block - expmi(h, 2 * t)) < 1e-11);
}

TEST_CASE("frame-conjugated select equals termwise conjugation") {
  Rng rng(72);
  const Matrix h = random_hermitian(2, rng);
  LcuDecomposition lcu = hand_lcu();
  const double t = 0.9;
  const Matrix got = select_prime(lcu, h, t);

  LcuDecomposition conj = lcu;
  const Matrix u = expmi(h, -t);  // e^{+iHt}
  for (Matrix& term : conj.unitaries)
    term = u * term * u.adjoint();
  CHECK(spectral_norm(got - select_matrix(conj)) < 1e-12);
  CHECK(is_unitary(got));
}

TEST_CASE("query cost pins and monotonicity") {
  CHECK(qubitization_query_cost(1.0, 10.0, 1e-3) == 16);
  CHECK(qubitization_query_cost(0.0, 5.0, 0.1) == 3);
  long long prev = 0;
  for (double at = 0.5; at < 40.0; at *= 1.7) {
    const long long c = qubitization_query_cost(at, 1.0, 1e-2);
    CHECK(c >= prev);
    prev = c;
  }
  CHECK(qubitization_query_cost(2.0, 1.0, 1e-8) >
        qubitization_query_cost(2.0, 1.0, 1e-2));
  CHECK_THROWS_AS(qubitization_query_cost(1.0, 1.0, 0.0), Error);
  CHECK_THROWS_AS(qubitization_query_cost(-1.0, 1.0, 0.1), Error);
}

TEST_CASE("signal block validates its geometry") {
  BlockEncoding enc;
  enc.unitary = Matrix::Identity(6, 6);
  enc.ancilla_dim = 2;
  enc.system_dim = 3;
  enc.alpha = 2.0;
  CHECK(spectral_norm(enc.signal_block() - 2.0 * identity(3)) < 1e-14);
  enc.system_dim = 4;  // 2*4 != 6
  CHECK_THROWS_AS(enc.signal_block(), Error);
}

}  // TEST_SUITE
