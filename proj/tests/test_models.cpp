#include <doctest.h>

#include "ipsim/models.hpp"

using namespace ipsim;

namespace {

// ---------------------------------------------------------------------------
// Independent lattice-model oracle: explicit basis-state bookkeeping, no kron
// products.  Basis index = site_idx * field_dim + link_idx, site 1 is the most
// significant qubit, link 1 the most significant base-(2 cutoff + 1) digit.
// ---------------------------------------------------------------------------

struct LatticeBasis {
  int sites = 0, links = 0, link_dim = 0;
  Eigen::Index site_dim = 0, field_dim = 0, dim = 0;

  explicit LatticeBasis(int n_sites, int cutoff) {
    sites = n_sites;
    links = n_sites - 1;
    link_dim = 2 * cutoff + 1;
    site_dim = Eigen::Index(1) << sites;
    field_dim = 1;
    for (int r = 0; r < links; ++r) field_dim *= link_dim;
    dim = site_dim * field_dim;
  }

  int occ(Eigen::Index idx, int site) const {  // site 1-based
    return static_cast<int>((idx / field_dim) >> (sites - site)) & 1;
  }
  int digit(Eigen::Index idx, int link) const {  // link 1-based
    Eigen::Index rem = idx % field_dim;
    Eigen::Index denom = field_dim;
    for (int r = 1; r <= link; ++r) {
      denom /= link_dim;
      if (r == link) return static_cast<int>(rem / denom);
      rem %= denom;
    }
    return 0;
  }
  Eigen::Index with_flips(Eigen::Index idx, int site_a, int site_b,
                          int link, int new_digit) const {
    Eigen::Index site_idx = idx / field_dim;
    site_idx ^= Eigen::Index(1) << (sites - site_a);
    site_idx ^= Eigen::Index(1) << (sites - site_b);
    Eigen::Index stride = 1;
    for (int r = links; r > link; --r) stride *= link_dim;
    const Eigen::Index field = idx % field_dim +
                               (new_digit - digit(idx, link)) * stride;
    return site_idx * field_dim + field;
  }
};

Matrix oracle_electric(const SchwingerParams& p, const LatticeBasis& b) {
  Matrix h = Matrix::Zero(b.dim, b.dim);
  for (Eigen::Index idx = 0; idx < b.dim; ++idx) {
    double sum = 0.0;
    for (int r = 1; r <= b.links; ++r) {
      const double eps = b.digit(idx, r) - p.cutoff;
      sum += eps * eps;
    }
    h(idx, idx) = 0.5 * p.g * p.g * p.a * sum;
  }
  return h;
}

Matrix oracle_mass(const SchwingerParams& p, const LatticeBasis& b) {
  Matrix h = Matrix::Zero(b.dim, b.dim);
  for (Eigen::Index idx = 0; idx < b.dim; ++idx) {
    double sum = 0.0;
    for (int s = 1; s <= b.sites; ++s) {
      const double sign = (s % 2 == 1) ? 1.0 : -1.0;
      sum += sign * (1.0 - 2.0 * b.occ(idx, s));  // Z eigenvalue of the bit
    }
    h(idx, idx) = 0.5 * p.m * sum;
  }
  return h;
}

// Hop across link r moves a fermion from site r+1 to site r while raising the
// link cyclically; amplitude 1/(2a) each way.
Matrix oracle_hopping(const SchwingerParams& p, const LatticeBasis& b) {
  Matrix h = Matrix::Zero(b.dim, b.dim);
  const double amp = 1.0 / (2.0 * p.a);
  for (Eigen::Index idx = 0; idx < b.dim; ++idx) {
    for (int r = 1; r <= b.links; ++r) {
      if (b.occ(idx, r) != 0 || b.occ(idx, r + 1) != 1) continue;
      const int raised = (b.digit(idx, r) + 1) % b.link_dim;
      const Eigen::Index tgt = b.with_flips(idx, r, r + 1, r, raised);
      h(tgt, idx) += amp;
      h(idx, tgt) += amp;
    }
  }
  return h;
}

Matrix kron_chain(const std::vector<Matrix>& factors) {
  Matrix out = Matrix::Identity(1, 1);
  for (const Matrix& f : factors) out = kron(out, f);
  return out;
}

}  // namespace

TEST_SUITE("models") {

TEST_CASE("SumHamiltonian validates and exposes its terms") {
  const Matrix x = pauli_x(), z = pauli_z();
  const SumHamiltonian h({{"A", x, false}, {"B", z, true}});
  CHECK(h.dim() == 2);
  CHECK(h.has("A"));
  CHECK(!h.has("C"));
  CHECK(spectral_norm(h.total() - (x + z)) == 0.0);
  CHECK(spectral_norm(h.sum_of({"B"}) - z) == 0.0);
  CHECK(spectral_norm(h.sum_excluding({"B"}) - x) == 0.0);
  const auto rest = h.terms_excluding({"A"});
  REQUIRE(rest.size() == 1);
  CHECK(rest[0]->label == "B");
  CHECK(h.with_term({"C", Matrix(x + z), false}).terms().size() == 3);

  CHECK_THROWS_AS(SumHamiltonian({}), Error);
  CHECK_THROWS_AS(SumHamiltonian({{"", x, false}}), Error);
  CHECK_THROWS_AS(SumHamiltonian({{"A", x, false}, {"A", z, false}}), Error);
  CHECK_THROWS_AS(SumHamiltonian({{"A", x, false}, {"B", identity(3), false}}),
                  Error);
  Matrix nh(2, 2);
  nh << 0, 1, 0, 0;
  CHECK_THROWS_AS(SumHamiltonian({{"A", nh, false}}), Error);
  CHECK_THROWS_AS(SumHamiltonian({{"A", x, true}}), Error);  // X not diagonal
  CHECK_THROWS_AS(h.term("missing"), Error);
  CHECK_THROWS_AS(h.sum_excluding({"missing"}), Error);
}

TEST_CASE("pauli_lcu reconstructs with self-inverse unitaries") {
  Rng rng(51);
  const Matrix h = random_hermitian(4, rng);
  const LcuDecomposition lcu = pauli_lcu(h);
  lcu.validate();
  CHECK(spectral_norm(lcu.reconstruct() - h) < 1e-12);
  double lam = 0.0;
  for (std::size_t l = 0; l < lcu.size(); ++l) {
    lam += lcu.weights[l];
    const Matrix& u = lcu.unitaries[l];
    CHECK(spectral_norm(u * u - identity(4)) < 1e-12);  // signed Pauli strings
  }
  CHECK(lcu.lambda() == doctest::Approx(lam));
  CHECK(lcu.lambda() >= spectral_norm(h) - 1e-12);

  CHECK_THROWS_AS(pauli_lcu(identity(3)), Error);
  Matrix nh(2, 2);
  nh << 0, 1, 0, 0;
  CHECK_THROWS_AS(pauli_lcu(nh), Error);
}

TEST_CASE("pauli_lcu of a known two-term operator") {
  const Matrix h = 0.25 * pauli_x() - 0.75 * pauli_z();
  const LcuDecomposition lcu = pauli_lcu(h);
  REQUIRE(lcu.size() == 2);
  CHECK(lcu.lambda() == doctest::Approx(1.0));
  CHECK(spectral_norm(lcu.reconstruct() - h) < 1e-14);
}

TEST_CASE("lattice model terms match a basis-state oracle") {
  SchwingerParams p;
  p.sites = 2;
  p.cutoff = 1;
  p.a = 0.8;
  p.g = 1.3;
  p.m = 0.45;
  const LatticeBasis b(p.sites, p.cutoff);
  const SumHamiltonian h = build_schwinger(p);
  REQUIRE(h.dim() == 12);
  CHECK(spectral_norm(h.term("H_E").op - oracle_electric(p, b)) < 1e-12);
  CHECK(spectral_norm(h.term("H_M").op - oracle_mass(p, b)) < 1e-12);
  CHECK(spectral_norm(h.term("H_h").op - oracle_hopping(p, b)) < 1e-12);
  CHECK(h.term("H_E").fast_forwardable);
  CHECK(h.term("H_M").fast_forwardable);
  CHECK(!h.term("H_h").fast_forwardable);
}

TEST_CASE("three-site hopping matches the oracle and splits by link parity") {
  SchwingerParams p;
  p.sites = 3;
  p.cutoff = 1;
  p.a = 0.7;
  const LatticeBasis b(p.sites, p.cutoff);
  const SumHamiltonian whole = build_schwinger(p);
  const SumHamiltonian split = build_schwinger_split(p);
  CHECK(spectral_norm(whole.term("H_h").op - oracle_hopping(p, b)) < 1e-12);
  CHECK(spectral_norm(split.term("H_h_even").op + split.term("H_h_odd").op -
                      whole.term("H_h").op) < 1e-13);
  // Odd links: 1; even links: 2.  Each contributes spectral norm 1/(2a).
  CHECK(spectral_norm(split.term("H_h_odd").op) ==
        doctest::Approx(1.0 / (2.0 * p.a)).epsilon(1e-10));
}

TEST_CASE("hopping LCU has uniform weights summing to links/a") {
  SchwingerParams p;
  p.sites = 3;
  p.cutoff = 1;
  p.a = 0.7;
  const LcuDecomposition lcu = lcu_of_hopping(p);
  REQUIRE(lcu.size() == 16);  // 8 per link
  CHECK(lcu.lambda() == doctest::Approx(2.0 / p.a).epsilon(1e-12));
  for (double w : lcu.weights) CHECK(w == doctest::Approx(1.0 / (8.0 * p.a)));
  const SumHamiltonian h = build_schwinger(p);
  CHECK(spectral_norm(lcu.reconstruct() - h.term("H_h").op) < 1e-12);

  const LcuDecomposition odd = lcu_of_hopping(p, LinkParity::Odd);
  const LcuDecomposition even = lcu_of_hopping(p, LinkParity::Even);
  CHECK(odd.size() == 8);
  CHECK(even.size() == 8);
  const SumHamiltonian split = build_schwinger_split(p);
  CHECK(spectral_norm(odd.reconstruct() - split.term("H_h_odd").op) < 1e-12);
  CHECK(spectral_norm(even.reconstruct() - split.term("H_h_even").op) < 1e-12);
}

TEST_CASE("constraint projector selects exactly the balanced states") {
  SchwingerParams p;  // two sites, cutoff 1
  const Matrix proj = gauss_projector(p);
  REQUIRE(proj.rows() == 12);
  // Hand enumeration: the only states with every local constraint satisfied
  // are (n1=0, n2=1, eps=-1) -> index 1*3+0 = 3 and (n1=1, n2=0, eps=0)
  // -> index 2*3+1 = 7.
  CHECK(proj.trace().real() == doctest::Approx(2.0));
  CHECK(proj(3, 3) == Complex(1.0));
  CHECK(proj(7, 7) == Complex(1.0));
  Matrix off = proj;
  off.diagonal().setZero();
  CHECK(off.cwiseAbs().maxCoeff() == 0.0);
  CHECK(spectral_norm(proj * proj - proj) < 1e-14);

  const Matrix h = build_schwinger(p).total();
  CHECK(spectral_norm(h * proj - proj * h) < 1e-12);
}

TEST_CASE("lattice parameter validation") {
  SchwingerParams p;
  p.sites = 1;
  CHECK_THROWS_AS(build_schwinger(p), Error);
  p.sites = 2;
  p.cutoff = 0;
  CHECK_THROWS_AS(build_schwinger(p), Error);
  p.cutoff = 1;
  p.a = 0.0;
  CHECK_THROWS_AS(build_schwinger(p), Error);
  p.a = 1.0;
  p.periodic = true;
  CHECK_THROWS_AS(build_schwinger(p), Error);
  p.periodic = false;
  p.sites = 6;
  p.max_dim = 100;
  CHECK_THROWS_AS(build_schwinger(p), Error);
}

TEST_CASE("spin model matches a kron-chain oracle with a coupling matrix") {
  NeutrinoParams p;
  p.count = 3;
  p.omegas = {0.4, 0.7, 1.1};
  p.theta = 0.2;
  p.lambda_e = 0.9;
  p.mu = 1.4;
  Eigen::MatrixXd j(3, 3);
  j << 0.0, 1.0, 0.5, 1.0, 0.0, 2.0, 0.5, 2.0, 0.0;
  p.coupling = j;

  // Plain 2x2 literals, assembled with an explicit kron chain.
  Matrix sx(2, 2), sy(2, 2), sz(2, 2), id2 = Matrix::Identity(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  sz << 1, 0, 0, -1;
  auto place = [&](const Matrix& m, int site) {
    std::vector<Matrix> f(3, id2);
    f[static_cast<std::size_t>(site)] = m;
    return kron_chain(f);
  };
  const double s2t = std::sin(2 * p.theta), c2t = std::cos(2 * p.theta);
  Matrix want = Matrix::Zero(8, 8);
  for (int i = 0; i < 3; ++i) {
    want += 0.5 * p.omegas[static_cast<std::size_t>(i)] *
            (s2t * place(sx, i) - c2t * place(sz, i));
    want += 0.5 * p.lambda_e * place(sz, i);
  }
  for (int i = 0; i < 3; ++i)
    for (int k = i + 1; k < 3; ++k)
      want += p.mu / 6.0 * j(i, k) *
              (place(sx, i) * place(sx, k) + place(sy, i) * place(sy, k) +
               place(sz, i) * place(sz, k));

  const SumHamiltonian h = build_neutrino(p);
  CHECK(spectral_norm(h.total() - want) < 1e-12);
  CHECK(h.term("H_matter").fast_forwardable);
  Matrix off = h.term("H_matter").op;
  off.diagonal().setZero();
  CHECK(off.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("rotating-frame Hamiltonian equals the conjugated rest terms") {
  NeutrinoParams p;
  p.omegas = {0.4, 0.45, 0.5, 0.55};
  p.lambda_e = 1.7;
  p.mu = 2.0;
  const SumHamiltonian lab = build_neutrino(p);
  const Matrix rest = lab.term("H_vac").op + lab.term("H_nunu").op;
  const Matrix h_m = lab.term("H_matter").op;
  const TimeDependentHam ip = neutrino_ip_ham(p, 2.0);
  CHECK(spectral_norm(ip(0.0) - rest) < 1e-12);
  const double tau = 1.3;
  const Matrix want = expmi(h_m, -tau) * rest * expmi(h_m, tau);
  CHECK(spectral_norm(ip(tau) - want) < 1e-10);
  CHECK(ip.norm_at(0.0) == doctest::Approx(ip.norm_at(1.9)));
  CHECK(ip.norm_at(0.5) == doctest::Approx(spectral_norm(rest)).epsilon(1e-10));
}

TEST_CASE("spin model parameter validation") {
  NeutrinoParams p;
  p.count = 1;
  p.omegas = {1.0};
  CHECK_THROWS_AS(build_neutrino(p), Error);
  p.count = 2;
  CHECK_THROWS_AS(build_neutrino(p), Error);  // omegas size mismatch
  p.omegas = {1.0, 2.0};
  p.coupling = Eigen::MatrixXd::Ones(3, 3);
  CHECK_THROWS_AS(build_neutrino(p), Error);
  p.coupling = Eigen::MatrixXd::Ones(2, 2);
  CHECK_NOTHROW(build_neutrino(p));
  CHECK_THROWS_AS(neutrino_ip_ham(NeutrinoParams{.count = 2, .omegas = {1.0}}, 1.0),
                  Error);
}

TEST_CASE("penalty systems validate and build labeled terms") {
  PenaltySystem sys;
  sys.h_free = pauli_x();
  sys.projector = Matrix::Zero(2, 2);
  sys.projector(1, 1) = 1.0;
  sys.lambda_pen = 25.0;
  CHECK_NOTHROW(validate_penalty(sys));
  const SumHamiltonian h = build_penalty(sys);
  CHECK(spectral_norm(h.term("H_f").op - sys.h_free) == 0.0);
  CHECK(spectral_norm(h.term("H_pen").op - 25.0 * sys.projector) == 0.0);
  CHECK(h.term("H_pen").fast_forwardable);  // diagonal projector

  // A non-diagonal projector still validates but loses the flag.
  PenaltySystem rot = sys;
  Matrix v(2, 2);
  v << 0.5, 0.5, 0.5, 0.5;  // |+><+|
  rot.projector = v;
  CHECK(!build_penalty(rot).term("H_pen").fast_forwardable);

  PenaltySystem bad = sys;
  bad.projector = Matrix::Zero(3, 3);
  CHECK_THROWS_AS(validate_penalty(bad), Error);
  bad = sys;
  bad.projector = 0.5 * Matrix::Identity(2, 2);  // not idempotent
  CHECK_THROWS_AS(validate_penalty(bad), Error);
  bad = sys;
  bad.lambda_pen = -1.0;
  CHECK_THROWS_AS(validate_penalty(bad), Error);
  bad = sys;
  bad.h_free = Complex(0, 1) * pauli_x();
  CHECK_THROWS_AS(validate_penalty(bad), Error);
}

}  // TEST_SUITE
