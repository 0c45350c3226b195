#include "majorana/error.hpp"
#include "majorana/model.hpp"
#include "majorana/spectral.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace majorana;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

Eigen::VectorXd spectrum(const Eigen::MatrixXcd& h) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h).eigenvalues();
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("fermionic form matches the second-quantized oracle") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int n = 2; n <= 5; ++n)
    for (int draw = 0; draw < 4; ++draw) {
      const FermionParams p{n, std::abs(u(rng)), std::abs(u(rng)), u(rng), u(rng)};
      const Eigen::MatrixXcd h = realize(build_fermionic(p)).matrix();
      CHECK(max_abs(h - oracle::kitaev(n, p.w, p.delta_abs, p.phi, p.mu)) < 1e-13);
    }
}

TEST_CASE("N = 2 ideal fermionic spectrum") {
  const Eigen::VectorXd ev =
      spectrum(realize(build_fermionic({2, 1.0, 1.0, 0.0, 0.0})).matrix());
  CHECK(ev(0) == doctest::Approx(-1.0));
  CHECK(ev(1) == doctest::Approx(-1.0));
  CHECK(ev(2) == doctest::Approx(1.0));
  CHECK(ev(3) == doctest::Approx(1.0));
}

TEST_CASE("pure chemical potential is diagonal in the occupation basis") {
  const int n = 3;
  const double mu = 0.7;
  const Eigen::MatrixXcd h = realize(build_fermionic({n, 0.0, 0.0, 0.0, mu})).matrix();
  CHECK(max_abs(h - Eigen::MatrixXcd(h.diagonal().asDiagonal())) == 0.0);
  for (int b = 0; b < 8; ++b) {
    const int occupied = std::popcount(static_cast<unsigned>(b));  // down spins
    CHECK(h(b, b).real() == doctest::Approx(-mu * (occupied - n / 2.0)));
  }
}

TEST_CASE("Majorana form equals the fermionic form for general parameters") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int n = 2; n <= 6; ++n)
    for (int draw = 0; draw < 5; ++draw) {
      const FermionParams p{n, std::abs(u(rng)), std::abs(u(rng)), u(rng), u(rng)};
      CHECK((build_majorana(p) - build_fermionic(p)).coefficient_norm() < 1e-13);
    }
}

TEST_CASE("ideal point decouples the outer Majoranas") {
  for (int n = 2; n <= 6; ++n) {
    const PauliSum h = build_majorana({n, 1.0, 1.0, 0.0, 0.0});
    for (const PauliSum& c : {majorana_op(1, n), majorana_op(2 * n, n)}) {
      const PauliSum comm = h * c - c * h;
      CHECK(comm.empty());
    }
  }
  // N = 2: i (w + |Delta|)/2 c_2 c_3 = -X_1 X_2
  const PauliSum h2 = build_majorana({2, 1.0, 1.0, 0.0, 0.0});
  REQUIRE(h2.terms().size() == 1);
  CHECK(h2.coefficient_of("XX") == Complex(-1.0));
  const PauliSum ref = Complex(0.0, 1.0) * majorana_op(2, 2) * majorana_op(3, 2);
  CHECK((h2 - ref).empty());
}

TEST_CASE("spin form matches the Ising oracle") {
  SpinParams p = SpinParams::ideal(4, 0.8);
  p.j_bonds = {1.01, 1.0, 0.9};
  p.h_z = -0.3;
  p.j_nnn.push_back({1, 3, 0.125});
  p.delta_hz = {1e-3, -1e-3, 2e-3, 0.0};
  const Eigen::MatrixXcd ref = oracle::ising(4, p.j_bonds, p.h_z, 0.125, p.delta_hz);
  CHECK(max_abs(realize(build_spin(p)).matrix() - ref) < 1e-15);

  const SpinParts parts = split_spin(p);
  const PauliSum recombined = parts.couplings + parts.field * Complex(p.h_z) + parts.stray;
  CHECK((recombined - build_spin(p)).coefficient_norm() < 1e-15);
}

TEST_CASE("spin image of the fermionic chain with h_z = -mu/2") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int n = 2; n <= 6; ++n)
    for (int draw = 0; draw < 5; ++draw) {
      const double w = u(rng);
      const FermionParams f{n, w, w, 0.0, u(rng) - 1.0};
      const SpinParams s = SpinParams::from_fermion(f);
      CHECK(s.h_z == -f.mu / 2);
      const Eigen::MatrixXcd d =
          realize(build_fermionic(f)).matrix() - realize(build_spin(s)).matrix();
      CHECK(max_abs(d) < 1e-13);
    }
  CHECK_THROWS_AS(SpinParams::from_fermion({3, 1.0, 0.5, 0.0, 0.0}), UsageError);
  CHECK_THROWS_AS(SpinParams::from_fermion({3, 1.0, 1.0, 0.4, 0.0}), UsageError);
}

TEST_CASE("N = 3 ideal Ising spectrum is the classical X-basis count") {
  const Eigen::VectorXd ev =
      spectrum(realize(build_spin(SpinParams::ideal(3))).matrix());
  const double expected[8] = {-2, -2, 0, 0, 0, 0, 2, 2};
  for (int k = 0; k < 8; ++k) CHECK(ev(k) == doctest::Approx(expected[k]).epsilon(1e-12));
}

TEST_CASE("pure negative field has the all-down ground state") {
  SpinParams p = SpinParams::ideal(3, 0.0);
  p.h_z = -1.0;
  const GroundSubspace g = ground_subspace(realize(build_spin(p)));
  CHECK(g.psi0.fidelity(StateVector::all_down(3)) == doctest::Approx(1.0));
  CHECK(g.e0 == doctest::Approx(-3.0));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(FermionParams({1, 1.0, 1.0, 0.0, 0.0}).validate(), UsageError);
  CHECK_THROWS_AS(FermionParams({3, 1.0, -1.0, 0.0, 0.0}).validate(), UsageError);
  SpinParams p = SpinParams::ideal(3);
  p.j_bonds.pop_back();
  CHECK_THROWS_AS(p.validate(), UsageError);
  p = SpinParams::ideal(3);
  p.j_nnn.push_back({1, 4, 0.1});
  CHECK_THROWS_AS(p.validate(), UsageError);
  CHECK(SpinParams::ideal(4).is_ideal());
  CHECK_FALSE(Imperfections::trapped_ion(false).apply(4).is_ideal());
}

TEST_CASE("imperfection recipe") {
  const SpinParams p = Imperfections::trapped_ion(true).apply(4);
  CHECK(p.j_bonds[0] == doctest::Approx(1.01));
  CHECK(p.j_bonds[1] == 1.0);
  REQUIRE(p.j_nnn.size() == 1);
  CHECK(p.j_nnn[0].j == doctest::Approx(1.01 / 8));
  for (double d : p.delta_hz) CHECK(d == 1e-3);

  Imperfections r = Imperfections::trapped_ion(false);
  r.random_signs = true;
  r.seed = 42;
  const SpinParams a = r.apply(8), b = r.apply(8);
  CHECK(a.delta_hz == b.delta_hz);
  for (double d : a.delta_hz) CHECK(std::abs(d) == 1e-3);
  r.seed = 43;
  CHECK(r.apply(8).delta_hz != a.delta_hz);
}

}  // TEST_SUITE
