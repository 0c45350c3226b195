#include "majorana/error.hpp"
#include "majorana/qubit.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <numbers>

using namespace majorana;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Components of the state on the encoded basis.
std::array<Complex, 2> logical(const EncodedQubit& q) {
  return {q.psi0.overlap(q.state), q.psi1.overlap(q.state)};
}

}  // namespace

TEST_SUITE("qubit") {

TEST_CASE("encoding") {
  const EncodedQubit zero = encode(1.0, 0.0, 3);
  CHECK(zero.state.fidelity(StateVector(oracle::ghz_x(3, -1))) == doctest::Approx(1.0));
  CHECK(zero.expectation(mfq_pauli(Axis::z, 3)) == doctest::Approx(-1.0));
  CHECK(std::abs(zero.leakage()) < 1e-14);

  const EncodedQubit one = encode(0.0, 1.0, 3);
  CHECK(one.expectation(parity_operator(3)) == doctest::Approx(-1.0));
  CHECK(one.expectation(mfq_pauli(Axis::z, 3)) == doctest::Approx(1.0));

  for (int n = 2; n <= 6; ++n) {
    const EncodedQubit plus = encode(kInvSqrt2, kInvSqrt2, n);
    CHECK(std::abs(plus.expectation(mfq_pauli(Axis::x, n))) == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(encode(1.0, 1.0, 3), UsageError);
}

TEST_CASE("logical gates") {
  const EncodedQubit zero = encode(1.0, 0.0, 3);
  const EncodedQubit flipped = apply_gate(zero, Axis::x, std::numbers::pi);
  CHECK(flipped.state.fidelity(zero.psi1) == doctest::Approx(1.0));
  const EncodedQubit same = apply_gate(zero, Axis::y, 0.0);
  CHECK((same.state.amplitudes() - zero.state.amplitudes()).norm() < 1e-15);

  const Complex alpha(0.6, 0.0), beta(0.0, 0.8);
  const EncodedQubit q = encode(alpha, beta, 4);
  const double theta = 0.9;
  const auto before = logical(q);
  const auto after = logical(apply_gate(q, Axis::z, theta));
  CHECK(std::norm(after[0]) == doctest::Approx(std::norm(before[0])));
  CHECK(std::norm(after[1]) == doctest::Approx(std::norm(before[1])));
  // z = -1 on Psi0 and +1 on Psi1, so the relative phase advances by -theta
  const double shift = std::arg((after[1] / after[0]) / (before[1] / before[0]));
  CHECK(shift == doctest::Approx(-theta));

  for (Axis a : {Axis::x, Axis::y, Axis::z}) {
    const Eigen::MatrixXcd u = gate_matrix(a, 0.37, 4).matrix();
    CHECK((u.adjoint() * u - oracle::identity(4)).norm() < 1e-13);
    const Eigen::MatrixXcd h = realize(build_spin(SpinParams::ideal(4))).matrix();
    CHECK((u * h - h * u).norm() < 1e-13);
  }
}

TEST_CASE("parity readout") {
  const auto p0 = measure_parity(encode(1.0, 0.0, 3), 1000, 1);
  CHECK(p0.plus == 1000);
  const auto p1 = measure_parity(encode(0.0, 1.0, 3), 1000, 1);
  CHECK(p1.minus == 1000);
  const EncodedQubit mixed = encode(kInvSqrt2, kInvSqrt2, 3);
  const auto c = measure_parity(mixed, 100000, 42);
  CHECK(c.plus + c.minus == 100000);
  CHECK(std::abs(c.plus / 1e5 - 0.5) < 0.01);
  const auto again = measure_parity(mixed, 100000, 42);
  CHECK(again.plus == c.plus);
  CHECK(measure_parity(mixed, 100000, 43).plus != c.plus);
  CHECK(c.seed == 42);
}

TEST_CASE("tomography") {
  const std::uint64_t shots = 100000;
  const BlochEstimate z = tomography(encode(1.0, 0.0, 3), shots, 7);
  const double expected[3] = {0.0, 0.0, -1.0};
  for (int a = 0; a < 3; ++a) {
    const double sigma = std::sqrt((1.0 - expected[a] * expected[a]) / shots);
    CHECK(std::abs(z.mean[a] - expected[a]) <= std::max(3 * sigma, 1e-12));
    CHECK(z.exact[a] == doctest::Approx(expected[a]).epsilon(1e-12));
  }
  const BlochEstimate o = tomography(encode(0.0, 1.0, 3), shots, 8);
  for (int a = 0; a < 3; ++a)
    CHECK(std::abs(0.5 * (z.exact[a] + o.exact[a])) < 1e-12);

  const EncodedQubit rotated = apply_gate(encode(1.0, 0.0, 3), Axis::x, std::numbers::pi / 2);
  const BlochEstimate r = tomography(rotated, shots, 9);
  CHECK(r.exact[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.exact[1] == doctest::Approx(1.0));
  CHECK(std::abs(r.exact[2]) < 1e-12);
  // sampled means scatter by ~1/sqrt(shots) around the unit Bloch vector
  double norm2 = 0.0, exact2 = 0.0;
  for (int a = 0; a < 3; ++a) {
    norm2 += r.mean[a] * r.mean[a];
    exact2 += r.exact[a] * r.exact[a];
  }
  CHECK(exact2 <= 1.0 + 1e-12);
  CHECK(norm2 <= 1.0 + 20.0 / shots);

  const BlochEstimate rerun = tomography(rotated, shots, 9);
  CHECK(rerun.mean == r.mean);
}

TEST_CASE("memory transfer structure") {
  MemoryOptions opts;
  opts.schedule = Schedule::standard(20.0);

  const MemoryResult single = memory_transfer({1.0, 0.0}, 1, 3, opts);
  const SpinParams chain = SpinParams::ideal(3);
  const Trajectory tr =
      ground_transfer(chain, opts.schedule, 0.5 * max_step(chain, opts.schedule), 2);
  CHECK(single.raw_fidelity == doctest::Approx(tr.fidelity.back()).epsilon(1e-10));

  const MemoryResult product = memory_transfer({1.0, 0.0, 0.0, 0.0}, 2, 3, opts);
  CHECK(std::abs(product.raw_fidelity -
                 product.single_raw_fidelity[0] * product.single_raw_fidelity[0]) < 1e-10);

  const MemoryResult bell = memory_transfer({kInvSqrt2, 0.0, 0.0, kInvSqrt2}, 2, 3, opts);
  CHECK(bell.phase_opt_fidelity >= bell.raw_fidelity - 1e-12);
  CHECK(bell.phase_opt_fidelity <= 1.0 + 1e-12);
  CHECK(bell.reg.joint_state.size() == 64);
  CHECK(bell.reg.joint_state.norm() == doctest::Approx(1.0));

  CHECK_THROWS_AS(memory_transfer(std::vector<Complex>(8, 0.0), 3, 5, opts), BudgetError);
  CHECK_THROWS_AS(memory_transfer({1.0, 1.0, 0.0, 0.0}, 2, 3, opts), UsageError);
  CHECK_THROWS_AS(memory_transfer({1.0, 0.0}, 2, 3, opts), UsageError);
}

}  // TEST_SUITE
