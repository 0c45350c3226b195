#include "majorana/dynamics.hpp"
#include "majorana/error.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace majorana;

namespace {

double closed_form_survival(double dhz, double t) {
  const double c = std::cos(dhz * t), s = std::sin(dhz * t);
  return std::pow(c, 6) + std::pow(s, 6);
}

double auto_dt(const SpinParams& chain, const Schedule& s) {
  return 0.5 * max_step(chain, s);
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("schedule interpolation") {
  const Schedule s = Schedule::standard();
  CHECK(s.total_time() == 100.0);
  CHECK(s.coupling(0.0) == 0.0);
  CHECK(s.field(0.0) == -10.0);
  CHECK(s.coupling(100.0) == 1.0);
  CHECK(s.field(100.0) == 0.0);
  CHECK(s.coupling(50.0) == doctest::Approx(0.5));
  CHECK(s.field(250.0) == 0.0);

  const Schedule smooth(10.0, RampShape::smoothstep, 0.0, -10.0, 1.0, 0.0);
  CHECK(smooth.progress(2.5) == doctest::Approx(0.15625));
  CHECK(smooth.progress(5.0) == doctest::Approx(0.5));
  CHECK(s.with_duration(7.0).total_time() == 7.0);
  CHECK_THROWS_AS(Schedule(-1.0, RampShape::linear, 0, 0, 1, 0), UsageError);
  CHECK_THROWS_AS(Schedule(1.0, RampShape::linear, NAN, 0, 1, 0), UsageError);
}

TEST_CASE("static evolution") {
  const MatrixOperator h = realize(build_spin(SpinParams::ideal(3)));
  const StateVector psi = StateVector::all_down(3);
  CHECK((evolve_static(h, psi, 0.0).amplitudes() - psi.amplitudes()).norm() == 0.0);

  const MatrixOperator minus_z = realize(PauliSum(PauliTerm::from_letters("Z", -1.0)));
  const StateVector up = StateVector::basis(1, 0);
  const StateVector out = evolve_static(minus_z, up, 0.7);
  CHECK(std::abs(out.amplitudes()(0) - std::exp(Complex(0.0, 0.7))) < 1e-14);
  CHECK(out.fidelity(up) == doctest::Approx(1.0));

  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
  bad(1, 0) = 1.0;
  CHECK_THROWS_AS(evolve_static(MatrixOperator(bad), up, 1.0), NumericalError);
}

TEST_CASE("stray-field rotation of the GHZ state has the closed form") {
  const double dhz = 1e-3;
  Imperfections noise;
  noise.delta_hz = dhz;
  const MatrixOperator h = realize(build_spin(noise.apply(3, 0.0)));
  const StateVector psi0(oracle::ghz_x(3, -1));
  for (double t : {0.0, 300.0, 785.398, 1500.0}) {
    const StateVector out = evolve_static(h, psi0, t);
    CHECK(psi0.fidelity(out) == doctest::Approx(closed_form_survival(dhz, t)).epsilon(1e-12));
    const oracle::Vec ref = oracle::expm_hermitian(h.matrix(), t) * psi0.amplitudes();
    CHECK((out.amplitudes() - ref).norm() < 1e-10);
  }
}

TEST_CASE("scheduled evolution matches midpoint exponentials") {
  const SpinParams chain = Imperfections::trapped_ion(true).apply(3);
  const Schedule sched = Schedule::standard(5.0);
  const StateVector init = StateVector::all_down(3);
  const Trajectory tr = evolve_scheduled(chain, sched, init, init,
                                         auto_dt(chain, sched), 11);
  auto h_of_t = [&](double t) {
    return realize(build_spin(schedule_params(chain, sched, t))).matrix();
  };
  const oracle::Vec ref = oracle::piecewise_evolve(h_of_t, init.amplitudes(), 5.0, 4000);
  CHECK((tr.final_state - ref).norm() < 1e-5);
  CHECK(tr.times.size() == 11);
  CHECK(tr.times.front() == 0.0);
  CHECK(tr.times.back() == doctest::Approx(5.0));
  for (double nrm : tr.norm) CHECK(std::abs(nrm - 1.0) < 1e-10);

  const Eigen::MatrixXcd u = scheduled_propagator(chain, sched, auto_dt(chain, sched));
  CHECK((u * init.amplitudes() - tr.final_state).norm() < 1e-12);
}

TEST_CASE("step size guard and zero-duration schedule") {
  const SpinParams chain = SpinParams::ideal(3);
  const Schedule sched = Schedule::standard();
  const double bound = max_step(chain, sched);
  CHECK(bound == doctest::Approx(0.01 / 30.0));
  const StateVector init = StateVector::all_down(3);
  CHECK_THROWS_AS(evolve_scheduled(chain, sched, init, init, 2 * bound), NumericalError);
  CHECK_THROWS_AS(evolve_scheduled(chain, sched, init, init, 0.0), UsageError);

  const Trajectory zero = ground_transfer(chain, Schedule::standard(0.0), bound);
  REQUIRE(zero.times.size() == 1);
  // |<Psi0|down down down>|^2 = 1/4
  CHECK(zero.final_infidelity() == doctest::Approx(0.75));
}

TEST_CASE("ground-branch transfer with the frozen schedule") {
  const Schedule sched = Schedule::standard();
  for (const SpinParams& chain :
       {SpinParams::ideal(3), Imperfections::trapped_ion(true).apply(3)}) {
    const Trajectory tr = ground_transfer(chain, sched, auto_dt(chain, sched));
    CHECK(tr.final_infidelity() > 1e-4);
    CHECK(tr.final_infidelity() < 1e-2);
    for (double p : tr.parity) CHECK(std::abs(p - 1.0) < 1e-8);
  }
}

TEST_CASE("diabatic error falls with the ramp duration") {
  const SpinParams chain = SpinParams::ideal(3);
  double previous = 1.0;
  for (double t : {80.0, 160.0, 320.0}) {
    const Schedule s = Schedule::standard(t);
    const double err = ground_transfer(chain, s, auto_dt(chain, s), 2).final_infidelity();
    CHECK(err < previous);
    previous = err;
  }
  CHECK(previous < 5e-4);
}

TEST_CASE("excited-branch transfer") {
  const SpinParams chain = SpinParams::ideal(3);
  const auto c = single_flip_coefficients(chain);
  CHECK(c[0].real() == doctest::Approx(0.5));
  CHECK(c[1].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(c[2].real() == doctest::Approx(0.5));

  const Schedule sched = Schedule::standard();
  const double dt = auto_dt(chain, sched);
  const Trajectory ex = excited_transfer(chain, sched, c, dt);
  const Trajectory gs = ground_transfer(chain, sched, dt);
  for (double p : ex.parity) CHECK(std::abs(p + 1.0) < 1e-8);
  CHECK(ex.final_infidelity() < 10 * gs.final_infidelity());
  CHECK(ex.final_infidelity() > gs.final_infidelity() / 10);

  // the even-parity target is never reached
  const GroundSubspace targets = transfer_targets(chain, sched);
  const Trajectory wrong = evolve_scheduled(
      chain, sched, single_flip_state(3, c), targets.psi0, dt, 21);
  for (double f : wrong.fidelity) CHECK(f < 1e-10);

  CHECK_THROWS_AS(single_flip_state(3, {1.0, 1.0, 0.0}), UsageError);
  CHECK_THROWS_AS(excited_transfer(chain, sched, {0.5, 0.5, 0.5}, dt), UsageError);
}

TEST_CASE("survival with and without the topological Hamiltonian") {
  SurvivalOptions opts;
  opts.samples = 401;
  const Trajectory with = survival_experiment(opts);
  opts.with_topological = false;
  const Trajectory without = survival_experiment(opts);
  double min_without = 1.0;
  for (std::size_t k = 0; k < with.times.size(); ++k) {
    CHECK(with.fidelity[k] >= 1.0 - 1e-5);
    CHECK(std::abs(without.fidelity[k] - closed_form_survival(1e-3, without.times[k])) < 1e-8);
    min_without = std::min(min_without, without.fidelity[k]);
  }
  CHECK(min_without < 0.26);

  const double e0 = -2.0 * opts.j;
  const double fitted = fit_error_frequency(with, e0);
  const double predicted = effective_error_frequency(1e-3, 1.0);
  CHECK(fitted / predicted < 3.0);
  CHECK(fitted / predicted > 1.0 / 3);

  SurvivalOptions quiet;
  quiet.delta_hz = 0.0;
  quiet.samples = 11;
  for (bool topo : {true, false}) {
    quiet.with_topological = topo;
    for (double f : survival_experiment(quiet).fidelity) CHECK(f == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("closed-form error estimates") {
  const auto x = offresonant_excitation(6.0, 4.11e14);
  CHECK(x.probability == doctest::Approx(36.0 / (4.11e14 * 4.11e14)));
  CHECK(x.perturbative);
  CHECK(offresonant_excitation(0.0, 1.0).probability == 0.0);
  CHECK(offresonant_excitation(0.1, 1.0).probability == doctest::Approx(1.0 / 101.0));
  CHECK_FALSE(offresonant_excitation(2.0, 1.0).perturbative);
  CHECK_THROWS_AS(offresonant_excitation(1.0, 0.0), DomainError);

  CHECK(effective_error_frequency(1e-3, 1.0) == 5e-7);
  CHECK(effective_error_frequency(0.0, 1.0) == 0.0);
  CHECK_THROWS_AS(effective_error_frequency(1e-3, 0.0), DomainError);
}

TEST_CASE("duration calibration lands in the requested band") {
  const SpinParams chain = SpinParams::ideal(3);
  const Schedule shape = Schedule::standard();
  const double dt = auto_dt(chain, shape);
  const double t = calibrate_duration(chain, shape, 40.0, 400.0, 5e-4, 2e-3, dt);
  const double err = ground_transfer(chain, shape.with_duration(t), dt, 2).final_infidelity();
  CHECK(err >= 5e-4);
  CHECK(err <= 2e-3);
  CHECK_THROWS_AS(calibrate_duration(chain, shape, 300.0, 400.0, 5e-4, 2e-3, dt),
                  UsageError);
}

}  // TEST_SUITE
