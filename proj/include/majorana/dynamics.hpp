#pragma once

// Time evolution: exact static propagation, fixed-step RK4 under a ramped
// schedule, the adiabatic transfer protocol, the noise-survival experiment,
// and closed-form error estimates.

#include "majorana/model.hpp"
#include "majorana/pauli.hpp"
#include "majorana/spectral.hpp"

#include <Eigen/Dense>

#include <vector>

namespace majorana {

enum class RampShape { linear, smoothstep };

/// Interpolation H(s) between two (coupling multiplier, field) endpoints,
/// s = t / T for the linear shape and s = 3u^2 - 2u^3 (u = t/T) for
/// smoothstep. The coupling multiplier scales every X-X coupling of the
/// chain template; the field replaces its uniform h_z.
class Schedule {
 public:
  Schedule(double total_time, RampShape shape, double j_start, double h_start,
           double j_end, double h_end);

  /// Linear ramp over T = 100/J from (0, -10 J) to (J, 0). Its ideal N = 3
  /// diabatic error is about 1.2e-3.
  static Schedule standard(double total_time = kStandardDuration);
  static constexpr double kStandardDuration = 100.0;

  double total_time() const { return total_time_; }
  RampShape shape() const { return shape_; }
  double j_start() const { return j_start_; }
  double h_start() const { return h_start_; }
  double j_end() const { return j_end_; }
  double h_end() const { return h_end_; }

  double progress(double t) const;
  double coupling(double t) const;
  double field(double t) const;

  Schedule with_duration(double total_time) const;

 private:
  double total_time_;
  RampShape shape_;
  double j_start_, h_start_, j_end_, h_end_;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<double> fidelity;   ///< |<target|psi(t)>|^2
  std::vector<double> norm;       ///< ||psi(t)||
  std::vector<double> parity;     ///< <psi(t)|P|psi(t)>
  std::vector<Complex> overlap;   ///< <target|psi(t)>
  Eigen::VectorXcd final_state;

  double final_infidelity() const { return 1.0 - fidelity.back(); }
};

/// exp(-i H t) via one eigendecomposition, reusable across many times.
class StaticPropagator {
 public:
  explicit StaticPropagator(const MatrixOperator& h);
  StateVector evolve(const StateVector& psi, double t) const;
  const Eigen::VectorXd& energies() const { return energies_; }

 private:
  Eigen::VectorXd energies_;
  Eigen::MatrixXcd vectors_;
};

StateVector evolve_static(const MatrixOperator& h, const StateVector& psi,
                          double t);

/// Largest step accepted by evolve_scheduled: 0.01 / max_t ||H(t)||, with
/// the coefficient 1-norm standing in for the operator norm.
double max_step(const SpinParams& chain, const Schedule& schedule);

/// Spin parameters of the scheduled Hamiltonian at time t.
SpinParams schedule_params(const SpinParams& chain, const Schedule& schedule,
                           double t);

/// RK4 with the Hamiltonian sampled at t, t + dt/2 and t + dt. `dt` is an
/// upper bound: the step actually used is T / ceil(T / dt). `samples` >= 2
/// evenly spaced records, first at t = 0, last at t = T.
Trajectory evolve_scheduled(const SpinParams& chain, const Schedule& schedule,
                            const StateVector& initial,
                            const StateVector& target, double dt,
                            int samples = 101);

/// Full propagator U(T) of the schedule, one RK4 column per basis state.
/// Evolves every column of `initial` under the schedule.
Eigen::MatrixXcd evolve_columns(const SpinParams& chain, const Schedule& schedule,
                                const Eigen::MatrixXcd& initial, double dt);
Eigen::MatrixXcd scheduled_propagator(const SpinParams& chain,
                                      const Schedule& schedule, double dt);

/// Ground subspace of the schedule's final Hamiltonian.
GroundSubspace transfer_targets(const SpinParams& chain,
                                const Schedule& schedule);

/// The member of `targets` whose parity matches `state`.
const StateVector& parity_matched(const GroundSubspace& targets,
                                  const StateVector& state);

/// sum_i c_i |down ... up_i ... down>.
StateVector single_flip_state(int n_sites, const std::vector<Complex>& coeffs);

/// Lowest eigenvector of the final X-X couplings projected on the single-flip
/// manifold, sign-fixed positive. (1/2, 1/sqrt2, 1/2) for a uniform N = 3.
std::vector<Complex> single_flip_coefficients(const SpinParams& chain);

/// Adiabatic transfer from |down...down> to the parity-matched ground state.
Trajectory ground_transfer(const SpinParams& chain, const Schedule& schedule,
                           double dt, int samples = 101);

/// Adiabatic transfer of sum_i c_i |..up_i..> to the parity-matched ground
/// state. Rejects coefficients with sum |c|^2 != 1 (tolerance 1e-10).
Trajectory excited_transfer(const SpinParams& chain, const Schedule& schedule,
                            const std::vector<Complex>& coeffs, double dt,
                            int samples = 101);

struct SurvivalOptions {
  int n_sites = 3;
  double delta_hz = 1e-3;
  double j = 1.0;
  bool with_topological = true;
  double t_max = 2000.0;
  int samples = 2001;
  bool random_signs = false;
  unsigned long long seed = 0;
};

/// Starts in the ideal-point |Psi0> and evolves under delta_hz sum Z, plus
/// -J sum X X when with_topological. Fidelity is against |Psi0>.
Trajectory survival_experiment(const SurvivalOptions& opts);

/// Drift rate of arg(<Psi0|psi(t)> e^{i E0 t}), i.e. the effective error
/// frequency seen by the encoded state, from a least-squares line fit.
double fit_error_frequency(const Trajectory& trajectory,
                           double reference_energy);

struct ExcitationEstimate {
  double probability = 0.0;
  bool perturbative = true;  ///< false when amplitude >= omega0
};

/// Peak Rabi excitation amplitude^2 / (amplitude^2 + omega0^2) of a drive
/// detuned by omega0.
ExcitationEstimate offresonant_excitation(double amplitude, double omega0);

/// delta_hz^2 / Delta_g with Delta_g = 2J.
double effective_error_frequency(double delta_hz, double j);

/// Bisects log T until the ideal diabatic error of the ground transfer lies
/// in [lo_error, hi_error].
double calibrate_duration(const SpinParams& chain, const Schedule& shape,
                          double t_lo, double t_hi, double lo_error,
                          double hi_error, double dt);

}  // namespace majorana
