#include "majorana/dynamics.hpp"

#include "majorana/error.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

namespace majorana {
namespace {

using SparseOp = Eigen::SparseMatrix<Complex>;

SparseOp sparse_realize(const PauliSum& op) {
  const Eigen::Index dim = Eigen::Index{1} << op.num_sites();
  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(op.terms().size() * static_cast<std::size_t>(dim));
  for (const auto& t : op.terms())
    for (Eigen::Index b = 0; b < dim; ++b) {
      Complex f;
      const auto row = t.act_on_basis(static_cast<std::uint64_t>(b), f);
      entries.emplace_back(static_cast<Eigen::Index>(row), b, f);
    }
  SparseOp m(dim, dim);
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

double parity_expectation(const Eigen::VectorXcd& psi) {
  double p = 0.0;
  for (Eigen::Index b = 0; b < psi.size(); ++b) {
    const double sign =
        std::popcount(static_cast<std::uint64_t>(b)) % 2 == 0 ? -1.0 : 1.0;
    p += sign * std::norm(psi(b));
  }
  return p;
}

// H(t) = coupling(t) * couplings + field(t) * field + stray. Small chains use
// a dense H(t) when propagating a block of states; sparse products win for a
// single vector or from a few hundred states.
class RampedHamiltonian {
 public:
  RampedHamiltonian(const SpinParams& chain, const Schedule& schedule)
      : schedule_(schedule) {
    const SpinParts parts = split_spin(chain);
    couplings_ = sparse_realize(parts.couplings);
    field_ = sparse_realize(parts.field);
    stray_ = sparse_realize(parts.stray);
    dense_ = couplings_.rows() <= kDenseLimit;
    if (dense_) {
      couplings_dense_ = Eigen::MatrixXcd(couplings_);
      field_dense_ = Eigen::MatrixXcd(field_);
      stray_dense_ = Eigen::MatrixXcd(stray_);
    }
  }

  // out = -i H(t) in
  void derivative(double t, const Eigen::MatrixXcd& in,
                  Eigen::MatrixXcd& out) const {
    const Complex minus_i(0.0, -1.0);
    if (dense_ && in.cols() > 1) {
      h_ = (minus_i * schedule_.coupling(t)) * couplings_dense_ +
           (minus_i * schedule_.field(t)) * field_dense_ + minus_i * stray_dense_;
      out.noalias() = h_ * in;
      return;
    }
    out.noalias() = (minus_i * schedule_.coupling(t)) * (couplings_ * in);
    out.noalias() += (minus_i * schedule_.field(t)) * (field_ * in);
    out.noalias() += minus_i * (stray_ * in);
  }

 private:
  static constexpr Eigen::Index kDenseLimit = 256;
  const Schedule& schedule_;
  SparseOp couplings_, field_, stray_;
  bool dense_ = false;
  Eigen::MatrixXcd couplings_dense_, field_dense_, stray_dense_;
  mutable Eigen::MatrixXcd h_;
};

struct StepPlan {
  long steps = 0;
  double dt = 0.0;
};

StepPlan plan_steps(const SpinParams& chain, const Schedule& schedule,
                    double dt) {
  if (!(dt > 0.0)) throw UsageError("time step must be positive");
  const double limit = max_step(chain, schedule);
  if (dt > limit * (1.0 + 1e-12))
    throw NumericalError("time step " + std::to_string(dt) +
                         " exceeds the stability bound " +
                         std::to_string(limit));
  StepPlan plan;
  if (schedule.total_time() == 0.0) return plan;
  plan.steps = static_cast<long>(std::ceil(schedule.total_time() / dt));
  plan.dt = schedule.total_time() / static_cast<double>(plan.steps);
  return plan;
}

// Classic RK4 on a block of column states; `on_step(k, state)` runs after
// step k (and with k = 0 before the first step).
template <class OnStep>
void integrate(const RampedHamiltonian& h, const StepPlan& plan,
               Eigen::MatrixXcd& state, OnStep&& on_step) {
  Eigen::MatrixXcd k1(state.rows(), state.cols()), k2(k1), k3(k1), k4(k1),
      probe(k1);
  on_step(0L, state);
  for (long k = 0; k < plan.steps; ++k) {
    const double t = static_cast<double>(k) * plan.dt;
    const double half = 0.5 * plan.dt;
    h.derivative(t, state, k1);
    probe = state + half * k1;
    h.derivative(t + half, probe, k2);
    probe = state + half * k2;
    h.derivative(t + half, probe, k3);
    probe = state + plan.dt * k3;
    h.derivative(t + plan.dt, probe, k4);
    state += (plan.dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    on_step(k + 1, state);
  }
}

void record(Trajectory& tr, double t, const Eigen::VectorXcd& psi,
            const StateVector& target) {
  const Complex ov = target.amplitudes().dot(psi);
  tr.times.push_back(t);
  tr.overlap.push_back(ov);
  tr.fidelity.push_back(std::norm(ov));
  tr.norm.push_back(psi.norm());
  tr.parity.push_back(parity_expectation(psi));
}

}  // namespace

// --- Schedule ---------------------------------------------------------------

Schedule::Schedule(double total_time, RampShape shape, double j_start,
                   double h_start, double j_end, double h_end)
    : total_time_(total_time),
      shape_(shape),
      j_start_(j_start),
      h_start_(h_start),
      j_end_(j_end),
      h_end_(h_end) {
  if (!(total_time >= 0.0) || !std::isfinite(total_time))
    throw UsageError("schedule duration must be finite and non-negative");
  for (double v : {j_start, h_start, j_end, h_end})
    if (!std::isfinite(v)) throw UsageError("schedule endpoint not finite");
}

Schedule Schedule::standard(double total_time) {
  return Schedule(total_time, RampShape::linear, 0.0, -10.0, 1.0, 0.0);
}

Schedule Schedule::with_duration(double total_time) const {
  return Schedule(total_time, shape_, j_start_, h_start_, j_end_, h_end_);
}

double Schedule::progress(double t) const {
  if (total_time_ == 0.0) return 1.0;
  const double u = std::clamp(t / total_time_, 0.0, 1.0);
  return shape_ == RampShape::linear ? u : u * u * (3.0 - 2.0 * u);
}

double Schedule::coupling(double t) const {
  const double s = progress(t);
  return (1.0 - s) * j_start_ + s * j_end_;
}

double Schedule::field(double t) const {
  const double s = progress(t);
  return (1.0 - s) * h_start_ + s * h_end_;
}

// --- Static evolution -------------------------------------------------------

StaticPropagator::StaticPropagator(const MatrixOperator& h) {
  const EigenPairs pairs = eigensystem(h, h.dimension());
  energies_ = pairs.values;
  vectors_ = pairs.vectors;
}

StateVector StaticPropagator::evolve(const StateVector& psi, double t) const {
  if (psi.dimension() != vectors_.rows())
    throw UsageError("evolve: state dimension does not match Hamiltonian");
  Eigen::VectorXcd c = vectors_.adjoint() * psi.amplitudes();
  for (Eigen::Index i = 0; i < c.size(); ++i)
    c(i) *= std::exp(Complex(0.0, -energies_(i) * t));
  return StateVector(vectors_ * c);
}

StateVector evolve_static(const MatrixOperator& h, const StateVector& psi,
                          double t) {
  if (t == 0.0) {
    eigensystem(h, 0);  // Hermiticity check only
    return psi;
  }
  return StaticPropagator(h).evolve(psi, t);
}

// --- Scheduled evolution ----------------------------------------------------

SpinParams schedule_params(const SpinParams& chain, const Schedule& schedule,
                           double t) {
  SpinParams p = chain;
  const double c = schedule.coupling(t);
  for (auto& j : p.j_bonds) j *= c;
  for (auto& nnn : p.j_nnn) nnn.j *= c;
  p.h_z = schedule.field(t);
  return p;
}

double max_step(const SpinParams& chain, const Schedule& schedule) {
  // ||H(s)|| is bounded by the larger endpoint norm because H(s) is a convex
  // combination of the endpoint Hamiltonians.
  const double norm = std::max(
      build_spin(schedule_params(chain, schedule, 0.0)).coefficient_norm(),
      build_spin(schedule_params(chain, schedule, schedule.total_time()))
          .coefficient_norm());
  return norm > 0.0 ? 0.01 / norm : std::numeric_limits<double>::infinity();
}

Trajectory evolve_scheduled(const SpinParams& chain, const Schedule& schedule,
                            const StateVector& initial,
                            const StateVector& target, double dt,
                            int samples) {
  chain.validate();
  if (initial.num_sites() != chain.n_sites ||
      target.num_sites() != chain.n_sites)
    throw UsageError("evolve_scheduled: state size does not match chain");
  if (samples < 2) throw UsageError("evolve_scheduled: samples must be >= 2");
  const StepPlan plan = plan_steps(chain, schedule, dt);
  const RampedHamiltonian h(chain, schedule);

  Trajectory tr;
  Eigen::MatrixXcd state = initial.amplitudes();
  if (plan.steps == 0) {
    record(tr, 0.0, state.col(0), target);
    tr.final_state = state.col(0);
    return tr;
  }
  int next_sample = 0;
  integrate(h, plan, state, [&](long k, const Eigen::MatrixXcd& s) {
    while (next_sample < samples) {
      const long at = static_cast<long>(std::llround(
          static_cast<double>(next_sample) * static_cast<double>(plan.steps) /
          (samples - 1)));
      if (at != k) break;
      record(tr, static_cast<double>(k) * plan.dt, s.col(0), target);
      ++next_sample;
    }
  });
  tr.final_state = state.col(0);
  return tr;
}

Eigen::MatrixXcd evolve_columns(const SpinParams& chain, const Schedule& schedule,
                                const Eigen::MatrixXcd& initial, double dt) {
  chain.validate();
  if (chain.n_sites > kMaxDenseSites)
    throw BudgetError("evolve_columns: chain too long");
  if (initial.rows() != (Eigen::Index{1} << chain.n_sites))
    throw UsageError("evolve_columns: state size does not match chain");
  const StepPlan plan = plan_steps(chain, schedule, dt);
  const RampedHamiltonian h(chain, schedule);
  Eigen::MatrixXcd u = initial;
  integrate(h, plan, u, [](long, const Eigen::MatrixXcd&) {});
  return u;
}

Eigen::MatrixXcd scheduled_propagator(const SpinParams& chain,
                                      const Schedule& schedule, double dt) {
  const Eigen::Index dim = Eigen::Index{1} << std::clamp(chain.n_sites, 0, kMaxDenseSites + 1);
  return evolve_columns(chain, schedule, Eigen::MatrixXcd::Identity(dim, dim), dt);
}

GroundSubspace transfer_targets(const SpinParams& chain,
                                const Schedule& schedule) {
  return ground_subspace(realize(
      build_spin(schedule_params(chain, schedule, schedule.total_time()))));
}

const StateVector& parity_matched(const GroundSubspace& targets,
                                  const StateVector& state) {
  const double p = parity_expectation(state.amplitudes()) /
                   std::max(1e-300, state.norm() * state.norm());
  if (std::abs(std::abs(p) - 1.0) > 1e-8)
    throw UsageError("state is not a parity eigenstate");
  return p > 0 ? targets.psi0 : targets.psi1;
}

StateVector single_flip_state(int n_sites, const std::vector<Complex>& coeffs) {
  if (static_cast<int>(coeffs.size()) != n_sites)
    throw UsageError("single_flip_state: need one coefficient per site");
  double total = 0.0;
  for (const auto& c : coeffs) total += std::norm(c);
  if (std::abs(total - 1.0) > 1e-10)
    throw UsageError("single_flip_state: coefficients are not normalized");
  const std::uint64_t all_down = (std::uint64_t{1} << n_sites) - 1;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_sites);
  for (int i = 0; i < n_sites; ++i)
    v(static_cast<Eigen::Index>(all_down ^ (std::uint64_t{1} << i))) =
        coeffs[i];
  return StateVector(std::move(v));
}

std::vector<Complex> single_flip_coefficients(const SpinParams& chain) {
  chain.validate();
  const int n = chain.n_sites;
  // X_a X_b moves a single up spin between sites a and b.
  Eigen::MatrixXd hop = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j + 1 < n; ++j) {
    hop(j, j + 1) -= chain.j_bonds[j];
    hop(j + 1, j) -= chain.j_bonds[j];
  }
  for (const auto& c : chain.j_nnn) {
    hop(c.site_a - 1, c.site_b - 1) -= c.j;
    hop(c.site_b - 1, c.site_a - 1) -= c.j;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hop);
  Eigen::VectorXd v = solver.eigenvectors().col(0);
  if (v.sum() < 0) v = -v;
  std::vector<Complex> out(n);
  for (int i = 0; i < n; ++i) out[i] = v(i);
  return out;
}

Trajectory ground_transfer(const SpinParams& chain, const Schedule& schedule,
                           double dt, int samples) {
  const StateVector initial = StateVector::all_down(chain.n_sites);
  const GroundSubspace targets = transfer_targets(chain, schedule);
  return evolve_scheduled(chain, schedule, initial,
                          parity_matched(targets, initial), dt, samples);
}

Trajectory excited_transfer(const SpinParams& chain, const Schedule& schedule,
                            const std::vector<Complex>& coeffs, double dt,
                            int samples) {
  const StateVector initial = single_flip_state(chain.n_sites, coeffs);
  const GroundSubspace targets = transfer_targets(chain, schedule);
  return evolve_scheduled(chain, schedule, initial,
                          parity_matched(targets, initial), dt, samples);
}

// --- Noise survival ---------------------------------------------------------

Trajectory survival_experiment(const SurvivalOptions& opts) {
  if (opts.samples < 2) throw UsageError("survival: samples must be >= 2");
  if (!(opts.t_max >= 0.0)) throw UsageError("survival: t_max must be >= 0");
  const GroundSubspace ideal =
      ground_subspace(realize(build_spin(SpinParams::ideal(opts.n_sites, opts.j))));

  Imperfections noise;
  noise.delta_hz = opts.delta_hz;
  noise.random_signs = opts.random_signs;
  noise.seed = opts.seed;
  const SpinParams p =
      noise.apply(opts.n_sites, opts.with_topological ? opts.j : 0.0);
  const StaticPropagator u(realize(build_spin(p)));

  Trajectory tr;
  for (int k = 0; k < opts.samples; ++k) {
    const double t = opts.t_max * k / (opts.samples - 1);
    const StateVector psi = u.evolve(ideal.psi0, t);
    record(tr, t, psi.amplitudes(), ideal.psi0);
    if (k + 1 == opts.samples) tr.final_state = psi.amplitudes();
  }
  return tr;
}

double fit_error_frequency(const Trajectory& tr, double reference_energy) {
  const std::size_t n = tr.times.size();
  if (n < 2) throw UsageError("fit_error_frequency: need at least two samples");
  std::vector<double> phase(n);
  double prev = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double a = std::arg(tr.overlap[k] *
                        std::exp(Complex(0.0, reference_energy * tr.times[k])));
    if (k > 0) {
      while (a - prev > std::numbers::pi) a -= 2.0 * std::numbers::pi;
      while (a - prev < -std::numbers::pi) a += 2.0 * std::numbers::pi;
    }
    phase[k] = prev = a;
  }
  double mt = 0.0, mp = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mt += tr.times[k];
    mp += phase[k];
  }
  mt /= static_cast<double>(n);
  mp /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sxy += (tr.times[k] - mt) * (phase[k] - mp);
    sxx += (tr.times[k] - mt) * (tr.times[k] - mt);
  }
  if (sxx == 0.0) throw UsageError("fit_error_frequency: degenerate time grid");
  return std::abs(sxy / sxx);
}

// --- Closed-form estimates --------------------------------------------------

ExcitationEstimate offresonant_excitation(double amplitude, double omega0) {
  if (!(amplitude >= 0.0) || !(omega0 > 0.0))
    throw DomainError("offresonant_excitation: need amplitude >= 0, omega0 > 0");
  ExcitationEstimate e;
  const double a2 = amplitude * amplitude;
  e.probability = a2 / (a2 + omega0 * omega0);
  e.perturbative = amplitude < omega0;
  return e;
}

double effective_error_frequency(double delta_hz, double j) {
  if (!(j > 0.0)) throw DomainError("effective_error_frequency: J must be > 0");
  return delta_hz * delta_hz / (2.0 * j);
}

double calibrate_duration(const SpinParams& chain, const Schedule& shape,
                          double t_lo, double t_hi, double lo_error,
                          double hi_error, double dt) {
  auto error_at = [&](double t) {
    return ground_transfer(chain, shape.with_duration(t), dt, 2)
        .final_infidelity();
  };
  auto in_band = [&](double e) { return e >= lo_error && e <= hi_error; };
  const double e_lo = error_at(t_lo);
  if (in_band(e_lo)) return t_lo;
  const double e_hi = error_at(t_hi);
  if (in_band(e_hi)) return t_hi;
  if (e_lo < hi_error || e_hi > lo_error)
    throw UsageError("calibrate_duration: bracket does not straddle the band");
  for (int it = 0; it < 60; ++it) {
    const double mid = std::sqrt(t_lo * t_hi);
    const double e = error_at(mid);
    if (in_band(e)) return mid;
    (e > hi_error ? t_lo : t_hi) = mid;
  }
  throw NumericalError("calibrate_duration: no convergence");
}

}  // namespace majorana
