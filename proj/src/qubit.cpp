#include "majorana/qubit.hpp"

#include "majorana/error.hpp"
#include "majorana/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

namespace majorana {
namespace {

// Uniform double in [0, 1) from the top 53 bits; independent of the
// standard library's distribution implementations.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t count_successes(std::mt19937_64& rng, double p,
                              std::uint64_t shots) {
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < shots; ++s)
    if (uniform01(rng) < p) ++hits;
  return hits;
}

Eigen::VectorXcd kron(const Eigen::VectorXcd& high, const Eigen::VectorXcd& low) {
  Eigen::VectorXcd out(high.size() * low.size());
  for (Eigen::Index h = 0; h < high.size(); ++h)
    out.segment(h * low.size(), low.size()) = high(h) * low;
  return out;
}

// Joint product state: chain 1 is least significant.
Eigen::VectorXcd joint_product(const std::vector<const Eigen::VectorXcd*>& chains) {
  Eigen::VectorXcd out = *chains.front();
  for (std::size_t k = 1; k < chains.size(); ++k) out = kron(*chains[k], out);
  return out;
}

}  // namespace

double EncodedQubit::leakage() const {
  return 1.0 - psi0.fidelity(state) - psi1.fidelity(state);
}

double EncodedQubit::expectation(const PauliTerm& op) const {
  return majorana::expectation(PauliSum(op), state).real();
}

EncodedQubit encode(Complex alpha, Complex beta, int n_sites) {
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-10)
    throw UsageError("encode: |alpha|^2 + |beta|^2 must equal 1");
  const SpinParams chain = SpinParams::ideal(n_sites);
  if (n_sites > kMaxDenseSites) throw BudgetError("encode: chain too long");
  GroundSubspace g = ground_subspace(realize(build_spin(chain)));
  StateVector state(alpha * g.psi0.amplitudes() + beta * g.psi1.amplitudes());
  return EncodedQubit{chain, std::move(g.psi0), std::move(g.psi1),
                      std::move(state)};
}

MatrixOperator gate_matrix(Axis axis, double angle, int n_sites) {
  const PauliTerm sigma = mfq_pauli(axis, n_sites);
  PauliSum u(PauliTerm::identity(n_sites).with_coefficient(std::cos(angle / 2)));
  u += PauliSum(sigma.with_coefficient(sigma.coefficient() *
                                       Complex(0.0, -std::sin(angle / 2))));
  return realize(u);
}

EncodedQubit apply_gate(const EncodedQubit& q, Axis axis, double angle) {
  EncodedQubit out = q;
  out.state = StateVector(gate_matrix(axis, angle, q.chain.n_sites).matrix() *
                          q.state.amplitudes());
  return out;
}

ParityCounts measure_parity(const EncodedQubit& q, std::uint64_t shots,
                            std::uint64_t seed) {
  if (shots < 1) throw UsageError("measure_parity: shots must be >= 1");
  const auto& amps = q.state.amplitudes();
  double p_plus = 0.0;
  for (Eigen::Index b = 0; b < amps.size(); ++b)
    if (std::popcount(static_cast<std::uint64_t>(b)) % 2 == 1)
      p_plus += std::norm(amps(b));
  p_plus /= amps.squaredNorm();

  std::mt19937_64 rng(seed);
  ParityCounts c;
  c.seed = seed;
  c.plus = count_successes(rng, p_plus, shots);
  c.minus = shots - c.plus;
  return c;
}

BlochEstimate tomography(const EncodedQubit& q, std::uint64_t shots,
                         std::uint64_t seed) {
  if (shots < 1) throw UsageError("tomography: shots must be >= 1");
  std::mt19937_64 rng(seed);
  BlochEstimate est;
  est.shots = shots;
  est.seed = seed;
  const Axis axes[3] = {Axis::x, Axis::y, Axis::z};
  for (int a = 0; a < 3; ++a) {
    const double e = q.expectation(mfq_pauli(axes[a], q.chain.n_sites)) /
                     q.state.amplitudes().squaredNorm();
    const double p_plus = std::clamp(0.5 * (1.0 + e), 0.0, 1.0);
    const auto plus = count_successes(rng, p_plus, shots);
    const double mean =
        (2.0 * static_cast<double>(plus) - static_cast<double>(shots)) /
        static_cast<double>(shots);
    est.exact[a] = e;
    est.mean[a] = mean;
    est.std_error[a] =
        std::sqrt(std::max(0.0, 1.0 - mean * mean) / static_cast<double>(shots));
  }
  return est;
}

MemoryResult memory_transfer(const std::vector<Complex>& input_coeffs,
                             int k_chains, int n_sites,
                             const MemoryOptions& options) {
  if (k_chains < 1 || n_sites < 2)
    throw UsageError("memory_transfer: need K >= 1 and N >= 2");
  if (k_chains * n_sites > kMaxDenseSites)
    throw BudgetError("memory_transfer: K*N = " +
                      std::to_string(k_chains * n_sites) + " exceeds " +
                      std::to_string(kMaxDenseSites));
  const std::size_t n_logical = std::size_t{1} << k_chains;
  if (input_coeffs.size() != n_logical)
    throw UsageError("memory_transfer: expected " + std::to_string(n_logical) +
                     " input coefficients");
  double total = 0.0;
  for (const auto& c : input_coeffs) total += std::norm(c);
  if (std::abs(total - 1.0) > 1e-10)
    throw UsageError("memory_transfer: input coefficients are not normalized");

  // Per-chain evolved logical states and their targets.
  std::vector<std::array<Eigen::VectorXcd, 2>> evolved(k_chains), targets(k_chains);
  std::vector<std::array<Complex, 2>> diag(k_chains);
  for (int k = 0; k < k_chains; ++k) {
    Imperfections noise = options.noise;
    noise.seed = options.noise.seed + static_cast<unsigned long long>(k);
    const SpinParams chain = noise.apply(n_sites);
    const Schedule& sched = options.schedule;
    const double dt = options.dt > 0.0 ? options.dt : 0.5 * max_step(chain, sched);
    const GroundSubspace g = transfer_targets(chain, sched);
    const StateVector init0 = StateVector::all_down(n_sites);
    const StateVector init1 = single_flip_state(
        n_sites, single_flip_coefficients(
                     schedule_params(chain, sched, sched.total_time())));
    Eigen::MatrixXcd block(init0.dimension(), 2);
    block << init0.amplitudes(), init1.amplitudes();
    const Eigen::MatrixXcd out = evolve_columns(chain, sched, block, dt);
    const StateVector* init[2] = {&init0, &init1};
    for (int i = 0; i < 2; ++i) {
      evolved[k][i] = out.col(i);
      targets[k][i] = parity_matched(g, *init[i]).amplitudes();
      diag[k][i] = targets[k][i].dot(evolved[k][i]);
    }
  }

  MemoryResult res;
  res.reg.k_chains = k_chains;
  res.reg.n_sites = n_sites;
  res.reg.input_coeffs = input_coeffs;
  const Eigen::Index dim = Eigen::Index{1} << (k_chains * n_sites);
  res.reg.joint_state = Eigen::VectorXcd::Zero(dim);
  Eigen::VectorXcd joint_target = Eigen::VectorXcd::Zero(dim);
  std::vector<Eigen::VectorXcd> logical_targets(n_logical);
  for (std::size_t idx = 0; idx < n_logical; ++idx) {
    std::vector<const Eigen::VectorXcd*> ev, tg;
    for (int k = 0; k < k_chains; ++k) {
      const int bit = static_cast<int>((idx >> k) & 1u);
      ev.push_back(&evolved[k][bit]);
      tg.push_back(&targets[k][bit]);
    }
    logical_targets[idx] = joint_product(tg);
    if (input_coeffs[idx] != Complex(0.0))
      res.reg.joint_state += input_coeffs[idx] * joint_product(ev);
    joint_target += input_coeffs[idx] * logical_targets[idx];
  }
  res.raw_fidelity = std::norm(joint_target.dot(res.reg.joint_state));

  // amplitude(idx) = conj(c_idx) <Psi_idx|final>; the target phase of chain k
  // multiplies every idx with bit k set by e^{-i phi_k}.
  std::vector<Complex> amplitude(n_logical);
  for (std::size_t idx = 0; idx < n_logical; ++idx)
    amplitude[idx] = std::conj(input_coeffs[idx]) *
                     logical_targets[idx].dot(res.reg.joint_state);
  std::vector<double> phi(k_chains);
  for (int k = 0; k < k_chains; ++k)
    phi[k] = std::arg(diag[k][1]) - std::arg(diag[k][0]);
  auto overlap_with = [&](const std::vector<double>& ph) {
    Complex s = 0.0;
    for (std::size_t idx = 0; idx < n_logical; ++idx) {
      double a = 0.0;
      for (int k = 0; k < k_chains; ++k)
        if ((idx >> k) & 1u) a += ph[k];
      s += std::exp(Complex(0.0, -a)) * amplitude[idx];
    }
    return s;
  };
  double best = std::norm(overlap_with(phi));
  for (int sweep = 0; sweep < 200; ++sweep) {
    const double before = best;
    for (int k = 0; k < k_chains; ++k) {
      Complex s0 = 0.0, s1 = 0.0;
      for (std::size_t idx = 0; idx < n_logical; ++idx) {
        double a = 0.0;
        for (int m = 0; m < k_chains; ++m)
          if (m != k && ((idx >> m) & 1u)) a += phi[m];
        const Complex term = std::exp(Complex(0.0, -a)) * amplitude[idx];
        ((idx >> k) & 1u ? s1 : s0) += term;
      }
      if (std::abs(s1) > 0.0)
        phi[k] = std::abs(s0) > 0.0 ? std::arg(s1) - std::arg(s0) : std::arg(s1);
    }
    best = std::norm(overlap_with(phi));
    if (best - before <= 1e-15) break;
  }
  res.phase_opt_fidelity = best;
  res.phases = phi;
  res.single_raw_fidelity = {std::norm(diag[0][0]), std::norm(diag[0][1])};
  return res;
}

}  // namespace majorana
