#pragma once

// The Majorana-fermion qubit: encoding in the parity-labelled ground
// subspace, logical rotations, parity readout, shot-based tomography, and the
// K-chain quantum-memory transfer.

#include "majorana/dynamics.hpp"
#include "majorana/model.hpp"
#include "majorana/pauli.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace majorana {

struct EncodedQubit {
  SpinParams chain;
  StateVector psi0;   ///< P = +1 basis state
  StateVector psi1;   ///< P = -1 basis state
  StateVector state;

  /// 1 - |<Psi0|psi>|^2 - |<Psi1|psi>|^2
  double leakage() const;
  /// <psi| op |psi>, real part (all logical observables are Hermitian).
  double expectation(const PauliTerm& op) const;
};

/// alpha |Psi0> + beta |Psi1> on the ideal chain of N sites.
/// Rejects |alpha|^2 + |beta|^2 != 1 beyond 1e-10.
EncodedQubit encode(Complex alpha, Complex beta, int n_sites);

/// Full-space unitary exp(-i angle/2 sigma_MFQ^axis).
MatrixOperator gate_matrix(Axis axis, double angle, int n_sites);
EncodedQubit apply_gate(const EncodedQubit& q, Axis axis, double angle);

struct ParityCounts {
  std::uint64_t plus = 0;
  std::uint64_t minus = 0;
  std::uint64_t seed = 0;
};

/// Born-rule samples of P = -prod Z, deterministic for a given seed.
ParityCounts measure_parity(const EncodedQubit& q, std::uint64_t shots,
                            std::uint64_t seed);

struct BlochEstimate {
  std::array<double, 3> mean{};       ///< x, y, z
  std::array<double, 3> std_error{};  ///< sqrt((1 - mean^2) / shots)
  std::array<double, 3> exact{};      ///< exact expectation values
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

/// Estimates <sigma_MFQ^{x,y,z}> by sampling each observable `shots` times.
BlochEstimate tomography(const EncodedQubit& q, std::uint64_t shots,
                         std::uint64_t seed);

/// Register of K chains; chain 1 occupies the least-significant N bits of the
/// joint basis index, and coefficient index bit k-1 selects the logical
/// value of chain k.
struct MemoryRegister {
  int k_chains = 0;
  int n_sites = 0;
  std::vector<Complex> input_coeffs;
  Eigen::VectorXcd joint_state;
};

struct MemoryOptions {
  Schedule schedule = Schedule::standard();
  Imperfections noise;     ///< applied to every chain; random signs reseeded
                           ///< per chain as seed + chain index
  double dt = 0.0;         ///< 0 selects half the stability bound
};

struct MemoryResult {
  MemoryRegister reg;
  double raw_fidelity = 0.0;
  double phase_opt_fidelity = 0.0;
  std::vector<double> phases;              ///< optimal per-chain relative phase
  std::vector<double> single_raw_fidelity; ///< |<Psi_i|U|init_i>|^2, chain 1
};

/// Maps sum c |i_1..i_K> onto sum c |init_{i_1}>..|init_{i_K}>, evolves each
/// chain under the schedule, and compares with sum c |Psi_{i_1}..Psi_{i_K}>.
/// Logical 0 is |down..down>; logical 1 the default single-flip state.
MemoryResult memory_transfer(const std::vector<Complex>& input_coeffs,
                             int k_chains, int n_sites,
                             const MemoryOptions& options = {});

}  // namespace majorana
