#pragma once

// Kitaev-wire Hamiltonians in fermionic, Majorana and spin (transverse-field
// Ising) form. Energies are in units of the exchange coupling J.

#include "majorana/pauli.hpp"

#include <vector>

namespace majorana {

struct FermionParams {
  int n_sites = 2;
  double w = 1.0;          ///< hopping
  double delta_abs = 1.0;  ///< |Delta|, pairing amplitude
  double phi = 0.0;        ///< arg(Delta), radians
  double mu = 0.0;         ///< chemical potential

  void validate() const;
};

/// Longer-range X-X coupling between two sites, e.g. J_13.
struct NnnCoupling {
  int site_a = 1;
  int site_b = 3;
  double j = 0.0;
};

struct SpinParams {
  int n_sites = 2;
  std::vector<double> j_bonds;       ///< J_{j,j+1}, length N-1
  double h_z = 0.0;                  ///< uniform transverse field
  std::vector<NnnCoupling> j_nnn;    ///< spurious longer-range couplings
  std::vector<double> delta_hz;      ///< stray per-site Z field, empty or length N

  void validate() const;
  bool is_ideal() const;

  /// Uniform J, no field, no imperfections.
  static SpinParams ideal(int n_sites, double j = 1.0);
  /// Spin image of a fermionic point with w = |Delta|, phi = 0:
  /// J = w, h_z = -mu/2.
  static SpinParams from_fermion(const FermionParams& p);
};

/// Recipe for the trapped-ion imperfections, reusable at any chain length.
struct Imperfections {
  double delta_hz = 0.0;          ///< homogeneous stray Z field amplitude
  double j12_ratio = 1.0;         ///< J_12 = ratio * J, other bonds J
  double j13_over_j12 = 0.0;      ///< J_13 = j13_over_j12 * J_12 (0 disables)
  bool random_signs = false;      ///< per-site sign of delta_hz drawn from seed
  unsigned long long seed = 0;

  /// 1% coupling error, delta_hz = 1e-3 J, optional J_13 = J_12/8.
  static Imperfections trapped_ion(bool include_nnn);

  SpinParams apply(int n_sites, double j = 1.0, double h_z = 0.0) const;
};

/// Fermionic form: sum_j [-w(a_j^dag a_{j+1} + h.c.) + Delta a_j a_{j+1}
/// + Delta^* a_{j+1}^dag a_j^dag] - mu sum_j (a_j^dag a_j - 1/2).
PauliSum build_fermionic(const FermionParams& p,
                         JwConvention convention = JwConvention::standard);

/// Majorana form: (i/2){ -mu sum c_{2j-1}c_{2j}
///   + sum [(w+|Delta|) c_{2j}c_{2j+1} + (-w+|Delta|) c_{2j-1}c_{2j+2}] }.
PauliSum build_majorana(const FermionParams& p);

/// -sum J_{j,j+1} X_j X_{j+1} - h_z sum Z_j - sum J_nnn X_a X_b
/// + sum delta_hz_i Z_i.
PauliSum build_spin(const SpinParams& p);

/// The three parts of build_spin kept apart for time-dependent schedules:
/// X-X couplings, the uniform field operator -sum Z, and the stray fields.
struct SpinParts {
  PauliSum couplings;
  PauliSum field;
  PauliSum stray;
};
SpinParts split_spin(const SpinParams& p);

}  // namespace majorana
