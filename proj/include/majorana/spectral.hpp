#pragma once

// Exact diagonalization, parity-labelled ground subspace, splitting scans and
// the analytic edge-mode localization length.

#include "majorana/model.hpp"
#include "majorana/pauli.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <vector>

namespace majorana {

struct EigenPairs {
  Eigen::VectorXd values;   ///< ascending
  Eigen::MatrixXcd vectors; ///< column i pairs with values(i)
};

/// Lowest `count` eigenpairs of a Hermitian operator. Rejects operators whose
/// Hermiticity defect exceeds 1e-12 * max(1, max|H_ij|).
EigenPairs eigensystem(const MatrixOperator& h, Eigen::Index count);

/// Spectral norm of a Hermitian operator (largest |eigenvalue|).
double spectral_norm(const MatrixOperator& h);

struct GroundSubspace {
  StateVector psi0;      ///< lowest state with parity P = +1
  StateVector psi1;      ///< lowest state with parity P = -1
  double e0 = 0.0;
  double e1 = 0.0;
  double gap = 0.0;      ///< third-lowest eigenvalue minus min(e0, e1)
  double splitting = 0.0;///< |e1 - e0|
  double h_norm = 0.0;   ///< spectral norm of the Hamiltonian
};

/// Diagonalizes each parity sector of a parity-conserving Hamiltonian. Each
/// basis state is phase-fixed so that <left...left|psi> is real positive
/// (largest amplitude real positive when that overlap vanishes).
/// Throws NumericalError when [P, H] != 0.
GroundSubspace ground_subspace(const MatrixOperator& h);

/// Largest |H_ab| between basis states of opposite parity.
double parity_violation(const MatrixOperator& h);

/// (|left...left> -+ |right...right>)/sqrt(2): the ideal-point ground states,
/// with |left> = (|up> - |down>)/sqrt(2), |right> = (|up> + |down>)/sqrt(2).
StateVector ghz_x_state(int n_sites, int parity);

struct SplittingRow {
  int n_sites = 0;
  double gamma = 0.0;
  double gap = 0.0;
  bool reliable = false;   ///< gamma above 1e-13 * ||H||
  double oracle_gamma = 0.0;
};

inline constexpr double kSplittingFloor = 1e-13;

std::vector<SplittingRow> splitting_scan(const Imperfections& base,
                                         const std::vector<int>& n_values,
                                         double j = 1.0, double h_z = 0.0);

/// Leading-order splitting from degenerate perturbation theory: the two
/// ferromagnetic X configurations are joined only after every site has been
/// flipped once by its Z field, so the effective coupling is the sum over all
/// N! flip orders of prod(field) / prod(E_0 - E_intermediate). Evaluated by
/// dynamic programming over flipped subsets.
double perturbative_splitting(const SpinParams& p);

struct LocalizationResult {
  std::complex<double> x_plus;
  std::complex<double> x_minus;
  double n0 = 0.0;  ///< +inf at a root with |x| = 1
};

/// x_pm = (-mu +- sqrt(mu^2 - 4w^2 + 4|Delta|^2)) / (2(w + |Delta|)),
/// 1/n0 = min(|ln|x_+||, |ln|x_-||) with |ln 0| = +inf.
LocalizationResult analytic_localization(double w, double delta_abs,
                                         double mu);

}  // namespace majorana
