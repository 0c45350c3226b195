#include "majorana/spectral.hpp"

#include "majorana/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace majorana {
namespace {

// Eigenvalue of P = -prod Z on a computational basis state.
int basis_parity(std::uint64_t index) {
  return std::popcount(index) % 2 == 0 ? -1 : 1;
}

void check_hermitian(const MatrixOperator& h) {
  const double scale = std::max(1.0, h.matrix().cwiseAbs().maxCoeff());
  if (h.hermiticity_defect() > 1e-12 * scale)
    throw NumericalError("operator is not Hermitian (defect " +
                         std::to_string(h.hermiticity_defect()) + ")");
}

Eigen::VectorXcd fix_phase(Eigen::VectorXcd v) {
  const int n = std::countr_zero(static_cast<std::uint64_t>(v.size()));
  // <left...left|b> = (1/sqrt2)^N (-1)^{#down}
  Complex overlap = 0.0;
  for (Eigen::Index b = 0; b < v.size(); ++b)
    overlap += (std::popcount(static_cast<std::uint64_t>(b)) % 2 ? -1.0 : 1.0) *
               v(b);
  overlap *= std::pow(0.5, 0.5 * n);
  Complex ref = overlap;
  if (std::abs(overlap) < 1e-8) {
    Eigen::Index best = 0;
    v.cwiseAbs().maxCoeff(&best);
    ref = v(best);
  }
  return v * (std::abs(ref) / ref);
}

}  // namespace

EigenPairs eigensystem(const MatrixOperator& h, Eigen::Index count) {
  check_hermitian(h);
  if (count < 0 || count > h.dimension())
    throw UsageError("eigensystem: requested count exceeds dimension");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.matrix());
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigensystem: solver did not converge");
  return {solver.eigenvalues().head(count),
          solver.eigenvectors().leftCols(count)};
}

double spectral_norm(const MatrixOperator& h) {
  check_hermitian(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.matrix(),
                                                         Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double parity_violation(const MatrixOperator& h) {
  double worst = 0.0;
  for (Eigen::Index c = 0; c < h.dimension(); ++c)
    for (Eigen::Index r = 0; r < h.dimension(); ++r)
      if (basis_parity(r) != basis_parity(c))
        worst = std::max(worst, std::abs(h.matrix()(r, c)));
  return worst;
}

GroundSubspace ground_subspace(const MatrixOperator& h) {
  check_hermitian(h);
  const double scale = std::max(1.0, h.matrix().cwiseAbs().maxCoeff());
  if (parity_violation(h) > 1e-12 * scale)
    throw NumericalError(
        "ground_subspace: Hamiltonian does not conserve parity");

  std::vector<Eigen::Index> sector[2];  // [0]: P=+1, [1]: P=-1
  for (Eigen::Index b = 0; b < h.dimension(); ++b)
    sector[basis_parity(b) == 1 ? 0 : 1].push_back(b);

  std::vector<double> all_values;
  Eigen::VectorXcd lowest[2];
  double lowest_e[2];
  for (int s = 0; s < 2; ++s) {
    const auto& idx = sector[s];
    const auto m = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXcd block(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j)
        block(i, j) = h.matrix()(idx[i], idx[j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(block);
    if (solver.info() != Eigen::Success)
      throw NumericalError("ground_subspace: solver did not converge");
    for (Eigen::Index i = 0; i < m; ++i)
      all_values.push_back(solver.eigenvalues()(i));
    Eigen::VectorXcd full = Eigen::VectorXcd::Zero(h.dimension());
    for (Eigen::Index i = 0; i < m; ++i) full(idx[i]) = solver.eigenvectors()(i, 0);
    lowest[s] = fix_phase(full);
    lowest_e[s] = solver.eigenvalues()(0);
  }
  std::sort(all_values.begin(), all_values.end());

  GroundSubspace g{StateVector(lowest[0]), StateVector(lowest[1])};
  g.e0 = lowest_e[0];
  g.e1 = lowest_e[1];
  g.splitting = std::abs(g.e1 - g.e0);
  g.gap = all_values.size() > 2 ? all_values[2] - std::min(g.e0, g.e1) : 0.0;
  g.h_norm = std::max(std::abs(all_values.front()), std::abs(all_values.back()));
  return g;
}

StateVector ghz_x_state(int n_sites, int parity) {
  if (parity != 1 && parity != -1) throw UsageError("parity must be +1 or -1");
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  // |left..left> amplitude on b: (-1)^{#down}/sqrt(2)^N; |right..right>: 1/sqrt(2)^N
  const double amp = std::pow(0.5, 0.5 * n_sites) / std::sqrt(2.0);
  const double right_sign = parity == 1 ? -1.0 : 1.0;
  Eigen::VectorXcd v(dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const double left = std::popcount(static_cast<std::uint64_t>(b)) % 2 ? -1.0 : 1.0;
    v(b) = amp * (left + right_sign);
  }
  return StateVector(std::move(v));
}

std::vector<SplittingRow> splitting_scan(const Imperfections& base,
                                         const std::vector<int>& n_values,
                                         double j, double h_z) {
  std::vector<SplittingRow> rows;
  for (int n : n_values) {
    if (n < 2 || n > kMaxDenseSites)
      throw BudgetError("splitting_scan: N = " + std::to_string(n) +
                        " outside [2, " + std::to_string(kMaxDenseSites) + "]");
    const SpinParams p = base.apply(n, j, h_z);
    const GroundSubspace g = ground_subspace(realize(build_spin(p)));
    SplittingRow row;
    row.n_sites = n;
    row.gamma = g.splitting;
    row.gap = g.gap;
    row.reliable = g.splitting >= kSplittingFloor * g.h_norm;
    row.oracle_gamma = perturbative_splitting(p);
    rows.push_back(row);
  }
  return rows;
}

double perturbative_splitting(const SpinParams& p) {
  p.validate();
  const int n = p.n_sites;
  if (n > 24) throw BudgetError("perturbative_splitting: N too large");

  // Coefficient of Z_i in H: -h_z + delta_i.
  std::vector<double> field(n, -p.h_z);
  for (int i = 0; i < static_cast<int>(p.delta_hz.size()); ++i)
    field[i] += p.delta_hz[i];

  struct Bond { int a, b; double j; };
  std::vector<Bond> bonds;
  for (int i = 0; i + 1 < n; ++i) bonds.push_back({i, i + 1, p.j_bonds[i]});
  for (const auto& c : p.j_nnn) bonds.push_back({c.site_a - 1, c.site_b - 1, c.j});

  // Excitation energy of a configuration where the sites in `flipped` point
  // opposite to the rest: each broken -J X X bond costs 2J.
  auto excitation = [&bonds](std::uint32_t flipped) {
    double e = 0.0;
    for (const auto& bd : bonds)
      if (((flipped >> bd.a) ^ (flipped >> bd.b)) & 1u) e += 2.0 * bd.j;
    return e;
  };

  const std::uint32_t full = (1u << n) - 1u;
  std::vector<double> amp(std::size_t{1} << n, 0.0);
  amp[0] = 1.0;
  for (std::uint32_t s = 1; s < full; ++s) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
      if (s & (1u << i)) acc += field[i] * amp[s ^ (1u << i)];
    amp[s] = acc / (-excitation(s));
  }
  double coupling = 0.0;
  for (int i = 0; i < n; ++i) coupling += field[i] * amp[full ^ (1u << i)];
  return 2.0 * std::abs(coupling);
}

LocalizationResult analytic_localization(double w, double delta_abs,
                                         double mu) {
  if (!(w + delta_abs > 0.0))
    throw DomainError("analytic_localization: w + |Delta| must be positive");
  const Complex disc(mu * mu - 4.0 * w * w + 4.0 * delta_abs * delta_abs, 0.0);
  const Complex root = std::sqrt(disc);  // principal branch
  const double denom = 2.0 * (w + delta_abs);
  LocalizationResult r;
  r.x_plus = (-mu + root) / denom;
  r.x_minus = (-mu - root) / denom;

  auto log_rate = [](Complex x) {
    const double m = std::abs(x);
    return m == 0.0 ? std::numeric_limits<double>::infinity()
                    : std::abs(std::log(m));
  };
  const double inv = std::min(log_rate(r.x_plus), log_rate(r.x_minus));
  if (std::isinf(inv))
    r.n0 = 0.0;
  else if (inv == 0.0)
    r.n0 = std::numeric_limits<double>::infinity();
  else
    r.n0 = 1.0 / inv;
  return r;
}

}  // namespace majorana
