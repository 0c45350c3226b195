#include "majorana/model.hpp"

#include "majorana/error.hpp"

#include <cmath>
#include <random>

namespace majorana {
namespace {

constexpr Complex kI{0.0, 1.0};

PauliTerm xx(int n, int a, int b, double c) {
  PauliTerm t(n, c);
  t.set_letter(a, Pauli::X);
  t.set_letter(b, Pauli::X);
  return t;
}

}  // namespace

void FermionParams::validate() const {
  if (n_sites < 2 || n_sites > kMaxSymbolicSites)
    throw UsageError("FermionParams: N must be >= 2");
  if (!(w >= 0.0) || !(delta_abs >= 0.0))
    throw UsageError("FermionParams: w and |Delta| must be non-negative");
  if (!std::isfinite(phi) || !std::isfinite(mu) || !std::isfinite(w) ||
      !std::isfinite(delta_abs))
    throw UsageError("FermionParams: non-finite parameter");
}

void SpinParams::validate() const {
  if (n_sites < 2 || n_sites > kMaxSymbolicSites)
    throw UsageError("SpinParams: N must be >= 2");
  if (static_cast<int>(j_bonds.size()) != n_sites - 1)
    throw UsageError("SpinParams: expected " + std::to_string(n_sites - 1) +
                     " bond couplings, got " + std::to_string(j_bonds.size()));
  for (double j : j_bonds)
    if (!std::isfinite(j)) throw UsageError("SpinParams: non-finite coupling");
  if (!std::isfinite(h_z)) throw UsageError("SpinParams: non-finite h_z");
  if (!delta_hz.empty() && static_cast<int>(delta_hz.size()) != n_sites)
    throw UsageError("SpinParams: delta_hz must be empty or length N");
  for (double d : delta_hz)
    if (!std::isfinite(d)) throw UsageError("SpinParams: non-finite delta_hz");
  for (const auto& c : j_nnn) {
    if (c.site_a < 1 || c.site_b > n_sites || c.site_a >= c.site_b)
      throw UsageError("SpinParams: bad long-range coupling sites");
    if (!std::isfinite(c.j)) throw UsageError("SpinParams: non-finite J_nnn");
  }
}

bool SpinParams::is_ideal() const {
  for (double j : j_bonds)
    if (j != j_bonds.front()) return false;
  for (double d : delta_hz)
    if (d != 0.0) return false;
  for (const auto& c : j_nnn)
    if (c.j != 0.0) return false;
  return h_z == 0.0;
}

SpinParams SpinParams::ideal(int n_sites, double j) {
  SpinParams p;
  p.n_sites = n_sites;
  p.j_bonds.assign(n_sites > 1 ? n_sites - 1 : 0, j);
  p.validate();
  return p;
}

SpinParams SpinParams::from_fermion(const FermionParams& f) {
  f.validate();
  if (f.w != f.delta_abs || f.phi != 0.0)
    throw UsageError("spin mapping requires w = |Delta| and phi = 0");
  SpinParams p = ideal(f.n_sites, f.w);
  p.h_z = -f.mu / 2.0;
  return p;
}

Imperfections Imperfections::trapped_ion(bool include_nnn) {
  Imperfections imp;
  imp.delta_hz = 1e-3;
  imp.j12_ratio = 1.01;
  imp.j13_over_j12 = include_nnn ? 1.0 / 8.0 : 0.0;
  return imp;
}

SpinParams Imperfections::apply(int n_sites, double j, double h_z) const {
  SpinParams p = SpinParams::ideal(n_sites, j);
  p.h_z = h_z;
  p.j_bonds.front() = j * j12_ratio;
  if (j13_over_j12 != 0.0 && n_sites >= 3)
    p.j_nnn.push_back({1, 3, j13_over_j12 * p.j_bonds.front()});
  if (delta_hz != 0.0) {
    p.delta_hz.assign(n_sites, delta_hz);
    if (random_signs) {
      std::mt19937_64 rng(seed);
      for (auto& d : p.delta_hz)
        if (rng() >> 63) d = -d;
    }
  }
  p.validate();
  return p;
}

PauliSum build_fermionic(const FermionParams& p, JwConvention convention) {
  p.validate();
  const int n = p.n_sites;
  const Complex delta = std::polar(p.delta_abs, p.phi);
  std::vector<PauliSum> a, a_dag;
  for (int j = 1; j <= n; ++j) {
    a.push_back(fermion_annihilation(j, n, p.phi, convention));
    a_dag.push_back(a.back().adjoint());
  }
  PauliSum h(n);
  for (int j = 0; j + 1 < n; ++j) {
    h += Complex(-p.w) * (a_dag[j] * a[j + 1] + a_dag[j + 1] * a[j]);
    h += delta * (a[j] * a[j + 1]);
    h += std::conj(delta) * (a_dag[j + 1] * a_dag[j]);
  }
  const PauliSum half_identity(PauliTerm::identity(n).with_coefficient(0.5));
  for (int j = 0; j < n; ++j)
    h += Complex(-p.mu) * (a_dag[j] * a[j] - half_identity);
  return h;
}

PauliSum build_majorana(const FermionParams& p) {
  p.validate();
  const int n = p.n_sites;
  std::vector<PauliSum> c;
  c.reserve(2 * n);
  for (int k = 1; k <= 2 * n; ++k) c.push_back(majorana_op(k, n, p.phi));
  auto C = [&c](int k) -> const PauliSum& { return c[k - 1]; };

  PauliSum inner(n);
  for (int j = 1; j <= n; ++j) inner += Complex(-p.mu) * (C(2 * j - 1) * C(2 * j));
  for (int j = 1; j < n; ++j) {
    inner += Complex(p.w + p.delta_abs) * (C(2 * j) * C(2 * j + 1));
    inner += Complex(-p.w + p.delta_abs) * (C(2 * j - 1) * C(2 * j + 2));
  }
  return (0.5 * kI) * inner;
}

SpinParts split_spin(const SpinParams& p) {
  p.validate();
  const int n = p.n_sites;
  SpinParts parts{PauliSum(n), PauliSum(n), PauliSum(n)};
  for (int j = 1; j < n; ++j)
    parts.couplings += PauliSum(xx(n, j, j + 1, -p.j_bonds[j - 1]));
  for (const auto& c : p.j_nnn)
    parts.couplings += PauliSum(xx(n, c.site_a, c.site_b, -c.j));
  for (int j = 1; j <= n; ++j)
    parts.field += PauliSum(PauliTerm::single(n, j, Pauli::Z, -1.0));
  for (int j = 1; j <= static_cast<int>(p.delta_hz.size()); ++j)
    parts.stray +=
        PauliSum(PauliTerm::single(n, j, Pauli::Z, p.delta_hz[j - 1]));
  return parts;
}

PauliSum build_spin(const SpinParams& p) {
  SpinParts parts = split_spin(p);
  return parts.couplings + Complex(p.h_z) * parts.field + parts.stray;
}

}  // namespace majorana
