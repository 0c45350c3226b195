#include "majorana/pauli.hpp"

#include "majorana/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <sstream>
#include <utility>

namespace majorana {
namespace {

constexpr Complex kI{0.0, 1.0};

void check_site_count(int n_sites) {
  if (n_sites < 1 || n_sites > kMaxSymbolicSites)
    throw UsageError("chain size must be in [1, " +
                     std::to_string(kMaxSymbolicSites) + "], got " +
                     std::to_string(n_sites));
}

void check_site(int site, int n_sites) {
  if (site < 1 || site > n_sites)
    throw UsageError("site index " + std::to_string(site) +
                     " outside [1, " + std::to_string(n_sites) + "]");
}

// i^k for k mod 4.
Complex i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

PauliTerm z_string_then(int site, int n_sites, Pauli last, Complex c) {
  PauliTerm t(n_sites, c);
  for (int m = 1; m < site; ++m) t.set_letter(m, Pauli::Z);
  t.set_letter(site, last);
  return t;
}

}  // namespace

char to_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

char to_char(Axis a) {
  switch (a) {
    case Axis::x: return 'x';
    case Axis::y: return 'y';
    case Axis::z: return 'z';
  }
  return '?';
}

// --- PauliTerm -------------------------------------------------------------

PauliTerm::PauliTerm(int n_sites, Complex coefficient)
    : n_sites_(n_sites), coefficient_(coefficient) {
  check_site_count(n_sites);
}

PauliTerm PauliTerm::single(int n_sites, int site, Pauli p,
                            Complex coefficient) {
  PauliTerm t(n_sites, coefficient);
  t.set_letter(site, p);
  return t;
}

PauliTerm PauliTerm::from_letters(std::string_view letters,
                                  Complex coefficient) {
  PauliTerm t(static_cast<int>(letters.size()), coefficient);
  for (std::size_t i = 0; i < letters.size(); ++i) {
    Pauli p;
    switch (letters[i]) {
      case 'I': p = Pauli::I; break;
      case 'X': p = Pauli::X; break;
      case 'Y': p = Pauli::Y; break;
      case 'Z': p = Pauli::Z; break;
      default:
        throw UsageError(std::string("invalid Pauli letter '") + letters[i] +
                         "'");
    }
    t.set_letter(static_cast<int>(i) + 1, p);
  }
  return t;
}

Pauli PauliTerm::letter(int site) const {
  check_site(site, n_sites_);
  const std::uint32_t bit = 1u << (site - 1);
  const bool x = x_mask_ & bit;
  const bool z = z_mask_ & bit;
  if (x && z) return Pauli::Y;
  if (x) return Pauli::X;
  if (z) return Pauli::Z;
  return Pauli::I;
}

PauliTerm& PauliTerm::set_letter(int site, Pauli p) {
  check_site(site, n_sites_);
  const std::uint32_t bit = 1u << (site - 1);
  x_mask_ &= ~bit;
  z_mask_ &= ~bit;
  if (p == Pauli::X || p == Pauli::Y) x_mask_ |= bit;
  if (p == Pauli::Z || p == Pauli::Y) z_mask_ |= bit;
  return *this;
}

std::string PauliTerm::letters() const {
  std::string s;
  s.reserve(n_sites_);
  for (int site = 1; site <= n_sites_; ++site) s += to_char(letter(site));
  return s;
}

PauliTerm PauliTerm::with_coefficient(Complex c) const {
  PauliTerm t = *this;
  t.coefficient_ = c;
  return t;
}

PauliTerm PauliTerm::adjoint() const {
  return with_coefficient(std::conj(coefficient_));
}

std::uint64_t PauliTerm::act_on_basis(std::uint64_t basis_index,
                                      Complex& factor) const {
  // Y = i X Z per site: Z contributes (-1)^bit, each Y an extra i.
  const int n_y = std::popcount(x_mask_ & z_mask_);
  const int n_minus = std::popcount(static_cast<std::uint64_t>(z_mask_) &
                                    basis_index);
  factor = coefficient_ * i_power(n_y + 2 * n_minus);
  return basis_index ^ x_mask_;
}

PauliTerm pauli_mul(const PauliTerm& a, const PauliTerm& b) {
  if (a.num_sites() != b.num_sites())
    throw UsageError("pauli_mul: terms built for " +
                     std::to_string(a.num_sites()) + " and " +
                     std::to_string(b.num_sites()) + " sites");
  // Site-wise products of single-qubit Paulis: XY = iZ, YZ = iX, ZX = iY and
  // the reversed orders pick up -i.
  int phase = 0;
  PauliTerm out(a.num_sites(), a.coefficient() * b.coefficient());
  for (int site = 1; site <= a.num_sites(); ++site) {
    const Pauli p = a.letter(site);
    const Pauli q = b.letter(site);
    Pauli r = Pauli::I;
    if (p == Pauli::I) {
      r = q;
    } else if (q == Pauli::I) {
      r = p;
    } else if (p == q) {
      r = Pauli::I;
    } else {
      const int ip = static_cast<int>(p);  // X=1, Y=2, Z=3
      const int iq = static_cast<int>(q);
      r = static_cast<Pauli>(6 - ip - iq);
      phase += ((iq - ip + 3) % 3 == 1) ? 1 : 3;
    }
    out.set_letter(site, r);
  }
  return out.with_coefficient(out.coefficient() * i_power(phase));
}

// --- PauliSum ---------------------------------------------------------------

PauliSum::PauliSum(const PauliTerm& term) : n_sites_(term.num_sites()) {
  terms_.push_back(term);
  canonicalize();
}

void PauliSum::canonicalize() {
  std::map<std::pair<std::uint32_t, std::uint32_t>, PauliTerm> merged;
  for (const auto& t : terms_) {
    auto key = std::make_pair(t.x_mask(), t.z_mask());
    auto it = merged.find(key);
    if (it == merged.end())
      merged.emplace(key, t);
    else
      it->second = t.with_coefficient(it->second.coefficient() +
                                      t.coefficient());
  }
  terms_.clear();
  for (auto& [key, t] : merged)
    if (std::abs(t.coefficient()) > kCanonicalThreshold) terms_.push_back(t);
}

Complex PauliSum::coefficient_of(std::string_view letters) const {
  const PauliTerm probe = PauliTerm::from_letters(letters);
  for (const auto& t : terms_)
    if (t.same_letters(probe)) return t.coefficient();
  return 0.0;
}

PauliSum PauliSum::adjoint() const {
  PauliSum out(n_sites_);
  for (const auto& t : terms_) out.terms_.push_back(t.adjoint());
  return out;
}

bool PauliSum::is_hermitian(double tol) const {
  // Every Pauli string is self-adjoint, so the sum is Hermitian exactly when
  // every coefficient is real.
  return std::all_of(terms_.begin(), terms_.end(), [tol](const PauliTerm& t) {
    return std::abs(t.coefficient().imag()) <= tol;
  });
}

double PauliSum::coefficient_norm() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coefficient());
  return s;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (other.n_sites_ != n_sites_)
    throw UsageError("PauliSum addition across different chain sizes");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  canonicalize();
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  return *this += other * Complex(-1.0);
}

PauliSum& PauliSum::operator*=(Complex scalar) {
  for (auto& t : terms_) t = t.with_coefficient(t.coefficient() * scalar);
  canonicalize();
  return *this;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  if (a.n_sites_ != b.n_sites_)
    throw UsageError("PauliSum product across different chain sizes");
  PauliSum out(a.n_sites_);
  out.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) out.terms_.push_back(pauli_mul(s, t));
  out.canonicalize();
  return out;
}

std::string PauliSum::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(6);
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << t.coefficient().real();
    if (t.coefficient().imag() != 0.0)
      os << (t.coefficient().imag() < 0 ? "-" : "+")
         << std::abs(t.coefficient().imag()) << "i";
    os << ")*" << t.letters();
  }
  return os.str();
}

// --- Matrices and states ----------------------------------------------------

namespace {

int sites_for_dimension(Eigen::Index dim) {
  if (dim < 2 || (dim & (dim - 1)) != 0)
    throw UsageError("dimension " + std::to_string(dim) +
                     " is not a power of two >= 2");
  return std::countr_zero(static_cast<std::uint64_t>(dim));
}

void check_dense_budget(int n_sites) {
  if (n_sites > kMaxDenseSites)
    throw BudgetError("dense realization limited to " +
                      std::to_string(kMaxDenseSites) + " sites, requested " +
                      std::to_string(n_sites));
}

}  // namespace

MatrixOperator::MatrixOperator(Eigen::MatrixXcd entries)
    : n_sites_(0), entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols())
    throw UsageError("MatrixOperator must be square");
  n_sites_ = sites_for_dimension(entries_.rows());
}

double MatrixOperator::hermiticity_defect() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

StateVector::StateVector(Eigen::VectorXcd amplitudes)
    : n_sites_(sites_for_dimension(amplitudes.size())),
      amplitudes_(std::move(amplitudes)) {}

StateVector StateVector::basis(int n_sites, std::uint64_t index) {
  check_site_count(n_sites);
  const std::uint64_t dim = std::uint64_t{1} << n_sites;
  if (index >= dim) throw UsageError("basis index out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(v));
}

StateVector StateVector::all_down(int n_sites) {
  return basis(n_sites, (std::uint64_t{1} << n_sites) - 1);
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw UsageError("cannot normalize the zero vector");
  return StateVector(amplitudes_ / n);
}

Complex StateVector::overlap(const StateVector& other) const {
  if (other.dimension() != dimension())
    throw UsageError("overlap between states of different dimension");
  return amplitudes_.dot(other.amplitudes_);  // conjugates *this
}

double StateVector::fidelity(const StateVector& other) const {
  return std::norm(overlap(other));
}

MatrixOperator realize(const PauliSum& op) {
  check_dense_budget(op.num_sites());
  const Eigen::Index dim = Eigen::Index{1} << op.num_sites();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : op.terms()) {
    for (Eigen::Index col = 0; col < dim; ++col) {
      Complex f;
      const auto row = t.act_on_basis(static_cast<std::uint64_t>(col), f);
      m(static_cast<Eigen::Index>(row), col) += f;
    }
  }
  return MatrixOperator(std::move(m));
}

MatrixOperator realize(const PauliTerm& op) { return realize(PauliSum(op)); }

void apply_add(const PauliTerm& term, const Eigen::VectorXcd& psi,
               Complex scale, Eigen::VectorXcd& out) {
  const Eigen::Index dim = Eigen::Index{1} << term.num_sites();
  if (psi.size() != dim || out.size() != dim)
    throw UsageError("apply: state length does not match operator");
  for (Eigen::Index b = 0; b < dim; ++b) {
    Complex f;
    const auto target = term.act_on_basis(static_cast<std::uint64_t>(b), f);
    out(static_cast<Eigen::Index>(target)) += scale * f * psi(b);
  }
}

Eigen::VectorXcd apply(const PauliSum& op, const Eigen::VectorXcd& psi) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(psi.size());
  for (const auto& t : op.terms()) apply_add(t, psi, 1.0, out);
  return out;
}

Complex expectation(const PauliSum& op, const StateVector& psi) {
  return psi.amplitudes().dot(apply(op, psi.amplitudes()));
}

// --- Fermions and Majoranas -------------------------------------------------

PauliSum fermion_annihilation(int site, int n_sites, double phi,
                              JwConvention convention) {
  check_site_count(n_sites);
  check_site(site, n_sites);
  const Complex gauge = std::exp(Complex(0.0, -phi / 2.0));
  const double y_sign = convention == JwConvention::standard ? 1.0 : -1.0;
  PauliSum a(z_string_then(site, n_sites, Pauli::X, 0.5 * gauge));
  a += PauliSum(z_string_then(site, n_sites, Pauli::Y,
                              0.5 * y_sign * kI * gauge));
  return a;
}

PauliSum fermion_creation(int site, int n_sites, double phi,
                          JwConvention convention) {
  return fermion_annihilation(site, n_sites, phi, convention).adjoint();
}

PauliSum majorana_op(int k, int n_sites, double phi, JwConvention convention) {
  check_site_count(n_sites);
  if (k < 1 || k > 2 * n_sites)
    throw UsageError("Majorana index " + std::to_string(k) + " outside [1, " +
                     std::to_string(2 * n_sites) + "]");
  const int site = (k + 1) / 2;
  const PauliSum a = fermion_annihilation(site, n_sites, phi, convention);
  const PauliSum a_dag = a.adjoint();
  const Complex e = std::exp(Complex(0.0, phi / 2.0));
  if (k % 2 == 1) return e * a + std::conj(e) * a_dag;
  return (-kI * e) * a + (kI * std::conj(e)) * a_dag;
}

PauliTerm parity_operator(int n_sites) {
  PauliTerm p(n_sites, -1.0);
  for (int site = 1; site <= n_sites; ++site) p.set_letter(site, Pauli::Z);
  return p;
}

PauliTerm mfq_pauli(Axis axis, int n_sites) {
  if (n_sites < 2) throw UsageError("mfq_pauli needs at least two sites");
  check_site_count(n_sites);
  PauliTerm t(n_sites);
  switch (axis) {
    case Axis::x:
      t.set_letter(1, Pauli::X);
      break;
    case Axis::y:
      for (int m = 1; m < n_sites; ++m) t.set_letter(m, Pauli::Z);
      t.set_letter(n_sites, Pauli::Y);
      break;
    case Axis::z:
      t = t.with_coefficient(-1.0);
      t.set_letter(1, Pauli::Y);
      for (int m = 2; m < n_sites; ++m) t.set_letter(m, Pauli::Z);
      t.set_letter(n_sites, Pauli::Y);
      break;
  }
  return t;
}

PauliSum edge_mode_annihilation(int n_sites) {
  return 0.5 * (majorana_op(1, n_sites) +
                (-kI) * majorana_op(2 * n_sites, n_sites));
}

}  // namespace majorana
