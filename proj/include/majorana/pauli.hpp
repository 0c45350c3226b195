#pragma once

// Symbolic Pauli-string algebra on an N-site spin chain, Jordan-Wigner
// fermion and Majorana operators, and realization as dense matrices.
//
// Basis convention: site 1 is the least-significant bit of a basis index.
// Bit value 0 is |up> (sigma^z = +1), bit value 1 is |down> (sigma^z = -1).

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace majorana {

using Complex = std::complex<double>;

/// Largest chain realized as a dense 2^N x 2^N matrix.
inline constexpr int kMaxDenseSites = 12;
/// Largest chain representable symbolically (site masks are 32-bit).
inline constexpr int kMaxSymbolicSites = 30;
/// Coefficients at or below this magnitude are dropped on canonicalization.
inline constexpr double kCanonicalThreshold = 1e-15;

enum class Pauli : std::uint8_t { I, X, Y, Z };

char to_char(Pauli p);

/// coefficient * (P_1 (x) P_2 (x) ... (x) P_N), stored as x/z bit masks.
/// A site carries X when only its x bit is set, Z when only its z bit is
/// set, and Y when both are set.
class PauliTerm {
 public:
  explicit PauliTerm(int n_sites, Complex coefficient = 1.0);

  static PauliTerm identity(int n_sites) { return PauliTerm(n_sites); }
  static PauliTerm single(int n_sites, int site, Pauli p,
                          Complex coefficient = 1.0);
  /// Letters are read site 1 first, e.g. "XIZ" is X_1 Z_3.
  static PauliTerm from_letters(std::string_view letters,
                                Complex coefficient = 1.0);

  int num_sites() const { return n_sites_; }
  Complex coefficient() const { return coefficient_; }
  std::uint32_t x_mask() const { return x_mask_; }
  std::uint32_t z_mask() const { return z_mask_; }

  Pauli letter(int site) const;
  PauliTerm& set_letter(int site, Pauli p);
  std::string letters() const;

  PauliTerm with_coefficient(Complex c) const;
  PauliTerm adjoint() const;
  bool same_letters(const PauliTerm& other) const {
    return n_sites_ == other.n_sites_ && x_mask_ == other.x_mask_ &&
           z_mask_ == other.z_mask_;
  }

  /// Image of computational basis state |basis_index> under the term:
  /// returns the target index and writes the amplitude factor to `factor`.
  std::uint64_t act_on_basis(std::uint64_t basis_index, Complex& factor) const;

 private:
  int n_sites_;
  std::uint32_t x_mask_ = 0;
  std::uint32_t z_mask_ = 0;
  Complex coefficient_;
};

/// Exact product of two Pauli strings, phase included.
PauliTerm pauli_mul(const PauliTerm& a, const PauliTerm& b);
inline PauliTerm operator*(const PauliTerm& a, const PauliTerm& b) {
  return pauli_mul(a, b);
}

/// Sum of Pauli strings over a common chain, kept in canonical form: one term
/// per letter string, ordered by (x_mask, z_mask), negligible terms removed.
class PauliSum {
 public:
  explicit PauliSum(int n_sites) : n_sites_(n_sites) {}
  PauliSum(const PauliTerm& term);  // NOLINT(google-explicit-constructor)

  int num_sites() const { return n_sites_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Coefficient of the term carrying `letters`, zero if absent.
  Complex coefficient_of(std::string_view letters) const;

  PauliSum adjoint() const;
  bool is_hermitian(double tol = 1e-13) const;
  /// Sum of |coefficient|; an upper bound on the operator norm.
  double coefficient_norm() const;

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(Complex scalar);

  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, Complex s) { return a *= s; }
  friend PauliSum operator*(Complex s, PauliSum a) { return a *= s; }
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);

  std::string to_string() const;

 private:
  void canonicalize();

  int n_sites_;
  std::vector<PauliTerm> terms_;
};

/// Dense linear operator on the 2^N-dimensional chain space.
class MatrixOperator {
 public:
  explicit MatrixOperator(Eigen::MatrixXcd entries);

  int num_sites() const { return n_sites_; }
  Eigen::Index dimension() const { return entries_.rows(); }
  const Eigen::MatrixXcd& matrix() const { return entries_; }

  /// Largest |A_ij - conj(A_ji)|.
  double hermiticity_defect() const;
  bool is_hermitian(double tol = 1e-13) const {
    return hermiticity_defect() <= tol;
  }

 private:
  int n_sites_;
  Eigen::MatrixXcd entries_;
};

/// Complex amplitudes over the 2^N spin basis. Normalization is a property
/// to be checked, not enforced, so that integrator drift stays observable.
class StateVector {
 public:
  explicit StateVector(Eigen::VectorXcd amplitudes);

  static StateVector basis(int n_sites, std::uint64_t index);
  /// |down down ... down>, the optically pumped initial state.
  static StateVector all_down(int n_sites);

  int num_sites() const { return n_sites_; }
  Eigen::Index dimension() const { return amplitudes_.size(); }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }

  double norm() const { return amplitudes_.norm(); }
  StateVector normalized() const;
  /// <this|other>
  Complex overlap(const StateVector& other) const;
  /// |<this|other>|^2
  double fidelity(const StateVector& other) const;

 private:
  int n_sites_;
  Eigen::VectorXcd amplitudes_;
};

MatrixOperator realize(const PauliSum& op);
MatrixOperator realize(const PauliTerm& op);

/// Matrix-free product op * psi; psi must have length 2^N.
Eigen::VectorXcd apply(const PauliSum& op, const Eigen::VectorXcd& psi);
/// out += scale * term * psi
void apply_add(const PauliTerm& term, const Eigen::VectorXcd& psi,
               Complex scale, Eigen::VectorXcd& out);

Complex expectation(const PauliSum& op, const StateVector& psi);

/// Sign choice for the Jordan-Wigner lowering factor; `flipped` exists only
/// for fault-injection in the self-check.
enum class JwConvention { standard, flipped };

/// a_j = e^{-i phi/2} (prod_{m<j} Z_m) (X_j + i Y_j)/2, 1 <= j <= N.
/// The phase makes c_{2j-1} = Z..Z X_j and c_{2j} = Z..Z Y_j for every phi.
PauliSum fermion_annihilation(int site, int n_sites, double phi = 0.0,
                              JwConvention convention = JwConvention::standard);
PauliSum fermion_creation(int site, int n_sites, double phi = 0.0,
                          JwConvention convention = JwConvention::standard);

/// c_{2j-1} = e^{i phi/2} a_j + e^{-i phi/2} a_j^dag,
/// c_{2j}   = -i e^{i phi/2} a_j + i e^{-i phi/2} a_j^dag,   1 <= k <= 2N.
PauliSum majorana_op(int k, int n_sites, double phi = 0.0,
                  JwConvention convention = JwConvention::standard);

/// P = -prod_i Z_i.
PauliTerm parity_operator(int n_sites);

enum class Axis { x, y, z };
char to_char(Axis a);

/// Logical Pauli operators of the Majorana-fermion qubit built from the edge
/// mode a_M^dag = (c_1 + i c_{2N})/2:
///   x = a_M^dag + a_M            =  X_1
///   y = -i (a_M^dag - a_M)       =  Z_1 ... Z_{N-1} Y_N
///   z = a_M^dag a_M - a_M a_M^dag = -Y_1 Z_2 ... Z_{N-1} Y_N
PauliTerm mfq_pauli(Axis axis, int n_sites);

/// Edge-mode annihilator a_M = (c_1 - i c_{2N})/2.
PauliSum edge_mode_annihilation(int n_sites);

}  // namespace majorana
