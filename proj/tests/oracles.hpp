#pragma once

// Reference constructions that share no code with the library: every
// operator is built from 2x2 matrices by Kronecker products, with site 1 as
// the rightmost (least-significant) factor.

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat pauli(char p) {
  Mat m(2, 2);
  const Complex i(0.0, 1.0);
  switch (p) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

/// letters[0] acts on site 1.
inline Mat string_op(const std::string& letters) {
  Mat out = Mat::Identity(1, 1);
  for (char c : letters) out = Eigen::kroneckerProduct(pauli(c), out).eval();
  return out;
}

/// Single-site letter at 1-based `site` on an N-site chain.
inline Mat site_op(char p, int site, int n) {
  std::string s(n, 'I');
  s[site - 1] = p;
  return string_op(s);
}

inline Mat identity(int n) { return Mat::Identity(1 << n, 1 << n); }

/// Jordan-Wigner lowering operator (Z..Z)(X + iY)/2 times e^{-i phi/2}.
inline Mat annihilation(int site, int n, double phi = 0.0) {
  Mat lower(2, 2);
  lower << 0, 1, 0, 0;
  std::string s(n, 'I');
  for (int m = 1; m < site; ++m) s[m - 1] = 'Z';
  Mat out = Mat::Identity(1, 1);
  for (int k = 1; k <= n; ++k) {
    const Mat f = k == site ? lower : pauli(s[k - 1]);
    out = Eigen::kroneckerProduct(f, out).eval();
  }
  return std::exp(Complex(0.0, -phi / 2)) * out;
}

/// Kitaev wire in second-quantized form with Delta = |Delta| e^{i phi}.
inline Mat kitaev(int n, double w, double delta_abs, double phi, double mu) {
  const Complex delta = std::polar(delta_abs, phi);
  Mat h = Mat::Zero(1 << n, 1 << n);
  std::vector<Mat> a;
  for (int j = 1; j <= n; ++j) a.push_back(annihilation(j, n, phi));
  for (int j = 0; j + 1 < n; ++j) {
    const Mat hop = a[j].adjoint() * a[j + 1];
    h += -w * (hop + hop.adjoint());
    h += delta * a[j] * a[j + 1] + std::conj(delta) * a[j + 1].adjoint() * a[j].adjoint();
  }
  for (int j = 0; j < n; ++j)
    h += -mu * (a[j].adjoint() * a[j] - 0.5 * identity(n));
  return h;
}

/// Majoranas from their definition in terms of a_j.
inline Mat majorana(int k, int n, double phi = 0.0) {
  const int j = (k + 1) / 2;
  const Mat a = annihilation(j, n, phi);
  const Complex e = std::exp(Complex(0.0, phi / 2));
  if (k % 2 == 1) return e * a + std::conj(e) * a.adjoint();
  return Complex(0.0, -1.0) * e * a + Complex(0.0, 1.0) * std::conj(e) * a.adjoint();
}

/// -sum J_j X_j X_{j+1} - h sum Z - J13 X_1 X_3 + sum dh_i Z_i.
inline Mat ising(int n, const std::vector<double>& bonds, double h_z,
                 double j13 = 0.0, const std::vector<double>& stray = {}) {
  Mat h = Mat::Zero(1 << n, 1 << n);
  for (int j = 1; j < n; ++j)
    h -= bonds[j - 1] * site_op('X', j, n) * site_op('X', j + 1, n);
  for (int j = 1; j <= n; ++j) h -= h_z * site_op('Z', j, n);
  if (j13 != 0.0) h -= j13 * site_op('X', 1, n) * site_op('X', 3, n);
  for (std::size_t i = 0; i < stray.size(); ++i)
    h += stray[i] * site_op('Z', static_cast<int>(i) + 1, n);
  return h;
}

inline Mat ising_uniform(int n, double j, double h_z) {
  return ising(n, std::vector<double>(n - 1, j), h_z);
}

inline Vec product_state(const Vec& single, int n) {
  Vec out = Vec::Ones(1);
  for (int k = 0; k < n; ++k) out = Eigen::kroneckerProduct(single, out).eval();
  return out;
}

/// (|left..left> + sign |right..right>)/sqrt(2).
inline Vec ghz_x(int n, int sign) {
  Vec left(2), right(2);
  left << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  right << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return (product_state(left, n) + double(sign) * product_state(right, n)) /
         std::sqrt(2.0);
}

inline Mat expm_hermitian(const Mat& h, double t) {
  return (Complex(0.0, -t) * h).exp();
}

/// Product of midpoint exponentials exp(-i H(t_k + dt/2) dt).
template <class H>
Vec piecewise_evolve(H&& h_of_t, const Vec& psi, double total, int steps) {
  Vec out = psi;
  const double dt = total / steps;
  for (int k = 0; k < steps; ++k)
    out = expm_hermitian(h_of_t((k + 0.5) * dt), dt) * out;
  return out;
}

/// Leading-order splitting by brute force over every flip order:
/// amplitude = sum over permutations of prod(f_i) / prod(E_0 - E_k).
inline double permutation_splitting(const std::vector<double>& fields,
                                    const std::vector<double>& bonds) {
  const int n = static_cast<int>(fields.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  double total = 0.0;
  do {
    std::vector<int> flipped(n, 0);
    double term = 1.0;
    for (int k = 0; k < n; ++k) {
      term *= fields[order[k]];
      flipped[order[k]] = 1;
      if (k + 1 == n) break;
      double cost = 0.0;
      for (int b = 0; b + 1 < n; ++b)
        if (flipped[b] != flipped[b + 1]) cost += 2.0 * bonds[b];
      term /= -cost;
    }
    total += term;
  } while (std::next_permutation(order.begin(), order.end()));
  return 2.0 * std::abs(total);
}

}  // namespace oracle
