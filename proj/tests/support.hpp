#pragma once

// Generators and brute-force oracles shared by the test binaries. Nothing
// here calls into the algorithms it is used to check.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "unil/matrix.hpp"
#include "unil/poly.hpp"
#include "unil/poly_f2.hpp"

namespace unil::testing {

inline PolyInt x_pow(std::size_t k) { return PolyInt::monomial(Integer(1), k); }
inline PolyInt poly(std::initializer_list<long> coeffs) { return PolyInt(coeffs); }

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin() { return range(0, 1) == 1; }
  std::uint64_t bits() { return rng_(); }

  PolyInt poly_int(std::size_t max_deg, long bound) {
    std::vector<Integer> c;
    for (std::size_t k = 0, n = static_cast<std::size_t>(range(0, static_cast<long>(max_deg)));
         k <= n; ++k)
      c.emplace_back(range(-bound, bound));
    return PolyInt(c);
  }
  PolyInt poly_aug(std::size_t max_deg, long bound) {
    PolyInt p = poly_int(max_deg, bound);
    return p - PolyInt::constant(p.coeff(0));
  }
  PolyF2 poly_f2(std::size_t max_deg) {
    PolyF2 out;
    for (std::size_t k = 0; k <= max_deg; ++k)
      if (coin()) out.set(k, true);
    return out;
  }
  C2PolyElt poly_c2(std::size_t max_deg, long bound) {
    std::vector<C2Elt> c;
    for (std::size_t k = 0, n = static_cast<std::size_t>(range(0, static_cast<long>(max_deg)));
         k <= n; ++k)
      c.emplace_back(Integer(range(-bound, bound)), Integer(range(-bound, bound)));
    return C2PolyElt(c);
  }

  template <class R, class F>
  Matrix<R> matrix(std::size_t rows, std::size_t cols, F&& entry) {
    Matrix<R> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = entry();
    return m;
  }

  /// Product of elementary and permutation matrices, so unimodular by construction.
  template <class R, class F>
  Matrix<R> unimodular(std::size_t n, int steps, F&& entry) {
    Matrix<R> u = Matrix<R>::identity(n);
    if (n < 2) return u;
    for (int s = 0; s < steps; ++s) {
      const auto i = static_cast<std::size_t>(range(0, static_cast<long>(n) - 1));
      auto j = static_cast<std::size_t>(range(0, static_cast<long>(n) - 2));
      if (j >= i) ++j;
      Matrix<R> e = Matrix<R>::identity(n);
      e(i, j) = entry();
      u = u * e;
      if (coin()) {
        Matrix<R> p = Matrix<R>::identity(n);
        p(i, i) = p(j, j) = R();
        p(i, j) = p(j, i) = R(1);
        u = u * p;
      }
    }
    return u;
  }

 private:
  std::mt19937_64 rng_;
};

/// Leibniz expansion over all permutations.
template <class R>
R leibniz_det(const Matrix<R>& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  R total;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    R term(1);
    for (std::size_t i = 0; i < n; ++i) term = term * m(i, perm[i]);
    total = inversions % 2 ? total - term : total + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// The subgroup {f^2 + f : deg f <= max_f_deg} of F2[x], as a set.
inline std::set<PolyF2> artin_schreier_image(std::size_t max_f_deg) {
  std::set<PolyF2> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (max_f_deg + 1)); ++bits) {
    PolyF2 f;
    for (std::size_t k = 0; k <= max_f_deg; ++k)
      if (bits >> k & 1) f.set(k, true);
    out.insert(f * f + f);
  }
  return out;
}

/// All polynomials over F2 of degree <= d.
inline std::vector<PolyF2> all_f2(std::size_t d) {
  std::vector<PolyF2> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (d + 1)); ++bits) {
    PolyF2 f;
    for (std::size_t k = 0; k <= d; ++k)
      if (bits >> k & 1) f.set(k, true);
    out.push_back(f);
  }
  return out;
}

/// Support on exponent 0 and odd exponents only.
inline bool is_arf_normal(const PolyF2& r) {
  for (std::size_t k : r.support())
    if (k != 0 && k % 2 == 0) return false;
  return true;
}

/// Every polynomial of degree <= max_deg with coefficients in `coeffs`.
inline std::vector<PolyInt> all_polys(std::size_t max_deg, const std::vector<long>& coeffs) {
  std::vector<PolyInt> out;
  std::vector<std::size_t> digit(max_deg + 1, 0);
  while (true) {
    std::vector<Integer> c;
    for (std::size_t d : digit) c.emplace_back(coeffs[d]);
    out.emplace_back(c);
    std::size_t k = 0;
    while (k < digit.size() && ++digit[k] == coeffs.size()) digit[k++] = 0;
    if (k == digit.size()) break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline PolyF2 mod2(const PolyInt& p) {
  PolyF2 out;
  for (std::size_t k = 0; k < p.size(); ++k)
    if (p.coeff(k).is_odd()) out.set(k, true);
  return out;
}

inline C2PolyElt t_elt() { return C2PolyElt::monomial(C2Elt::t(), 0); }
inline C2PolyElt lift_c2(const PolyInt& p) {
  std::vector<C2Elt> c;
  for (std::size_t k = 0; k < p.size(); ++k) c.emplace_back(p.coeff(k), Integer(0));
  return C2PolyElt(c);
}

}  // namespace unil::testing
