#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "unil/errors.hpp"
#include "unil/integer.hpp"

namespace unil {

/// Element m + n*T of the group ring Z[C2], T^2 = 1. The involution is the
/// identity (trivial orientation character, T^-1 = T).
struct C2Elt {
  Integer m;
  Integer n;

  C2Elt() = default;
  C2Elt(long value) : m(value) {}  // NOLINT(google-explicit-constructor)
  C2Elt(Integer m_, Integer n_) : m(std::move(m_)), n(std::move(n_)) {}

  static C2Elt t() { return {Integer(0), Integer(1)}; }

  bool is_zero() const { return m.is_zero() && n.is_zero(); }

  C2Elt& operator+=(const C2Elt& o) {
    m += o.m;
    n += o.n;
    return *this;
  }
  C2Elt& operator-=(const C2Elt& o) {
    m -= o.m;
    n -= o.n;
    return *this;
  }
  friend C2Elt operator+(C2Elt a, const C2Elt& b) { return a += b; }
  friend C2Elt operator-(C2Elt a, const C2Elt& b) { return a -= b; }
  friend C2Elt operator-(const C2Elt& a) { return {-a.m, -a.n}; }
  friend C2Elt operator*(const C2Elt& a, const C2Elt& b) {
    return {a.m * b.m + a.n * b.n, a.m * b.n + a.n * b.m};
  }
  friend bool operator==(const C2Elt& a, const C2Elt& b) {
    return a.m == b.m && a.n == b.n;
  }
  friend bool operator<(const C2Elt& a, const C2Elt& b) {
    return a.m != b.m ? a.m < b.m : a.n < b.n;
  }
};

inline bool is_zero(const C2Elt& a) { return a.is_zero(); }
inline C2Elt involute(const C2Elt& a) { return a; }

/// Dense univariate polynomial in x over a coefficient ring C. Trailing zero
/// coefficients are always stripped, so structural equality is ring equality.
template <class C>
class Poly {
 public:
  using coefficient_type = C;
  // Inline room for the short polynomials that dominate the sweeps.
  using Storage = boost::container::small_vector<C, 4>;

  Poly() = default;
  Poly(long constant) {  // NOLINT(google-explicit-constructor)
    if (constant != 0) coeffs_.push_back(C(constant));
  }
  explicit Poly(Storage&& coeffs) : coeffs_(std::move(coeffs)) { normalize(); }
  explicit Poly(const Storage& coeffs) : coeffs_(coeffs) { normalize(); }
  explicit Poly(const std::vector<C>& coeffs) : coeffs_(coeffs.begin(), coeffs.end()) {
    normalize();
  }
  Poly(std::initializer_list<long> coeffs) {
    for (long c : coeffs) coeffs_.push_back(C(c));
    normalize();
  }

  static Poly x() { return monomial(C(1), 1); }
  static Poly monomial(C c, std::size_t k) {
    Storage v(k + 1);
    v[k] = std::move(c);
    return Poly(std::move(v));
  }
  static Poly constant(C c) { Storage v(1);
    v[0] = std::move(c);
    return Poly(std::move(v)); }

  bool is_zero() const { return coeffs_.empty(); }
  /// nullopt stands for degree minus infinity (the zero polynomial).
  std::optional<std::size_t> degree() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.size() - 1;
  }
  std::size_t size() const { return coeffs_.size(); }
  std::span<const C> coeffs() const { return {coeffs_.data(), coeffs_.size()}; }
  C coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : C{}; }

  Poly& operator+=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    normalize();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    normalize();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    Storage out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (unil::is_zero(a.coeffs_[i])) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        if (unil::is_zero(b.coeffs_[j])) continue;
        out[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return Poly(std::move(out));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend Poly operator*(const C& s, Poly a) {
    for (auto& c : a.coeffs_) c = s * c;
    a.normalize();
    return a;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.coeffs_ == b.coeffs_;
  }
  /// Total order (degree, then coefficients from the top); used for map keys.
  friend bool operator<(const Poly& a, const Poly& b) {
    if (a.coeffs_.size() != b.coeffs_.size())
      return a.coeffs_.size() < b.coeffs_.size();
    for (std::size_t i = a.coeffs_.size(); i-- > 0;) {
      if (a.coeffs_[i] == b.coeffs_[i]) continue;
      return a.coeffs_[i] < b.coeffs_[i];
    }
    return false;
  }

  Poly involute() const {
    Poly out = *this;
    for (auto& c : out.coeffs_) c = unil::involute(c);
    return out;
  }

  /// The Verschiebung substitution x -> x^n.
  Poly substitute_power(std::size_t n) const {
    if (n == 0) throw PreconditionError("substitute_power: n must be positive");
    if (is_zero()) return {};
    Storage out((coeffs_.size() - 1) * n + 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i * n] = coeffs_[i];
    return Poly(std::move(out));
  }

  template <class F>
  auto map_coeffs(F&& f) const {
    using D = std::decay_t<decltype(f(std::declval<const C&>()))>;
    typename Poly<D>::Storage out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(f(c));
    return Poly<D>(std::move(out));
  }

 private:
  void normalize() {
    while (!coeffs_.empty() && unil::is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  Storage coeffs_;
};

template <class C>
bool is_zero(const Poly<C>& p) {
  return p.is_zero();
}
template <class C>
Poly<C> involute(const Poly<C>& p) {
  return p.involute();
}

using PolyInt = Poly<Integer>;
using C2PolyElt = Poly<C2Elt>;

/// Exact division in Z[x]; nullopt when b does not divide a.
std::optional<PolyInt> exact_divide(const PolyInt& a, const PolyInt& b);

}  // namespace unil
