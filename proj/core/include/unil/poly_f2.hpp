#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "unil/errors.hpp"

namespace unil {

/// Polynomial over F2, stored as packed bits (bit k of the sequence is the
/// coefficient of x^k). Addition is XOR; trailing zero words are stripped.
class PolyF2 {
 public:
  PolyF2() = default;
  PolyF2(long constant) {  // NOLINT(google-explicit-constructor)
    if (constant & 1) words_.push_back(1);
  }
  /// Coefficients listed from x^0 upwards; each is reduced mod 2.
  PolyF2(std::initializer_list<int> bits) {
    std::size_t k = 0;
    for (int b : bits) set(k++, (b & 1) != 0);
  }

  static PolyF2 x() { return monomial(1); }
  static PolyF2 monomial(std::size_t k) {
    PolyF2 p;
    p.set(k, true);
    return p;
  }

  bool is_zero() const { return words_.empty(); }
  std::optional<std::size_t> degree() const {
    if (words_.empty()) return std::nullopt;
    return (words_.size() - 1) * 64 + (63 - std::countl_zero(words_.back()));
  }
  bool coeff(std::size_t k) const {
    std::size_t w = k / 64;
    return w < words_.size() && ((words_[w] >> (k % 64)) & 1U);
  }
  void set(std::size_t k, bool bit) {
    std::size_t w = k / 64;
    if (bit) {
      if (w >= words_.size()) words_.resize(w + 1, 0);
      words_[w] |= (std::uint64_t{1} << (k % 64));
    } else if (w < words_.size()) {
      words_[w] &= ~(std::uint64_t{1} << (k % 64));
      normalize();
    }
  }
  /// Exponents with nonzero coefficient, ascending.
  std::vector<std::size_t> support() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        int b = std::countr_zero(bits);
        out.push_back(w * 64 + static_cast<std::size_t>(b));
        bits &= bits - 1;
      }
    }
    return out;
  }

  PolyF2& operator+=(const PolyF2& o) {
    if (o.words_.size() > words_.size()) words_.resize(o.words_.size(), 0);
    for (std::size_t i = 0; i < o.words_.size(); ++i) words_[i] ^= o.words_[i];
    normalize();
    return *this;
  }
  PolyF2& operator-=(const PolyF2& o) { return *this += o; }
  friend PolyF2 operator+(PolyF2 a, const PolyF2& b) { return a += b; }
  friend PolyF2 operator-(PolyF2 a, const PolyF2& b) { return a += b; }
  friend PolyF2 operator-(PolyF2 a) { return a; }
  friend PolyF2 operator*(const PolyF2& a, const PolyF2& b) {
    if (a.is_zero() || b.is_zero()) return {};
    PolyF2 out;
    out.words_.assign(a.words_.size() + b.words_.size(), 0);
    for (std::size_t w = 0; w < a.words_.size(); ++w)
      for (std::uint64_t bits = a.words_[w]; bits; bits &= bits - 1)
        out.xor_shifted(b, w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
    out.normalize();
    return out;
  }
  PolyF2& operator*=(const PolyF2& o) { return *this = *this * o; }

  friend bool operator==(const PolyF2& a, const PolyF2& b) {
    return a.words_ == b.words_;
  }
  friend bool operator<(const PolyF2& a, const PolyF2& b) {
    if (a.words_.size() != b.words_.size())
      return a.words_.size() < b.words_.size();
    for (std::size_t i = a.words_.size(); i-- > 0;)
      if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i];
    return false;
  }

  PolyF2 involute() const { return *this; }

  PolyF2 substitute_power(std::size_t n) const {
    if (n == 0) throw PreconditionError("substitute_power: n must be positive");
    PolyF2 out;
    for (std::size_t k : support()) out.set(k * n, true);
    return out;
  }

  /// Euclidean division: returns (quotient, remainder).
  friend std::pair<PolyF2, PolyF2> divmod(const PolyF2& a, const PolyF2& b) {
    if (b.is_zero()) throw NotDivisible("PolyF2 division by zero");
    PolyF2 q;
    PolyF2 r = a;
    const std::size_t db = *b.degree();
    while (!r.is_zero() && *r.degree() >= db) {
      std::size_t shift = *r.degree() - db;
      q.set(shift, true);
      r.xor_shifted(b, shift);
      r.normalize();
    }
    return {std::move(q), std::move(r)};
  }

 private:
  void xor_shifted(const PolyF2& b, std::size_t shift) {
    const std::size_t ws = shift / 64;
    const unsigned bs = shift % 64;
    std::size_t need = b.words_.size() + ws + 1;
    if (words_.size() < need) words_.resize(need, 0);
    for (std::size_t i = 0; i < b.words_.size(); ++i) {
      words_[i + ws] ^= b.words_[i] << bs;
      if (bs != 0) words_[i + ws + 1] ^= b.words_[i] >> (64 - bs);
    }
  }
  void normalize() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
  }

  // Two inline words cover degree < 128 without touching the heap.
  boost::container::small_vector<std::uint64_t, 2> words_;
};

inline bool is_zero(const PolyF2& p) { return p.is_zero(); }
inline PolyF2 involute(const PolyF2& p) { return p; }

/// Exact division in F2[x]; nullopt when b does not divide a.
inline std::optional<PolyF2> exact_divide(const PolyF2& a, const PolyF2& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

}  // namespace unil
