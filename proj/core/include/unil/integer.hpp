#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "unil/errors.hpp"

namespace unil {

/// Arbitrary-precision integer. Values that fit in 64 bits are kept inline
/// and operated on directly; overflow falls back to cpp_int. Any value that
/// fits is always stored inline, so representations are canonical.
class Integer {
 public:
  using Big = boost::multiprecision::cpp_int;

  Integer() = default;
  template <std::signed_integral I>
  Integer(I v) : small_(static_cast<std::int64_t>(v)) {}  // NOLINT(google-explicit-constructor)
  template <std::unsigned_integral I>
  Integer(I v) {  // NOLINT(google-explicit-constructor)
    if (v <= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
      small_ = static_cast<std::int64_t>(v);
    else
      big_ = std::make_unique<Big>(v);
  }
  Integer(const Integer& o) : small_(o.small_), big_(o.big_ ? std::make_unique<Big>(*o.big_) : nullptr) {}
  Integer(Integer&&) noexcept = default;
  Integer& operator=(const Integer& o) {
    if (this != &o) {
      small_ = o.small_;
      big_ = o.big_ ? std::make_unique<Big>(*o.big_) : nullptr;
    }
    return *this;
  }
  Integer& operator=(Integer&&) noexcept = default;
  ~Integer() = default;
  explicit Integer(const Big& b) { assign(b); }
  explicit Integer(std::string_view decimal) {
    try {
      assign(Big(std::string(decimal)));
    } catch (const std::exception&) {
      throw ParseError("not an integer: '" + std::string(decimal) + "'");
    }
  }

  bool is_zero() const { return small() && small_ == 0; }
  bool is_odd() const { return small() ? (small_ & 1) != 0 : bit_test(abs(*big_), 0); }
  int sign() const { return small() ? (small_ > 0) - (small_ < 0) : big_->sign(); }
  Big to_big() const { return small() ? Big(small_) : *big_; }
  std::string str() const { return small() ? std::to_string(small_) : big_->str(); }

  friend Integer operator+(const Integer& a, const Integer& b) {
    std::int64_t r;
    if (a.small() && b.small() && !__builtin_add_overflow(a.s(), b.s(), &r)) return Integer(r);
    return Integer(a.to_big() + b.to_big());
  }
  friend Integer operator-(const Integer& a, const Integer& b) {
    std::int64_t r;
    if (a.small() && b.small() && !__builtin_sub_overflow(a.s(), b.s(), &r)) return Integer(r);
    return Integer(a.to_big() - b.to_big());
  }
  friend Integer operator*(const Integer& a, const Integer& b) {
    std::int64_t r;
    if (a.small() && b.small() && !__builtin_mul_overflow(a.s(), b.s(), &r)) return Integer(r);
    return Integer(a.to_big() * b.to_big());
  }
  friend Integer operator-(const Integer& a) { return Integer(0) - a; }
  Integer& operator+=(const Integer& o) { return *this = *this + o; }
  Integer& operator-=(const Integer& o) { return *this = *this - o; }
  Integer& operator*=(const Integer& o) { return *this = *this * o; }

  /// Truncating division: a = q b + r with |r| < |b| and r of the sign of a.
  friend void divide_qr(const Integer& a, const Integer& b, Integer& q, Integer& r) {
    if (b.is_zero()) throw NotDivisible("integer division by zero");
    if (a.small() && b.small() &&
        !(a.s() == std::numeric_limits<std::int64_t>::min() && b.s() == -1)) {
      q = Integer(a.s() / b.s());
      r = Integer(a.s() % b.s());
      return;
    }
    Big bq, br;
    boost::multiprecision::divide_qr(a.to_big(), b.to_big(), bq, br);
    q = Integer(bq);
    r = Integer(br);
  }

  friend Integer operator/(const Integer& a, const Integer& b) {
    Integer q, r;
    divide_qr(a, b, q, r);
    return q;
  }
  friend Integer operator%(const Integer& a, const Integer& b) {
    Integer q, r;
    divide_qr(a, b, q, r);
    return r;
  }

  friend bool operator==(const Integer& a, const Integer& b) {
    if (a.small() != b.small()) return false;
    return a.small() ? a.small_ == b.small_ : *a.big_ == *b.big_;
  }
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
    if (a.small() && b.small()) return a.s() <=> b.s();
    const int c = a.to_big().compare(b.to_big());
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Integer& a) { return os << a.str(); }

 private:
  bool small() const { return !big_; }
  std::int64_t s() const { return small_; }
  void assign(const Big& b) {
    if (b >= std::numeric_limits<std::int64_t>::min() &&
        b <= std::numeric_limits<std::int64_t>::max()) {
      small_ = static_cast<std::int64_t>(b);
      big_.reset();
    } else {
      big_ = std::make_unique<Big>(b);
    }
  }

  std::int64_t small_ = 0;
  std::unique_ptr<Big> big_;  // set only when the value does not fit in 64 bits
};

inline bool is_zero(const Integer& a) { return a.is_zero(); }
inline Integer involute(const Integer& a) { return a; }
inline bool is_odd(const Integer& a) { return a.is_odd(); }

}  // namespace unil
