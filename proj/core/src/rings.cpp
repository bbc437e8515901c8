#include "unil/rings.hpp"

#include <string>

#include "unil/text.hpp"

namespace unil {

const char* ring_name(RingTag tag) {
  switch (tag) {
    case RingTag::Zx:
      return ring_traits<PolyInt>::name;
    case RingTag::F2x:
      return ring_traits<PolyF2>::name;
    case RingTag::C2x:
      return ring_traits<C2PolyElt>::name;
  }
  return "?";
}

std::optional<PolyInt> exact_divide(const PolyInt& a, const PolyInt& b) {
  if (b.is_zero()) throw NotDivisible("division by the zero polynomial");
  if (a.is_zero()) return PolyInt{};
  const std::size_t db = *b.degree();
  if (*a.degree() < db) return std::nullopt;
  const Integer& lead = b.coeffs()[db];
  std::vector<Integer> rem(a.coeffs().begin(), a.coeffs().end());
  std::vector<Integer> quot(rem.size() - db);
  for (std::size_t k = rem.size(); k-- > db;) {
    if (rem[k].is_zero()) continue;
    Integer q, r;
    divide_qr(rem[k], lead, q, r);
    if (!r.is_zero()) return std::nullopt;
    quot[k - db] = q;
    for (std::size_t i = 0; i <= db; ++i) rem[k - db + i] -= q * b.coeffs()[i];
  }
  for (std::size_t k = 0; k < db; ++k)
    if (!rem[k].is_zero()) return std::nullopt;
  return PolyInt(std::move(quot));
}

PolyInt apply_i(Sign sign, const C2PolyElt& a) {
  return a.map_coeffs([sign](const C2Elt& c) -> Integer {
    return sign == Sign::Plus ? Integer(c.m + c.n) : Integer(c.m - c.n);
  });
}

PolyF2 apply_j(const PolyInt& a) {
  PolyF2 out;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (is_odd(a.coeffs()[k])) out.set(k, true);
  return out;
}

PolyF2 apply_k(const C2PolyElt& a) { return apply_j(apply_i(Sign::Minus, a)); }

PolyInt default_lift(const PolyF2& a) {
  std::vector<Integer> c;
  for (std::size_t k : a.support()) {
    c.resize(k + 1);
    c[k] = 1;
  }
  return PolyInt(std::move(c));
}

std::pair<PolyInt, PolyInt> pullback_iso(const C2PolyElt& a) {
  return {apply_i(Sign::Minus, a), apply_i(Sign::Plus, a)};
}

C2PolyElt pullback_inverse(const PolyInt& u, const PolyInt& v) {
  const std::size_t n = std::max(u.size(), v.size());
  std::vector<C2Elt> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Integer uk = u.coeff(k);
    Integer vk = v.coeff(k);
    if (is_odd(uk) != is_odd(vk))
      throw NotInImage("pair (" + format(u) + ", " + format(v) +
                       ") is not congruent mod 2 at x^" + std::to_string(k));
    out[k] = C2Elt((uk + vk) / 2, (vk - uk) / 2);
  }
  return C2PolyElt(std::move(out));
}

bool is_unit(const PolyInt& a) {
  return a.size() == 1 && (a.coeffs()[0] == 1 || a.coeffs()[0] == -1);
}

bool is_unit(const PolyF2& a) { return a == PolyF2(1); }

bool is_unit(const C2PolyElt& a) {
  if (a.size() != 1) return false;
  const C2Elt& c = a.coeffs()[0];
  auto pm1 = [](const Integer& z) { return z == 1 || z == -1; };
  return (pm1(c.m) && c.n.is_zero()) || (c.m.is_zero() && pm1(c.n));
}

ModTwoC2 reduce_mod2(const C2PolyElt& a) {
  // m + nT = (m + n) + n s with s = 1 + T
  ModTwoC2 out;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const C2Elt& c = a.coeffs()[k];
    if (is_odd(c.m + c.n)) out.a.set(k, true);
    if (is_odd(c.n)) out.b.set(k, true);
  }
  return out;
}

bool is_unit_mod2(const C2PolyElt& a) { return reduce_mod2(a).a == PolyF2(1); }

bool is_unit_mod2(const PolyInt& a) { return apply_j(a) == PolyF2(1); }

ModTwoC2 inverse_mod2(const C2PolyElt& a) {
  ModTwoC2 r = reduce_mod2(a);
  if (r.a != PolyF2(1)) throw PreconditionError("inverse_mod2: not a unit mod 2");
  // (1 + b s)^-1 = 1 - b s + b^2 s^2 - ... = 1 + b s, since s^2 = 0
  return {PolyF2(1), r.b};
}

MatrixZ apply_i(Sign sign, const MatrixC2& m) {
  return m.map([sign](const C2PolyElt& e) { return apply_i(sign, e); });
}
MatrixF2 apply_j(const MatrixZ& m) {
  return m.map([](const PolyInt& e) { return apply_j(e); });
}
MatrixF2 apply_k(const MatrixC2& m) {
  return m.map([](const C2PolyElt& e) { return apply_k(e); });
}
MatrixZ default_lift(const MatrixF2& m) {
  return m.map([](const PolyF2& e) { return default_lift(e); });
}
C2PolyElt to_c2(const PolyInt& a) {
  return a.map_coeffs([](const Integer& z) { return C2Elt(z, Integer(0)); });
}
MatrixC2 to_c2(const MatrixZ& m) {
  return m.map([](const PolyInt& e) { return to_c2(e); });
}

MatrixZ solve_right(const MatrixZ& a, const MatrixZ& b) {
  if (!a.is_square()) throw DimensionMismatch("solve_right: A must be square");
  if (a.rows() != b.rows())
    throw DimensionMismatch("solve_right: A is " + a.shape() + ", B is " + b.shape());
  PolyInt d = det(a);
  if (d.is_zero()) throw NotDivisible("solve_right: det(A) = 0");
  MatrixZ num = adjugate(a) * b;
  MatrixZ out(num.rows(), num.cols());
  for (std::size_t i = 0; i < num.rows(); ++i)
    for (std::size_t j = 0; j < num.cols(); ++j) {
      auto q = exact_divide(num(i, j), d);
      if (!q)
        throw NotDivisible("composite not defined over the ring: entry (" +
                           std::to_string(i) + "," + std::to_string(j) + ") = " +
                           format(num(i, j)) + " is not divisible by det = " +
                           format(d));
      out(i, j) = std::move(*q);
    }
  return out;
}

}  // namespace unil
