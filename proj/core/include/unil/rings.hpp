#pragma once

// Ring homomorphisms of Rim's square
//
//        Z[C2] --i-->  Z
//          |           |
//         i+           j-
//          v           v
//          Z  --j+-->  F2
//
// extended coefficient-wise to the polynomial rings, together with unit
// detection and matrix solves.

#include <utility>

#include "unil/matrix.hpp"
#include "unil/poly.hpp"
#include "unil/poly_f2.hpp"

namespace unil {

enum class Sign { Minus, Plus };

/// i±: T -> ±1.
PolyInt apply_i(Sign sign, const C2PolyElt& a);
/// j±: reduction mod 2 (both maps agree on Z).
PolyF2 apply_j(const PolyInt& a);
/// k = j- o i- = j+ o i+.
PolyF2 apply_k(const C2PolyElt& a);
/// Coefficient-wise lift 1 -> 1, 0 -> 0.
PolyInt default_lift(const PolyF2& a);

/// m + nT -> (m - n, m + n) = (i-(a), i+(a)).
std::pair<PolyInt, PolyInt> pullback_iso(const C2PolyElt& a);
/// Inverse on pairs with u = v mod 2; throws NotInImage otherwise.
C2PolyElt pullback_inverse(const PolyInt& u, const PolyInt& v);

/// Units: {±1} in Z[x], {1} in F2[x], {±1, ±T} in Z[C2][x].
bool is_unit(const PolyInt& a);
bool is_unit(const PolyF2& a);
bool is_unit(const C2PolyElt& a);

/// Every unit of the three rings is its own inverse.
template <class R>
R unit_inverse(const R& u) {
  if (!is_unit(u)) throw PreconditionError("unit_inverse: not a unit");
  return u;
}

/// Element a + b*s of F2[C2][x], s = 1 + T, s^2 = 0.
struct ModTwoC2 {
  PolyF2 a;
  PolyF2 b;

  friend ModTwoC2 operator*(const ModTwoC2& l, const ModTwoC2& r) {
    return {l.a * r.a, l.a * r.b + l.b * r.a};
  }
  friend bool operator==(const ModTwoC2&, const ModTwoC2&) = default;
};

ModTwoC2 reduce_mod2(const C2PolyElt& a);
/// Unit mod 2 iff the image a + b*s in F2[C2][x] has a = 1.
bool is_unit_mod2(const C2PolyElt& a);
bool is_unit_mod2(const PolyInt& a);
/// Inverse in F2[C2][x] by the (terminating) Neumann series in s.
ModTwoC2 inverse_mod2(const C2PolyElt& a);

MatrixZ apply_i(Sign sign, const MatrixC2& m);
MatrixF2 apply_j(const MatrixZ& m);
MatrixF2 apply_k(const MatrixC2& m);
MatrixZ default_lift(const MatrixF2& m);
MatrixC2 to_c2(const MatrixZ& m);
C2PolyElt to_c2(const PolyInt& a);

/// X with A X = B, computed as adj(A) B / det(A) over Z[x] with every entry
/// checked for exact divisibility.
MatrixZ solve_right(const MatrixZ& a, const MatrixZ& b);

/// Inverse of a matrix whose determinant is a unit.
template <class R>
Matrix<R> inverse_unimodular(const Matrix<R>& m) {
  R d = det(m);
  if (!is_unit(d)) throw PreconditionError("matrix is not invertible over the ring");
  return unit_inverse(d) * adjugate(m);
}

}  // namespace unil
