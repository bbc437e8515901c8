#pragma once

#include <string>

#include "unil/matrix.hpp"
#include "unil/rings.hpp"

namespace unil {

/// An epsilon-quadratic form (free module of rank `rank()`, matrix psi).
/// The underlying epsilon-symmetric pairing is psi + epsilon * psi^*.
template <class R>
struct QuadraticForm {
  Matrix<R> psi;
  int epsilon = 1;

  std::size_t rank() const { return psi.rows(); }
  Matrix<R> symmetrization() const {
    Matrix<R> sym = psi.conj_transpose();
    if (epsilon < 0) sym = -sym;
    return psi + sym;
  }
  bool is_nonsingular() const { return is_unit(det(symmetrization())); }

  friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;
};

using FormF2 = QuadraticForm<PolyF2>;

template <class R>
QuadraticForm<R> direct_sum(const QuadraticForm<R>& a, const QuadraticForm<R>& b) {
  if (a.epsilon != b.epsilon)
    throw PreconditionError("direct_sum of forms with different epsilon");
  return {block_diag(a.psi, b.psi), a.epsilon};
}

template <class R>
QuadraticForm<R> negate(const QuadraticForm<R>& a) {
  return {-a.psi, a.epsilon};
}

/// Hyperbolic form on F + F^*, F of rank r: psi = [[0, Id], [0, 0]].
template <class R = PolyF2>
QuadraticForm<R> hyperbolic(std::size_t r, int epsilon = 1) {
  Matrix<R> psi(2 * r, 2 * r);
  for (std::size_t i = 0; i < r; ++i) psi(i, r + i) = R(1);
  return {psi, epsilon};
}

/// P_{p,g}: rank 2 over F2[x] with pairing [[0,1],[1,0]] and quadratic
/// vector (p, g), i.e. psi = [[p, 1], [0, g]].
FormF2 make_P(const PolyF2& p, const PolyF2& g);

/// Element of F2[x]/{f^2 - f}, kept in the unique normal form whose support
/// lies on exponent 0 and odd exponents. The NL-reduced subgroup
/// xF2[x]/(f^2 - f) is the set of classes with zero constant term.
class ArfClass {
 public:
  ArfClass() = default;

  /// Normal-form representative.
  const PolyF2& representative() const { return rep_; }
  bool constant() const { return rep_.coeff(0); }
  PolyF2 odd_part() const {
    PolyF2 out = rep_;
    out.set(0, false);
    return out;
  }
  bool is_zero() const { return rep_.is_zero(); }
  bool reduced() const { return !constant(); }

  friend ArfClass operator+(const ArfClass& a, const ArfClass& b);
  ArfClass& operator+=(const ArfClass& o) { return *this = *this + o; }
  friend bool operator==(const ArfClass&, const ArfClass&) = default;

  friend ArfClass arf_normalize(const PolyF2& q);

 private:
  PolyF2 rep_;
};

/// Exhaustive rewriting x^{2k} -> x^k (k >= 1), XOR on collision.
ArfClass arf_normalize(const PolyF2& q);

std::string format(const ArfClass& a);

/// mu(v) = v^* psi v.
PolyF2 quadratic_value(const MatrixF2& psi, const MatrixF2& column);

bool is_even(const FormF2& form);

/// Block diagonal of r copies of [[0,1],[1,0]].
MatrixF2 standard_symplectic(std::size_t r);

/// Unimodular change of basis whose columns are hyperbolic pairs
/// (e1, f1, e2, f2, ...) for the pairing of the form.
struct SymplecticBasis {
  MatrixF2 change;
};

/// Symplectic Gram-Schmidt over the PID F2[x]. Pivot is the lowest remaining
/// index; the gcd of its row is reduced into a single entry by Euclidean
/// column operations with lowest-index preference.
SymplecticBasis symplectic_reduce(const FormF2& form);

/// Sum of mu(e_i) mu(f_i) over a symplectic basis, normalized.
ArfClass arf(const FormF2& form);

/// Witt equality of even nonsingular forms over F2[x].
bool witt_equal(const FormF2& a, const FormF2& b);

/// Pullback of a form along a change of basis: psi -> A^* psi A.
template <class R>
QuadraticForm<R> pullback(const QuadraticForm<R>& f, const Matrix<R>& basis) {
  return {basis.conj_transpose() * f.psi * basis, f.epsilon};
}

}  // namespace unil
