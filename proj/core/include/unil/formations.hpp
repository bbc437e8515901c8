#pragma once

#include "unil/forms.hpp"
#include "unil/matrix.hpp"
#include "unil/rings.hpp"

namespace unil {

/// Nonsingular split epsilon-quadratic formation (F, ((gamma, mu), theta) G):
/// the hyperbolic form on F + F^*, the standard lagrangian F, the lagrangian
/// im(gamma; mu) : G -> F + F^*, and hessian theta : G -> G^*.
template <class R>
struct SplitFormation {
  Matrix<R> gamma;
  Matrix<R> mu;
  Matrix<R> theta;
  int epsilon = -1;

  std::size_t f_rank() const { return gamma.rows(); }
  std::size_t g_rank() const { return gamma.cols(); }

  friend bool operator==(const SplitFormation&, const SplitFormation&) = default;
};

using FormationZ = SplitFormation<PolyInt>;
using FormationC2 = SplitFormation<C2PolyElt>;

template <class R>
R epsilon_scalar(int epsilon) {
  return R(static_cast<long>(epsilon));
}

/// D = eta + epsilon * eta^* for some eta. These are the differences allowed
/// between two hessians of the same lagrangian.
template <class R>
bool is_even_hermitian(const Matrix<R>& d, int epsilon);

/// theta - epsilon theta^* == gamma^* mu.
template <class R>
bool hessian_holds(const SplitFormation<R>& f) {
  Matrix<R> lhs = f.theta - (epsilon_scalar<R>(f.epsilon) * f.theta.conj_transpose());
  return lhs == f.gamma.conj_transpose() * f.mu;
}

/// M_{p,g} over Z[C2][x]; requires p g in xZ[x].
FormationC2 make_M(const PolyInt& p, const PolyInt& g);
/// Q_q over Z[C2][x] with qhat = 2(1-T)q; requires q in xZ[x].
FormationC2 make_Q(const PolyInt& q);
/// The chosen resolution of the linking form N_{p,g} over Z[x]; requires
/// p or g to have zero constant coefficient.
FormationZ make_N_resolution(const PolyInt& p, const PolyInt& g);

/// Symbolic parameters of the linking-form generator N_{p,g}.
struct LinkingFormGen {
  PolyInt p;
  PolyInt g;

  LinkingFormGen(PolyInt p_, PolyInt g_);
};

FormationZ apply_i(Sign sign, const FormationC2& f);

/// Duality check for the mu = 2 Id shape: det(gamma) is a unit mod 2.
bool verify_poincare(const FormationC2& f);
bool verify_poincare(const FormationZ& f);

/// gamma invertible over the ring; such formations represent 0.
template <class R>
bool is_graph(const SplitFormation<R>& f) {
  return f.gamma.is_square() && is_unit(det(f.gamma));
}

/// mu invertible: the second lagrangian is complementary to F, so the
/// formation is isomorphic to (H(F); F, F^*) and also represents 0.
template <class R>
bool is_complementary(const SplitFormation<R>& f) {
  return f.mu.is_square() && is_unit(det(f.mu));
}

/// Checks that (alpha, beta, nu) is an isomorphism src -> dst:
///   (i)   gamma' beta = alpha gamma + (nu - eps nu^*) mu
///   (ii)  mu' beta = alpha^{-*} mu
///   (iii) beta^* theta' beta - theta - mu^* nu mu is even hermitian.
template <class R>
bool verify_formation_iso(const SplitFormation<R>& src, const SplitFormation<R>& dst,
                          const Matrix<R>& alpha, const Matrix<R>& beta,
                          const Matrix<R>& nu);

template <class R>
SplitFormation<R> direct_sum(const SplitFormation<R>& a, const SplitFormation<R>& b) {
  if (a.epsilon != b.epsilon)
    throw PreconditionError("direct_sum of formations with different epsilon");
  return {block_diag(a.gamma, b.gamma), block_diag(a.mu, b.mu),
          block_diag(a.theta, b.theta), a.epsilon};
}

/// -(F, G) realized with mu fixed: (gamma, mu, theta) -> (-gamma, mu, -theta).
/// This is the usual (gamma, -mu, -theta) composed with the automorphism -1
/// of G, and keeps the d = 2 Id shape of the associated complex.
template <class R>
SplitFormation<R> negate(const SplitFormation<R>& a) {
  return {-a.gamma, a.mu, -a.theta, a.epsilon};
}

// ---------------------------------------------------------------------------

template <class R>
bool is_even_hermitian(const Matrix<R>& d, int epsilon) {
  if (!d.is_square()) return false;
  const R eps = epsilon_scalar<R>(epsilon);
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (!(d(i, j) == eps * involute(d(j, i)))) return false;
  // Diagonal entries must have the form a + eps * conj(a). The involution is
  // trivial on all three rings, so: zero for eps = -1, even for eps = +1.
  for (std::size_t i = 0; i < d.rows(); ++i) {
    const R& e = d(i, i);
    if (epsilon < 0) {
      if (!is_zero(e)) return false;
    } else {
      if constexpr (std::is_same_v<R, PolyInt>) {
        for (const auto& c : e.coeffs())
          if (is_odd(c)) return false;
      } else if constexpr (std::is_same_v<R, C2PolyElt>) {
        for (const auto& c : e.coeffs())
          if (is_odd(c.m) || is_odd(c.n)) return false;
      } else {
        if (!is_zero(e)) return false;
      }
    }
  }
  return true;
}

template <class R>
bool verify_formation_iso(const SplitFormation<R>& src, const SplitFormation<R>& dst,
                          const Matrix<R>& alpha, const Matrix<R>& beta,
                          const Matrix<R>& nu) {
  if (src.epsilon != dst.epsilon) return false;
  if (src.gamma.rows() != dst.gamma.rows() || src.gamma.cols() != dst.gamma.cols())
    throw DimensionMismatch("verify_formation_iso: formations of different ranks");
  if (!alpha.is_square() || alpha.rows() != src.f_rank() || !beta.is_square() ||
      beta.rows() != src.g_rank() || nu.rows() != src.f_rank() ||
      nu.cols() != src.f_rank())
    throw DimensionMismatch("verify_formation_iso: witness has wrong shape");
  if (!is_unit(det(alpha)) || !is_unit(det(beta)))
    throw PreconditionError("verify_formation_iso: alpha, beta must be unimodular");
  const R eps = epsilon_scalar<R>(src.epsilon);
  Matrix<R> nu_sym = nu - eps * nu.conj_transpose();
  if (!(dst.gamma * beta == alpha * src.gamma + nu_sym * src.mu)) return false;
  Matrix<R> alpha_inv_star = inverse_unimodular(alpha).conj_transpose();
  if (!(dst.mu * beta == alpha_inv_star * src.mu)) return false;
  Matrix<R> diff = beta.conj_transpose() * dst.theta * beta - src.theta -
                   src.mu.conj_transpose() * nu * src.mu;
  return is_even_hermitian(diff, src.epsilon);
}

}  // namespace unil
