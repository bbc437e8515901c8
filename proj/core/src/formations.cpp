#include "unil/formations.hpp"

#include "unil/text.hpp"

namespace unil {
namespace {

bool in_augmentation_ideal(const PolyInt& a) { return a.coeff(0).is_zero(); }

C2PolyElt one_minus_t() { return C2PolyElt::constant(C2Elt(Integer(1), Integer(-1))); }

template <class R>
bool is_two_identity(const Matrix<R>& m) {
  return m.is_square() && m == Matrix<R>::scalar(m.rows(), R(2));
}

}  // namespace

FormationC2 make_M(const PolyInt& p, const PolyInt& g) {
  if (!in_augmentation_ideal(p * g))
    throw PreconditionError("M_{p,g} requires pg in xZ[x], got p = " + format(p) +
                            ", g = " + format(g));
  const C2PolyElt pc = to_c2(p);
  const C2PolyElt h = one_minus_t() * to_c2(g);
  MatrixC2 gamma{{pc, C2PolyElt(1)}, {C2PolyElt(1), h}};
  return {gamma, MatrixC2::scalar(2, C2PolyElt(2)), gamma, -1};
}

FormationC2 make_Q(const PolyInt& q) {
  if (!in_augmentation_ideal(q))
    throw PreconditionError("Q_q requires q in xZ[x], got q = " + format(q));
  const C2PolyElt qc = to_c2(q);
  const C2PolyElt u = one_minus_t();
  const C2PolyElt qhat = C2PolyElt(2) * u * qc;
  MatrixC2 gamma{{C2PolyElt(), qhat}, {qhat, C2PolyElt()}};
  MatrixC2 mu{{C2PolyElt(1), u * qc}, {u, C2PolyElt(1)}};
  MatrixC2 theta{{qhat, C2PolyElt()}, {qhat, qc * qhat}};
  return {gamma, mu, theta, -1};
}

LinkingFormGen::LinkingFormGen(PolyInt p_, PolyInt g_) : p(std::move(p_)), g(std::move(g_)) {
  if (!in_augmentation_ideal(p) && !in_augmentation_ideal(g))
    throw PreconditionError("N_{p,g} requires p or g to have zero constant coefficient");
}

FormationZ make_N_resolution(const PolyInt& p, const PolyInt& g) {
  LinkingFormGen gen(p, g);
  MatrixZ gamma{{gen.p, PolyInt(1)}, {PolyInt(1), PolyInt(2) * gen.g}};
  return {gamma, MatrixZ::scalar(2, PolyInt(2)), gamma, -1};
}

FormationZ apply_i(Sign sign, const FormationC2& f) {
  return {apply_i(sign, f.gamma), apply_i(sign, f.mu), apply_i(sign, f.theta), f.epsilon};
}

bool verify_poincare(const FormationC2& f) {
  if (!is_two_identity(f.mu))
    throw PreconditionError("verify_poincare: unsupported shape, mu must be 2 Id");
  return is_unit_mod2(det(f.gamma));
}

bool verify_poincare(const FormationZ& f) {
  if (!is_two_identity(f.mu))
    throw PreconditionError("verify_poincare: unsupported shape, mu must be 2 Id");
  return is_unit_mod2(det(f.gamma));
}

}  // namespace unil
