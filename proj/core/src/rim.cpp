#include "unil/rim.hpp"

#include "unil/text.hpp"

namespace unil {
namespace {

MatrixF2 phi_prime_inverse(const FormF2& form) {
  const MatrixF2 phi = form.symmetrization();
  if (!phi.is_square() || !is_unit(det(phi)))
    throw PreconditionError("boundary: symmetrization is not invertible over F2[x]");
  return inverse_unimodular(phi);
}

FormationC2 assemble(const BoundaryPair& pair) {
  auto glue = [](const MatrixZ& minus, const MatrixZ& plus) {
    MatrixC2 out(minus.rows(), minus.cols());
    for (std::size_t i = 0; i < minus.rows(); ++i)
      for (std::size_t j = 0; j < minus.cols(); ++j)
        out(i, j) = pullback_inverse(minus(i, j), plus(i, j));
    return out;
  };
  return {glue(pair.minus.gamma, pair.plus.gamma), glue(pair.minus.mu, pair.plus.mu),
          glue(pair.minus.theta, pair.plus.theta), -1};
}

}  // namespace

MatrixF2 compute_chi_prime(const FormF2& form) {
  const MatrixF2 inv = phi_prime_inverse(form);
  return inv * form.psi * inv;
}

BoundaryInput default_boundary_input(const FormF2& form) {
  return {form, default_lift(form.psi), default_lift(compute_chi_prime(form))};
}

BoundaryInput p_q1_input(const PolyInt& q) {
  const PolyInt one(1);
  return {make_P(apply_j(q), PolyF2(1)), MatrixZ{{q, one}, {PolyInt(), one}},
          MatrixZ{{PolyInt(-1), PolyInt()}, {one, -q}}};
}

BoundarySteps boundary_steps(const BoundaryInput& input) {
  const std::size_t r = input.form.rank();
  if (input.form.epsilon != 1) throw PreconditionError("boundary: input must be (+1)-quadratic");
  if (input.lift_psi.shape() != input.form.psi.shape() ||
      input.lift_chi.shape() != input.form.psi.shape())
    throw DimensionMismatch("boundary: lifts have the wrong shape");
  if (!(apply_j(input.lift_psi) == input.form.psi))
    throw PreconditionError("boundary: lift of psi does not reduce to psi'");
  const MatrixF2 inv = phi_prime_inverse(input.form);
  if (!(apply_j(input.lift_chi) == inv * input.form.psi * inv))
    throw PreconditionError("boundary: lift of chi does not reduce to chi'");

  const MatrixZ& psi = input.lift_psi;
  const MatrixZ& chi = input.lift_chi;
  const MatrixZ phi = psi + psi.conj_transpose();
  const MatrixZ id = MatrixZ::identity(r);

  BoundarySteps s;
  s.raw.minus = {id - (chi + chi.conj_transpose()) * phi, phi, psi - phi * chi * phi, -1};
  s.raw.plus = {MatrixZ(r, r), id, MatrixZ(r, r), -1};

  const MatrixZ a = default_lift(inv);
  s.rebased.minus = {s.raw.minus.gamma * a, s.raw.minus.mu * a,
                     a.conj_transpose() * s.raw.minus.theta * a, -1};
  s.rebased.plus = s.raw.plus;
  s.assembled = assemble(s.rebased);
  return s;
}

FormationC2 boundary(const BoundaryInput& input) { return boundary_steps(input).assembled; }

bool verify_boundary_fixture(const PolyInt& q,
                             const std::function<FormationC2(const PolyInt&)>& make_q) {
  try {
    return boundary(p_q1_input(q)) == make_q(q);
  } catch (const Error&) {
    return false;
  }
}

}  // namespace unil
