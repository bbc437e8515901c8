#include "unil/complexes.hpp"

#include <optional>

#include "unil/text.hpp"

namespace unil {
namespace {

template <class R>
bool is_two_identity(const Matrix<R>& m) {
  return m.is_square() && m == Matrix<R>::scalar(m.rows(), R(2));
}

// Skew-symmetric with zero diagonal, i.e. (-1)-even over Z[x].
bool is_minus_even(const MatrixZ& m) { return is_even_hermitian(m, -1); }

MatrixF2 zero_f2(std::size_t r, std::size_t c) { return MatrixF2(r, c); }

}  // namespace

bool cycle_condition_holds(const QuadComplex1& c) {
  return c.psi1 + c.psi1.conj_transpose() ==
         -(c.d * c.psi0 + c.psi0t * c.d.conj_transpose());
}

QuadComplex1 formation_to_complex(const FormationC2& f) {
  if (f.epsilon != -1)
    throw PreconditionError("formation_to_complex: expected a (-1)-quadratic formation");
  if (!is_two_identity(f.mu) || f.f_rank() != f.g_rank())
    throw PreconditionError("formation_to_complex: unsupported shape, mu must be 2 Id");
  const std::size_t r = f.f_rank();
  return {f.mu.conj_transpose(), MatrixC2(r, r), f.gamma.conj_transpose(), -f.theta};
}

FormationC2 complex_to_formation(const QuadComplex1& c) {
  return {c.psi0t.conj_transpose() - c.psi0, c.d.conj_transpose(),
          -(c.psi1 + c.d * c.psi0), -1};
}

namespace {

// The complex and the null-cobordism data mapped to Z[x] by i-, once per run.
struct ZInputs {
  MatrixZ pi, chi, d, psi0, psi0t, psi1;
};

ZInputs to_z(const QuadComplex1& c, const NullCobordismData& n) {
  return {apply_i(Sign::Minus, n.pi),   apply_i(Sign::Minus, n.chi),
          apply_i(Sign::Minus, c.d),    apply_i(Sign::Minus, c.psi0),
          apply_i(Sign::Minus, c.psi0t), apply_i(Sign::Minus, c.psi1)};
}

// pi^-1 o d^* over Z[x], the composite C^0 -> P.
MatrixZ pi_inverse_d_star(const ZInputs& z) {
  if (!z.pi.is_square() || z.pi.rows() != z.d.rows())
    throw StageError("desymmetrization", "pi must be square of the complex's rank " +
                                             std::to_string(z.d.rows()),
                     format(z.pi));
  // Sweeps reuse one pi for many parameter values; remember the last solve.
  struct Memo {
    MatrixZ pi, rhs, x;
  };
  thread_local std::optional<Memo> memo;
  MatrixZ rhs = z.d.conj_transpose();
  if (memo && memo->pi == z.pi && memo->rhs == rhs) return memo->x;
  try {
    MatrixZ x = solve_right(z.pi, rhs);
    memo = Memo{z.pi, std::move(rhs), x};
    return x;
  } catch (const Error& e) {
    throw StageError("desymmetrization", std::string("invalid pi: ") + e.what(), format(z.pi));
  }
}

bool desymmetrization_holds(const ZInputs& z, const MatrixZ& x) {
  const MatrixZ lhs = x.conj_transpose() * (z.chi + z.chi.conj_transpose());
  const MatrixZ rhs = (z.psi0t - z.psi0.conj_transpose()) * z.pi;
  return lhs == rhs;
}

PsiHat psi_hat_from(const ZInputs& z, const MatrixZ& x) {
  PsiHat out{z.psi0, z.psi0t, x.conj_transpose() * z.chi * x - z.psi0t * z.d.conj_transpose()};
  const MatrixZ diff = out.psi1 - z.psi1;
  if (!is_minus_even(diff))
    throw StageError("psi_hat", "psi-hat_1 - psi_1 is not (-1)-even", format(diff));
  return out;
}

NullCobordism null_cobordism_from(const ZInputs& z, const MatrixZ& x) {
  const std::size_t r = z.d.rows();
  NullCobordism out;
  out.d_D = x.conj_transpose();
  out.f0 = MatrixZ::identity(r);
  out.f1 = z.pi.conj_transpose();
  out.dpsi0 = -z.chi.conj_transpose();
  out.dpsi1 = -z.chi * x;
  out.dpsi1t = z.psi0t * z.pi;
  out.dpsi2 = MatrixZ(r, r);
  if (!(z.d == out.d_D * out.f1))
    throw StageError("null_cobordism", "f is not a chain map", format(out.d_D * out.f1));
  return out;
}

}  // namespace

bool check_desymmetrization(const QuadComplex1& c, const NullCobordismData& n) {
  const ZInputs z = to_z(c, n);
  return desymmetrization_holds(z, pi_inverse_d_star(z));
}

PsiHat build_psi_hat(const QuadComplex1& c, const NullCobordismData& n) {
  const ZInputs z = to_z(c, n);
  const MatrixZ x = pi_inverse_d_star(z);
  if (!desymmetrization_holds(z, x))
    throw StageError("desymmetrization", "de-symmetrization identity fails", format(n.chi));
  return psi_hat_from(z, x);
}

NullCobordism build_null_cobordism(const QuadComplex1& c, const NullCobordismData& n) {
  const ZInputs z = to_z(c, n);
  return null_cobordism_from(z, pi_inverse_d_star(z));
}

UnionComplex build_union(const QuadComplex1& c, const PsiHat& psi_hat,
                         const NullCobordism& bundle) {
  // Only gamma decides whether i+ of the formation is a graph.
  const MatrixZ plus_gamma = apply_i(Sign::Plus, c.psi0t.conj_transpose() - c.psi0);
  if (!plus_gamma.is_square() || !is_unit(det(plus_gamma)))
    throw StageError("graph", "i+(C, psi) is not a graph formation", format(plus_gamma));

  const std::size_t r = c.rank();
  // k = j- o i- on the C side; the D side is already over Z[x].
  const MatrixF2 d_c = apply_j(apply_i(Sign::Minus, c.d));
  const MatrixF2 psi0 = apply_j(psi_hat.psi0);
  const MatrixF2 psi0t = apply_j(psi_hat.psi0t);
  const MatrixF2 psi1 = apply_j(psi_hat.psi1);
  const MatrixF2 d_d = apply_j(bundle.d_D);
  const MatrixF2 f0 = apply_j(bundle.f0);
  const MatrixF2 f1 = apply_j(bundle.f1);
  const MatrixF2 g1 = MatrixF2::identity(r);  // E_1 = i+(C_1)
  const MatrixF2 dpsi0 = apply_j(bundle.dpsi0);
  const MatrixF2 dpsi1 = apply_j(bundle.dpsi1);
  const MatrixF2 dpsi1t = apply_j(bundle.dpsi1t);

  UnionComplex u;
  u.rank = r;
  u.d2 = MatrixF2(3 * r, r);
  u.d2.set_block(0, 0, -f1);
  u.d2.set_block(r, 0, d_c);
  u.d2.set_block(2 * r, 0, -g1);
  u.d1 = MatrixF2(r, 3 * r);
  u.d1.set_block(0, 0, d_d);
  u.d1.set_block(0, r, f0);

  u.psi0_2 = -(psi0 * f0.conj_transpose());
  u.psi0_1 = MatrixF2(3 * r, 3 * r);
  u.psi0_1.set_block(0, 0, -dpsi0);
  u.psi0_1.set_block(r, 0, psi0t * f1.conj_transpose());
  u.psi0_1.set_block(r, r, psi1.conj_transpose());
  u.psi0_1.set_block(2 * r, r, g1 * psi0);
  u.psi0_0 = zero_f2(r, r);
  u.psi1_1 = MatrixF2(3 * r, r);
  u.psi1_1.set_block(0, 0, -dpsi1);
  u.psi1_1.set_block(r, 0, psi1 * f0.conj_transpose());
  u.psi1_0 = MatrixF2(r, 3 * r);
  u.psi1_0.set_block(0, 0, -dpsi1t);
  u.psi2_0 = zero_f2(r, r);

  if (!(u.d1 * u.d2).is_zero())
    throw StageError("union", "d_F^1 d_F^2 != 0", format(u.d1 * u.d2));
  return u;
}

InstantObstruction instant_obstruction(const UnionComplex& u) {
  const std::size_t r = u.rank;
  const MatrixF2 f0 = u.d1.block(0, r, r, r);
  if (!(f0 == MatrixF2::identity(r)))
    throw StageError("obstruction", "f_0 must be the identity", format(f0));
  const MatrixF2 f1 = -u.d2.block(0, 0, r, r);
  const MatrixF2 dpsi0 = -u.psi0_1.block(0, 0, r, r);

  InstantObstruction out;
  out.big.psi = MatrixF2(3 * r, 3 * r);
  out.big.psi.set_block(0, 0, dpsi0);
  out.big.psi.set_block(0, 2 * r, -f1);
  out.big.psi.set_block(r, 2 * r, -MatrixF2::identity(r));
  out.reduced.psi = dpsi0;
  auto arf_of = [](const FormF2& f, const char* what) {
    try {
      return arf(f);
    } catch (const PreconditionError& e) {
      throw StageError("obstruction", std::string(what) + ": " + e.what(),
                       format(f.symmetrization()));
    }
  };
  const ArfClass reduced_arf = arf_of(out.reduced, "reduced form (D^1, delta psi_0)");
  const ArfClass big_arf = arf_of(out.big, "instant surgery obstruction");
  if (!(big_arf == reduced_arf))
    throw StageError("obstruction", "big and reduced obstruction forms are not Witt equal");
  out.arf = reduced_arf;
  return out;
}

MachineReport run_machine(const FormationC2& formation_sum, const NullCobordismData& n,
                          bool record_matrices) {
  MachineReport report;
  auto stage = [&](const char* name) { report.stages.emplace_back(name, "ok"); };
  auto keep = [&](std::string name, const auto& m) {
    if (record_matrices) report.matrices.emplace_back(std::move(name), format(m));
  };

  if (!hessian_holds(formation_sum))
    throw StageError("formation", "hessian identity fails", format(formation_sum.theta));
  QuadComplex1 c;
  try {
    c = formation_to_complex(formation_sum);
  } catch (const Error& e) {
    throw StageError("complex", e.what(), format(formation_sum.mu));
  }
  if (!cycle_condition_holds(c))
    throw StageError("complex", "cycle condition fails", format(c.psi1));
  if (!verify_poincare(formation_sum))
    throw StageError("complex", "duality map is not a unit mod 2", format(formation_sum.gamma));
  stage("complex");
  keep("C.d", c.d);
  keep("C.psi0", c.psi0);
  keep("C.psi0t", c.psi0t);
  keep("C.psi1", c.psi1);
  keep("pi", n.pi);
  keep("chi", n.chi);

  const ZInputs z = to_z(c, n);
  const MatrixZ x = pi_inverse_d_star(z);
  if (!desymmetrization_holds(z, x))
    throw StageError("desymmetrization", "de-symmetrization identity fails", format(n.chi));
  stage("desymmetrization");
  keep("pi^-1 d^*", x);

  const PsiHat hat = psi_hat_from(z, x);
  stage("psi_hat");
  keep("psihat.psi1", hat.psi1);

  const NullCobordism bundle = null_cobordism_from(z, x);
  stage("null_cobordism");
  keep("D.d", bundle.d_D);
  keep("f1", bundle.f1);
  keep("dpsi0", bundle.dpsi0);
  keep("dpsi1", bundle.dpsi1);
  keep("dpsi1t", bundle.dpsi1t);

  const UnionComplex u = build_union(c, hat, bundle);
  stage("graph");
  stage("union");
  keep("F.d2", u.d2);
  keep("F.d1", u.d1);
  keep("F.psi0_2", u.psi0_2);
  keep("F.psi0_1", u.psi0_1);
  keep("F.psi0_0", u.psi0_0);
  keep("F.psi1_1", u.psi1_1);
  keep("F.psi1_0", u.psi1_0);
  keep("F.psi2_0", u.psi2_0);

  const InstantObstruction omega = instant_obstruction(u);
  const MatrixF2 expected_reduced = apply_k(-n.chi.conj_transpose());
  if (!(omega.reduced.psi == expected_reduced))
    throw StageError("obstruction", "reduced form differs from k(P, -chi^*)",
                     format(omega.reduced.psi));
  stage("obstruction");
  keep("Omega", omega.big.psi);
  keep("Omega.reduced", omega.reduced.psi);

  report.arf = omega.arf;
  stage("arf");
  return report;
}

// --- fixtures ----------------------------------------------------------------

namespace {

PolyInt px() { return PolyInt::x(); }

MatrixC2 c2(const MatrixZ& m) { return to_c2(m); }

bool constant_free(const PolyInt& a) { return a.coeff(0).is_zero(); }

}  // namespace

bool additivity_admissible(const PolyInt& p1, const PolyInt& p2, const PolyInt& g) {
  return constant_free(p1 * g) && constant_free(p2 * g);
}

bool relation_admissible(int relation, const PolyInt& p, const PolyInt& g) {
  switch (relation) {
    case 2:
    case 4:
      return constant_free(p * g);
    case 3:
      return true;
    default:
      throw PreconditionError("relation must be 2, 3 or 4");
  }
}

RelationInstance additivity_instance(const PolyInt& p1, const PolyInt& p2,
                                     const PolyInt& g, const GeneratorSet& gens) {
  RelationInstance out;
  out.relation = 1;
  out.label = "relation 1 (p1=" + format(p1) + ", p2=" + format(p2) + ", g=" + format(g) + ")";
  out.formation = direct_sum(direct_sum(gens.make_M(p1, g), gens.make_M(p2, g)),
                             negate(gens.make_M(p1 + p2, g)));
  const PolyInt one(1);
  const PolyInt two(2);
  const PolyInt z;
  const MatrixZ pi{{z, one, z, two, z, z},   {one, z, one, z, two, z},
                   {z, one, z, z, z, two},   {one, z, z, z, z, z},
                   {z, one, z, z, z, z},     {z, z, one, z, z, z}};
  const MatrixZ chi{{g, one, g, one, two * g, one}, {z, z, z, p1, one, p2},
                    {z, z, z, one, two * g, z},     {z, z, z, p1, two, z},
                    {z, z, z, z, two * g, z},       {z, z, z, z, z, p2}};
  out.data = {c2(pi), c2(chi)};
  out.expected = arf_normalize(apply_j(p1 * p2 * g * g));
  return out;
}

RelationInstance relation_instance(int relation, const PolyInt& p, const PolyInt& g,
                                   const GeneratorSet& gens) {
  const PolyInt one(1);
  const PolyInt two(2);
  const PolyInt z;
  const PolyInt x = px();
  RelationInstance out;
  out.relation = relation;
  out.label = "relation " + std::to_string(relation) + " (p=" + format(p) + ", g=" + format(g) + ")";
  MatrixZ pi;
  MatrixZ chi;
  switch (relation) {
    case 2:
      out.formation = direct_sum(gens.make_M(two * p, g), negate(gens.make_M(two * g, p)));
      pi = {{one, z, two, z}, {z, one, z, two}, {z, one, z, z}, {one, z, z, z}};
      chi = {{z, z, two * p, one}, {z, z, one, two * g}, {z, z, two * p, two}, {z, z, z, two * g}};
      break;
    case 3:
      out.formation = direct_sum(gens.make_M(x * x * p, g), negate(gens.make_M(p, x * x * g)));
      pi = {{one, z, z, z}, {z, x, z, two}, {x, z, two, z}, {z, one, z, z}};
      chi = {{z, z, -(x * p), one}, {z, z, -one, two * x * g}, {z, z, -p, z}, {z, z, z, two * g}};
      break;
    case 4:
      out.formation =
          direct_sum(gens.make_M(two * p * p * g, g), negate(gens.make_M(two * p, g)));
      pi = {{one, one, z, z}, {z, p, two, z}, {z, one, z, z}, {p, z, z, two}};
      chi = {{z, p * p * g, one, -(two * p * g)},
             {z, p * p * g, one + two * p * g, -one},
             {z, z, two * g, z},
             {z, z, z, -(two * g)}};
      break;
    default:
      throw PreconditionError("relation must be 2, 3 or 4");
  }
  out.data = {c2(pi), c2(chi)};
  out.expected = ArfClass{};
  return out;
}

AlphaPullbackFixture alpha_fixture(const PolyF2& p1, const PolyF2& p2, const PolyF2& g) {
  const PolyF2 o(1);
  const PolyF2 z;
  AlphaPullbackFixture fx;
  fx.lambda = {{z, o, g, o, z, o},   {o, z, z, p1, o, p2}, {g, z, z, o, z, z},
               {o, p1, o, z, z, z},  {z, o, z, z, z, z},   {o, p2, z, z, z, z}};
  fx.mu = {g, z, z, p1, z, p2};
  fx.alpha = {{o, z, z, z, o, z},  {z, o, g, o, z, o},  {z, z, o, z, o, z},
              {z, z, z, o, g, z},  {z, z, z, p1, o + p1 * g, p2}, {z, z, z, z, z, o}};
  fx.transported_mu = {g, z, z, p1, p1 * g * g, p2};
  return fx;
}

namespace {

// Quadratic form with pairing lambda and diagonal values mu: psi is the
// strictly upper part of lambda plus diag(mu).
FormF2 form_from_pairing(const MatrixF2& lambda, const std::vector<PolyF2>& mu) {
  FormF2 f;
  f.psi = MatrixF2(lambda.rows(), lambda.cols());
  for (std::size_t i = 0; i < lambda.rows(); ++i)
    for (std::size_t j = i + 1; j < lambda.cols(); ++j) f.psi(i, j) = lambda(i, j);
  for (std::size_t i = 0; i < mu.size(); ++i) f.psi(i, i) = mu[i];
  return f;
}

}  // namespace

bool alpha_pullback_check(const PolyInt& p1, const PolyInt& p2, const PolyInt& g) {
  const AlphaPullbackFixture fx = alpha_fixture(apply_j(p1), apply_j(p2), apply_j(g));
  if (!(det(fx.alpha) == PolyF2(1))) return false;
  if (!(fx.alpha.conj_transpose() * fx.lambda * fx.alpha == standard_symplectic(3))) return false;

  const FormF2 displayed = form_from_pairing(fx.lambda, fx.mu);
  const FormF2 moved = pullback(displayed, fx.alpha);
  for (std::size_t i = 0; i < 6; ++i)
    if (!(moved.psi(i, i) == fx.transported_mu[i])) return false;

  // The displayed (M, lambda, mu) is k(P, -chi^*) of the machine input.
  const RelationInstance inst = additivity_instance(p1, p2, g);
  const FormF2 k_form{apply_k(-inst.data.chi.conj_transpose()), 1};
  if (!(k_form.symmetrization() == fx.lambda)) return false;
  for (std::size_t i = 0; i < 6; ++i)
    if (!(k_form.psi(i, i) == fx.mu[i])) return false;

  const ArfClass before = arf(displayed);
  return before == arf(moved) && before == inst.expected;
}

}  // namespace unil
