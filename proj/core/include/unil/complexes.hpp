#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "unil/formations.hpp"
#include "unil/forms.hpp"

namespace unil {

/// 1-dimensional (-1)-quadratic complex over Z[C2][x] with C1 = C0 free of
/// rank `rank()`. Components: psi0 : C^0 -> C_1, psi0t : C^1 -> C_0,
/// psi1 : C^0 -> C_0.
struct QuadComplex1 {
  MatrixC2 d;
  MatrixC2 psi0;
  MatrixC2 psi0t;
  MatrixC2 psi1;

  std::size_t rank() const { return d.rows(); }
};

/// psi1 + psi1^* = -(d psi0 + psi0t d^*).
bool cycle_condition_holds(const QuadComplex1& c);

/// Dictionary gamma = psi0t^* - psi0, mu = d^*, theta = -(psi1 + d psi0).
/// The forward direction picks psi0 = 0, psi0t = gamma^*, psi1 = -theta.
QuadComplex1 formation_to_complex(const FormationC2& f);
FormationC2 complex_to_formation(const QuadComplex1& c);

/// Lift pi : P -> C^1 of a lagrangian and chi : P -> P^*.
struct NullCobordismData {
  MatrixC2 pi;
  MatrixC2 chi;
};

/// (pi^-1 d^*)^* (chi + chi^*) = (psi0t - psi0^*) pi over Z[x] after i-.
/// Throws StageError("desymmetrization") when pi^-1 d^* is not integral.
bool check_desymmetrization(const QuadComplex1& c, const NullCobordismData& n);

/// The homologous cycle psi-hat, evaluated along i- (where pi^-1 d^* lives).
struct PsiHat {
  MatrixZ psi0;
  MatrixZ psi0t;
  MatrixZ psi1;
};

PsiHat build_psi_hat(const QuadComplex1& c, const NullCobordismData& n);

/// Null-cobordism (f : i-(C) -> D, (delta psi, i-(psi-hat))) over Z[x].
struct NullCobordism {
  MatrixZ d_D;   // D_1 = i-(P^*) -> D_0 = i-(C_0)
  MatrixZ f0;    // Id
  MatrixZ f1;    // i-(pi^*)
  MatrixZ dpsi0;
  MatrixZ dpsi1;
  MatrixZ dpsi1t;
  MatrixZ dpsi2;
};

NullCobordism build_null_cobordism(const QuadComplex1& c, const NullCobordismData& n);

/// 2-dimensional (-1)-quadratic complex over F2[x] obtained by gluing the
/// two null-cobordisms: F_2 = C_1, F_1 = D_1 + C_0 + E_1, F_0 = D_0.
struct UnionComplex {
  std::size_t rank = 0;
  MatrixF2 d2;      // F_2 -> F_1
  MatrixF2 d1;      // F_1 -> F_0
  MatrixF2 psi0_2;  // F^0 -> F_2
  MatrixF2 psi0_1;  // F^1 -> F_1
  MatrixF2 psi0_0;  // F^2 -> F_0
  MatrixF2 psi1_1;  // F^0 -> F_1
  MatrixF2 psi1_0;  // F^1 -> F_0
  MatrixF2 psi2_0;  // F^0 -> F_0
};

UnionComplex build_union(const QuadComplex1& c, const PsiHat& psi_hat,
                         const NullCobordism& bundle);

struct InstantObstruction {
  FormF2 big;      // on D^1 + E^1 + C_1
  FormF2 reduced;  // (D^1, delta psi0)
  ArfClass arf;    // common Arf class of the two
};

/// Both forms must admit a symplectic basis (which also shows they are
/// nonsingular) and have equal Arf classes.

InstantObstruction instant_obstruction(const UnionComplex& u);

/// Verdicts and intermediate matrices of one pass through the machine.
struct MachineReport {
  std::vector<std::pair<std::string, std::string>> stages;  // stage -> verdict
  std::vector<std::pair<std::string, std::string>> matrices;  // name -> text
  ArfClass arf;
};

/// formation_to_complex -> check_desymmetrization -> build_psi_hat ->
/// build_null_cobordism -> build_union -> instant_obstruction -> arf.
/// Errors propagate as StageError tagged with the failing stage. Intermediate
/// matrices are rendered into the report only when requested.
MachineReport run_machine(const FormationC2& formation_sum, const NullCobordismData& n,
                          bool record_matrices = false);

// --- fixtures ----------------------------------------------------------------

/// Constructors used to assemble formation sums. Replaceable so that the
/// verification registry can be run against deliberately broken generators.
struct GeneratorSet {
  std::function<FormationC2(const PolyInt&, const PolyInt&)> make_M = unil::make_M;
  std::function<FormationC2(const PolyInt&)> make_Q = unil::make_Q;
};

struct RelationInstance {
  int relation = 0;
  std::string label;
  FormationC2 formation;
  NullCobordismData data;
  ArfClass expected;
};

/// Relation (1): M_{p1,g} + M_{p2,g} - M_{p1+p2,g}, expected Arf [p1 p2 g^2].
RelationInstance additivity_instance(const PolyInt& p1, const PolyInt& p2,
                                     const PolyInt& g, const GeneratorSet& gens = {});
/// Relations (2)-(4) for parameters (p, g); expected Arf class 0.
///   2: M_{2p,g} - M_{2g,p}
///   3: M_{x^2 p,g} - M_{p,x^2 g}
///   4: M_{2p^2 g,g} - M_{2p,g}
RelationInstance relation_instance(int relation, const PolyInt& p, const PolyInt& g,
                                   const GeneratorSet& gens = {});

/// Whether (p, g) satisfies the generator preconditions of the relation.
bool relation_admissible(int relation, const PolyInt& p, const PolyInt& g);
bool additivity_admissible(const PolyInt& p1, const PolyInt& p2, const PolyInt& g);

/// The 6x6 data of the additivity computation over F2[x].
struct AlphaPullbackFixture {
  MatrixF2 lambda;
  std::vector<PolyF2> mu;
  MatrixF2 alpha;
  std::vector<PolyF2> transported_mu;
};

AlphaPullbackFixture alpha_fixture(const PolyF2& p1, const PolyF2& p2, const PolyF2& g);

/// Checks alpha unimodular, alpha^* lambda alpha standard symplectic, the
/// transported quadratic vector as displayed, the displayed form equal to
/// k(P, -chi^*), and Arf agreement before and after transport.
bool alpha_pullback_check(const PolyInt& p1, const PolyInt& p2, const PolyInt& g);

}  // namespace unil
