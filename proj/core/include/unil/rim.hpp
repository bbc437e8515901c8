#pragma once

#include <functional>

#include "unil/formations.hpp"
#include "unil/forms.hpp"

namespace unil {

/// A nonsingular (+1)-quadratic form over F2[x] together with lifts of psi'
/// and of chi' = phi'^-1 psi' phi'^-1 to Z[x].
struct BoundaryInput {
  FormF2 form;
  MatrixZ lift_psi;
  MatrixZ lift_chi;
};

MatrixF2 compute_chi_prime(const FormF2& form);

/// Lifts psi' and chi' coefficient-wise.
BoundaryInput default_boundary_input(const FormF2& form);

/// P_{q,1} with the lifts psi = [[q,1],[0,1]], chi = [[-1,0],[1,-q]].
BoundaryInput p_q1_input(const PolyInt& q);

/// The two Z[x]-formations over B (i- side) and B' (i+ side) before assembly.
struct BoundaryPair {
  FormationZ minus;
  FormationZ plus;
};

struct BoundarySteps {
  BoundaryPair raw;        // the general formula
  BoundaryPair rebased;    // after right multiplication by a lift of phi'^-1
  FormationC2 assembled;   // pulled back to Z[C2][x]
};

BoundarySteps boundary_steps(const BoundaryInput& input);
FormationC2 boundary(const BoundaryInput& input);

/// boundary(P_{q,1}) == make_Q(q) exactly.
bool verify_boundary_fixture(const PolyInt& q,
                             const std::function<FormationC2(const PolyInt&)>& make_q = make_Q);

}  // namespace unil
