#include "unil/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "unil/rim.hpp"
#include "unil/text.hpp"
#include "unil/witt.hpp"

namespace unil {
namespace {

using Clock = std::chrono::steady_clock;

bool in_aug(const PolyInt& a) { return a.coeff(0).is_zero(); }
PolyInt xp(std::size_t k) { return PolyInt::monomial(Integer(1), k); }

// Accumulates cases of one check and stops at the first failure.
class Cases {
 public:
  // Returns false once a failure has been recorded, so callers can bail out.
  template <class F>
  bool run(const std::string& label, F&& f) {
    if (!out_.pass) return false;
    ++out_.cases;
    try {
      if (!f()) fail(label);
    } catch (const std::exception& e) {
      fail(label + ": " + e.what());
    }
    return out_.pass;
  }
  void fail(const std::string& why) {
    if (!out_.pass) return;
    out_.pass = false;
    out_.detail = why;
  }
  CheckOutcome done() const { return out_; }

 private:
  CheckOutcome out_;
};

std::string args(std::initializer_list<std::pair<const char*, const PolyInt*>> kv) {
  std::string s;
  for (const auto& [k, v] : kv) s += (s.empty() ? "" : " ") + std::string(k) + "=" + format(*v);
  return s;
}

std::vector<std::pair<PolyInt, PolyInt>> admissible_pairs(const CheckContext& ctx) {
  const auto polys = sweep_polys(ctx.sweep);
  std::vector<std::pair<PolyInt, PolyInt>> out;
  for (const auto& p : polys)
    for (const auto& g : polys)
      if (in_aug(p * g)) out.emplace_back(p, g);
  return out;
}

std::vector<PolyInt> augmentation_polys(const CheckContext& ctx) {
  std::vector<PolyInt> out;
  for (auto& q : sweep_polys(ctx.sweep))
    if (in_aug(q)) out.push_back(std::move(q));
  return out;
}

// --- rings --------------------------------------------------------------------

CheckOutcome check_pullback_iso(const CheckContext& ctx) {
  Cases c;
  const auto polys = sweep_polys(ctx.sweep);
  for (const auto& m : polys)
    for (const auto& n : polys) {
      C2PolyElt a = to_c2(m) + C2PolyElt::monomial(C2Elt::t(), 0) * to_c2(n);
      if (!c.run(args({{"m", &m}, {"n", &n}}), [&] {
            auto [u, v] = pullback_iso(a);
            return pullback_inverse(u, v) == a && u == m - n && v == m + n;
          }))
        return c.done();
    }
  return c.done();
}

CheckOutcome check_duality_unit(const CheckContext& ctx) {
  Cases c;
  const C2PolyElt one_minus_t = C2PolyElt(1) - C2PolyElt::monomial(C2Elt::t(), 0);
  for (const auto& [p, g] : admissible_pairs(ctx)) {
    if (!c.run(args({{"p", &p}, {"g", &g}}), [&] {
          const C2PolyElt u = one_minus_t * to_c2(p * g) - C2PolyElt(1);
          return reduce_mod2(u * u) == ModTwoC2{PolyF2(1), PolyF2()};
        }))
      break;
  }
  return c.done();
}

// --- forms --------------------------------------------------------------------

PolyF2 random_f2(std::mt19937_64& rng, std::size_t max_deg) {
  PolyF2 out;
  for (std::size_t k = 0; k <= max_deg; ++k)
    if (rng() & 1) out.set(k, true);
  return out;
}

MatrixF2 random_unimodular(std::mt19937_64& rng, std::size_t n) {
  MatrixF2 u = MatrixF2::identity(n);
  for (int step = 0; step < 6; ++step) {
    const std::size_t i = rng() % n;
    std::size_t j = rng() % n;
    if (i == j) j = (j + 1) % n;
    MatrixF2 e = MatrixF2::identity(n);
    e(i, j) = random_f2(rng, 2);
    u = u * e;
    if (rng() % 3 == 0) {  // swap two columns
      MatrixF2 s = MatrixF2::identity(n);
      s(i, i) = s(j, j) = PolyF2();
      s(i, j) = s(j, i) = PolyF2(1);
      u = u * s;
    }
  }
  return u;
}

CheckOutcome check_arf_p(const CheckContext& ctx) {
  Cases c;
  for (const auto& q : sweep_polys(ctx.sweep)) {
    if (!c.run(args({{"q", &q}}), [&] {
          const PolyF2 qb = apply_j(q);
          return arf(make_P(qb, PolyF2(1))) == arf_normalize(qb);
        }))
      return c.done();
  }
  std::mt19937_64 rng(20061);
  for (int i = 0; i < 50; ++i) {
    const PolyF2 q = random_f2(rng, 10);
    if (!c.run("q=" + format(q), [&] { return arf(make_P(q, PolyF2(1))) == arf_normalize(q); }))
      break;
  }
  return c.done();
}

CheckOutcome check_arf_basis_invariance(const CheckContext&) {
  Cases c;
  std::mt19937_64 rng(77031);
  for (int i = 0; i < 100; ++i) {
    FormF2 f = make_P(random_f2(rng, 4), random_f2(rng, 4));
    for (int extra = static_cast<int>(rng() % 3); extra > 0; --extra)
      f = direct_sum(f, rng() & 1 ? make_P(random_f2(rng, 4), random_f2(rng, 4))
                                  : hyperbolic<PolyF2>(1));
    const MatrixF2 u = random_unimodular(rng, f.rank());
    if (!c.run("case " + std::to_string(i), [&] {
          return is_unit(det(u)) && arf(pullback(f, u)) == arf(f);
        }))
      break;
  }
  return c.done();
}

// --- formations ---------------------------------------------------------------

CheckOutcome check_hessian(const CheckContext& ctx) {
  Cases c;
  for (const auto& [p, g] : admissible_pairs(ctx))
    if (!c.run("M " + args({{"p", &p}, {"g", &g}}),
               [&] { return hessian_holds(ctx.gens.make_M(p, g)); }))
      return c.done();
  for (const auto& q : augmentation_polys(ctx))
    if (!c.run("Q " + args({{"q", &q}}), [&] { return hessian_holds(ctx.gens.make_Q(q)); }))
      break;
  return c.done();
}

CheckOutcome check_poincare_m(const CheckContext& ctx) {
  Cases c;
  for (const auto& [p, g] : admissible_pairs(ctx))
    if (!c.run(args({{"p", &p}, {"g", &g}}),
               [&] { return verify_poincare(ctx.gens.make_M(p, g)); }))
      break;
  return c.done();
}

CheckOutcome check_lift_minus(const CheckContext& ctx) {
  Cases c;
  for (const auto& [p, g] : admissible_pairs(ctx))
    if (!c.run(args({{"p", &p}, {"g", &g}}), [&] {
          return apply_i(Sign::Minus, ctx.gens.make_M(p, g)) == make_N_resolution(p, g);
        }))
      break;
  return c.done();
}

CheckOutcome check_lift_plus(const CheckContext& ctx) {
  Cases c;
  for (const auto& [p, g] : admissible_pairs(ctx))
    if (!c.run(args({{"p", &p}, {"g", &g}}), [&] {
          const FormationZ f = apply_i(Sign::Plus, ctx.gens.make_M(p, g));
          return is_graph(f) && hessian_holds(f);
        }))
      break;
  return c.done();
}

CheckOutcome check_iso_m0(const CheckContext& ctx) {
  Cases c;
  const MatrixC2 id = MatrixC2::identity(2);
  for (const auto& p : sweep_polys(ctx.sweep))
    for (const auto& g : sweep_polys(ctx.sweep)) {
      if (!in_aug(p * g)) continue;
      if (!c.run(args({{"p", &p}, {"g", &g}}), [&] {
            MatrixC2 nu(2, 2);
            nu(0, 0) = to_c2(p);
            const FormationC2 m0 = ctx.gens.make_M(PolyInt(), g);
            return verify_formation_iso(m0, ctx.gens.make_M(PolyInt(4) * p, g), id, id, nu) &&
                   is_graph(m0);
          }))
        return c.done();
    }
  return c.done();
}

// --- boundary -----------------------------------------------------------------

std::vector<PolyInt> boundary_qs(const CheckContext& ctx) {
  std::vector<PolyInt> qs{xp(1), xp(2), xp(1) + xp(3), xp(5)};
  for (auto& q : augmentation_polys(ctx))
    if (std::find(qs.begin(), qs.end(), q) == qs.end()) qs.push_back(std::move(q));
  return qs;
}

CheckOutcome check_boundary_fixture(const CheckContext& ctx) {
  Cases c;
  for (const auto& q : boundary_qs(ctx))
    if (!c.run(args({{"q", &q}}), [&] { return verify_boundary_fixture(q, ctx.gens.make_Q); }))
      break;
  return c.done();
}

// The two intermediate formations as displayed for P_{q,1}.
CheckOutcome check_boundary_steps(const CheckContext& ctx) {
  Cases c;
  for (const auto& q : boundary_qs(ctx)) {
    if (!c.run(args({{"q", &q}}), [&] {
          const BoundarySteps s = boundary_steps(p_q1_input(q));
          const PolyInt four_q = PolyInt(4) * q, two_q = PolyInt(2) * q;
          const PolyInt one(1), zero;
          const MatrixZ id = MatrixZ::identity(2), z(2, 2);
          const FormationZ raw{MatrixZ{{four_q, zero}, {zero, four_q}},
                               MatrixZ{{two_q, one}, {one, PolyInt(2)}},
                               MatrixZ{{four_q * q, four_q}, {zero, four_q}}, -1};
          const FormationZ rebased{MatrixZ{{zero, four_q}, {four_q, zero}},
                                   MatrixZ{{one, two_q}, {PolyInt(2), one}},
                                   MatrixZ{{four_q, zero}, {four_q, four_q * q}}, -1};
          const FormationZ plus{z, id, z, -1};
          return s.raw.minus == raw && s.rebased.minus == rebased && s.raw.plus == plus &&
                 s.rebased.plus == plus;
        }))
      break;
  }
  return c.done();
}

CheckOutcome check_boundary_hyperbolic(const CheckContext&) {
  Cases c;
  for (std::size_t r = 1; r <= 3; ++r)
    if (!c.run("rank " + std::to_string(r), [&] {
          const FormationC2 f = boundary(default_boundary_input(hyperbolic<PolyF2>(r)));
          return is_complementary(f) && hessian_holds(f);
        }))
      break;
  return c.done();
}

// --- machine ------------------------------------------------------------------

CheckOutcome check_relation1(const CheckContext& ctx) {
  Cases c;
  const auto polys = sweep_polys(ctx.sweep);
  for (const auto& g : polys)
    for (const auto& p1 : polys)
      for (const auto& p2 : polys) {
        if (!additivity_admissible(p1, p2, g)) continue;
        if (!c.run(args({{"p1", &p1}, {"p2", &p2}, {"g", &g}}), [&] {
              const RelationInstance inst = additivity_instance(p1, p2, g, ctx.gens);
              const ArfClass got = run_machine(inst.formation, inst.data).arf;
              const GenWord merged =
                  apply_R1(GenWord::m(p1, g) + GenWord::m(p2, g), p1, p2, g);
              return got == inst.expected && got == merged.arf_part();
            }))
          return c.done();
      }
  return c.done();
}

CheckOutcome check_relation(int relation, const CheckContext& ctx) {
  Cases c;
  const auto polys = sweep_polys(ctx.sweep);
  for (const auto& p : polys)
    for (const auto& g : polys) {
      if (!relation_admissible(relation, p, g)) continue;
      if (!c.run(args({{"p", &p}, {"g", &g}}), [&] {
            const RelationInstance inst = relation_instance(relation, p, g, ctx.gens);
            if (!check_desymmetrization(formation_to_complex(inst.formation), inst.data))
              return false;
            return run_machine(inst.formation, inst.data).arf == inst.expected &&
                   inst.expected.is_zero();
          }))
        return c.done();
    }
  return c.done();
}

CheckOutcome check_alpha(const CheckContext& ctx) {
  Cases c;
  const auto polys = sweep_polys(ctx.sweep);
  for (const auto& g : polys)
    for (const auto& p1 : polys)
      for (const auto& p2 : polys) {
        if (!additivity_admissible(p1, p2, g)) continue;
        if (!c.run(args({{"p1", &p1}, {"p2", &p2}, {"g", &g}}),
                   [&] { return alpha_pullback_check(p1, p2, g); }))
          return c.done();
      }
  return c.done();
}

// --- witt ---------------------------------------------------------------------

CheckOutcome replay_outcome(Cases& c, const std::string& label, const Derivation& d,
                            const GeneratorSet& gens) {
  c.run(label, [&] {
    const ReplayResult r = replay(d, gens);
    if (!r.closed) throw RuleError(r.reason);
    return true;
  });
  return c.done();
}

CheckOutcome check_cor1(const CheckContext& ctx) {
  Cases c;
  for (const auto& [p, g] : admissible_pairs(ctx)) {
    replay_outcome(c, args({{"p", &p}, {"g", &g}}), cor1_derivation(p, g), ctx.gens);
    if (!c.done().pass) break;
  }
  return c.done();
}

CheckOutcome check_cor2(const CheckContext& ctx) {
  Cases c;
  std::vector<long> coeffs;
  for (long v : ctx.sweep.coeff_set)
    if (v >= 0) coeffs.push_back(v);
  for (const auto& p : sweep_polys(std::max(ctx.sweep.max_deg, 4u), coeffs)) {
    if (!in_aug(p)) continue;
    replay_outcome(c, args({{"p", &p}}), cor2_derivation(p), ctx.gens);
    if (!c.done().pass) break;
  }
  return c.done();
}

CheckOutcome check_cor3(const CheckContext& ctx) {
  Cases c;
  for (unsigned k = 0; k <= std::max(ctx.sweep.max_deg, 6u); ++k) {
    replay_outcome(c, "k=" + std::to_string(k), cor3_derivation(k), ctx.gens);
    if (!c.done().pass) break;
  }
  return c.done();
}

CheckOutcome check_cor4(const CheckContext& ctx) {
  Cases c;
  for (const auto& g : sweep_polys(ctx.sweep)) {
    replay_outcome(c, args({{"g", &g}}), cor4_derivation(g), ctx.gens);
    if (!c.done().pass) break;
  }
  return c.done();
}

NWord v_n(std::size_t n, const NWord& w) {
  NWord out;
  for (const auto& [idx, c] : w) out[{idx.p.substitute_power(n), idx.g.substitute_power(n)}] += c;
  return out;
}

CheckOutcome check_section(const CheckContext&) {
  Cases c;
  const PolyInt one(1);
  for (std::size_t k = 0; k <= 4; ++k) {
    const NWord diff{{{xp(1), xp(k)}, 1}, {{one, xp(k + 1)}, -1}};
    const NWord gen{{{xp(1), one}, 1}};
    for (std::size_t n = 1; n <= 4; ++n) {
      const std::string label = "n=" + std::to_string(n) + " k=" + std::to_string(k);
      const bool ok = c.run(label, [&] {
        const GenWord s_gen = section_s(v_n(n, gen));
        const GenWord s_diff = section_s(v_n(n, diff));
        const GenWord want_diff =
            GenWord::m(xp(n), xp(n * k)) - GenWord::m(one, xp(n * (k + 1)));
        NWord sum = v_n(n, gen);
        for (const auto& [idx, v] : v_n(n, diff)) sum[idx] += 2 * v;
        return s_gen == GenWord::m(xp(n), one) && s_diff == want_diff &&
               s_gen == verschiebung(static_cast<long>(n), section_s(gen)) &&
               s_diff == verschiebung(static_cast<long>(n), section_s(diff)) &&
               section_s(sum) == s_gen + 2 * s_diff;
      });
      if (!ok) return c.done();
    }
  }
  // Words outside the span are rejected.
  for (const NWord& bad : {NWord{{{xp(2), xp(3)}, 1}}, NWord{{{PolyInt(2) * xp(1), one}, 1}},
                           NWord{{{one, one}, 1}}})
    if (!c.run("reject " + format(bad.begin()->first.p) + "," + format(bad.begin()->first.g),
               [&] {
                 try {
                   section_s(bad);
                 } catch (const Error&) {
                   return true;
                 }
                 return false;
               }))
      break;
  return c.done();
}

CheckOutcome check_verschiebung(const CheckContext& ctx) {
  Cases c;
  for (const auto& [p, g] : admissible_pairs(ctx)) {
    const GenWord w = GenWord::m(p, g, 2) + GenWord::q(xp(1) + xp(2) * p * g);
    const bool ok = c.run(args({{"p", &p}, {"g", &g}}), [&] {
      for (long m = 1; m <= 3; ++m)
        for (long n = 1; n <= 3; ++n) {
          if (verschiebung(m, verschiebung(n, w)) != verschiebung(m * n, w)) return false;
          if (verschiebung(n, w + GenWord::m(g * xp(1), p)) !=
              verschiebung(n, w) + verschiebung(n, GenWord::m(g * xp(1), p)))
            return false;
        }
      for (std::size_t n = 1; n <= 3; ++n) {
        const GenWord pair = GenWord::m(p, g) + GenWord::m(xp(1), g);
        const GenWord lhs = apply_R1(verschiebung(static_cast<long>(n), pair),
                                     p.substitute_power(n), xp(n), g.substitute_power(n));
        if (lhs != verschiebung(static_cast<long>(n), apply_R1(pair, p, xp(1), g))) return false;
      }
      return verschiebung(1, w) == w;
    });
    if (!ok) break;
  }
  return c.done();
}

CheckOutcome check_answer(const CheckContext&) {
  Cases c;
  using S = UNilAnswer::Structure;
  for (long n = -8; n <= 8; ++n) {
    const int r = static_cast<int>(((n % 4) + 4) % 4);
    if (!c.run("n=" + std::to_string(n), [&] {
          const UNilAnswer a = unil_answer(n);
          const S want = r <= 1 ? S::Zero : r == 2 ? S::ArfGroup : S::ThreeSummand;
          if (a.residue != r || a.structure != want) return false;
          if (want == S::ThreeSummand) return a.summands.size() == 3;
          if (want == S::ArfGroup) return a.summands.size() == 1;
          return a.summands.empty();
        }))
      break;
  }
  GroupContext general{GroupContext::Kind::General, true, 2};
  c.run("general n=2", [&] { return unil_answer(2, general).structure == S::ArfGroup; });
  GroupContext bad{GroupContext::Kind::General, false, 2};
  c.run("non-normal Sylow rejected", [&] {
    try {
      unil_answer(2, bad);
    } catch (const Error&) {
      return true;
    }
    return false;
  });
  return c.done();
}

std::vector<CheckSpec> build_registry() {
  auto rel = [](int r) { return [r](const CheckContext& ctx) { return check_relation(r, ctx); }; };
  return {
      {"rings.pullback_iso", "Z[C2][x] is the pullback of Z[x] -> F2[x] <- Z[x]",
       check_pullback_iso},
      {"rings.duality_unit", "((1-T)pg - 1)^2 = 1 mod 2", check_duality_unit},
      {"forms.arf_P", "Arf(P_{q,1}) is the class of q", check_arf_p},
      {"forms.arf_basis_invariance", "Arf is invariant under unimodular basis change",
       check_arf_basis_invariance},
      {"formations.hessian", "M_{p,g} and Q_q are split (-1)-quadratic formations",
       check_hessian},
      {"formations.poincare_M", "M_{p,g} is nonsingular", check_poincare_m},
      {"formations.lift_minus", "i-(M_{p,g}) is the resolution of N_{p,g}", check_lift_minus},
      {"formations.lift_plus_graph", "i+(M_{p,g}) is a graph formation", check_lift_plus},
      {"formations.iso_M0", "(Id, Id, [[p,0],[0,0]]) : M_{0,g} -> M_{4p,g}, M_{0,g} a graph",
       check_iso_m0},
      {"boundary.fixture", "the boundary of P_{q,1} is Q_q", check_boundary_fixture},
      {"boundary.steps", "intermediate formations of the boundary of P_{q,1}",
       check_boundary_steps},
      {"boundary.hyperbolic", "the boundary of a hyperbolic form has a complementary lagrangian",
       check_boundary_hyperbolic},
      {"machine.relation1", "M_{p1,g} + M_{p2,g} - M_{p1+p2,g} has Arf class p1 p2 g^2",
       check_relation1},
      {"machine.relation2", "M_{2p,g} - M_{2g,p} has Arf class 0", rel(2)},
      {"machine.relation3", "M_{x^2 p,g} - M_{p,x^2 g} has Arf class 0", rel(3)},
      {"machine.relation4", "M_{2p^2 g,g} - M_{2p,g} has Arf class 0", rel(4)},
      {"machine.alpha", "the 6x6 change of basis alpha in the additivity computation",
       check_alpha},
      {"witt.cor1", "4 [M_{p,g}] = 0", check_cor1},
      {"witt.cor2", "2 (V_2 - 1) [M_{p,1}] = 0", check_cor2},
      {"witt.cor3", "2 ([M_{x,x^k}] - [M_{1,x^{k+1}}]) = 0", check_cor3},
      {"witt.cor4", "V_2 ([M_{x,g}] - [M_{1,xg}]) = 0", check_cor4},
      {"witt.section", "the section N -> M on the V-span of the basis words", check_section},
      {"witt.verschiebung", "V_m V_n = V_mn, V_n additive and compatible with R1",
       check_verschiebung},
      {"witt.answer", "UNil_n of Z[C2] by n mod 4", check_answer},
  };
}

// Entry (i, j) of one of the three matrices of a formation.
using Slot = std::pair<std::size_t, std::size_t>;
enum class Part { Gamma, Mu, Theta };

MatrixC2& part_of(FormationC2& f, Part part) {
  return part == Part::Gamma ? f.gamma : part == Part::Mu ? f.mu : f.theta;
}
const MatrixC2& part_of(const FormationC2& f, Part part) {
  return part == Part::Gamma ? f.gamma : part == Part::Mu ? f.mu : f.theta;
}

C2PolyElt flip_t(const C2PolyElt& a) {
  return a.map_coeffs([](const C2Elt& e) { return C2Elt(e.m, -e.n); });
}

FormationC2 mutate(FormationC2 f, Part part, Slot slot, bool t_flip) {
  C2PolyElt& e = part_of(f, part)(slot.first, slot.second);
  e = t_flip ? flip_t(e) : -e;
  return f;
}

const char* part_name(Part p) {
  return p == Part::Gamma ? "gamma" : p == Part::Mu ? "mu" : "theta";
}

}  // namespace

std::vector<PolyInt> sweep_polys(unsigned max_deg, const std::vector<long>& coeff_set) {
  std::vector<long> set = coeff_set;
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  if (set.empty()) return {};
  std::vector<PolyInt> out;
  std::vector<std::size_t> digit(max_deg + 1, 0);
  while (true) {
    std::vector<Integer> coeffs;
    for (std::size_t d : digit) coeffs.emplace_back(set[d]);
    out.emplace_back(coeffs);
    std::size_t k = 0;
    while (k < digit.size() && ++digit[k] == set.size()) digit[k++] = 0;
    if (k == digit.size()) break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<PolyInt> sweep_polys(const SweepConfig& cfg) {
  return sweep_polys(cfg.max_deg, cfg.coeff_set);
}

const std::vector<CheckSpec>& check_registry() {
  static const std::vector<CheckSpec> registry = build_registry();
  return registry;
}

bool VerificationReport::all_pass() const {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
}

bool glob_match(std::string_view pattern, std::string_view text) {
  std::size_t p = 0, t = 0, star = std::string_view::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

VerificationReport run_verification(const CheckContext& ctx, const VerifyOptions& opts) {
  std::vector<const CheckSpec*> selected;
  for (const auto& spec : check_registry())
    if (glob_match(opts.filter, spec.id)) selected.push_back(&spec);

  std::vector<std::optional<CheckResult>> slots(selected.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};

  auto worker = [&] {
    for (std::size_t i; !stop && (i = next++) < selected.size();) {
      const CheckSpec& spec = *selected[i];
      const auto t0 = Clock::now();
      CheckOutcome o;
      try {
        o = spec.run(ctx);
      } catch (const std::exception& e) {
        o.pass = false;
        o.detail = e.what();
      }
      CheckResult r{spec.id, spec.anchor, o.pass, o.cases, o.detail,
                    std::chrono::duration<double>(Clock::now() - t0).count()};
      if (!r.pass && opts.fail_fast) stop = true;
      slots[i] = std::move(r);
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(ctx.sweep.threads,
                                                           static_cast<unsigned>(selected.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  VerificationReport report;
  for (auto& s : slots)
    if (s) report.results.push_back(std::move(*s));
  if (opts.fail_fast) {
    // Keep the report a prefix of registry order regardless of scheduling.
    auto first_fail = std::find_if(report.results.begin(), report.results.end(),
                                   [](const CheckResult& r) { return !r.pass; });
    if (first_fail != report.results.end()) report.results.erase(first_fail + 1, report.results.end());
  }
  return report;
}

std::string format_report(const VerificationReport& r, bool with_timing) {
  std::ostringstream out;
  std::size_t passed = 0;
  for (const auto& c : r.results) {
    passed += c.pass;
    out << (c.pass ? "PASS " : "FAIL ") << c.id << "  [" << c.cases << " cases]";
    if (with_timing) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "  %.3fs", c.seconds);
      out << buf;
    }
    out << "\n     " << c.anchor << "\n";
    if (!c.pass) out << "     first failure: " << c.detail << "\n";
  }
  out << (r.all_pass() ? "overall: PASS" : "overall: FAIL") << " (" << passed << "/"
      << r.results.size() << " checks)\n";
  return out.str();
}

std::string format_summary(const VerificationReport& r) {
  std::ostringstream out;
  for (const auto& c : r.results) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", c.seconds);
    out << "check." << c.id << "=" << (c.pass ? "pass" : "fail") << "\n";
    out << "check." << c.id << ".cases=" << c.cases << "\n";
    out << "check." << c.id << ".seconds=" << buf << "\n";
  }
  out << "overall=" << (r.all_pass() ? "pass" : "fail") << "\n";
  return out.str();
}

std::vector<Mutation> fixture_mutations() {
  std::vector<Mutation> out;
  // Sample values at which each entry is nonzero and involves T where relevant.
  const FormationC2 m_probe = make_M(xp(1), PolyInt(1));
  const FormationC2 q_probe = make_Q(xp(1));

  auto add = [&](const char* gen, const FormationC2& probe, Part part, Slot slot) {
    const C2PolyElt& e = part_of(probe, part)(slot.first, slot.second);
    if (e.is_zero()) return;
    const std::string where = std::string(gen) + "." + part_name(part) + "(" +
                              std::to_string(slot.first) + "," + std::to_string(slot.second) +
                              ")";
    std::vector<bool> kinds{false};
    if (!(flip_t(e) == e)) kinds.push_back(true);
    for (bool t_flip : kinds) {
      Mutation m{where + (t_flip ? " T->-T" : " negated"), {}};
      if (gen[0] == 'M')
        m.gens.make_M = [=](const PolyInt& p, const PolyInt& g) {
          return mutate(make_M(p, g), part, slot, t_flip);
        };
      else
        m.gens.make_Q = [=](const PolyInt& q) { return mutate(make_Q(q), part, slot, t_flip); };
      out.push_back(std::move(m));
    }
  };

  for (Part part : {Part::Gamma, Part::Mu, Part::Theta})
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        add("M", m_probe, part, {i, j});
        add("Q", q_probe, part, {i, j});
      }
  return out;
}

}  // namespace unil
