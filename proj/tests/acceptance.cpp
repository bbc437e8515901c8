// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Usage: unil_acceptance [path-to-unil-cli]

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "support.hpp"
#include "unil/complexes.hpp"
#include "unil/rim.hpp"
#include "unil/text.hpp"
#include "unil/verify.hpp"
#include "unil/witt.hpp"

namespace {

using namespace unil;
using testing::x_pow;

struct Verdict {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

std::string cli_path;

std::string run_cli(const std::string& args, int& status) {
  std::string out;
  const std::string cmd = cli_path + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  const int raw = pclose(pipe);
  status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return out;
}

// The default sweep: degree <= 3, coefficients {0, 1, 2}.
const std::vector<PolyInt>& sweep() {
  static const auto polys = testing::all_polys(3, {0, 1, 2});
  return polys;
}

bool aug(const PolyInt& p) { return p.coeff(0).is_zero(); }

// Q_q written out entry by entry, with u = 1 - T and qhat = 2uq.
FormationC2 displayed_Q(const PolyInt& q) {
  const C2PolyElt u = C2PolyElt(1) - testing::t_elt();
  const C2PolyElt qc = testing::lift_c2(q), qhat = C2PolyElt(2) * u * qc, z;
  return {MatrixC2{{z, qhat}, {qhat, z}}, MatrixC2{{C2PolyElt(1), u * qc}, {u, C2PolyElt(1)}},
          MatrixC2{{qhat, z}, {qhat, qc * qhat}}, -1};
}

std::string formation_text(const FormationC2& f) {
  return "gamma=" + format(f.gamma) + "\nmu=" + format(f.mu) + "\ntheta=" + format(f.theta);
}

Verdict criterion1() {
  Verdict v;
  for (const char* qs : {"x", "x^2", "x + x^3", "x^5"}) {
    const PolyInt q = parse_poly<PolyInt>(qs);
    const BoundarySteps s = boundary_steps(p_q1_input(q));
    const PolyInt four_q = PolyInt(4) * q, two_q = PolyInt(2) * q, one(1), z;
    // First display: the lifted boundary formation.
    v.require(s.raw.minus.gamma == MatrixZ({{four_q, z}, {z, four_q}}) &&
                  s.raw.minus.mu == MatrixZ({{two_q, one}, {one, PolyInt(2)}}) &&
                  s.raw.minus.theta == MatrixZ({{four_q * q, four_q}, {z, four_q}}),
              std::string("first display, q = ") + qs);
    // Second display: after the change of basis.
    v.require(s.rebased.minus.gamma == MatrixZ({{z, four_q}, {four_q, z}}) &&
                  s.rebased.minus.mu == MatrixZ({{one, two_q}, {PolyInt(2), one}}) &&
                  s.rebased.minus.theta == MatrixZ({{four_q, z}, {four_q, four_q * q}}),
              std::string("second display, q = ") + qs);
    v.require(s.assembled == displayed_Q(q), std::string("assembled formation, q = ") + qs);
    v.require(make_Q(q) == displayed_Q(q), std::string("make_Q, q = ") + qs);
    if (!cli_path.empty()) {
      int status = 0;
      const std::string out = run_cli("boundary --q '" + std::string(qs) + "' --show-steps", status);
      v.require(status == 0 && out.find(formation_text(displayed_Q(q))) != std::string::npos &&
                    out.find("equals Q_q: yes") != std::string::npos,
                std::string("cli boundary --q ") + qs);
    }
  }
  return v;
}

Verdict criterion2() {
  Verdict v;
  const C2PolyElt u = C2PolyElt(1) - testing::t_elt();
  for (const auto& p : sweep())
    for (const auto& g : sweep()) {
      if (!aug(p * g)) continue;
      const C2PolyElt e = u * testing::lift_c2(p * g) - C2PolyElt(1);
      const C2PolyElt rest = e * e - C2PolyElt(1);
      bool even = true;
      for (const C2Elt& c : rest.coeffs()) even = even && !c.m.is_odd() && !c.n.is_odd();
      v.require(even, "((1-T)pg - 1)^2 = 1 mod 2 at p = " + format(p) + ", g = " + format(g));
      v.require(verify_poincare(make_M(p, g)), "poincare at p = " + format(p) + ", g = " + format(g));
      if (!v.ok) return v;
    }
  return v;
}

Verdict criterion3() {
  Verdict v;
  for (const auto& p : sweep())
    for (const auto& g : sweep()) {
      if (!aug(p * g)) continue;
      const MatrixZ gamma{{p, PolyInt(1)}, {PolyInt(1), PolyInt(2) * g}};
      const FormationZ n{gamma, MatrixZ::scalar(2, PolyInt(2)), gamma, -1};
      const FormationC2 m = make_M(p, g);
      v.require(apply_i(Sign::Minus, m) == n && make_N_resolution(p, g) == n,
                "i-(M) at p = " + format(p) + ", g = " + format(g));
      v.require(is_graph(apply_i(Sign::Plus, m)), "i+(M) graph at p = " + format(p) + ", g = " + format(g));
      if (!v.ok) return v;
    }
  return v;
}

Verdict criterion4() {
  Verdict v;
  std::size_t count = 0;
  for (const auto& g : sweep())
    for (const auto& p1 : sweep())
      for (const auto& p2 : sweep()) {
        if (!aug(p1 * g) || !aug(p2 * g)) continue;
        ++count;
        const RelationInstance inst = additivity_instance(p1, p2, g);
        const ArfClass want = arf_normalize(testing::mod2(p1 * p2 * g * g));
        const auto at = [&] {
          return " at p1 = " + format(p1) + ", p2 = " + format(p2) + ", g = " + format(g);
        };
        if (run_machine(inst.formation, inst.data).arf != want) v.require(false, "machine" + at());
        else if (!alpha_pullback_check(p1, p2, g)) v.require(false, "alpha" + at());
        if (!v.ok) return v;
      }
  const AlphaPullbackFixture a = alpha_fixture(PolyF2::x(), PolyF2::x(), PolyF2(1));
  v.require(a.alpha.conj_transpose() * a.lambda * a.alpha == standard_symplectic(3),
            "alpha^* lambda alpha standard");
  v.note = v.ok ? std::to_string(count) + " triples" : v.note;
  return v;
}

Verdict criterion5() {
  Verdict v;
  std::size_t count = 0;
  for (int rel = 2; rel <= 4; ++rel)
    for (const auto& p : sweep())
      for (const auto& g : sweep()) {
        if (!relation_admissible(rel, p, g)) continue;
        ++count;
        const RelationInstance inst = relation_instance(rel, p, g);
        const std::string at =
            "relation " + std::to_string(rel) + " at p = " + format(p) + ", g = " + format(g);
        v.require(check_desymmetrization(formation_to_complex(inst.formation), inst.data),
                  "desymmetrization, " + at);
        v.require(run_machine(inst.formation, inst.data).arf.is_zero(), "nonzero Arf, " + at);
        if (!v.ok) return v;
      }
  v.note = std::to_string(count) + " pairs";
  return v;
}

Verdict criterion6() {
  Verdict v;
  auto closes = [&](const Derivation& d, const std::string& what) {
    const ReplayResult r = replay(d);
    v.require(r.closed, what + ": " + r.reason);
  };
  for (const auto& p : sweep())
    for (const auto& g : sweep())
      if (aug(p * g)) closes(cor1_derivation(p, g), "cor1 p = " + format(p) + ", g = " + format(g));
  for (const auto& p : testing::all_polys(4, {0, 1, 2}))
    if (aug(p)) closes(cor2_derivation(p), "cor2 p = " + format(p));
  bool saw_odd = false, saw_even = false;
  for (unsigned k = 0; k <= 6; ++k) {
    const Derivation d = cor3_derivation(k);
    v.require(d.start == 2 * (GenWord::m(x_pow(1), x_pow(k)) - GenWord::m(PolyInt(1), x_pow(k + 1))),
              "cor3 start word, k = " + std::to_string(k));
    closes(d, "cor3 k = " + std::to_string(k));
    (k % 2 ? saw_odd : saw_even) = true;
  }
  v.require(saw_odd && saw_even, "both parities of k");
  for (const auto& g : sweep()) closes(cor4_derivation(g), "cor4 g = " + format(g));
  return v;
}

Verdict criterion7() {
  Verdict v;
  testing::Gen gen(2718);
  for (int i = 0; i < 50; ++i) {
    const PolyF2 q = gen.poly_f2(10);
    v.require(arf(make_P(q, PolyF2(1))) == arf_normalize(q), "arf(P_{q,1}) at q = " + format(q));
  }
  for (int i = 0; i < 100; ++i) {
    FormF2 f = make_P(gen.poly_f2(5), gen.poly_f2(5));
    if (gen.coin()) f = direct_sum(f, make_P(gen.poly_f2(3), gen.poly_f2(3)));
    if (gen.coin()) f = direct_sum(f, hyperbolic<PolyF2>(1));
    const MatrixF2 u = gen.unimodular<PolyF2>(f.rank(), 8, [&] { return gen.poly_f2(2); });
    v.require(is_unit(det(u)) && arf(pullback(f, u)) == arf(f),
              "basis change " + std::to_string(i));
  }
  const auto image = testing::artin_schreier_image(6);
  for (const PolyF2& q : testing::all_f2(12)) {
    const PolyF2 r = arf_normalize(q).representative();
    v.require(testing::is_arf_normal(r) && image.count(q + r), "quotient oracle at q = " + format(q));
  }
  return v;
}

Verdict criterion8() {
  Verdict v;
  using S = UNilAnswer::Structure;
  for (long n = -12; n <= 12; ++n) {
    const UNilAnswer a = unil_answer(n);
    const long r = ((n % 4) + 4) % 4;
    const S want = r <= 1 ? S::Zero : r == 2 ? S::ArfGroup : S::ThreeSummand;
    v.require(a.residue == r && a.structure == want, "n = " + std::to_string(n));
    if (want == S::ThreeSummand) v.require(a.summands.size() == 3, "three summands");
  }
  if (!cli_path.empty()) {
    int status = 0;
    const std::string out = run_cli("unil --n 3 --group C2", status);
    v.require(status == 0 && out.find("structure: three-summand") != std::string::npos, "cli unil");
  }
  return v;
}

Verdict criterion9() {
  Verdict v;
  const auto mutations = fixture_mutations();
  v.require(mutations.size() >= 10, "at least 10 mutations");
  for (const auto& m : mutations) {
    CheckContext ctx;
    ctx.gens = m.gens;
    v.require(!run_verification(ctx, {"*", true}).all_pass(), "undetected: " + m.name);
  }
  CheckContext clean;
  v.require(run_verification(clean, {"formations.*", false}).all_pass(), "clean build fails");
  if (v.ok) v.note = std::to_string(mutations.size()) + " mutations detected";
  return v;
}

struct Criterion {
  int number;
  const char* title;
  double limit_seconds;
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) cli_path = argv[1];
  const std::vector<Criterion> criteria{
      {1, "boundary fixture reproduces Q_q with both intermediate displays", 1, criterion1},
      {2, "duality units and nonsingularity of M_{p,g} over the sweep", 5, criterion2},
      {3, "lifts: i-(M) is the N resolution, i+(M) is a graph", 5, criterion3},
      {4, "machine relation 1 and the alpha pullback over the sweep", 60, criterion4},
      {5, "machine relations 2-4 vanish, desymmetrization holds", 60, criterion5},
      {6, "corollary derivations close", 10, criterion6},
      {7, "Arf algorithm against oracles", 10, criterion7},
      {8, "UNil answer table", 1, criterion8},
      {9, "single sign flips in the fixtures are detected", 60, criterion9},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.ok = false;
      v.note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.limit_seconds;
    const bool pass = v.ok && in_time;
    all = all && pass;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs / %.0fs", secs, c.limit_seconds);
    std::cout << "criterion " << c.number << ": " << (pass ? "PASS" : "FAIL") << "  " << c.title
              << "  (" << timing << (in_time ? "" : ", over time limit")
              << (v.note.empty() ? "" : "; " + v.note) << ")" << std::endl;
  }
  std::cout << (all ? "acceptance: PASS" : "acceptance: FAIL") << std::endl;
  return all ? 0 : 1;
}
