#include "unil/witt.hpp"

#include <map>
#include <sstream>

#include "unil/text.hpp"

namespace unil {
namespace {

bool valid_index(const PolyInt& p, const PolyInt& g) { return (p * g).coeff(0).is_zero(); }

ArfClass q_class(const PolyInt& q) { return arf_normalize(apply_j(q)); }

std::string m_name(const PolyInt& p, const PolyInt& g) {
  return "M_{" + format(p) + ", " + format(g) + "}";
}

const PolyInt& x_poly() {
  static const PolyInt x = PolyInt::x();
  return x;
}

PolyInt x_pow(std::size_t k) { return PolyInt::monomial(Integer(1), k); }

// Moves the whole coefficient of M_{from} onto M_{to}.
GenWord move_term(const GenWord& w, const GenIndex& from, const GenIndex& to, const char* rule) {
  const long c = w.coefficient(from.p, from.g);
  if (c == 0)
    throw RuleError(std::string(rule) + ": " + m_name(from.p, from.g) + " does not occur");
  if (!valid_index(to.p, to.g))
    throw RuleError(std::string(rule) + ": target " + m_name(to.p, to.g) +
                    " violates pg in xZ[x]");
  GenWord out = w;
  out.add_m(from.p, from.g, -c);
  out.add_m(to.p, to.g, c);
  return out;
}

}  // namespace

// --- GenWord -----------------------------------------------------------------

GenWord GenWord::m(const PolyInt& p, const PolyInt& g, long coefficient) {
  GenWord w;
  w.add_m(p, g, coefficient);
  return w;
}

GenWord GenWord::q(const PolyInt& q) {
  if (!q.coeff(0).is_zero()) throw PreconditionError("Q_q requires q in xZ[x]");
  GenWord w;
  w.arf_ = q_class(q);
  return w;
}

long GenWord::coefficient(const PolyInt& p, const PolyInt& g) const {
  auto it = terms_.find({p, g});
  return it == terms_.end() ? 0 : it->second;
}

void GenWord::add_m(const PolyInt& p, const PolyInt& g, long c) {
  if (c == 0) return;
  if (!valid_index(p, g))
    throw PreconditionError(m_name(p, g) + " requires pg in xZ[x]");
  long& slot = terms_[{p, g}];
  slot += c;
  if (slot == 0) terms_.erase({p, g});
}

GenWord& GenWord::operator+=(const GenWord& o) {
  for (const auto& [idx, c] : o.terms_) add_m(idx.p, idx.g, c);
  arf_ += o.arf_;
  return *this;
}

GenWord operator*(long k, const GenWord& a) {
  GenWord out;
  if (k == 0) return out;
  for (const auto& [idx, c] : a.terms_) out.terms_[idx] = k * c;
  if (k % 2 != 0) out.arf_ = a.arf_;
  return out;
}

std::string format(const GenWord& w) {
  std::string out;
  for (const auto& [idx, c] : w.m_terms()) {
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    const long a = c < 0 ? -c : c;
    if (a != 1) out += std::to_string(a) + "*";
    out += "[" + m_name(idx.p, idx.g) + "]";
  }
  if (!w.arf_part().is_zero()) {
    if (!out.empty()) out += " + ";
    out += "[Q: " + format(w.arf_part()) + "]";
  }
  return out.empty() ? "0" : out;
}

// --- rules -------------------------------------------------------------------

GenWord apply_R1(const GenWord& w, const PolyInt& p1, const PolyInt& p2, const PolyInt& g,
                 Direction dir) {
  if (!valid_index(p1, g) || !valid_index(p2, g))
    throw RuleError("R1: generators " + m_name(p1, g) + ", " + m_name(p2, g) +
                    " violate pg in xZ[x]");
  const PolyInt sum = p1 + p2;
  GenWord out = w;
  long sign = 0;
  if (dir == Direction::LeftToRight) {
    const long c1 = w.coefficient(p1, g);
    const long c2 = w.coefficient(p2, g);
    if (p1 == p2) {
      if (c1 >= 2) sign = 1;
      else if (c1 <= -2) sign = -1;
    } else {
      if (c1 >= 1 && c2 >= 1) sign = 1;
      else if (c1 <= -1 && c2 <= -1) sign = -1;
    }
    if (sign == 0)
      throw RuleError("R1: " + m_name(p1, g) + " and " + m_name(p2, g) +
                      " do not both occur with the same sign");
    out.add_m(p1, g, -sign);
    out.add_m(p2, g, -sign);
    out.add_m(sum, g, sign);
  } else {
    const long c = w.coefficient(sum, g);
    if (c == 0) throw RuleError("R1: " + m_name(sum, g) + " does not occur");
    sign = c > 0 ? 1 : -1;
    out.add_m(sum, g, -sign);
    out.add_m(p1, g, sign);
    out.add_m(p2, g, sign);
  }
  // Q_q has order two, so the sign of the correction term is irrelevant.
  out.add_arf(q_class(p1 * p2 * g * g));
  return out;
}

GenWord apply_R2(const GenWord& w, const PolyInt& p, const PolyInt& g, Direction dir) {
  const PolyInt two(2);
  GenIndex lhs{two * p, g}, rhs{two * g, p};
  return dir == Direction::LeftToRight ? move_term(w, lhs, rhs, "R2") : move_term(w, rhs, lhs, "R2");
}

GenWord apply_R3(const GenWord& w, const PolyInt& p, const PolyInt& g, Direction dir) {
  const PolyInt x2 = x_poly() * x_poly();
  GenIndex lhs{x2 * p, g}, rhs{p, x2 * g};
  return dir == Direction::LeftToRight ? move_term(w, lhs, rhs, "R3") : move_term(w, rhs, lhs, "R3");
}

GenWord apply_R4(const GenWord& w, const PolyInt& p, const PolyInt& g, Direction dir) {
  const PolyInt two(2);
  GenIndex lhs{two * p * p * g, g}, rhs{two * p, g};
  return dir == Direction::LeftToRight ? move_term(w, lhs, rhs, "R4") : move_term(w, rhs, lhs, "R4");
}

GenWord verschiebung(long n, const GenWord& w) {
  if (n <= 0) throw PreconditionError("V_n requires n >= 1");
  const auto k = static_cast<std::size_t>(n);
  GenWord out;
  for (const auto& [idx, c] : w.m_terms())
    out.add_m(idx.p.substitute_power(k), idx.g.substitute_power(k), c);
  out.add_arf(arf_normalize(w.arf_part().representative().substitute_power(k)));
  return out;
}

// --- scripts -----------------------------------------------------------------

namespace {

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::R1: return "R1";
    case Rule::R2: return "R2";
    case Rule::R3: return "R3";
    case Rule::R4: return "R4";
    case Rule::QArith: return "QARITH";
    case Rule::IsoM0: return "ISO-M0";
    case Rule::Vn: return "VN";
  }
  return "?";
}

Step make_step(Rule r, const PolyInt& p, const PolyInt& g, Direction dir = Direction::LeftToRight) {
  Step s;
  s.rule = r;
  s.p = p;
  s.g = g;
  s.dir = dir;
  return s;
}

Step r1_step(const PolyInt& p1, const PolyInt& p2, const PolyInt& g,
             Direction dir = Direction::LeftToRight) {
  Step s = make_step(Rule::R1, p1, g, dir);
  s.p2 = p2;
  return s;
}

struct LineTokens {
  std::string keyword;
  std::map<std::string, std::string> args;
  std::vector<std::string> bare;
};

LineTokens tokenize(const std::string& line, std::size_t lineno) {
  LineTokens t;
  std::istringstream in(line);
  std::string tok;
  in >> t.keyword;
  while (in >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) {
      t.bare.push_back(tok);
      continue;
    }
    auto key = tok.substr(0, eq);
    if (!t.args.emplace(key, tok.substr(eq + 1)).second)
      throw ParseError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }
  return t;
}

PolyInt poly_arg(const LineTokens& t, const std::string& key, std::size_t lineno) {
  auto it = t.args.find(key);
  if (it == t.args.end())
    throw ParseError("line " + std::to_string(lineno) + ": " + t.keyword + " needs " + key + "=");
  try {
    return parse_poly<PolyInt>(it->second);
  } catch (const ParseError& e) {
    throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
  }
}

long int_arg(const LineTokens& t, const std::string& key, std::size_t lineno, long fallback,
             bool required) {
  auto it = t.args.find(key);
  if (it == t.args.end()) {
    if (required)
      throw ParseError("line " + std::to_string(lineno) + ": " + t.keyword + " needs " + key + "=");
    return fallback;
  }
  try {
    std::size_t used = 0;
    long v = std::stol(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(lineno) + ": '" + it->second + "' is not an integer");
  }
}

Direction dir_arg(const LineTokens& t, std::size_t lineno) {
  auto it = t.args.find("dir");
  if (it == t.args.end() || it->second == "lr") return Direction::LeftToRight;
  if (it->second == "rl") return Direction::RightToLeft;
  throw ParseError("line " + std::to_string(lineno) + ": dir must be lr or rl");
}

void check_keys(const LineTokens& t, std::initializer_list<const char*> allowed,
                std::size_t lineno) {
  if (!t.bare.empty() && !(t.keyword == "START" || t.keyword == "END"))
    throw ParseError("line " + std::to_string(lineno) + ": unexpected token '" + t.bare[0] + "'");
  for (const auto& [k, v] : t.args) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw ParseError("line " + std::to_string(lineno) + ": unknown key '" + k + "'");
  }
}

GenWord word_line(const LineTokens& t, std::size_t lineno) {
  if (t.bare.size() != 1)
    throw ParseError("line " + std::to_string(lineno) + ": " + t.keyword + " needs M or Q");
  if (t.bare[0] == "M") {
    check_keys(t, {"c", "p", "g"}, lineno);
    const PolyInt p = poly_arg(t, "p", lineno);
    const PolyInt g = poly_arg(t, "g", lineno);
    if (!valid_index(p, g))
      throw ParseError("line " + std::to_string(lineno) + ": " + m_name(p, g) +
                       " violates pg in xZ[x]");
    return GenWord::m(p, g, int_arg(t, "c", lineno, 1, false));
  }
  if (t.bare[0] == "Q") {
    check_keys(t, {"q"}, lineno);
    const PolyInt q = poly_arg(t, "q", lineno);
    if (!q.coeff(0).is_zero())
      throw ParseError("line " + std::to_string(lineno) + ": Q_q requires q in xZ[x]");
    return GenWord::q(q);
  }
  throw ParseError("line " + std::to_string(lineno) + ": unknown generator '" + t.bare[0] + "'");
}

}  // namespace

std::string format(const Step& s) {
  std::string out = rule_name(s.rule);
  const std::string dir = s.dir == Direction::RightToLeft ? " dir=rl" : "";
  switch (s.rule) {
    case Rule::R1:
      return out + " p1=" + format(s.p) + " p2=" + format(s.p2) + " g=" + format(s.g) + dir;
    case Rule::R2:
    case Rule::R3:
    case Rule::R4:
      return out + " p=" + format(s.p) + " g=" + format(s.g) + dir;
    case Rule::IsoM0:
      return out + " p=" + format(s.p) + " g=" + format(s.g);
    case Rule::QArith:
      return out + " q=" + format(s.q);
    case Rule::Vn:
      return out + " n=" + std::to_string(s.n);
  }
  return out;
}

Derivation parse_derivation(std::string_view text) {
  Derivation d;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    // Polynomials in the grammar contain no spaces, so whitespace splits tokens.
    LineTokens t = tokenize(line, lineno);
    if (t.keyword.empty()) continue;
    if (t.keyword == "START") {
      d.start += word_line(t, lineno);
    } else if (t.keyword == "END") {
      d.end += word_line(t, lineno);
    } else if (t.keyword == "R1") {
      check_keys(t, {"p1", "p2", "g", "dir"}, lineno);
      d.script.steps.push_back(r1_step(poly_arg(t, "p1", lineno), poly_arg(t, "p2", lineno),
                                       poly_arg(t, "g", lineno), dir_arg(t, lineno)));
    } else if (t.keyword == "R2" || t.keyword == "R3" || t.keyword == "R4") {
      check_keys(t, {"p", "g", "dir"}, lineno);
      const Rule r = t.keyword == "R2" ? Rule::R2 : t.keyword == "R3" ? Rule::R3 : Rule::R4;
      d.script.steps.push_back(
          make_step(r, poly_arg(t, "p", lineno), poly_arg(t, "g", lineno), dir_arg(t, lineno)));
    } else if (t.keyword == "ISO-M0") {
      check_keys(t, {"p", "g"}, lineno);
      d.script.steps.push_back(
          make_step(Rule::IsoM0, poly_arg(t, "p", lineno), poly_arg(t, "g", lineno)));
    } else if (t.keyword == "QARITH") {
      check_keys(t, {"q"}, lineno);
      Step s;
      s.rule = Rule::QArith;
      s.q = poly_arg(t, "q", lineno);
      d.script.steps.push_back(s);
    } else if (t.keyword == "VN") {
      check_keys(t, {"n"}, lineno);
      Step s;
      s.rule = Rule::Vn;
      s.n = int_arg(t, "n", lineno, 0, true);
      if (s.n <= 0) throw ParseError("line " + std::to_string(lineno) + ": VN needs n >= 1");
      d.script.steps.push_back(s);
    } else {
      throw ParseError("line " + std::to_string(lineno) + ": unknown step '" + t.keyword + "'");
    }
  }
  return d;
}

std::string format(const Derivation& d) {
  std::string out;
  auto word = [&](const char* kw, const GenWord& w) {
    for (const auto& [idx, c] : w.m_terms())
      out += std::string(kw) + " M c=" + std::to_string(c) + " p=" + format(idx.p) +
             " g=" + format(idx.g) + "\n";
    if (!w.arf_part().is_zero())
      out += std::string(kw) + " Q q=" + format(default_lift(w.arf_part().representative())) + "\n";
  };
  word("START", d.start);
  word("END", d.end);
  for (const Step& s : d.script.steps) out += format(s) + "\n";
  return out;
}

GenWord apply_step(const GenWord& w, const Step& s, const GeneratorSet& gens) {
  switch (s.rule) {
    case Rule::R1:
      return apply_R1(w, s.p, s.p2, s.g, s.dir);
    case Rule::R2:
      return apply_R2(w, s.p, s.g, s.dir);
    case Rule::R3:
      return apply_R3(w, s.p, s.g, s.dir);
    case Rule::R4:
      return apply_R4(w, s.p, s.g, s.dir);
    case Rule::Vn:
      return verschiebung(s.n, w);
    case Rule::QArith: {
      if (!s.q.coeff(0).is_zero()) throw RuleError("QARITH: q must lie in xZ[x]");
      if (!(w.arf_part() == q_class(s.q)))
        throw RuleError("QARITH: Q-part is " + format(w.arf_part()) + ", expected " +
                        format(q_class(s.q)));
      return w;
    }
    case Rule::IsoM0: {
      const PolyInt four_p = PolyInt(4) * s.p;
      if (w.coefficient(four_p, s.g) == 0)
        throw RuleError("ISO-M0: " + m_name(four_p, s.g) + " does not occur");
      const FormationC2 m0 = gens.make_M(PolyInt(), s.g);
      const FormationC2 m4 = gens.make_M(four_p, s.g);
      const MatrixC2 id = MatrixC2::identity(2);
      MatrixC2 nu(2, 2);
      nu(0, 0) = to_c2(s.p);
      if (!verify_formation_iso(m0, m4, id, id, nu))
        throw RuleError("ISO-M0: (Id, Id, [[p,0],[0,0]]) is not an isomorphism " +
                        m_name(PolyInt(), s.g) + " -> " + m_name(four_p, s.g));
      if (!is_graph(m0))
        throw RuleError("ISO-M0: " + m_name(PolyInt(), s.g) + " is not a graph formation");
      GenWord out = w;
      out.add_m(four_p, s.g, -w.coefficient(four_p, s.g));
      return out;
    }
  }
  throw RuleError("unknown rule");
}

ReplayResult replay(const DerivationScript& script, const GenWord& start, const GenWord& end,
                    const GeneratorSet& gens) {
  ReplayResult r;
  r.final_word = start;
  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    try {
      r.final_word = apply_step(r.final_word, script.steps[i], gens);
    } catch (const Error& e) {
      r.failed_step = i;
      r.reason = e.what();
      return r;
    }
  }
  r.closed = r.final_word == end;
  if (!r.closed) r.reason = "chain ends at " + format(r.final_word) + ", expected " + format(end);
  return r;
}

// --- corollary derivations -----------------------------------------------------

Derivation cor1_derivation(const PolyInt& p, const PolyInt& g) {
  const PolyInt two_p = PolyInt(2) * p;
  Derivation d;
  d.start = GenWord::m(p, g, 4);
  d.script.steps = {r1_step(p, p, g), r1_step(p, p, g), r1_step(two_p, two_p, g),
                    make_step(Rule::IsoM0, p, g)};
  return d;
}

Derivation cor2_derivation(const PolyInt& p) {
  if (!p.coeff(0).is_zero()) throw PreconditionError("cor2: p must lie in xZ[x]");
  for (const auto& c : p.coeffs())
    if (c < 0) throw PreconditionError("cor2: p must have nonnegative coefficients");
  const PolyInt one(1);
  const PolyInt v2p = p.substitute_power(2);
  Derivation d;
  d.start = GenWord::m(v2p, one, 2) + GenWord::m(p, one, -2);
  if (p.is_zero()) return d;
  auto& steps = d.script.steps;
  steps.push_back(r1_step(v2p, v2p, one));
  steps.push_back(r1_step(p, p, one));

  // Peel 2 P into monomials 2 x^k, one copy at a time.
  auto split = [&](const PolyInt& poly) {
    PolyInt rest = PolyInt(2) * poly;
    while (true) {
      const std::size_t k = *rest.degree();
      const PolyInt unit = PolyInt::monomial(Integer(2), k);
      if (rest == unit) break;
      rest = rest - unit;
      steps.push_back(r1_step(unit, rest, one, Direction::RightToLeft));
    }
  };
  split(v2p);
  split(p);

  // M_{2 x^{2k}, 1} -> M_{2 x^k, 1}, from the top so that every move sees its
  // own term; moves of already cancelled terms are skipped.
  GenWord w = d.start;
  for (const Step& s : steps) w = apply_step(w, s);
  for (std::size_t k = *p.degree(); k >= 1; --k) {
    if (p.coeff(k).is_zero()) continue;
    const Step s = make_step(Rule::R4, x_pow(k), one);
    if (w.coefficient(PolyInt::monomial(Integer(2), 2 * k), one) == 0) continue;
    w = apply_step(w, s);
    steps.push_back(s);
  }
  return d;
}

namespace {

// Steps taking [M_{2x^k, x}] to [M_{2x^{k+1}, 1}].
void reduce_chain(std::size_t k, std::vector<Step>& steps) {
  const PolyInt one(1);
  const PolyInt x = x_poly();
  if (k % 2 == 0) {
    const std::size_t i = k / 2;
    // M_{2x^{2i}, x} -> M_{2, x^{2i+1}} by R3, then R2.
    for (std::size_t j = i; j >= 1; --j)
      steps.push_back(make_step(Rule::R3, PolyInt(2) * x_pow(2 * j - 2), x_pow(2 * (i - j) + 1)));
    steps.push_back(make_step(Rule::R2, one, x_pow(k + 1)));
  } else {
    const std::size_t i = (k - 1) / 2;
    steps.push_back(make_step(Rule::R4, x_pow(i), x));
    reduce_chain(i, steps);
    steps.push_back(make_step(Rule::R4, x_pow(i + 1), one, Direction::RightToLeft));
  }
}

}  // namespace

Derivation cor3_derivation(unsigned k) {
  const PolyInt one(1);
  const PolyInt x = x_poly();
  const PolyInt g = x_pow(k);
  const PolyInt xg = x * g;
  Derivation d;
  d.start = GenWord::m(x, g, 2) + GenWord::m(one, xg, -2);
  auto& steps = d.script.steps;
  steps.push_back(r1_step(x, x, g));
  steps.push_back(r1_step(one, one, xg));
  // [M_{2x, g}] -> [M_{2g, x}] = [M_{2x^k, x}].
  steps.push_back(make_step(Rule::R2, x, g));
  if (k == 0) return d;  // the two terms already coincide
  // [M_{2, xg}] -> [M_{2x^{k+1}, 1}].
  steps.push_back(make_step(Rule::R2, one, xg));
  reduce_chain(k, steps);
  return d;
}

Derivation cor4_derivation(const PolyInt& g) {
  const PolyInt one(1);
  const PolyInt x = x_poly();
  Derivation d;
  d.start = GenWord::m(x, g) + GenWord::m(one, x * g, -1);
  Step v;
  v.rule = Rule::Vn;
  v.n = 2;
  d.script.steps = {v, make_step(Rule::R3, one, g.substitute_power(2))};
  return d;
}

// --- section and answer ------------------------------------------------------

namespace {

// Exponent of a monic monomial x^k, or nullopt.
std::optional<std::size_t> monic_monomial(const PolyInt& a) {
  auto d = a.degree();
  if (!d || a.coeff(*d) != 1) return std::nullopt;
  for (std::size_t i = 0; i < *d; ++i)
    if (!a.coeff(i).is_zero()) return std::nullopt;
  return d;
}

}  // namespace

GenWord section_s(const NWord& target) {
  GenWord out;
  for (const auto& [idx, c] : target) {
    if (c == 0) continue;
    const auto n = monic_monomial(idx.p);
    const auto m = monic_monomial(idx.g);
    const bool ok = n && m && (*n == 0 ? *m >= 1 : *m % *n == 0);
    if (!ok)
      throw PreconditionError("section_s: N_{" + format(idx.p) + ", " + format(idx.g) +
                              "} is outside the recognized span");
    out.add_m(idx.p, idx.g, c);
  }
  return out;
}

UNilAnswer unil_answer(long n, const GroupContext& context) {
  if (context.kind == GroupContext::Kind::General &&
      (!context.normal_sylow2 || (context.sylow2_exponent != 1 && context.sylow2_exponent != 2)))
    throw PreconditionError("unil: the group must contain a normal Sylow 2-subgroup of exponent two");
  UNilAnswer a;
  a.residue = static_cast<int>(((n % 4) + 4) % 4);
  const std::string arf_group = "xF2[x]/(f^2 - f)";
  switch (a.residue) {
    case 0:
    case 1:
      a.structure = UNilAnswer::Structure::Zero;
      break;
    case 2:
      a.structure = UNilAnswer::Structure::ArfGroup;
      a.summands = {arf_group};
      break;
    case 3:
      if (context.kind != GroupContext::Kind::C2)
        throw PreconditionError("unil: n = 3 mod 4 is only determined for the group C2");
      a.structure = UNilAnswer::Structure::ThreeSummand;
      a.summands = {"UNil_{n+1}(F2) = " + arf_group,
                    "UNil_n(Z) = NL_3(Z): 0 -> " + arf_group + " -> NL_3(Z) -> xF2[x] x xF2[x] -> 0",
                    "UNil_n(Z) = NL_3(Z): 0 -> " + arf_group + " -> NL_3(Z) -> xF2[x] x xF2[x] -> 0"};
      break;
  }
  return a;
}

std::string format(const UNilAnswer& a) {
  std::string out = "residue: " + std::to_string(a.residue) + "\n";
  switch (a.structure) {
    case UNilAnswer::Structure::Zero:
      return out + "structure: zero\n";
    case UNilAnswer::Structure::ArfGroup:
      out += "structure: arf-group\n";
      break;
    case UNilAnswer::Structure::ThreeSummand:
      out += "structure: three-summand\n";
      break;
  }
  for (const auto& s : a.summands) out += "  " + s + "\n";
  return out;
}

}  // namespace unil
