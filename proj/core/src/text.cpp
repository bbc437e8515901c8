#include "unil/text.hpp"

#include <cctype>
#include <string>
#include <vector>

namespace unil {
namespace {

struct Term {
  Integer coeff = 1;
  bool has_t = false;
  std::size_t xpow = 0;
};

std::string strip(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  return s;
}

std::size_t parse_exponent(const std::string& f, std::size_t at, const std::string& whole) {
  if (at >= f.size() || f[at] != '^') return 1;
  std::string digits = f.substr(at + 1);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("bad exponent in '" + whole + "'");
  return std::stoul(digits);
}

Term parse_term(const std::string& t, const std::string& whole) {
  if (t.empty()) throw ParseError("empty term in '" + whole + "'");
  Term term;
  std::size_t start = 0;
  while (true) {
    std::size_t end = t.find('*', start);
    std::string f = t.substr(start, end == std::string::npos ? end : end - start);
    if (f.empty()) throw ParseError("empty factor in '" + whole + "'");
    if (std::isdigit(static_cast<unsigned char>(f[0]))) {
      if (f.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("bad number '" + f + "' in '" + whole + "'");
      term.coeff *= Integer(f);
    } else if (f[0] == 'x') {
      term.xpow += parse_exponent(f, 1, whole);
    } else if (f[0] == 'T') {
      if (parse_exponent(f, 1, whole) % 2) term.has_t = !term.has_t;
    } else {
      throw ParseError("unexpected factor '" + f + "' in '" + whole + "'");
    }
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return term;
}

std::vector<Term> parse_terms(std::string_view text) {
  const std::string s = strip(text);
  if (s.empty()) throw ParseError("empty polynomial");
  std::vector<Term> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
      negative = s[pos] == '-';
      ++pos;
    } else if (pos != 0) {
      throw ParseError("missing operator in '" + s + "'");
    }
    std::size_t end = s.find_first_of("+-", pos);
    Term t = parse_term(s.substr(pos, end == std::string::npos ? end : end - pos), s);
    if (negative) t.coeff = -t.coeff;
    out.push_back(std::move(t));
    pos = end == std::string::npos ? s.size() : end;
  }
  return out;
}

std::string monomial(std::size_t k) {
  if (k == 0) return {};
  if (k == 1) return "x";
  return "x^" + std::to_string(k);
}

// Appends `coeff * body` where body is a product of symbols (possibly empty).
void append_term(std::string& out, const Integer& coeff, const std::string& body) {
  if (coeff.is_zero()) return;
  const bool negative = coeff < 0;
  const Integer mag = negative ? Integer(-coeff) : coeff;
  if (out.empty()) {
    if (negative) out += "-";
  } else {
    out += negative ? " - " : " + ";
  }
  if (body.empty()) {
    out += mag.str();
  } else if (mag == 1) {
    out += body;
  } else {
    out += mag.str() + "*" + body;
  }
}

std::string join_symbols(const std::string& a, const std::string& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + "*" + b;
}

}  // namespace

std::string format(const PolyInt& p) {
  std::string out;
  for (std::size_t k = 0; k < p.size(); ++k) append_term(out, p.coeffs()[k], monomial(k));
  return out.empty() ? "0" : out;
}

std::string format(const PolyF2& p) {
  std::string out;
  for (std::size_t k : p.support()) append_term(out, Integer(1), monomial(k));
  return out.empty() ? "0" : out;
}

std::string format(const C2PolyElt& p) {
  std::string out;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const C2Elt& c = p.coeffs()[k];
    append_term(out, c.m, monomial(k));
    append_term(out, c.n, join_symbols("T", monomial(k)));
  }
  return out.empty() ? "0" : out;
}

template <>
PolyInt parse_poly<PolyInt>(std::string_view text) {
  PolyInt out;
  for (const Term& t : parse_terms(text)) {
    if (t.has_t) throw ParseError("T is not an element of Z[x]: " + std::string(text));
    out += PolyInt::monomial(t.coeff, t.xpow);
  }
  return out;
}

template <>
PolyF2 parse_poly<PolyF2>(std::string_view text) {
  PolyF2 out;
  for (const Term& t : parse_terms(text)) {
    if (t.has_t) throw ParseError("T is not an element of F2[x]: " + std::string(text));
    if (is_odd(t.coeff)) out += PolyF2::monomial(t.xpow);
  }
  return out;
}

template <>
C2PolyElt parse_poly<C2PolyElt>(std::string_view text) {
  C2PolyElt out;
  for (const Term& t : parse_terms(text)) {
    C2Elt c = t.has_t ? C2Elt(Integer(0), t.coeff) : C2Elt(t.coeff, Integer(0));
    out += C2PolyElt::monomial(c, t.xpow);
  }
  return out;
}

RingTag tag_of(const AnyElement& e) {
  return std::visit([](const auto& v) { return ring_traits<std::decay_t<decltype(v)>>::tag; }, e);
}

RingTag tag_of(const AnyMatrix& m) {
  return std::visit(
      [](const auto& v) {
        return ring_traits<typename std::decay_t<decltype(v)>::value_type>::tag;
      },
      m);
}

namespace {

template <class V, class Op>
V same_ring(const V& a, const V& b, const char* what, Op op) {
  if (a.index() != b.index())
    throw RingMismatch(std::string(what) + ": operands in " + ring_name(tag_of(a)) +
                       " and " + ring_name(tag_of(b)));
  return std::visit(
      [&](const auto& x) -> V {
        using T = std::decay_t<decltype(x)>;
        return op(x, std::get<T>(b));
      },
      a);
}

}  // namespace

AnyElement ring_add(const AnyElement& a, const AnyElement& b) {
  return same_ring(a, b, "ring_add", [](const auto& x, const auto& y) { return AnyElement(x + y); });
}
AnyElement ring_mul(const AnyElement& a, const AnyElement& b) {
  return same_ring(a, b, "ring_mul", [](const auto& x, const auto& y) { return AnyElement(x * y); });
}
AnyElement ring_neg(const AnyElement& a) {
  return std::visit([](const auto& x) { return AnyElement(-x); }, a);
}
AnyMatrix mat_add(const AnyMatrix& a, const AnyMatrix& b) {
  return same_ring(a, b, "mat_add", [](const auto& x, const auto& y) { return AnyMatrix(x + y); });
}
AnyMatrix mat_mul(const AnyMatrix& a, const AnyMatrix& b) {
  return same_ring(a, b, "mat_mul", [](const auto& x, const auto& y) { return AnyMatrix(x * y); });
}
AnyMatrix mat_conj_transpose(const AnyMatrix& a) {
  return std::visit([](const auto& x) { return AnyMatrix(x.conj_transpose()); }, a);
}
AnyElement mat_det(const AnyMatrix& a) {
  return std::visit([](const auto& x) { return AnyElement(det(x)); }, a);
}

AnyElement parse_element(std::string_view text, RingTag tag) {
  switch (tag) {
    case RingTag::Zx:
      return parse_poly<PolyInt>(text);
    case RingTag::F2x:
      return parse_poly<PolyF2>(text);
    case RingTag::C2x:
      return parse_poly<C2PolyElt>(text);
  }
  throw ParseError("unknown ring");
}

AnyMatrix parse_any_matrix(std::string_view text, RingTag tag) {
  switch (tag) {
    case RingTag::Zx:
      return parse_matrix<PolyInt>(text);
    case RingTag::F2x:
      return parse_matrix<PolyF2>(text);
    case RingTag::C2x:
      return parse_matrix<C2PolyElt>(text);
  }
  throw ParseError("unknown ring");
}

std::string format(const AnyElement& e) {
  return std::visit([](const auto& x) { return format(x); }, e);
}
std::string format(const AnyMatrix& m) {
  return std::visit([](const auto& x) { return format(x); }, m);
}

}  // namespace unil
