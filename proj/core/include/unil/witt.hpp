#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "unil/complexes.hpp"
#include "unil/forms.hpp"

namespace unil {

/// Index (p, g) of a generator M_{p,g} or N_{p,g}.
struct GenIndex {
  PolyInt p;
  PolyInt g;

  friend bool operator==(const GenIndex&, const GenIndex&) = default;
  friend bool operator<(const GenIndex& a, const GenIndex& b) {
    if (a.p < b.p) return true;
    if (b.p < a.p) return false;
    return a.g < b.g;
  }
};

/// Element of the reduced L_3 group written as a formal integer combination
/// of [M_{p,g}] plus the Q-part, stored through its Arf class.
class GenWord {
 public:
  GenWord() = default;

  static GenWord m(const PolyInt& p, const PolyInt& g, long coefficient = 1);
  /// [Q_q]; requires q in xZ[x].
  static GenWord q(const PolyInt& q);

  const ArfClass& arf_part() const { return arf_; }
  const std::map<GenIndex, long>& m_terms() const { return terms_; }
  long coefficient(const PolyInt& p, const PolyInt& g) const;
  bool is_zero() const { return terms_.empty() && arf_.is_zero(); }

  /// Adds c [M_{p,g}]; requires pg in xZ[x] when c != 0.
  void add_m(const PolyInt& p, const PolyInt& g, long c);
  void add_arf(const ArfClass& a) { arf_ += a; }

  GenWord& operator+=(const GenWord& o);
  friend GenWord operator+(GenWord a, const GenWord& b) { return a += b; }
  friend GenWord operator-(const GenWord& a) { return -1 * a; }
  friend GenWord operator-(const GenWord& a, const GenWord& b) { return a + (-b); }
  friend GenWord operator*(long k, const GenWord& a);
  friend bool operator==(const GenWord&, const GenWord&) = default;

 private:
  ArfClass arf_;
  std::map<GenIndex, long> terms_;
};

std::string format(const GenWord& w);

enum class Direction { LeftToRight, RightToLeft };

/// M_{p1,g} + M_{p2,g} = M_{p1+p2,g} + Q_{(p1 g)(p2 g)}. Left to right merges
/// two terms of the same sign; right to left splits one term.
GenWord apply_R1(const GenWord& w, const PolyInt& p1, const PolyInt& p2, const PolyInt& g,
                 Direction dir = Direction::LeftToRight);
/// M_{2p,g} = M_{2g,p}.
GenWord apply_R2(const GenWord& w, const PolyInt& p, const PolyInt& g,
                 Direction dir = Direction::LeftToRight);
/// M_{x^2 p,g} = M_{p,x^2 g}.
GenWord apply_R3(const GenWord& w, const PolyInt& p, const PolyInt& g,
                 Direction dir = Direction::LeftToRight);
/// M_{2p^2 g,g} = M_{2p,g}.
GenWord apply_R4(const GenWord& w, const PolyInt& p, const PolyInt& g,
                 Direction dir = Direction::LeftToRight);

/// x -> x^n on every index and on the Q-part.
GenWord verschiebung(long n, const GenWord& w);

enum class Rule { R1, R2, R3, R4, QArith, IsoM0, Vn };

struct Step {
  Rule rule = Rule::R1;
  Direction dir = Direction::LeftToRight;
  PolyInt p;   // p1 for R1
  PolyInt p2;  // R1 only
  PolyInt g;
  PolyInt q;   // QArith
  long n = 0;  // Vn
};

std::string format(const Step& s);

struct DerivationScript {
  std::vector<Step> steps;
};

/// A script with its start and end words.
struct Derivation {
  DerivationScript script;
  GenWord start;
  GenWord end;
};

/// Line-oriented text form. START/END lines name the words:
///   START M c=<int> p=<poly> g=<poly>     START Q q=<poly>
/// and each step is one of
///   R1 p1= p2= g= [dir=lr|rl]   R2|R3|R4 p= g= [dir=lr|rl]
///   VN n=   ISO-M0 p= g=   QARITH q=
/// '#' starts a comment.
Derivation parse_derivation(std::string_view text);
std::string format(const Derivation& d);

GenWord apply_step(const GenWord& w, const Step& s, const GeneratorSet& gens = {});

struct ReplayResult {
  bool closed = false;
  std::optional<std::size_t> failed_step;  // 0-based
  std::string reason;
  GenWord final_word;
};

ReplayResult replay(const DerivationScript& script, const GenWord& start, const GenWord& end,
                    const GeneratorSet& gens = {});
inline ReplayResult replay(const Derivation& d, const GeneratorSet& gens = {}) {
  return replay(d.script, d.start, d.end, gens);
}

/// 4 [M_{p,g}] = 0.
Derivation cor1_derivation(const PolyInt& p, const PolyInt& g);
/// 2 (V_2 - 1) [M_{p,1}] = 0; p with nonnegative coefficients and p(0) = 0.
Derivation cor2_derivation(const PolyInt& p);
/// 2 ([M_{x,g}] - [M_{1,xg}]) = 0 for g = x^k.
Derivation cor3_derivation(unsigned k);
/// V_2 ([M_{x,g}] - [M_{1,xg}]) = 0.
Derivation cor4_derivation(const PolyInt& g);

/// Formal integer combination of linking-form generators N_{p,g}.
using NWord = std::map<GenIndex, long>;

/// Termwise N_{p,g} -> M_{p,g} on the span of V_n [N_{x,1}] and
/// V_n ([N_{x,x^k}] - [N_{1,x^{k+1}}]): indices (x^n, x^m) with n | m, n >= 1,
/// and (1, x^m) with m >= 1.
GenWord section_s(const NWord& target);

struct GroupContext {
  enum class Kind { C2, General };
  Kind kind = Kind::C2;
  bool normal_sylow2 = true;
  int sylow2_exponent = 2;
};

struct UNilAnswer {
  enum class Structure { Zero, ArfGroup, ThreeSummand };
  int residue = 0;
  Structure structure = Structure::Zero;
  std::vector<std::string> summands;
};

UNilAnswer unil_answer(long n, const GroupContext& context = {});
std::string format(const UNilAnswer& a);

}  // namespace unil
