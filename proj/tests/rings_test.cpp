#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <limits>

#include "support.hpp"
#include "unil/rings.hpp"
#include "unil/text.hpp"

namespace unil {
namespace {

using testing::Gen;
using Big = boost::multiprecision::cpp_int;

// --- Integer against cpp_int ---------------------------------------------------

Big to_big(const Integer& a) { return a.to_big(); }

TEST(Integer, MatchesCppIntAcrossOverflow) {
  Gen gen(1);
  const std::int64_t edges[] = {0, 1, -1, 2, -2,
                                std::numeric_limits<std::int64_t>::max(),
                                std::numeric_limits<std::int64_t>::min(),
                                std::numeric_limits<std::int64_t>::max() / 2 + 1,
                                std::int64_t{1} << 32, -(std::int64_t{1} << 32)};
  std::vector<Integer> values;
  for (auto e : edges) values.emplace_back(e);
  for (int i = 0; i < 40; ++i) values.emplace_back(static_cast<std::int64_t>(gen.bits()));
  // A few values past 64 bits.
  values.push_back(Integer(Big(1) << 80));
  values.push_back(Integer(-(Big(3) << 70)));

  for (const auto& a : values)
    for (const auto& b : values) {
      const Big ba = to_big(a), bb = to_big(b);
      EXPECT_EQ(to_big(a + b), ba + bb);
      EXPECT_EQ(to_big(a - b), ba - bb);
      EXPECT_EQ(to_big(a * b), ba * bb);
      EXPECT_EQ(a < b, ba < bb);
      EXPECT_EQ(a == b, ba == bb);
      if (!b.is_zero()) {
        EXPECT_EQ(to_big(a / b), ba / bb);
        EXPECT_EQ(to_big(a % b), ba % bb);
      }
    }
}

TEST(Integer, CanonicalAfterShrinking) {
  const Integer big(Big(1) << 70);
  const Integer back = big - Integer(Big(1) << 70) + Integer(5);
  EXPECT_EQ(back, Integer(5));
  EXPECT_EQ(back.str(), "5");
  EXPECT_TRUE((big - big).is_zero());
}

TEST(Integer, ParsesAndRejects) {
  EXPECT_EQ(Integer("123456789012345678901234567890").str(), "123456789012345678901234567890");
  EXPECT_THROW(Integer("12a"), ParseError);
  EXPECT_THROW((void)(Integer(1) / Integer(0)), NotDivisible);
}

// --- text grammar --------------------------------------------------------------

TEST(Text, RoundTripsPolynomials) {
  for (const char* s : {"1 - T", "2*x^3", "x + x^3", "-x", "0", "3 + 2*T*x - x^2"}) {
    const C2PolyElt p = parse_poly<C2PolyElt>(s);
    EXPECT_EQ(parse_poly<C2PolyElt>(format(p)), p) << s;
  }
  EXPECT_EQ(format(parse_poly<PolyInt>("x^3 + 2 + x")), "2 + x + x^3");
  EXPECT_EQ(format(parse_poly<PolyF2>("1 + 3*x + 2*x^2")), "1 + x");
  EXPECT_EQ(format(parse_poly<C2PolyElt>("1-T")), "1 - T");
}

TEST(Text, RejectsMalformedInput) {
  EXPECT_THROW(parse_poly<PolyInt>("T"), ParseError);
  EXPECT_THROW(parse_poly<PolyInt>("x^"), ParseError);
  EXPECT_THROW(parse_poly<PolyInt>("2x"), ParseError);
  EXPECT_THROW(parse_poly<PolyInt>(""), ParseError);
  EXPECT_THROW(parse_matrix<PolyInt>("1,2;3,4"), ParseError);
}

TEST(Text, MatrixRoundTrip) {
  const MatrixC2 m = parse_matrix<C2PolyElt>("[0, 2*x - 2*T*x; 1 - T, 1]");
  EXPECT_EQ(m.rows(), 2u);
  EXPECT_EQ(parse_matrix<C2PolyElt>(format(m)), m);
}

// --- ring maps -------------------------------------------------------------------

TEST(Rings, RimSquareCommutes) {
  Gen gen(2);
  for (int i = 0; i < 200; ++i) {
    const C2PolyElt a = gen.poly_c2(4, 5);
    EXPECT_EQ(apply_j(apply_i(Sign::Minus, a)), apply_j(apply_i(Sign::Plus, a)));
    EXPECT_EQ(apply_k(a), apply_j(apply_i(Sign::Plus, a)));
  }
}

TEST(Rings, PullbackIsomorphism) {
  Gen gen(3);
  for (int i = 0; i < 200; ++i) {
    const C2PolyElt a = gen.poly_c2(4, 5);
    auto [u, v] = pullback_iso(a);
    EXPECT_EQ(pullback_inverse(u, v), a);
  }
  // (m + nT) -> (m - n, m + n) on a hand example.
  auto [u, v] = pullback_iso(parse_poly<C2PolyElt>("3 + 2*T*x"));
  EXPECT_EQ(u, parse_poly<PolyInt>("3 - 2*x"));
  EXPECT_EQ(v, parse_poly<PolyInt>("3 + 2*x"));
  EXPECT_THROW(pullback_inverse(PolyInt(1), PolyInt(2)), NotInImage);
}

TEST(Rings, RingMapsAreMultiplicative) {
  Gen gen(4);
  for (int i = 0; i < 100; ++i) {
    const C2PolyElt a = gen.poly_c2(3, 4), b = gen.poly_c2(3, 4);
    for (Sign s : {Sign::Minus, Sign::Plus})
      EXPECT_EQ(apply_i(s, a * b), apply_i(s, a) * apply_i(s, b));
    EXPECT_EQ(apply_k(a * b), apply_k(a) * apply_k(b));
  }
}

TEST(Rings, Units) {
  EXPECT_TRUE(is_unit(PolyInt(-1)));
  EXPECT_FALSE(is_unit(PolyInt(2)));
  EXPECT_FALSE(is_unit(testing::x_pow(1)));
  EXPECT_TRUE(is_unit(testing::t_elt()));
  EXPECT_TRUE(is_unit(-testing::t_elt()));
  EXPECT_FALSE(is_unit(C2PolyElt(1) - testing::t_elt()));
  EXPECT_TRUE(is_unit(PolyF2(1)));
}

TEST(Rings, DualityUnitSquaresToOneModTwo) {
  // Oracle: expand ((1-T)pg - 1)^2 - 1 and check every coefficient is even.
  const C2PolyElt u = C2PolyElt(1) - testing::t_elt();
  for (const auto& p : testing::all_polys(2, {0, 1, 2}))
    for (const auto& g : testing::all_polys(2, {0, 1, 2})) {
      if (!(p * g).coeff(0).is_zero()) continue;
      const C2PolyElt e = u * testing::lift_c2(p * g) - C2PolyElt(1);
      const C2PolyElt rest = e * e - C2PolyElt(1);
      for (const C2Elt& c : rest.coeffs()) {
        EXPECT_FALSE(c.m.is_odd());
        EXPECT_FALSE(c.n.is_odd());
      }
      EXPECT_EQ(reduce_mod2(e * e), (ModTwoC2{PolyF2(1), PolyF2()}));
      EXPECT_TRUE(is_unit_mod2(e));
    }
}

TEST(Rings, InverseModTwo) {
  Gen gen(5);
  for (int i = 0; i < 100; ++i) {
    C2PolyElt a = gen.poly_c2(3, 3);
    a = a - C2PolyElt::constant(a.coeff(0)) + C2PolyElt(1);  // constant term 1: unit mod 2
    if (!is_unit_mod2(a)) continue;
    EXPECT_EQ(reduce_mod2(a) * inverse_mod2(a), (ModTwoC2{PolyF2(1), PolyF2()}));
  }
}

// --- linear algebra --------------------------------------------------------------

TEST(Matrix, DeterminantAgreesWithLeibniz) {
  Gen gen(6);
  for (std::size_t n = 1; n <= 5; ++n)
    for (int i = 0; i < 20; ++i) {
      const MatrixZ m = gen.matrix<PolyInt>(n, n, [&] { return gen.poly_int(2, 3); });
      EXPECT_EQ(det(m), testing::leibniz_det(m));
      const MatrixC2 c = gen.matrix<C2PolyElt>(n, n, [&] { return gen.poly_c2(1, 2); });
      EXPECT_EQ(det(c), testing::leibniz_det(c));
    }
}

TEST(Matrix, AdjugateIdentity) {
  Gen gen(7);
  for (std::size_t n = 1; n <= 4; ++n) {
    const MatrixZ m = gen.matrix<PolyInt>(n, n, [&] { return gen.poly_int(2, 3); });
    EXPECT_EQ(adjugate(m) * m, MatrixZ::scalar(n, det(m)));
  }
}

TEST(Matrix, SolveRightAndUnimodularInverse) {
  Gen gen(8);
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = static_cast<std::size_t>(gen.range(1, 4));
    const MatrixZ u = gen.unimodular<PolyInt>(n, 6, [&] { return gen.poly_int(2, 2); });
    const MatrixZ x = gen.matrix<PolyInt>(n, 2, [&] { return gen.poly_int(2, 3); });
    EXPECT_TRUE(is_unit(det(u)));
    EXPECT_EQ(solve_right(u, u * x), x);
    EXPECT_EQ(inverse_unimodular(u) * u, MatrixZ::identity(n));
  }
  const MatrixZ two = MatrixZ::scalar(2, PolyInt(2));
  EXPECT_THROW(solve_right(two, MatrixZ::identity(2)), NotDivisible);
  EXPECT_THROW(inverse_unimodular(two), PreconditionError);
}

TEST(Matrix, ConjTransposeIsTransposeHere) {
  // The involution fixes x and T, so conj_transpose is the plain transpose.
  const MatrixC2 m = parse_matrix<C2PolyElt>("[1, T*x; x^2, 2 - T]");
  EXPECT_EQ(m.conj_transpose(), m.transpose());
}

}  // namespace
}  // namespace unil
