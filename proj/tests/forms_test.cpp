#include <gtest/gtest.h>

#include "support.hpp"
#include "unil/forms.hpp"
#include "unil/text.hpp"

namespace unil {
namespace {

using testing::Gen;

PolyF2 f2(const char* s) { return parse_poly<PolyF2>(s); }

TEST(ArfNormalize, HandExamples) {
  EXPECT_EQ(format(arf_normalize(f2("x^2"))), "x");
  EXPECT_EQ(format(arf_normalize(f2("x^4"))), "x");
  EXPECT_EQ(format(arf_normalize(f2("x^6"))), "x^3");
  EXPECT_TRUE(arf_normalize(f2("x + x^2")).is_zero());
  EXPECT_EQ(format(arf_normalize(f2("1 + x^3"))), "1 + x^3");
  EXPECT_TRUE(arf_normalize(f2("1 + x^3")).constant());
  EXPECT_FALSE(arf_normalize(f2("x^3")).constant());
}

// Brute force: q and its normal form differ by some f^2 + f, the normal form
// has the documented support, and distinct normal forms are inequivalent.
TEST(ArfNormalize, AgreesWithQuotientOracleThroughDegree12) {
  const auto image = testing::artin_schreier_image(6);
  for (const PolyF2& q : testing::all_f2(12)) {
    const PolyF2 r = arf_normalize(q).representative();
    ASSERT_TRUE(testing::is_arf_normal(r)) << format(q);
    ASSERT_TRUE(image.count(q + r)) << format(q);
  }
  // No nonzero normal-form polynomial of degree <= 12 lies in the image.
  for (const PolyF2& r : testing::all_f2(12))
    if (!r.is_zero() && testing::is_arf_normal(r)) ASSERT_FALSE(image.count(r)) << format(r);
}

TEST(ArfClass, AdditionIsWellDefined) {
  Gen gen(11);
  for (int i = 0; i < 200; ++i) {
    const PolyF2 a = gen.poly_f2(8), b = gen.poly_f2(8);
    EXPECT_EQ(arf_normalize(a) + arf_normalize(b), arf_normalize(a + b));
  }
}

TEST(Arf, OfPq1IsClassOfQ) {
  Gen gen(12);
  for (int i = 0; i < 50; ++i) {
    const PolyF2 q = gen.poly_f2(10);
    EXPECT_EQ(arf(make_P(q, PolyF2(1))), arf_normalize(q)) << format(q);
  }
  EXPECT_EQ(format(arf(make_P(f2("x"), PolyF2(1)))), "x");
}

TEST(Arf, OfPpgIsClassOfProduct) {
  Gen gen(13);
  for (int i = 0; i < 100; ++i) {
    const PolyF2 p = gen.poly_f2(5), g = gen.poly_f2(5);
    EXPECT_EQ(arf(make_P(p, g)), arf_normalize(p * g));
  }
}

TEST(Arf, HyperbolicIsZeroAndSumsAdd) {
  for (std::size_t r = 1; r <= 4; ++r) EXPECT_TRUE(arf(hyperbolic<PolyF2>(r)).is_zero());
  Gen gen(14);
  for (int i = 0; i < 50; ++i) {
    const FormF2 a = make_P(gen.poly_f2(4), gen.poly_f2(4));
    const FormF2 b = make_P(gen.poly_f2(4), gen.poly_f2(4));
    EXPECT_EQ(arf(direct_sum(a, b)), arf(a) + arf(b));
    EXPECT_TRUE(witt_equal(direct_sum(a, negate(a)), hyperbolic<PolyF2>(2)));
  }
}

TEST(Arf, InvariantUnderUnimodularBasisChange) {
  Gen gen(15);
  for (int i = 0; i < 100; ++i) {
    FormF2 f = make_P(gen.poly_f2(4), gen.poly_f2(4));
    if (gen.coin()) f = direct_sum(f, make_P(gen.poly_f2(3), gen.poly_f2(3)));
    const MatrixF2 u = gen.unimodular<PolyF2>(f.rank(), 8, [&] { return gen.poly_f2(2); });
    ASSERT_TRUE(is_unit(det(u)));
    EXPECT_EQ(arf(pullback(f, u)), arf(f));
  }
}

TEST(SymplecticReduce, ProducesHyperbolicPairs) {
  Gen gen(16);
  for (int i = 0; i < 50; ++i) {
    FormF2 f = direct_sum(make_P(gen.poly_f2(3), gen.poly_f2(3)),
                          make_P(gen.poly_f2(3), gen.poly_f2(3)));
    const MatrixF2 u = gen.unimodular<PolyF2>(4, 6, [&] { return gen.poly_f2(2); });
    f = pullback(f, u);
    const MatrixF2 c = symplectic_reduce(f).change;
    EXPECT_TRUE(is_unit(det(c)));
    EXPECT_EQ(c.conj_transpose() * f.symmetrization() * c, standard_symplectic(2));
  }
}

TEST(Arf, RejectsSingularForms) {
  // Over F2 every psi + psi^* has zero diagonal; rank one is therefore singular.
  const FormF2 rank_one{MatrixF2{{PolyF2(1)}}, 1};
  EXPECT_TRUE(is_even(rank_one));
  EXPECT_THROW(arf(rank_one), Error);
  const FormF2 singular{MatrixF2{{PolyF2(), f2("x")}, {PolyF2(), PolyF2()}}, 1};
  EXPECT_THROW(arf(singular), Error);
}

}  // namespace
}  // namespace unil
