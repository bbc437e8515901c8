#include <gtest/gtest.h>

#include <set>

#include "unil/verify.hpp"

namespace unil {
namespace {

CheckContext small_context(unsigned threads = 1) {
  CheckContext ctx;
  ctx.sweep = {2, {0, 1, 2}, threads};
  return ctx;
}

TEST(Glob, Matching) {
  EXPECT_TRUE(glob_match("*", "boundary.fixture"));
  EXPECT_TRUE(glob_match("boundary.*", "boundary.fixture"));
  EXPECT_FALSE(glob_match("boundary.*", "machine.relation1"));
  EXPECT_TRUE(glob_match("machine.relation?", "machine.relation4"));
  EXPECT_FALSE(glob_match("machine.relation?", "machine.alpha"));
  EXPECT_TRUE(glob_match("*.cor*", "witt.cor3"));
  EXPECT_FALSE(glob_match("", "x"));
}

TEST(Sweep, EnumeratesDistinctPolynomials) {
  EXPECT_EQ(sweep_polys(3, {0, 1, 2}).size(), 81u);
  EXPECT_EQ(sweep_polys(2, {0, 1, 1}).size(), 8u);
  EXPECT_EQ(sweep_polys(0, {-1, 0, 1}).size(), 3u);
}

TEST(Registry, IdsAreUniqueAndAnchored) {
  std::set<std::string> ids;
  for (const auto& c : check_registry()) {
    EXPECT_TRUE(ids.insert(c.id).second) << c.id;
    EXPECT_FALSE(c.anchor.empty()) << c.id;
  }
  for (const char* id : {"boundary.fixture", "machine.relation1", "witt.cor3", "witt.answer",
                         "formations.lift_minus", "forms.arf_P", "rings.duality_unit"})
    EXPECT_TRUE(ids.count(id)) << id;
}

TEST(Registry, FilterSelectsChecks) {
  const auto r = run_verification(small_context(), {"boundary.*", false});
  ASSERT_EQ(r.results.size(), 3u);
  for (const auto& c : r.results) EXPECT_EQ(c.id.rfind("boundary.", 0), 0u);
  EXPECT_TRUE(r.all_pass());
}

TEST(Registry, DeterministicAcrossThreadCounts) {
  const VerifyOptions opts{"*", false};
  CheckContext ctx = small_context(1);
  ctx.sweep.max_deg = 1;
  const auto one = run_verification(ctx, opts);
  ctx.sweep.threads = 4;
  const auto four = run_verification(ctx, opts);
  EXPECT_TRUE(one.all_pass()) << format_report(one);
  EXPECT_EQ(format_report(one, false), format_report(four, false));
}

TEST(Registry, SummaryFormat) {
  const auto r = run_verification(small_context(), {"witt.answer", false});
  const std::string s = format_summary(r);
  EXPECT_NE(s.find("check.witt.answer=pass\n"), std::string::npos);
  EXPECT_NE(s.find("check.witt.answer.seconds="), std::string::npos);
  EXPECT_NE(s.find("overall=pass\n"), std::string::npos);
}

TEST(Registry, MutatedGeneratorsFail) {
  const auto mutations = fixture_mutations();
  ASSERT_GE(mutations.size(), 10u);
  for (const auto& m : mutations) {
    CheckContext ctx = small_context();
    ctx.gens = m.gens;
    const auto r = run_verification(ctx, {"*", true});
    EXPECT_FALSE(r.all_pass()) << m.name;
    EXPECT_FALSE(r.results.back().pass);
  }
}

TEST(Registry, BrokenQIsCaughtByBoundaryFixture) {
  for (const auto& m : fixture_mutations()) {
    if (m.name[0] != 'Q') continue;
    CheckContext ctx = small_context();
    ctx.gens = m.gens;
    EXPECT_FALSE(run_verification(ctx, {"boundary.fixture", false}).all_pass()) << m.name;
  }
}

TEST(Registry, ReportMentionsFailure) {
  CheckContext ctx = small_context();
  ctx.gens = fixture_mutations().front().gens;
  const auto r = run_verification(ctx, {"formations.*", false});
  const std::string text = format_report(r, false);
  EXPECT_NE(text.find("FAIL "), std::string::npos);
  EXPECT_NE(text.find("first failure:"), std::string::npos);
  EXPECT_NE(text.find("overall: FAIL"), std::string::npos);
}

}  // namespace
}  // namespace unil
