#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "ssdlat/generation.hpp"
#include "ssdlat/verification.hpp"

using namespace ssdlat;

namespace {

const Corpus& corpus10() {
  static const Corpus c = build_corpus(10);
  return c;
}

}  // namespace

TEST(Corpus, ExhaustiveSizesAreComplete) {
  const auto& c = corpus10();
  for (std::size_t n = 1; n <= 10; ++n) {
    EXPECT_TRUE(c.complete[n]);
    EXPECT_EQ(BigInt(static_cast<unsigned long>(c.by_size[n].size())), c.rows[n - 1].N);
  }
}

TEST(Corpus, StrideSamplingAboveCap) {
  const Corpus c = build_corpus(14, {10, 500});
  EXPECT_TRUE(c.complete[10]);
  EXPECT_TRUE(c.complete[11]);  // N(11) = 157
  EXPECT_FALSE(c.complete[13]);  // N(13) = 614
  EXPECT_LE(c.by_size[14].size(), 500u);
  EXPECT_GE(c.by_size[14].size(), 400u);
  EXPECT_EQ(build_corpus(14, {10, 500}).codes(14), c.codes(14));
}

TEST(Checks, AllPassToTen) {
  for (const auto& name : check_names()) {
    const auto r = run_check(name, corpus10());
    EXPECT_TRUE(r.pass()) << format_check(r);
    EXPECT_GT(r.checked, 0u) << name;
  }
}

TEST(Checks, AllPassOnSamplesToFourteen) {
  const Corpus c = build_corpus(14, {10, 10000});
  for (const auto& name : check_names()) EXPECT_TRUE(run_check(name, c).pass()) << name;
}

TEST(Checks, UnknownName) { EXPECT_THROW(run_check("nope", corpus10()), Error); }

TEST(Checks, DichotomyOnFixtures) {
  Corpus c;
  c.n_max = 5;
  c.by_size.resize(6);
  c.complete.assign(6, false);
  c.by_size[5] = {fixtures::sqbot(), fixtures::sqtop()};
  EXPECT_TRUE(check_dichotomy(c).pass());
  EXPECT_EQ(check_dichotomy(c).checked, 2u);
}

TEST(Checks, GkCatchesAForeignDiagram) {
  Corpus c = corpus10();
  c.by_size[6].push_back(fixtures::hex());
  const auto r = check_gk(c, 0);
  EXPECT_FALSE(r.pass());
  EXPECT_EQ(r.counterexample->code, render_code(fixtures::hex()));
}

TEST(Checks, WSetNoticesMissingDiagram) {
  Corpus c = corpus10();
  auto& seven = c.by_size[7];
  const auto victim = std::find_if(seven.begin(), seven.end(),
                                   [](const Diagram& d) { return left_rank(d) == 0 && !(mirror(d) == d); });
  ASSERT_NE(victim, seven.end());
  seven.erase(victim);
  EXPECT_FALSE(check_w_set(c).pass());
  EXPECT_FALSE(check_partitions(c).pass());
  EXPECT_FALSE(check_mirror(c).pass());
}

TEST(Checks, WSetNoticesWrongRecurrenceRow) {
  Corpus c = corpus10();
  c.rows[8].W += 1;
  const auto r = check_w_set(c);
  EXPECT_FALSE(r.pass());
  EXPECT_NE(r.counterexample->witness.find("W(9)"), std::string::npos);
}

TEST(Checks, TrunkOfSquareIsTwoChain) {
  Corpus c;
  c.n_max = 4;
  c.by_size.resize(5);
  c.complete.assign(5, false);
  c.by_size[4] = {fixtures::square()};
  const auto r = check_trunk(c);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.checked, 1u);
}

TEST(Checks, CornerIdealCatchesNonSlimInput) {
  Corpus c;
  c.n_max = 5;
  c.by_size.resize(6);
  c.complete.assign(6, false);
  c.by_size[5] = {fixtures::m3()};
  EXPECT_FALSE(check_boundary(c).pass() && check_corner_ideal(c).pass() && check_gk(c, 0).pass() &&
               check_mirror(c).pass() && check_adjunction(c).pass());
}

TEST(Checks, MutantsAreCaught) {
  const auto r = check_mutants(corpus10());
  EXPECT_TRUE(r.pass());
  EXPECT_GT(r.checked, 3000u);
}

TEST(Checks, MutantsFlagAnIncompleteSet) {
  Corpus c = corpus10();
  c.by_size[6].erase(c.by_size[6].begin());
  EXPECT_FALSE(check_mutants(c).pass());
}

TEST(Checks, ReportLineFormat) {
  CheckReport ok{"gk", 1, 8, 5, std::nullopt};
  EXPECT_EQ(format_check(ok), "CHECK gk n<=8 PASS");
  CheckReport bad = ok;
  bad.fail("SSD1 n=1 L=1 E=", "x");
  EXPECT_EQ(format_check(bad), "CHECK gk n<=8 FAIL witness=SSD1 n=1 L=1 E= (x)");
}
