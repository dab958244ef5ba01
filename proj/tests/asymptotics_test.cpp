#include <gtest/gtest.h>

#include <cmath>

#include "ssdlat/asymptotics.hpp"

using namespace ssdlat;

namespace {

const std::vector<CountRow>& rows1000() {
  static const auto rows = count_exact(1000);
  return rows;
}

const CheckReport& link(const std::vector<CheckReport>& reports, const std::string& name) {
  for (const auto& r : reports)
    if (r.name == name) return r;
  throw std::runtime_error("no link " + name);
}

}  // namespace

TEST(Params, AnchorFifty) {
  const auto p = analysis_params(50);
  EXPECT_DOUBLE_EQ(p.z0, 0.375);
  EXPECT_DOUBLE_EQ(p.mu, 4.8);
  EXPECT_DOUBLE_EQ(p.nu, 6.0);
  EXPECT_DOUBLE_EQ(p.nu_strict, 7.5);
  EXPECT_THROW(analysis_params(4), Error);
}

TEST(Params, LargeAnchorUsesEnvelope) {
  const auto p = analysis_params(1000);
  EXPECT_NEAR(p.z0, 3.0 * std::pow(0.8, 30.0), 1e-15);
  EXPECT_GT(p.z0, 0.0);
}

TEST(Kappa, Examples) {
  const auto rows = count_exact(10);
  EXPECT_EQ(kappa(rows, 4), mpq_class(2));
  EXPECT_EQ(kappa(rows, 5), mpq_class(3, 2));
  EXPECT_EQ(kappa(rows, 2), mpq_class(1));
  EXPECT_THROW(kappa(rows, 11), Error);
}

TEST(Kappa, BoundsHoldToThousand) {
  const auto r = check_kappa_bounds(rows1000());
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.n_max, 1000u);
}

TEST(Kappa, BoundsCatchBadRow) {
  auto rows = count_exact(20);
  rows[14].N = rows[13].N;  // kappa_15 = 1
  EXPECT_FALSE(check_kappa_bounds(rows).pass());
}

TEST(Primitive, ValuesAndLimit) {
  EXPECT_NEAR(primitive(49.0), -21.58098, 1e-4);
  EXPECT_NEAR(primitive(50.0), -21.37292, 1e-4);
  EXPECT_LT(std::abs(primitive(1e9)), 1e-6);
  EXPECT_LT(primitive(1.0), primitive(2.0));
  EXPECT_THROW(primitive(0.0), Error);
  EXPECT_LT(primitive_derivative_residual(25.0, 1e-4), 1e-6);
}

TEST(Primitive, CentralDifferencesOnLogGrid) {
  for (int i = 0; i <= 400; ++i) {
    const double x = std::pow(10.0, 4.0 * i / 400.0);
    if (x <= 1.0) continue;
    const double step = 1e-3 * std::sqrt(x);
    EXPECT_LT(primitive_derivative_residual(x, step) / decay(x), 1e-6) << x;
  }
}

TEST(RemarkBounds, PublishedAnchor) {
  const auto c = remark_bounds(50, BigInt("81287566224125"));
  EXPECT_NEAR(c.hi, 0.0721978621102126, 1e-15);
  EXPECT_LE(c.hi, 0.073);
  EXPECT_GE(c.lo, 1e-59);
  EXPECT_LE(c.lo, 1e-56);
  EXPECT_NEAR(c.lo / 4.2026e-58, 1.0, 1e-4);
  EXPECT_EQ(format_interval(c).substr(format_interval(c).find(" C_upper")), " C_upper,0.07219786211021262 m,50 variant,proof");
}

TEST(RemarkBounds, SmallAnchorUpperIsExact) {
  const auto c = remark_bounds(5, 3);
  EXPECT_EQ(c.hi, 0.09375);
  EXPECT_NE(format_interval(c).find("C_upper,0.09375 "), std::string::npos);
}

TEST(RemarkBounds, RemarkVariantIsNotBelowProof) {
  const auto& rows = rows1000();
  for (std::size_t m = 5; m <= 200; ++m) {
    const auto proof = remark_bounds(m, rows[m - 1].N, BoundVariant::Proof);
    const auto remark = remark_bounds(m, rows[m - 1].N, BoundVariant::Remark);
    EXPECT_LE(proof.lo, remark.lo) << m;
    EXPECT_EQ(proof.hi, remark.hi) << m;
  }
}

TEST(RemarkBounds, IntervalsIntersectAndStayInUnit) {
  const auto& rows = rows1000();
  double lo = 0.0, hi = 1.0;
  for (std::size_t m = 5; m <= 1000; m += 5) {
    const auto c = remark_bounds(m, rows[m - 1].N);
    EXPECT_GT(c.lo, 0.0);
    EXPECT_LE(c.lo, c.hi);
    EXPECT_LT(c.hi, 1.0);
    lo = std::max(lo, c.lo);
    hi = std::min(hi, c.hi);
  }
  EXPECT_LE(lo, hi);
}

TEST(RemarkBounds, Errors) {
  EXPECT_THROW(remark_bounds(4, 2), Error);
  EXPECT_THROW(remark_bounds(6, 0), Error);
  EXPECT_THROW(parse_variant("both"), Error);
}

TEST(Estimate, ExactRowsMatchRemarkBounds) {
  const auto rows = count_exact(50);
  const auto c = estimate_constant(rows, 50);
  EXPECT_EQ(c.hi, remark_bounds(50, rows.back().N).hi);
  EXPECT_THROW(estimate_constant(rows, 51), Error);
}

TEST(Estimate, UpperNonincreasingLowerNondecreasing) {
  const auto& rows = rows1000();
  auto prev = estimate_constant(rows, 100);
  for (std::size_t n = 101; n <= 1000; ++n) {
    const auto c = estimate_constant(rows, n);
    EXPECT_LE(c.hi, prev.hi) << n;
    EXPECT_GE(c.lo, prev.lo) << n;
    prev = c;
  }
}

TEST(LogLemma, DenseGrid) {
  std::vector<double> grid;
  for (int i = 1; i <= 100000; ++i) grid.push_back(0.375 * i / 100000.0);
  const auto r = log_lemma_check(grid, 0.375);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.checked, 100000u);
  EXPECT_NEAR(-std::log1p(-0.375), 0.4700, 1e-4);
  const double outside[] = {0.5};
  EXPECT_THROW(log_lemma_check(outside, 0.375), Error);
}

// The ceiling step of the tail chain compares termwise in the wrong direction;
// every other link and the end-to-end bound hold on the data.
TEST(ProofChain, LinksFromSmallAnchor) {
  const auto reports = proof_chain_check(count_exact(200), 5);
  ASSERT_EQ(reports.size(), 8u);
  for (const char* name : {"tail-positive", "log-link", "envelope-link", "integral-link", "tail-link",
                           "corrected-ceiling-link", "end-to-end"}) {
    EXPECT_TRUE(link(reports, name).pass()) << name;
    EXPECT_EQ(link(reports, name).checked, 195u) << name;
  }
  const auto& ceiling = link(reports, "ceiling-link");
  EXPECT_FALSE(ceiling.pass());
  EXPECT_EQ(ceiling.counterexample->witness, "n=6");
}

TEST(ProofChain, LinksFromPublishedAnchor) {
  const auto reports = proof_chain_check(rows1000(), 50);
  EXPECT_FALSE(link(reports, "ceiling-link").pass());
  EXPECT_EQ(link(reports, "ceiling-link").counterexample->witness, "n=51");
  EXPECT_TRUE(link(reports, "corrected-ceiling-link").pass());
  EXPECT_TRUE(link(reports, "end-to-end").pass());
  EXPECT_TRUE(link(reports, "tail-link").pass());
}

TEST(ProofChain, SingleStep) {
  const auto rows = count_exact(10);
  const auto reports = proof_chain_check(rows, 9);
  EXPECT_EQ(link(reports, "log-link").checked, 1u);
  EXPECT_TRUE(link(reports, "end-to-end").pass());
}
