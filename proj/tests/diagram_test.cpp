#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ssdlat/generation.hpp"

using namespace ssdlat;
using fixtures::chain_of;
using fixtures::hex;
using fixtures::m3;
using fixtures::sqbot;
using fixtures::square;
using fixtures::sqtop;

namespace {

ErrorKind build_error(std::vector<std::uint32_t> levels, const GapEdges& gaps) {
  try {
    build(std::move(levels), gaps);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "build accepted the input";
  return ErrorKind::DomainError;
}

}  // namespace

TEST(Build, AcceptsSquareAndM3) {
  EXPECT_EQ(square().size(), 4u);
  EXPECT_EQ(square().length(), 2u);
  EXPECT_EQ(m3().size(), 5u);
}

TEST(Build, RejectsCrossingEdges) {
  EXPECT_EQ(build_error({1, 2, 2, 1}, {{{1, 1}, {1, 2}}, {{1, 2}, {2, 1}}, {{1, 1}, {2, 1}}}), ErrorKind::Crossing);
}

TEST(Build, RejectsUnboundedAndMalformed) {
  EXPECT_EQ(build_error({2, 1}, {{{1, 1}, {2, 1}}}), ErrorKind::NotBoundedPoset);
  EXPECT_EQ(build_error({1, 2, 1}, {{{1, 1}}, {{1, 1}, {2, 1}}}), ErrorKind::NotBoundedPoset);
  EXPECT_EQ(build_error({1, 1}, {{{1, 2}}}), ErrorKind::Malformed);
  EXPECT_EQ(build_error({1, 1}, {{{1, 1}, {1, 1}}}), ErrorKind::Malformed);
  EXPECT_EQ(build_error({1, 0, 1}, {{}, {}}), ErrorKind::Malformed);
  EXPECT_EQ(build_error({1, 1, 1}, {{{1, 1}}}), ErrorKind::Malformed);
}

TEST(Build, BowtieIsReportedAsCrossing) {
  // a bounded noncrossing diagram is always a lattice, so the bowtie fails planarity first
  EXPECT_EQ(build_error({1, 2, 2, 1}, {{{1, 1}, {1, 2}}, {{1, 1}, {1, 2}, {2, 1}, {2, 2}}, {{1, 1}, {2, 1}}}),
            ErrorKind::Crossing);
}

TEST(Order, SquareJoinMeet) {
  const auto d = square();
  const NodeRef bottom{0, 1}, a{1, 1}, b{1, 2}, top{2, 1};
  EXPECT_EQ(join(d, a, b), top);
  EXPECT_EQ(meet(d, a, b), bottom);
  EXPECT_TRUE(leq(d, bottom, top));
  EXPECT_FALSE(leq(d, a, b));
  EXPECT_TRUE(covers(d, bottom, a));
  EXPECT_FALSE(covers(d, bottom, top));
}

TEST(Order, HexJoinMeet) {
  const auto d = hex();
  EXPECT_EQ(join(d, {1, 1}, {1, 2}), d.top());
  EXPECT_EQ(meet(d, {2, 1}, {2, 2}), d.bottom());
}

TEST(Order, AgreesWithNaiveClosureOnAllSmallLattices) {
  std::size_t pairs = 0;
  for (std::size_t n = 1; n <= 7; ++n)
    for (const auto& d : brute_force_lattices(n)) {
      const fixtures::NaiveOrder oracle(d);
      const auto& order = d.order();
      for (std::size_t u = 0; u < d.size(); ++u)
        for (std::size_t v = 0; v < d.size(); ++v, ++pairs) {
          ASSERT_EQ(order.leq(u, v), oracle.le[u][v]) << render_code(d);
          ASSERT_EQ(order.join(u, v), oracle.join(u, v)) << render_code(d);
          ASSERT_EQ(order.meet(u, v), oracle.meet(u, v)) << render_code(d);
        }
      EXPECT_EQ(is_semimodular(d), oracle.semimodular()) << render_code(d);
      EXPECT_EQ(is_slim(d), oracle.slim()) << render_code(d);
    }
  EXPECT_GT(pairs, 1000u);
}

TEST(Predicates, Semimodularity) {
  EXPECT_TRUE(is_semimodular(square()));
  EXPECT_FALSE(is_semimodular(hex()));
  EXPECT_TRUE(is_semimodular(m3()));
}

TEST(Predicates, Slimness) {
  EXPECT_EQ(join_irreducibles(m3()).size(), 3u);
  EXPECT_FALSE(is_slim(m3()));
  EXPECT_TRUE(is_slim(chain_of(5)));
  EXPECT_EQ(join_irreducibles(chain_of(5)).size(), 4u);
  EXPECT_EQ(join_irreducibles(hex()).size(), 4u);
  EXPECT_TRUE(is_slim(hex()));
}

TEST(Cells, SquareHexM3) {
  const auto sq = cells(square());
  ASSERT_EQ(sq.size(), 1u);
  EXPECT_EQ(sq[0].element_count(), 4u);
  EXPECT_TRUE(is_four_cell(square()));
  EXPECT_TRUE(gk_condition(square()));

  const auto hx = cells(hex());
  ASSERT_EQ(hx.size(), 1u);
  EXPECT_EQ(hx[0].element_count(), 6u);
  EXPECT_EQ(hx[0].left, (std::vector<NodeRef>{{0, 1}, {1, 1}, {2, 1}, {3, 1}}));
  EXPECT_EQ(hx[0].right, (std::vector<NodeRef>{{0, 1}, {1, 2}, {2, 2}, {3, 1}}));
  EXPECT_FALSE(is_four_cell(hex()));

  const auto m = cells(m3());
  ASSERT_EQ(m.size(), 2u);
  for (const auto& c : m) {
    EXPECT_EQ(c.element_count(), 4u);
    EXPECT_EQ(c.bottom, (NodeRef{0, 1}));
    EXPECT_EQ(c.top, (NodeRef{2, 1}));
  }
  EXPECT_TRUE(gk_condition(m3()));
  EXPECT_TRUE(cells(chain_of(4)).empty());
}

TEST(Boundaries, Fixtures) {
  const auto sq = boundaries(square());
  EXPECT_EQ(sq.left, (std::vector<NodeRef>{{0, 1}, {1, 1}, {2, 1}}));
  EXPECT_EQ(sq.right, (std::vector<NodeRef>{{0, 1}, {1, 2}, {2, 1}}));
  EXPECT_EQ(boundaries(sqtop()).left, (std::vector<NodeRef>{{0, 1}, {1, 1}, {2, 1}, {3, 1}}));
  const auto c = boundaries(chain_of(4));
  EXPECT_EQ(c.left, c.right);
  EXPECT_EQ(c.left.size(), 4u);
}

TEST(Corners, Fixtures) {
  EXPECT_EQ(corner_left(chain_of(5)), (NodeRef{0, 1}));
  EXPECT_EQ(left_rank(chain_of(5)), 0u);
  EXPECT_EQ(corner_left(square()), (NodeRef{1, 1}));
  EXPECT_EQ(corner_right(square()), (NodeRef{1, 2}));
  EXPECT_EQ(right_rank(square()), 1u);
  EXPECT_EQ(corner_left(sqtop()), (NodeRef{1, 1}));
  EXPECT_EQ(corner_right(sqtop()), (NodeRef{1, 2}));
  EXPECT_EQ(corner_left(single_element()), (NodeRef{0, 1}));
  EXPECT_EQ(left_rank(sqbot()), 0u);
  EXPECT_EQ(right_rank(sqbot()), 0u);
}

TEST(Corners, DoublyIrreducibleConventions) {
  EXPECT_TRUE(is_doubly_irreducible(chain_of(3), {0, 1}));
  EXPECT_FALSE(is_doubly_irreducible(square(), {0, 1}));
  EXPECT_FALSE(is_doubly_irreducible(chain_of(3), {2, 1}));
  EXPECT_TRUE(is_doubly_irreducible(single_element(), {0, 1}));
}

TEST(Mirror, FixturesAndDuality) {
  EXPECT_EQ(mirror(square()), square());
  EXPECT_EQ(mirror(chain_of(4)), chain_of(4));
  const auto d = sqtop();
  const auto m = mirror(d);
  EXPECT_EQ(corner_left(m), mirror(d, corner_right(d)));
  EXPECT_EQ(left_rank(m), right_rank(d));
  EXPECT_EQ(mirror(m), d);
}

TEST(Code, SquareRoundTrip) {
  const std::string code = "SSD1 n=4 L=1,2,1 E=0:1-1,1-2;1:1-1,2-1";
  EXPECT_EQ(render_code(square()), code);
  EXPECT_EQ(parse_code(code), square());
  EXPECT_EQ(parse_code(code + "\n"), square());
  EXPECT_EQ(parse_code("SSD1 n=3 L=1,1,1 E=0:1-1;1:1-1"), chain_of(3));
  EXPECT_EQ(render_code(single_element()), "SSD1 n=1 L=1 E=");
  EXPECT_EQ(parse_code("SSD1 n=1 L=1 E="), single_element());
}

TEST(Code, RoundTripsEveryLattice) {
  for (std::size_t n = 1; n <= 8; ++n)
    for (const auto& d : brute_force_lattices(n)) EXPECT_EQ(parse_code(render_code(d)), d);
}

TEST(Code, ParseErrorsCarryPosition) {
  const char* bad[] = {
      "SSD2 n=4 L=1,2,1 E=0:1-1,1-2;1:1-1,2-1",
      "SSD1 n=5 L=1,2,1 E=0:1-1,1-2;1:1-1,2-1",
      "SSD1 n=4 L=1,2,1 E=0:1-2,1-1;1:1-1,2-1",
      "SSD1 n=4 L=1,2,1 E=0:1-1,1-2;1:1-1,2-1;",
      "SSD1 n=4 L=1,02,1 E=0:1-1,1-2;1:1-1,2-1",
      "SSD1  n=4 L=1,2,1 E=0:1-1,1-2;1:1-1,2-1",
  };
  for (const char* text : bad) {
    try {
      parse_code(text, 7);
      ADD_FAILURE() << text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), 7u) << text;
      EXPECT_GE(e.column(), 1u) << text;
    }
  }
  EXPECT_THROW(parse_code("SSD1 n=4 L=1,2,2 E=0:1-1,1-2;1:1-1,2-2"), Error);
}
