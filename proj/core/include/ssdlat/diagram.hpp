#pragma once

// Planar leveled lattice diagrams.
//
// A diagram is stored as a stack of levels (level 0 at the bottom), each level
// ordered left to right, with cover edges joining only adjacent levels. Two
// diagrams are similar exactly when their level sizes and gap edges agree, so
// the canonical code doubles as the similarity-class key.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ssdlat/error.hpp"

namespace ssdlat {

/// A node addressed by level (0 = bottom) and 1-based position within the level.
struct NodeRef {
  std::uint32_t level = 0;
  std::uint32_t pos = 1;

  friend auto operator<=>(const NodeRef&, const NodeRef&) = default;
};

std::string to_string(NodeRef node);

/// A cover edge inside one gap: the `lower`-th node of level g is covered by
/// the `upper`-th node of level g + 1. Both positions are 1-based.
struct Edge {
  std::uint32_t lower = 1;
  std::uint32_t upper = 1;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

using GapEdges = std::vector<std::vector<Edge>>;

class OrderTable;
class Diagram;

namespace detail {
// Builds a diagram from parts already known to be valid. Used by the surgery
// operations of the generator, which preserve every invariant by construction.
Diagram make_trusted(std::vector<std::uint32_t> level_sizes, std::vector<Edge> edges,
                     std::vector<std::uint32_t> gap_offsets);
}  // namespace detail

/// Immutable validated diagram. Copies share the lazily built order table.
class Diagram {
 public:
  std::size_t size() const noexcept { return node_offsets_.back(); }
  /// Number of levels minus one; equals the lattice length.
  std::size_t length() const noexcept { return level_sizes_.size() - 1; }
  std::size_t level_count() const noexcept { return level_sizes_.size(); }
  std::uint32_t level_size(std::size_t level) const { return level_sizes_.at(level); }
  std::span<const std::uint32_t> level_sizes() const noexcept { return level_sizes_; }

  /// Edges of gap g (between levels g and g + 1), sorted by (lower, upper).
  std::span<const Edge> gap(std::size_t g) const;
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const std::uint32_t> gap_offsets() const noexcept { return gap_offsets_; }
  GapEdges gap_edges() const;

  NodeRef bottom() const noexcept { return {0, 1}; }
  NodeRef top() const noexcept { return {static_cast<std::uint32_t>(length()), 1}; }
  bool contains(NodeRef node) const noexcept;

  /// Flat index, level-major and left to right within a level.
  std::size_t index(NodeRef node) const;
  NodeRef node(std::size_t index) const;

  /// Covers ordered left to right.
  std::vector<NodeRef> upper_covers(NodeRef node) const;
  std::vector<NodeRef> lower_covers(NodeRef node) const;
  std::size_t upper_degree(NodeRef node) const;
  std::size_t lower_degree(NodeRef node) const;

  /// Reachability, meet and join tables, built once on first use.
  const OrderTable& order() const;

  friend bool operator==(const Diagram& a, const Diagram& b) noexcept {
    return a.level_sizes_ == b.level_sizes_ && a.edges_ == b.edges_ &&
           a.gap_offsets_ == b.gap_offsets_;
  }

 private:
  friend Diagram detail::make_trusted(std::vector<std::uint32_t>, std::vector<Edge>,
                                      std::vector<std::uint32_t>);

  struct Cache;

  Diagram(std::vector<std::uint32_t> level_sizes, std::vector<Edge> edges,
          std::vector<std::uint32_t> gap_offsets);

  std::vector<std::uint32_t> level_sizes_;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> gap_offsets_;   // gap g spans [gap_offsets_[g], gap_offsets_[g+1])
  std::vector<std::uint32_t> node_offsets_;  // first flat index of each level, plus the total
  std::shared_ptr<Cache> cache_;
};

/// Order-theoretic tables of a leveled diagram. Bitset rows over flat indices.
class OrderTable {
 public:
  explicit OrderTable(const Diagram& diagram);

  std::size_t size() const noexcept { return n_; }
  bool leq(std::size_t u, std::size_t v) const noexcept {
    return (up_[u * words_ + v / 64] >> (v % 64)) & 1U;
  }
  bool is_lattice() const noexcept { return lattice_; }
  /// A pair without a join or meet when the structure is not a lattice.
  std::optional<std::pair<std::size_t, std::size_t>> lattice_witness() const noexcept {
    return witness_;
  }
  std::size_t join(std::size_t u, std::size_t v) const;
  std::size_t meet(std::size_t u, std::size_t v) const;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> up_;    // row u: all v with u <= v
  std::vector<std::uint64_t> down_;  // row u: all v with v <= u
  std::vector<std::uint32_t> join_;
  std::vector<std::uint32_t> meet_;
  bool lattice_ = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness_;
};

/// Validates and builds a diagram. Throws Error with kind Malformed,
/// NotBoundedPoset, Crossing or NotLattice.
Diagram build(std::vector<std::uint32_t> level_sizes, const GapEdges& gap_edges);

// Order queries. Nodes must belong to the diagram.
bool leq(const Diagram& d, NodeRef u, NodeRef v);
NodeRef meet(const Diagram& d, NodeRef u, NodeRef v);
NodeRef join(const Diagram& d, NodeRef u, NodeRef v);
/// Strict cover u < v with nothing between. Adjacent levels only, since diagrams are graded.
bool covers(const Diagram& d, NodeRef lower, NodeRef upper);

bool is_semimodular(const Diagram& d);

/// Elements with exactly one lower cover; the bottom is never included.
std::vector<NodeRef> join_irreducibles(const Diagram& d);
bool is_slim(const Diagram& d);

/// An internal face of the leveled drawing. Both chains run from bottom to top
/// inclusive; the face has left.size() + right.size() - 2 elements.
struct Cell {
  NodeRef bottom;
  NodeRef top;
  std::vector<NodeRef> left;
  std::vector<NodeRef> right;

  std::size_t element_count() const noexcept { return left.size() + right.size() - 2; }
};

std::vector<Cell> cells(const Diagram& d);
bool is_four_cell(const Diagram& d);
/// 4-cell diagram in which no two cells with a common bottom have distinct tops.
bool gk_condition(const Diagram& d);

struct Boundaries {
  std::vector<NodeRef> left;
  std::vector<NodeRef> right;
};

/// Leftmost and rightmost node of every level. Throws BoundaryNotChain if a
/// consecutive pair is not joined by the outermost edge.
Boundaries boundaries(const Diagram& d);

/// Exactly one upper cover and at most one lower cover. The top qualifies only
/// in diagrams of size one.
bool is_doubly_irreducible(const Diagram& d, NodeRef node);

NodeRef corner_left(const Diagram& d);
NodeRef corner_right(const Diagram& d);
inline std::size_t left_rank(const Diagram& d) { return corner_left(d).level; }
inline std::size_t right_rank(const Diagram& d) { return corner_right(d).level; }

/// Left-right reflection.
Diagram mirror(const Diagram& d);
/// Image of a node under mirror().
NodeRef mirror(const Diagram& d, NodeRef node);

/// Canonical one-line encoding, without a trailing newline:
/// `SSD1 n=<size> L=<s0,...,sL> E=<g>:<i>-<j>,...;<g>:...`
std::string render_code(const Diagram& d);
/// Inverse of render_code. `line` is reported in ParseError positions.
Diagram parse_code(std::string_view text, std::size_t line = 1);

}  // namespace ssdlat
