#include "ssdlat/diagram.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <stdexcept>

namespace ssdlat {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Malformed: return "Malformed";
    case ErrorKind::NotBoundedPoset: return "NotBoundedPoset";
    case ErrorKind::Crossing: return "Crossing";
    case ErrorKind::NotLattice: return "NotLattice";
    case ErrorKind::BoundaryNotChain: return "BoundaryNotChain";
    case ErrorKind::CornerIsCoatom: return "CornerIsCoatom";
    case ErrorKind::RankZero: return "RankZero";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::MissingRow: return "MissingRow";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::BadAnchor: return "BadAnchor";
    case ErrorKind::CacheMismatch: return "CacheMismatch";
  }
  return "Unknown";
}

std::string to_string(NodeRef node) {
  return "(" + std::to_string(node.level) + "," + std::to_string(node.pos) + ")";
}

struct Diagram::Cache {
  std::once_flag once;
  std::unique_ptr<OrderTable> table;
};

Diagram::Diagram(std::vector<std::uint32_t> level_sizes, std::vector<Edge> edges,
                 std::vector<std::uint32_t> gap_offsets)
    : level_sizes_(std::move(level_sizes)),
      edges_(std::move(edges)),
      gap_offsets_(std::move(gap_offsets)),
      cache_(std::make_shared<Cache>()) {
  node_offsets_.reserve(level_sizes_.size() + 1);
  node_offsets_.push_back(0);
  for (auto s : level_sizes_) node_offsets_.push_back(node_offsets_.back() + s);
}

namespace detail {
Diagram make_trusted(std::vector<std::uint32_t> level_sizes, std::vector<Edge> edges,
                     std::vector<std::uint32_t> gap_offsets) {
  return Diagram(std::move(level_sizes), std::move(edges), std::move(gap_offsets));
}
}  // namespace detail

std::span<const Edge> Diagram::gap(std::size_t g) const {
  if (g + 1 >= gap_offsets_.size()) throw std::out_of_range("gap index out of range");
  return std::span<const Edge>(edges_).subspan(gap_offsets_[g], gap_offsets_[g + 1] - gap_offsets_[g]);
}

GapEdges Diagram::gap_edges() const {
  GapEdges out;
  for (std::size_t g = 0; g + 1 < level_sizes_.size(); ++g) {
    auto e = gap(g);
    out.emplace_back(e.begin(), e.end());
  }
  return out;
}

bool Diagram::contains(NodeRef node) const noexcept {
  return node.level < level_sizes_.size() && node.pos >= 1 && node.pos <= level_sizes_[node.level];
}

std::size_t Diagram::index(NodeRef node) const {
  if (!contains(node)) throw std::out_of_range("node " + to_string(node) + " not in diagram");
  return node_offsets_[node.level] + node.pos - 1;
}

NodeRef Diagram::node(std::size_t index) const {
  if (index >= size()) throw std::out_of_range("node index out of range");
  auto it = std::upper_bound(node_offsets_.begin(), node_offsets_.end(), index);
  auto level = static_cast<std::uint32_t>(it - node_offsets_.begin() - 1);
  return {level, static_cast<std::uint32_t>(index - node_offsets_[level] + 1)};
}

namespace {

std::span<const Edge> edges_with_lower(std::span<const Edge> gap, std::uint32_t lower) {
  auto lo = std::lower_bound(gap.begin(), gap.end(), lower,
                             [](const Edge& e, std::uint32_t v) { return e.lower < v; });
  auto hi = std::upper_bound(lo, gap.end(), lower,
                             [](std::uint32_t v, const Edge& e) { return v < e.lower; });
  return {lo, hi};
}

// Valid because noncrossing gaps sorted by (lower, upper) are also sorted by upper.
std::span<const Edge> edges_with_upper(std::span<const Edge> gap, std::uint32_t upper) {
  auto lo = std::lower_bound(gap.begin(), gap.end(), upper,
                             [](const Edge& e, std::uint32_t v) { return e.upper < v; });
  auto hi = std::upper_bound(lo, gap.end(), upper,
                             [](std::uint32_t v, const Edge& e) { return v < e.upper; });
  return {lo, hi};
}

}  // namespace

std::vector<NodeRef> Diagram::upper_covers(NodeRef node) const {
  index(node);
  std::vector<NodeRef> out;
  if (node.level >= length()) return out;
  for (const auto& e : edges_with_lower(gap(node.level), node.pos)) out.push_back({node.level + 1, e.upper});
  return out;
}

std::vector<NodeRef> Diagram::lower_covers(NodeRef node) const {
  index(node);
  std::vector<NodeRef> out;
  if (node.level == 0) return out;
  for (const auto& e : edges_with_upper(gap(node.level - 1), node.pos)) out.push_back({node.level - 1, e.lower});
  return out;
}

std::size_t Diagram::upper_degree(NodeRef node) const {
  index(node);
  if (node.level >= length()) return 0;
  return edges_with_lower(gap(node.level), node.pos).size();
}

std::size_t Diagram::lower_degree(NodeRef node) const {
  index(node);
  if (node.level == 0) return 0;
  return edges_with_upper(gap(node.level - 1), node.pos).size();
}

const OrderTable& Diagram::order() const {
  std::call_once(cache_->once, [this] { cache_->table = std::make_unique<OrderTable>(*this); });
  return *cache_->table;
}

OrderTable::OrderTable(const Diagram& d) : n_(d.size()), words_((d.size() + 63) / 64) {
  up_.assign(n_ * words_, 0);
  down_.assign(n_ * words_, 0);
  for (std::size_t u = 0; u < n_; ++u) {
    up_[u * words_ + u / 64] |= std::uint64_t{1} << (u % 64);
    down_[u * words_ + u / 64] |= std::uint64_t{1} << (u % 64);
  }
  std::vector<std::size_t> level_start(d.level_count() + 1, 0);
  for (std::size_t k = 0; k < d.level_count(); ++k) level_start[k + 1] = level_start[k] + d.level_size(k);

  auto or_row = [this](std::vector<std::uint64_t>& rows, std::size_t dst, std::size_t src) {
    for (std::size_t w = 0; w < words_; ++w) rows[dst * words_ + w] |= rows[src * words_ + w];
  };
  for (std::size_t g = d.length(); g-- > 0;) {
    for (const auto& e : d.gap(g)) or_row(up_, level_start[g] + e.lower - 1, level_start[g + 1] + e.upper - 1);
  }
  for (std::size_t g = 0; g < d.length(); ++g) {
    for (const auto& e : d.gap(g)) or_row(down_, level_start[g + 1] + e.upper - 1, level_start[g] + e.lower - 1);
  }

  join_.assign(n_ * n_, 0);
  meet_.assign(n_ * n_, 0);
  std::vector<std::uint64_t> common(words_);
  auto subset = [this](const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& rows,
                       std::size_t row) {
    for (std::size_t w = 0; w < words_; ++w)
      if (a[w] & ~rows[row * words_ + w]) return false;
    return true;
  };
  for (std::size_t u = 0; u < n_ && lattice_; ++u) {
    for (std::size_t v = u; v < n_; ++v) {
      // join: the least common upper bound has the smallest flat index
      std::size_t z = n_;
      for (std::size_t w = 0; w < words_; ++w) {
        common[w] = up_[u * words_ + w] & up_[v * words_ + w];
        if (z == n_ && common[w]) z = w * 64 + std::countr_zero(common[w]);
      }
      if (z == n_ || !subset(common, up_, z)) {
        lattice_ = false;
        witness_ = {u, v};
        break;
      }
      join_[u * n_ + v] = join_[v * n_ + u] = static_cast<std::uint32_t>(z);

      z = n_;
      for (std::size_t w = words_; w-- > 0;) {
        common[w] = down_[u * words_ + w] & down_[v * words_ + w];
        if (z == n_ && common[w]) z = w * 64 + 63 - std::countl_zero(common[w]);
      }
      if (z == n_ || !subset(common, down_, z)) {
        lattice_ = false;
        witness_ = {u, v};
        break;
      }
      meet_[u * n_ + v] = meet_[v * n_ + u] = static_cast<std::uint32_t>(z);
    }
  }
}

std::size_t OrderTable::join(std::size_t u, std::size_t v) const {
  if (!lattice_) throw Error(ErrorKind::NotLattice, "join queried on a non-lattice");
  return join_.at(u * n_ + v);
}

std::size_t OrderTable::meet(std::size_t u, std::size_t v) const {
  if (!lattice_) throw Error(ErrorKind::NotLattice, "meet queried on a non-lattice");
  return meet_.at(u * n_ + v);
}

Diagram build(std::vector<std::uint32_t> level_sizes, const GapEdges& gap_edges) {
  if (level_sizes.empty()) throw Error(ErrorKind::Malformed, "no levels");
  for (std::size_t k = 0; k < level_sizes.size(); ++k)
    if (level_sizes[k] == 0) throw Error(ErrorKind::Malformed, "level " + std::to_string(k) + " is empty");
  if (gap_edges.size() + 1 != level_sizes.size())
    throw Error(ErrorKind::Malformed, "expected " + std::to_string(level_sizes.size() - 1) + " gaps, got " +
                                          std::to_string(gap_edges.size()));
  if (level_sizes.front() != 1) throw Error(ErrorKind::NotBoundedPoset, "bottom level must hold one node");
  if (level_sizes.back() != 1) throw Error(ErrorKind::NotBoundedPoset, "top level must hold one node");

  std::vector<Edge> edges;
  std::vector<std::uint32_t> offsets{0};
  for (std::size_t g = 0; g < gap_edges.size(); ++g) {
    std::vector<Edge> gap = gap_edges[g];
    std::sort(gap.begin(), gap.end());
    const auto a = level_sizes[g];
    const auto b = level_sizes[g + 1];
    for (std::size_t i = 0; i < gap.size(); ++i) {
      const auto& e = gap[i];
      if (e.lower < 1 || e.lower > a || e.upper < 1 || e.upper > b)
        throw Error(ErrorKind::Malformed, "edge " + std::to_string(e.lower) + "-" + std::to_string(e.upper) +
                                              " out of range in gap " + std::to_string(g));
      if (i > 0 && gap[i - 1] == e)
        throw Error(ErrorKind::Malformed, "duplicate edge in gap " + std::to_string(g));
    }
    std::vector<bool> has_up(a, false), has_down(b, false);
    for (const auto& e : gap) {
      has_up[e.lower - 1] = true;
      has_down[e.upper - 1] = true;
    }
    for (std::uint32_t i = 0; i < a; ++i)
      if (!has_up[i])
        throw Error(ErrorKind::NotBoundedPoset, "node " + to_string(NodeRef{static_cast<std::uint32_t>(g), i + 1}) +
                                                    " has no upper cover");
    for (std::uint32_t j = 0; j < b; ++j)
      if (!has_down[j])
        throw Error(ErrorKind::NotBoundedPoset,
                    "node " + to_string(NodeRef{static_cast<std::uint32_t>(g + 1), j + 1}) + " has no lower cover");
    // crossing: some edge with a larger lower end reaches a smaller upper end
    std::uint32_t max_upper_before = 0;
    for (std::size_t i = 0; i < gap.size();) {
      std::size_t j = i;
      std::uint32_t group_max = 0;
      while (j < gap.size() && gap[j].lower == gap[i].lower) {
        if (gap[j].upper < max_upper_before)
          throw Error(ErrorKind::Crossing, "gap " + std::to_string(g) + ": edge " + std::to_string(gap[j].lower) +
                                               "-" + std::to_string(gap[j].upper) + " crosses an edge ending at " +
                                               std::to_string(max_upper_before));
        group_max = std::max(group_max, gap[j].upper);
        ++j;
      }
      max_upper_before = std::max(max_upper_before, group_max);
      i = j;
    }
    edges.insert(edges.end(), gap.begin(), gap.end());
    offsets.push_back(static_cast<std::uint32_t>(edges.size()));
  }

  Diagram d = detail::make_trusted(std::move(level_sizes), std::move(edges), std::move(offsets));
  if (!d.order().is_lattice()) {
    auto [u, v] = *d.order().lattice_witness();
    throw Error(ErrorKind::NotLattice,
                "no join or meet for " + to_string(d.node(u)) + " and " + to_string(d.node(v)));
  }
  return d;
}

bool leq(const Diagram& d, NodeRef u, NodeRef v) { return d.order().leq(d.index(u), d.index(v)); }

NodeRef meet(const Diagram& d, NodeRef u, NodeRef v) {
  return d.node(d.order().meet(d.index(u), d.index(v)));
}

NodeRef join(const Diagram& d, NodeRef u, NodeRef v) {
  return d.node(d.order().join(d.index(u), d.index(v)));
}

bool covers(const Diagram& d, NodeRef lower, NodeRef upper) {
  return upper.level == lower.level + 1 && leq(d, lower, upper);
}

bool is_semimodular(const Diagram& d) {
  const auto& order = d.order();
  const std::size_t n = d.size();
  std::vector<std::uint32_t> level(n);
  for (std::size_t i = 0; i < n; ++i) level[i] = d.node(i).level;
  // x ^ y covered by x implies y covered by x v y
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (level[order.meet(x, y)] + 1 != level[x]) continue;
      if (level[order.join(x, y)] != level[y] + 1) return false;
    }
  }
  return true;
}

std::vector<NodeRef> join_irreducibles(const Diagram& d) {
  std::vector<NodeRef> out;
  for (std::uint32_t k = 1; k < d.level_count(); ++k)
    for (std::uint32_t p = 1; p <= d.level_size(k); ++p)
      if (d.lower_degree({k, p}) == 1) out.push_back({k, p});
  return out;
}

bool is_slim(const Diagram& d) {
  const auto& order = d.order();
  std::vector<std::size_t> jir;
  for (auto node : join_irreducibles(d)) jir.push_back(d.index(node));
  auto incomparable = [&](std::size_t a, std::size_t b) { return !order.leq(a, b) && !order.leq(b, a); };
  for (std::size_t i = 0; i < jir.size(); ++i)
    for (std::size_t j = i + 1; j < jir.size(); ++j) {
      if (!incomparable(jir[i], jir[j])) continue;
      for (std::size_t k = j + 1; k < jir.size(); ++k)
        if (incomparable(jir[i], jir[k]) && incomparable(jir[j], jir[k])) return false;
    }
  return true;
}

std::vector<Cell> cells(const Diagram& d) {
  std::vector<Cell> out;
  for (std::uint32_t k = 0; k < d.length(); ++k) {
    for (std::uint32_t p = 1; p <= d.level_size(k); ++p) {
      const NodeRef bottom{k, p};
      const auto ups = d.upper_covers(bottom);
      for (std::size_t i = 0; i + 1 < ups.size(); ++i) {
        Cell cell{bottom, bottom, {bottom, ups[i]}, {bottom, ups[i + 1]}};
        NodeRef l = ups[i];
        NodeRef r = ups[i + 1];
        while (l != r) {
          l = d.upper_covers(l).back();
          r = d.upper_covers(r).front();
          cell.left.push_back(l);
          cell.right.push_back(r);
        }
        cell.top = l;
        out.push_back(std::move(cell));
      }
    }
  }
  return out;
}

bool is_four_cell(const Diagram& d) {
  const auto all = cells(d);
  return std::all_of(all.begin(), all.end(), [](const Cell& c) { return c.element_count() == 4; });
}

bool gk_condition(const Diagram& d) {
  const auto all = cells(d);
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i].element_count() != 4) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (all[j].bottom == all[i].bottom && all[j].top != all[i].top) return false;
  }
  return true;
}

Boundaries boundaries(const Diagram& d) {
  Boundaries b;
  for (std::uint32_t k = 0; k < d.level_count(); ++k) {
    b.left.push_back({k, 1});
    b.right.push_back({k, d.level_size(k)});
  }
  for (std::uint32_t k = 0; k < d.length(); ++k) {
    auto gap = d.gap(k);
    if (gap.empty() || gap.front() != Edge{1, 1})
      throw Error(ErrorKind::BoundaryNotChain, "left boundary breaks above level " + std::to_string(k));
    if (gap.back() != Edge{d.level_size(k), d.level_size(k + 1)})
      throw Error(ErrorKind::BoundaryNotChain, "right boundary breaks above level " + std::to_string(k));
  }
  return b;
}

bool is_doubly_irreducible(const Diagram& d, NodeRef node) {
  if (d.size() == 1) return true;
  return d.upper_degree(node) == 1 && d.lower_degree(node) <= 1;
}

namespace {
NodeRef corner_along(const Diagram& d, bool left) {
  for (std::uint32_t k = 0; k < d.level_count(); ++k) {
    const NodeRef node{k, left ? 1U : d.level_size(k)};
    if (is_doubly_irreducible(d, node)) return node;
  }
  throw std::logic_error("boundary without a doubly irreducible element");
}
}  // namespace

NodeRef corner_left(const Diagram& d) { return corner_along(d, true); }
NodeRef corner_right(const Diagram& d) { return corner_along(d, false); }

Diagram mirror(const Diagram& d) {
  std::vector<Edge> edges(d.edges().begin(), d.edges().end());
  const auto offsets = d.gap_offsets();
  for (std::size_t g = 0; g < d.length(); ++g) {
    const auto a = d.level_size(g);
    const auto b = d.level_size(g + 1);
    auto first = edges.begin() + offsets[g];
    auto last = edges.begin() + offsets[g + 1];
    for (auto it = first; it != last; ++it) *it = {a + 1 - it->lower, b + 1 - it->upper};
    std::reverse(first, last);
  }
  std::vector<std::uint32_t> sizes(d.level_sizes().begin(), d.level_sizes().end());
  std::vector<std::uint32_t> offs(offsets.begin(), offsets.end());
  return detail::make_trusted(std::move(sizes), std::move(edges), std::move(offs));
}

NodeRef mirror(const Diagram& d, NodeRef node) {
  d.index(node);
  return {node.level, d.level_size(node.level) + 1 - node.pos};
}

}  // namespace ssdlat
