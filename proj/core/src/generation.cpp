#include "ssdlat/generation.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace ssdlat {

Diagram single_element() { return detail::make_trusted({1}, {}, {0}); }

Diagram chain(std::size_t size) {
  if (size == 0) throw Error(ErrorKind::DomainError, "a chain needs at least one element");
  std::vector<std::uint32_t> levels(size, 1);
  std::vector<Edge> edges(size - 1, Edge{1, 1});
  std::vector<std::uint32_t> offsets(size);
  for (std::size_t g = 0; g < size; ++g) offsets[g] = static_cast<std::uint32_t>(g);
  return detail::make_trusted(std::move(levels), std::move(edges), std::move(offsets));
}

Diagram add_bottom(const Diagram& e) {
  std::vector<std::uint32_t> levels;
  levels.reserve(e.level_count() + 1);
  levels.push_back(1);
  levels.insert(levels.end(), e.level_sizes().begin(), e.level_sizes().end());

  std::vector<Edge> edges;
  edges.reserve(e.edges().size() + 1);
  edges.push_back({1, 1});
  edges.insert(edges.end(), e.edges().begin(), e.edges().end());

  std::vector<std::uint32_t> offsets;
  offsets.reserve(e.gap_offsets().size() + 1);
  offsets.push_back(0);
  for (auto o : e.gap_offsets()) offsets.push_back(o + 1);
  return detail::make_trusted(std::move(levels), std::move(edges), std::move(offsets));
}

bool insert_blocked(const Diagram& e) {
  if (e.size() == 1) return true;
  return left_rank(e) + 1 == e.length();
}

Diagram insert_left_corner(const Diagram& e) {
  if (insert_blocked(e))
    throw Error(ErrorKind::CornerIsCoatom,
                e.size() == 1 ? "single element has no corner cover" : "left corner is a coatom");
  // p = (k,1) has the unique cover q = (k+1,1), whose leftmost cover is w = (k+2,1).
  const std::size_t k = left_rank(e);
  std::vector<std::uint32_t> levels(e.level_sizes().begin(), e.level_sizes().end());
  levels[k + 1] += 1;

  std::vector<Edge> edges;
  edges.reserve(e.edges().size() + 2);
  std::vector<std::uint32_t> new_offsets{0};
  for (std::size_t g = 0; g < e.length(); ++g) {
    auto gap = e.gap(g);
    if (g == k) {
      edges.push_back({1, 1});
      for (const auto& edge : gap) edges.push_back({edge.lower, edge.upper + 1});
    } else if (g == k + 1) {
      edges.push_back({1, 1});
      for (const auto& edge : gap) edges.push_back({edge.lower + 1, edge.upper});
    } else {
      edges.insert(edges.end(), gap.begin(), gap.end());
    }
    new_offsets.push_back(static_cast<std::uint32_t>(edges.size()));
  }
  return detail::make_trusted(std::move(levels), std::move(edges), std::move(new_offsets));
}

Diagram remove_corner(const Diagram& d) {
  const NodeRef corner = corner_left(d);
  if (corner.level == 0) throw Error(ErrorKind::RankZero, "left corner is the bottom");
  const std::size_t k = corner.level;
#ifndef NDEBUG
  // The corner's lower cover (k-1,1) keeps a second cover, so no cover repair is needed.
  if (d.upper_degree({static_cast<std::uint32_t>(k - 1), 1}) < 2)
    throw std::logic_error("lower cover of the left corner has no second cover");
#endif

  std::vector<std::uint32_t> levels(d.level_sizes().begin(), d.level_sizes().end());
  levels[k] -= 1;
  std::vector<Edge> edges;
  edges.reserve(d.edges().size());
  std::vector<std::uint32_t> offsets{0};
  for (std::size_t g = 0; g < d.length(); ++g) {
    auto gap = d.gap(g);
    if (g + 1 == k) {
      for (const auto& edge : gap.subspan(1)) edges.push_back({edge.lower, edge.upper - 1});
    } else if (g == k) {
      for (const auto& edge : gap.subspan(1)) edges.push_back({edge.lower - 1, edge.upper});
    } else {
      edges.insert(edges.end(), gap.begin(), gap.end());
    }
    offsets.push_back(static_cast<std::uint32_t>(edges.size()));
  }
  return detail::make_trusted(std::move(levels), std::move(edges), std::move(offsets));
}

Diagram remove_bottom(const Diagram& d) {
  if (d.size() == 1) throw Error(ErrorKind::DomainError, "cannot remove the only element");
  if (d.level_size(1) != 1) throw Error(ErrorKind::DomainError, "bottom is not the left corner");
  std::vector<std::uint32_t> levels(d.level_sizes().begin() + 1, d.level_sizes().end());
  std::vector<Edge> edges(d.edges().begin() + 1, d.edges().end());
  std::vector<std::uint32_t> offsets;
  for (auto o : d.gap_offsets().subspan(1)) offsets.push_back(o - 1);
  return detail::make_trusted(std::move(levels), std::move(edges), std::move(offsets));
}

std::pair<Diagram, ParentTag> parent(const Diagram& d) {
  if (d.size() < 2) throw Error(ErrorKind::DomainError, "the single-element diagram has no parent");
  if (left_rank(d) == 0) return {remove_bottom(d), ParentTag::RemovedBottom};
  return {remove_corner(d), ParentTag::RemovedLeftCorner};
}

namespace {

void revalidate(const Diagram& d) {
  const Diagram rebuilt = build({d.level_sizes().begin(), d.level_sizes().end()}, d.gap_edges());
  if (!(rebuilt == d)) throw std::logic_error("surgery produced a non-canonical edge order");
  if (!is_slim(d) || !is_semimodular(d))
    throw std::logic_error("surgery produced a diagram that is not slim semimodular: " + render_code(d));
}

}  // namespace

std::vector<Diagram> children(const Diagram& e, const GenerationOptions& options) {
  std::vector<Diagram> out;
  out.push_back(add_bottom(e));
  if (!insert_blocked(e)) out.push_back(insert_left_corner(e));
  if (options.revalidate)
    for (const auto& c : out) revalidate(c);
  return out;
}

void EnumerationReport::merge(const EnumerationReport& other) {
  for (std::size_t n = 0; n < counts.size() && n < other.counts.size(); ++n) counts[n] += other.counts[n];
  for (std::size_t n = 0; n < blocked.size() && n < other.blocked.size(); ++n) blocked[n] += other.blocked[n];
  for (std::size_t n = 0; n < histograms.size() && n < other.histograms.size(); ++n)
    for (const auto& [key, count] : other.histograms[n]) histograms[n][key] += count;
  nodes_visited += other.nodes_visited;
}

namespace {

EnumerationReport empty_report(std::size_t n_max, bool histograms) {
  EnumerationReport r;
  r.n_max = n_max;
  r.counts.assign(n_max + 1, 0);
  r.blocked.assign(n_max + 1, 0);
  if (histograms) r.histograms.resize(n_max + 1);
  return r;
}

class Walker {
 public:
  Walker(std::size_t n_max, const Visitor& visitor, const EnumerateOptions& options,
         std::atomic<std::uint64_t>& visited, EnumerationReport& report)
      : n_max_(n_max), visitor_(visitor), options_(options), visited_(visited), report_(report) {}

  // Visits d and its whole subtree. Subtrees rooted at `stop_size` are
  // collected instead of walked when a collector is set.
  void walk(const Diagram& d, std::size_t stop_size = 0, std::vector<Diagram>* collector = nullptr) {
    const std::size_t n = d.size();
    if (collector && n == stop_size) {
      collector->push_back(d);
      return;
    }
    const auto seen = visited_.fetch_add(1, std::memory_order_relaxed) + 1;
    if (options_.node_budget && seen > options_.node_budget)
      throw Error(ErrorKind::ResourceLimit, "node budget of " + std::to_string(options_.node_budget) + " exceeded");
    ++report_.counts[n];
    ++report_.nodes_visited;
    if (options_.histograms)
      ++report_.histograms[n][{static_cast<std::uint32_t>(left_rank(d)), static_cast<std::uint32_t>(d.length())}];
    if (visitor_) visitor_(d, n);
    if (n == n_max_) return;

    const bool blocked = insert_blocked(d);
    if (blocked) ++report_.blocked[n + 1];
    {
      Diagram child = add_bottom(d);
      if (options_.generation.revalidate) revalidate(child);
      walk(child, stop_size, collector);
    }
    if (!blocked) {
      Diagram child = insert_left_corner(d);
      if (options_.generation.revalidate) revalidate(child);
      walk(child, stop_size, collector);
    }
  }

 private:
  std::size_t n_max_;
  const Visitor& visitor_;
  const EnumerateOptions& options_;
  std::atomic<std::uint64_t>& visited_;
  EnumerationReport& report_;
};

}  // namespace

EnumerationReport enumerate(std::size_t n_max, const Visitor& visitor, const EnumerateOptions& options) {
  if (n_max < 1) throw Error(ErrorKind::DomainError, "n_max must be at least 1");
  std::atomic<std::uint64_t> visited{0};
  EnumerationReport report = empty_report(n_max, options.histograms);

  std::size_t frontier = options.frontier_size;
  if (frontier == 0) frontier = n_max > 14 ? n_max - 10 : 4;
  if (options.workers <= 1 || frontier >= n_max) {
    Walker(n_max, visitor, options, visited, report).walk(single_element());
    return report;
  }

  std::vector<Diagram> roots;
  Walker(n_max, visitor, options, visited, report).walk(single_element(), frontier, &roots);

  std::vector<EnumerationReport> partial(options.workers, empty_report(n_max, options.histograms));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < options.workers; ++w) {
      pool.emplace_back([&, w] {
        Walker walker(n_max, visitor, options, visited, partial[w]);
        try {
          for (std::size_t i = next.fetch_add(1); i < roots.size(); i = next.fetch_add(1)) walker.walk(roots[i]);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next.store(roots.size());
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  for (const auto& p : partial) report.merge(p);
  return report;
}

namespace {

void compositions(std::size_t remaining, std::vector<std::uint32_t>& prefix,
                  std::vector<std::vector<std::uint32_t>>& out) {
  if (remaining == 0) {
    out.push_back(prefix);
    return;
  }
  for (std::size_t part = 1; part <= remaining; ++part) {
    prefix.push_back(static_cast<std::uint32_t>(part));
    compositions(remaining - part, prefix, out);
    prefix.pop_back();
  }
}

// Noncrossing edge sets covering every node of both levels are exactly the
// monotone paths from (1,1) to (a,b) with steps (0,1), (1,0), (1,1).
void monotone_paths(std::uint32_t a, std::uint32_t b, std::vector<Edge>& path, std::vector<std::vector<Edge>>& out) {
  const Edge last = path.back();
  if (last.lower == a && last.upper == b) {
    out.push_back(path);
    return;
  }
  for (auto [di, dj] : {std::pair{0U, 1U}, std::pair{1U, 0U}, std::pair{1U, 1U}}) {
    const Edge next{last.lower + di, last.upper + dj};
    if (next.lower > a || next.upper > b) continue;
    path.push_back(next);
    monotone_paths(a, b, path, out);
    path.pop_back();
  }
}

}  // namespace

std::vector<Diagram> brute_force_lattices(std::size_t n, std::size_t bound) {
  if (n == 0) throw Error(ErrorKind::DomainError, "size must be positive");
  if (n > bound) throw Error(ErrorKind::ResourceLimit, "brute force limited to n <= " + std::to_string(bound));

  std::vector<std::vector<std::uint32_t>> shapes;
  if (n == 1) {
    shapes.push_back({1});
  } else {
    std::vector<std::uint32_t> prefix;
    std::vector<std::vector<std::uint32_t>> middles;
    compositions(n - 2, prefix, middles);
    for (auto& middle : middles) {
      std::vector<std::uint32_t> shape{1};
      shape.insert(shape.end(), middle.begin(), middle.end());
      shape.push_back(1);
      shapes.push_back(std::move(shape));
    }
  }

  std::vector<Diagram> out;
  for (const auto& shape : shapes) {
    std::vector<std::vector<std::vector<Edge>>> options;
    for (std::size_t g = 0; g + 1 < shape.size(); ++g) {
      std::vector<std::vector<Edge>> paths;
      std::vector<Edge> path{{1, 1}};
      monotone_paths(shape[g], shape[g + 1], path, paths);
      options.push_back(std::move(paths));
    }
    std::vector<std::size_t> choice(options.size(), 0);
    while (true) {
      GapEdges gaps;
      for (std::size_t g = 0; g < options.size(); ++g) gaps.push_back(options[g][choice[g]]);
      try {
        out.push_back(build(shape, gaps));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotLattice) throw;
      }
      std::size_t g = 0;
      while (g < choice.size() && ++choice[g] == options[g].size()) choice[g++] = 0;
      if (g == choice.size()) break;
    }
  }
  return out;
}

std::set<std::string> brute_force_enumerate(std::size_t n, std::size_t bound) {
  std::set<std::string> codes;
  for (const auto& d : brute_force_lattices(n, bound))
    if (is_semimodular(d) && is_slim(d)) codes.insert(render_code(d));
  return codes;
}

}  // namespace ssdlat
