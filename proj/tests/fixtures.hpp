#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "ssdlat/diagram.hpp"

namespace fixtures {

using ssdlat::build;
using ssdlat::Diagram;

inline Diagram square() { return build({1, 2, 1}, {{{1, 1}, {1, 2}}, {{1, 1}, {2, 1}}}); }
inline Diagram m3() { return build({1, 3, 1}, {{{1, 1}, {1, 2}, {1, 3}}, {{1, 1}, {2, 1}, {3, 1}}}); }
inline Diagram hex() { return build({1, 2, 2, 1}, {{{1, 1}, {1, 2}}, {{1, 1}, {2, 2}}, {{1, 1}, {2, 1}}}); }
inline Diagram sqtop() { return build({1, 2, 1, 1}, {{{1, 1}, {1, 2}}, {{1, 1}, {2, 1}}, {{1, 1}}}); }
inline Diagram sqbot() { return build({1, 1, 2, 1}, {{{1, 1}}, {{1, 1}, {1, 2}}, {{1, 1}, {2, 1}}}); }
inline Diagram chain_of(std::uint32_t k) {
  return build(std::vector<std::uint32_t>(k, 1), ssdlat::GapEdges(k - 1, {{1, 1}}));
}

/// Order relation by transitive closure of the edge list, independent of the library's tables.
struct NaiveOrder {
  std::vector<ssdlat::NodeRef> nodes;
  std::vector<std::vector<bool>> le;

  explicit NaiveOrder(const Diagram& d) {
    for (std::uint32_t l = 0; l < d.level_count(); ++l)
      for (std::uint32_t p = 1; p <= d.level_size(l); ++p) nodes.push_back({l, p});
    const std::size_t n = nodes.size();
    le.assign(n, std::vector<bool>(n, false));
    auto at = [&](ssdlat::NodeRef x) {
      return static_cast<std::size_t>(std::find(nodes.begin(), nodes.end(), x) - nodes.begin());
    };
    for (std::size_t i = 0; i < n; ++i) le[i][i] = true;
    for (std::uint32_t g = 0; g + 1 < d.level_count(); ++g)
      for (const auto& e : d.gap(g)) le[at({g, e.lower})][at({g + 1, e.upper})] = true;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (le[i][k] && le[k][j]) le[i][j] = true;
  }

  std::size_t size() const { return nodes.size(); }

  // least common upper bound by exhaustive scan; size() when none is least
  std::size_t join(std::size_t a, std::size_t b) const {
    for (std::size_t u = 0; u < size(); ++u) {
      if (!le[a][u] || !le[b][u]) continue;
      bool least = true;
      for (std::size_t v = 0; v < size(); ++v)
        if (le[a][v] && le[b][v] && !le[u][v]) least = false;
      if (least) return u;
    }
    return size();
  }
  std::size_t meet(std::size_t a, std::size_t b) const {
    for (std::size_t u = 0; u < size(); ++u) {
      if (!le[u][a] || !le[u][b]) continue;
      bool greatest = true;
      for (std::size_t v = 0; v < size(); ++v)
        if (le[v][a] && le[v][b] && !le[v][u]) greatest = false;
      if (greatest) return u;
    }
    return size();
  }
  bool covers(std::size_t a, std::size_t b) const {
    if (a == b || !le[a][b]) return false;
    for (std::size_t c = 0; c < size(); ++c)
      if (c != a && c != b && le[a][c] && le[c][b]) return false;
    return true;
  }
  bool semimodular() const {
    for (std::size_t x = 0; x < size(); ++x)
      for (std::size_t y = 0; y < size(); ++y)
        if (covers(meet(x, y), x) && !covers(y, join(x, y))) return false;
    return true;
  }
  bool slim() const {
    std::vector<std::size_t> jir;
    for (std::size_t x = 0; x < size(); ++x) {
      std::size_t lower = 0;
      for (std::size_t y = 0; y < size(); ++y) lower += covers(y, x);
      if (lower == 1) jir.push_back(x);
    }
    for (auto a : jir)
      for (auto b : jir)
        for (auto c : jir) {
          auto inc = [&](std::size_t p, std::size_t q) { return !le[p][q] && !le[q][p]; };
          if (inc(a, b) && inc(b, c) && inc(a, c)) return false;
        }
    return true;
  }
};

}  // namespace fixtures
