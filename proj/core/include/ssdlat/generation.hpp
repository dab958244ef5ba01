#pragma once

// Isomorph-free generation of slim semimodular diagrams by reverse search.
//
// Every diagram D of size >= 2 has exactly one parent: if its left corner is
// the bottom, the parent is D without its bottom; otherwise it is D without
// its left corner. Inverting the parent map gives at most two children per
// diagram, so a depth-first walk from the one-element diagram visits each
// similarity class exactly once.

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ssdlat/diagram.hpp"

namespace ssdlat {

enum class ParentTag { RemovedBottom, RemovedLeftCorner };

Diagram single_element();
Diagram chain(std::size_t size);

/// New bottom below the old one. Rank zero, one level longer.
Diagram add_bottom(const Diagram& e);

/// True when insert_left_corner has no child to offer: the left corner is a
/// coatom, or the diagram has a single element.
bool insert_blocked(const Diagram& e);

/// Adds a node x leftmost on the level above the left corner p, with covers
/// p < x < w where w is the leftmost upper cover of p's unique upper cover.
/// Throws CornerIsCoatom when insert_blocked(e).
Diagram insert_left_corner(const Diagram& e);

/// Deletes the left corner. Throws RankZero when the corner is the bottom.
Diagram remove_corner(const Diagram& d);

/// Deletes the bottom of a rank-zero diagram. Throws DomainError when the
/// bottom is not the left corner or the diagram has a single element.
Diagram remove_bottom(const Diagram& d);

std::pair<Diagram, ParentTag> parent(const Diagram& d);

struct GenerationOptions {
#ifdef NDEBUG
  bool revalidate = false;
#else
  bool revalidate = true;
#endif
};

/// add_bottom first, then the inserted child when it exists.
std::vector<Diagram> children(const Diagram& e, const GenerationOptions& options = {});

struct StateKey {
  std::uint32_t corner_height = 0;
  std::uint32_t length = 0;

  friend auto operator<=>(const StateKey&, const StateKey&) = default;
};

struct EnumerationReport {
  std::size_t n_max = 0;
  /// counts[n] = N(n) for 1 <= n <= n_max; index 0 unused.
  std::vector<std::uint64_t> counts;
  /// blocked[n] = W(n), the number of size n-1 diagrams without an insert child, 2 <= n <= n_max.
  std::vector<std::uint64_t> blocked;
  /// histograms[n][(k, l)] when requested.
  std::vector<std::map<StateKey, std::uint64_t>> histograms;
  std::uint64_t nodes_visited = 0;

  void merge(const EnumerationReport& other);
};

/// Called once per generated diagram. With more than one worker it is called
/// concurrently and must be thread-safe.
using Visitor = std::function<void(const Diagram&, std::size_t size)>;

struct EnumerateOptions {
  std::size_t workers = 1;
  bool histograms = false;
  /// Throw ResourceLimit once more than this many diagrams have been visited. 0 disables.
  std::uint64_t node_budget = 0;
  /// Subtrees rooted at this size are handed to workers; 0 picks a default.
  std::size_t frontier_size = 0;
  GenerationOptions generation{};
};

EnumerationReport enumerate(std::size_t n_max, const Visitor& visitor = {}, const EnumerateOptions& options = {});

/// Independent oracle: every leveled noncrossing structure over every
/// composition of n is built and filtered. Throws ResourceLimit above `bound`.
std::vector<Diagram> brute_force_lattices(std::size_t n, std::size_t bound = 10);
std::set<std::string> brute_force_enumerate(std::size_t n, std::size_t bound = 10);

}  // namespace ssdlat
