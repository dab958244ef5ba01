#pragma once

// Machine checks of the structural lemmas on generated diagrams.
//
// A Corpus holds the diagrams of each size, either all of them or a
// deterministic stride sample of the depth-first order. Checks that compare
// whole sets (W, partitions, mirror closure) only run on complete sizes.

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "ssdlat/counting.hpp"
#include "ssdlat/diagram.hpp"
#include "ssdlat/report.hpp"

namespace ssdlat {

struct CorpusOptions {
  /// Every diagram is kept up to this size.
  std::size_t exhaustive_max = 10;
  /// Above exhaustive_max at most about this many per size, by stride.
  std::size_t sample_cap = 10000;
};

struct Corpus {
  std::size_t n_max = 0;
  /// by_size[n], index 0 unused.
  std::vector<std::vector<Diagram>> by_size;
  std::vector<bool> complete;
  /// Exact rows 1..n_max.
  std::vector<CountRow> rows;

  std::set<std::string> codes(std::size_t n) const;
};

Corpus build_corpus(std::size_t n_max, const CorpusOptions& options = {});

/// Either both ranks are zero and both corners are the bottom, or both ranks are positive.
CheckReport check_dichotomy(const Corpus& corpus);
/// Left-boundary elements below the left corner are join-irreducible (bottom
/// exempt); for blocked diagrams the corner's ideal is a chain in the left boundary.
CheckReport check_corner_ideal(const Corpus& corpus);
/// gk_condition on every slim semimodular diagram, and is_semimodular <=>
/// gk_condition on every leveled lattice of size <= oracle_max.
CheckReport check_gk(const Corpus& corpus, std::size_t oracle_max = 9);
/// Size n-1 diagrams missing from the image of remove_corner are exactly the
/// blocked ones, and their number is W(n).
CheckReport check_w_set(const Corpus& corpus);
/// For blocked E, E minus the ideal of its corner is slim semimodular of size
/// |E| - length(E), and (trunk, length) determines E.
CheckReport check_trunk(const Corpus& corpus);
/// Rank-zero diagrams of size n number N(n-1); rank-(1,1) diagrams number N(n-3).
CheckReport check_partitions(const Corpus& corpus);
/// |E| <= (1 + length E)^2.
CheckReport check_size_bound(const Corpus& corpus);
/// mirror is an involution, swaps the corners, and maps each complete size onto itself.
CheckReport check_mirror(const Corpus& corpus);
/// The boundaries are chains, every element has at most two upper covers, and
/// diagrams of size >= 3 have a doubly irreducible left-boundary element other than 0 and 1.
CheckReport check_boundary(const Corpus& corpus);
/// parent(D) has D among its children, with the tag matching the left rank.
CheckReport check_adjunction(const Corpus& corpus);

struct MutantOptions {
  std::uint64_t seed = 20240917;
  /// Diagrams mutated per size; smaller sizes use all of them.
  std::size_t per_size = 200;
};

/// Single-edge deletions, single-edge retargets and single-node drops of
/// corpus diagrams. A mutant is caught when build, is_semimodular or is_slim
/// rejects it, or when it is itself a member of the complete set of its size.
CheckReport check_mutants(const Corpus& corpus, const MutantOptions& options = {});

/// Stable order used by `verify --checks all`.
const std::vector<std::string>& check_names();
/// Throws DomainError for an unknown name.
CheckReport run_check(const std::string& name, const Corpus& corpus);

/// `CHECK <name> n<=<n_max> PASS|FAIL [witness=<code>]`
std::string format_check(const CheckReport& report);

}  // namespace ssdlat
