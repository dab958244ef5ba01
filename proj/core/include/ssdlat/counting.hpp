#pragma once

// Exact counting of slim semimodular diagrams without generating them.
//
// A diagram's generation-tree behaviour depends only on the height k of its
// left corner and its length l: adding a bottom leads to state (0, l + 1), and
// inserting a left corner (possible iff k < l - 1) leads to (k + 1, l). The
// table c(n, k, l) therefore evolves by a shift within each l and a row sum
// feeding the next l.

#include <cstddef>
#include <deque>
#include <vector>

#include <gmpxx.h>

#include "ssdlat/generation.hpp"
#include "ssdlat/report.hpp"

namespace ssdlat {

using BigInt = mpz_class;

class StateTable {
 public:
  /// The table at n = 1: the single-element diagram, state (0, 0).
  static StateTable initial();

  std::size_t n() const noexcept { return n_; }
  /// Largest length with a row; rows may be empty.
  std::size_t max_length() const noexcept { return rows_.empty() ? 0 : rows_.size() - 1; }
  BigInt count(std::size_t corner_height, std::size_t length) const;
  BigInt total() const;
  /// Diagrams whose insert is blocked: k >= l - 1.
  BigInt blocked_total() const;
  std::vector<std::pair<StateKey, BigInt>> entries() const;

 private:
  friend StateTable dp_step(StateTable&& previous);

  std::size_t n_ = 1;
  std::vector<std::deque<BigInt>> rows_;  // rows_[l][k]
  std::vector<BigInt> sums_;              // sums_[l] = sum_k rows_[l][k]
};

StateTable dp_step(const StateTable& previous);
StateTable dp_step(StateTable&& previous);

struct CountRow {
  std::size_t n = 0;
  BigInt N;
  /// W(n); zero for n = 1 where it is undefined.
  BigInt W;
};

std::vector<CountRow> count_exact(std::size_t n_max);

/// N(n) / 2^n with an absolute error bound: |r - N(n)/2^n| <= err.
struct NormalizedRow {
  std::size_t n = 0;
  double r = 0.0;
  double err = 0.0;
};

struct FloatCountOptions {
  /// States whose normalized mass falls below this are dropped; their mass is
  /// charged to the error bound. Must lie in [2^-900, 1).
  double prune_below = 0x1p-100;
};

std::vector<NormalizedRow> count_float(std::size_t n_max, const FloatCountOptions& options = {});

/// Row inequalities: lower/upper two-child bounds, ratio bounds, geometric
/// decay, prefix sums, the blocked-set bound and the sandwich. Rows must start
/// at n = 1 and be contiguous.
std::vector<CheckReport> check_row_inequalities(const std::vector<CountRow>& rows);

/// ceil(sqrt(x)) in integer arithmetic.
std::uint64_t ceil_sqrt(std::uint64_t x);

}  // namespace ssdlat
