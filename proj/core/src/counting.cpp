#include "ssdlat/counting.hpp"

#include <cfloat>
#include <cmath>
#include <limits>

namespace ssdlat {

std::uint64_t ceil_sqrt(std::uint64_t x) {
  if (x == 0) return 0;
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
  while (r > x / r) --r;  // r*r > x
  while (r + 1 <= x / (r + 1)) ++r;
  return r * r == x ? r : r + 1;
}

StateTable StateTable::initial() {
  StateTable t;
  t.n_ = 1;
  t.rows_.resize(1);
  t.rows_[0].push_back(1);
  t.sums_.push_back(1);
  return t;
}

BigInt StateTable::count(std::size_t corner_height, std::size_t length) const {
  if (length >= rows_.size() || corner_height >= rows_[length].size()) return 0;
  return rows_[length][corner_height];
}

BigInt StateTable::total() const {
  BigInt sum = 0;
  for (const auto& s : sums_) sum += s;
  return sum;
}

BigInt StateTable::blocked_total() const {
  BigInt sum = 0;
  for (std::size_t l = 0; l < rows_.size(); ++l) {
    const auto& row = rows_[l];
    for (std::size_t k = (l == 0 ? 0 : l - 1); k < row.size(); ++k) sum += row[k];
  }
  return sum;
}

std::vector<std::pair<StateKey, BigInt>> StateTable::entries() const {
  std::vector<std::pair<StateKey, BigInt>> out;
  for (std::size_t l = 0; l < rows_.size(); ++l)
    for (std::size_t k = 0; k < rows_[l].size(); ++k)
      if (rows_[l][k] != 0)
        out.push_back({{static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(l)}, rows_[l][k]});
  return out;
}

StateTable dp_step(const StateTable& previous) { return dp_step(StateTable(previous)); }

StateTable dp_step(StateTable&& previous) {
  StateTable next = std::move(previous);
  auto& rows = next.rows_;
  auto& sums = next.sums_;
  rows.resize(rows.size() + 1);
  sums.resize(rows.size());
  // high to low, so sums[l - 1] still describes level n - 1 when read
  for (std::size_t l = rows.size(); l-- > 0;) {
    // c(n,0,l) = sum_k c(n-1,k,l-1)
    BigInt bottom = l > 0 ? sums[l - 1] : BigInt(0);
    auto& row = rows[l];
    // c(n,k,l) = c(n-1,k-1,l) while k <= l - 1; blocked states only grow a bottom
    const std::size_t keep = l == 0 ? 0 : l - 1;
    while (row.size() > keep) {
      sums[l] -= row.back();
      row.pop_back();
    }
    if (bottom != 0 || !row.empty()) {
      sums[l] += bottom;
      row.push_front(std::move(bottom));
    }
    if (sums[l] == 0) row.clear();
  }
  while (!rows.empty() && rows.back().empty()) {
    rows.pop_back();
    sums.pop_back();
  }
  ++next.n_;
  return next;
}

std::vector<CountRow> count_exact(std::size_t n_max) {
  if (n_max < 1) throw Error(ErrorKind::DomainError, "n_max must be at least 1");
  std::vector<CountRow> out;
  out.reserve(n_max);
  StateTable table = StateTable::initial();
  out.push_back({1, 1, 0});
  for (std::size_t n = 2; n <= n_max; ++n) {
    BigInt blocked = table.blocked_total();
    table = dp_step(std::move(table));
    out.push_back({n, table.total(), std::move(blocked)});
  }
  return out;
}

namespace {

constexpr double kUnit = DBL_EPSILON / 2;
// Covers the rounding committed while evaluating an error bound itself.
constexpr double kSafety = 1.0 + 0x1p-40;

double up(double x) { return x * kSafety + DBL_TRUE_MIN; }

struct FloatRow {
  std::deque<double> value;
  std::deque<double> error;
  double sum = 0.0;  // sum of value
  double sum_error = 0.0;  // bounds |sum - exact sum of the entries|

  void push_front(double v, double e) {
    value.push_front(v);
    error.push_front(e);
    sum += v;
    sum_error = up(sum_error + e + kUnit * sum);
  }
  void pop_back() {
    sum -= value.back();
    sum_error = up(sum_error - error.back() + kUnit * std::abs(sum));
    value.pop_back();
    error.pop_back();
    if (value.empty()) sum = sum_error = 0.0;
  }
};

// Largest gap between the global scale and the level before a renormalization.
constexpr int kRescaleBits = 64;

}  // namespace

// Entries hold c(n,k,l) * 2^-shift, so the integer recurrence carries over
// unchanged and the normalized mass is value * 2^(shift - n).
std::vector<NormalizedRow> count_float(std::size_t n_max, const FloatCountOptions& options) {
  if (n_max < 1) throw Error(ErrorKind::DomainError, "n_max must be at least 1");
  const double tau = options.prune_below;
  if (!(tau >= 0x1p-900 && tau < 1.0)) throw Error(ErrorKind::DomainError, "prune_below must lie in [2^-900, 1)");
  std::deque<FloatRow> rows(1);  // rows[i] holds length lmin + i
  std::size_t lmin = 0;
  rows[0].push_front(1.0, 0.0);
  long shift = 0;
  double dropped = 0.0;  // normalized

  std::vector<NormalizedRow> out;
  out.reserve(n_max);
  auto record = [&](std::size_t n) {
    double total = 0.0, total_err = 0.0;
    for (const auto& row : rows) {
      total += row.sum;
      total_err += row.sum_error;
    }
    const double m = static_cast<double>(rows.size());
    total_err = up(total_err * (1.0 + 2.0 * m * kUnit) + 2.0 * m * kUnit * total);
    const int e = static_cast<int>(shift - static_cast<long>(n));
    out.push_back({n, std::ldexp(total, e), up(up(std::ldexp(total_err, e)) + dropped)});
  };

  record(1);
  for (std::size_t n = 2; n <= n_max; ++n) {
    const int e = static_cast<int>(shift - static_cast<long>(n));
    rows.emplace_back();
    // high to low, so row l - 1 is still the previous level when read
    for (std::size_t i = rows.size(); i-- > 0;) {
      const std::size_t l = lmin + i;
      auto& row = rows[i];
      const std::size_t keep = l == 0 ? 0 : l - 1;
      while (row.value.size() > keep) row.pop_back();
      // c(n,0,l) = sum_k c(n-1,k,l-1); a zero bottom still shifts k
      if (i > 0 && !rows[i - 1].value.empty())
        row.push_front(rows[i - 1].sum, rows[i - 1].sum_error);
      else if (!row.value.empty())
        row.push_front(0.0, 0.0);
      while (!row.value.empty() && std::ldexp(row.value.back() + row.error.back(), e) < tau) {
        dropped = up((dropped + std::ldexp(row.value.back() + row.error.back(), e)) * (1.0 + 2.0 * kUnit));
        row.pop_back();
      }
    }
    while (!rows.empty() && rows.front().value.empty()) {
      rows.pop_front();
      ++lmin;
    }
    while (!rows.empty() && rows.back().value.empty()) rows.pop_back();
    if (static_cast<long>(n) - shift >= kRescaleBits) {
      // exact for values; kept entries stay far above the subnormal range
      for (auto& row : rows) {
        for (auto& v : row.value) v = std::ldexp(v, -kRescaleBits);
        for (auto& x : row.error) x = up(std::ldexp(x, -kRescaleBits));
        row.sum = std::ldexp(row.sum, -kRescaleBits);
        row.sum_error = up(std::ldexp(row.sum_error, -kRescaleBits));
      }
      shift += kRescaleBits;
    }
    record(n);
  }
  return out;
}

std::vector<CheckReport> check_row_inequalities(const std::vector<CountRow>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].n != i + 1) throw Error(ErrorKind::MissingRow, "rows must be contiguous from n = 1");
  const std::size_t n_max = rows.size();
  auto N = [&](std::size_t n) -> const BigInt& { return rows[n - 1].N; };
  auto W = [&](std::size_t n) -> const BigInt& { return rows[n - 1].W; };

  // prefix[j] = N(1) + ... + N(j)
  std::vector<BigInt> prefix(n_max + 1, 0);
  for (std::size_t j = 1; j <= n_max; ++j) prefix[j] = prefix[j - 1] + N(j);
  // sum_{j=2}^{n+1-ceil(sqrt(n-1))} N(j)
  auto blocked_cap = [&](std::size_t n) -> BigInt {
    const std::size_t hi = n + 1 - ceil_sqrt(n - 1);
    return hi < 2 ? BigInt(0) : BigInt(prefix[std::min(hi, n_max)] - prefix[1]);
  };

  std::vector<CheckReport> out;
  auto report = [&](std::string name, std::size_t n_min) -> CheckReport& {
    out.push_back(CheckReport{std::move(name), n_min, n_max, 0, std::nullopt});
    return out.back();
  };

  {
    auto& r = report("recurrence", 2);
    for (std::size_t n = 2; n <= n_max; ++n, ++r.checked)
      if (N(n) != 2 * N(n - 1) - W(n)) r.fail("", "n=" + std::to_string(n));
  }
  {
    auto& r = report("lower-growth", 4);
    for (std::size_t n = 4; n <= n_max; ++n, ++r.checked)
      if (N(n - 1) + N(n - 3) > N(n)) r.fail("", "n=" + std::to_string(n));
  }
  {
    auto& r = report("doubling-cap", 4);
    for (std::size_t n = 4; n <= n_max; ++n, ++r.checked)
      if (N(n) > 2 * N(n - 1)) r.fail("", "n=" + std::to_string(n));
  }
  {
    // N(k-j) <= (4/5)^j N(k), k >= j + 4, as 5^j N(k-j) <= 4^j N(k)
    auto& r = report("geometric-decay", 4);
    std::vector<BigInt> pow4{1}, pow5{1};
    for (std::size_t j = 1; j < n_max; ++j) {
      pow4.push_back(pow4.back() * 4);
      pow5.push_back(pow5.back() * 5);
    }
    for (std::size_t k = 4; k <= n_max; ++k)
      for (std::size_t j = 0; j + 4 <= k && j < k; ++j, ++r.checked)
        if (pow5[j] * N(k - j) > pow4[j] * N(k)) r.fail("", "k=" + std::to_string(k) + " j=" + std::to_string(j));
  }
  {
    auto& r = report("prefix-sum", 5);
    for (std::size_t k = 5; k <= n_max; ++k, ++r.checked)
      if (prefix[k] > 6 * N(k)) r.fail("", "k=" + std::to_string(k));
  }
  {
    auto& r = report("blocked-bound", 4);
    for (std::size_t n = 4; n <= n_max; ++n, ++r.checked)
      if (W(n) > blocked_cap(n)) r.fail("", "n=" + std::to_string(n));
  }
  {
    auto& r = report("sandwich", 4);
    for (std::size_t n = 4; n <= n_max; ++n, ++r.checked)
      if (2 * N(n - 1) - blocked_cap(n) > N(n) || N(n) > 2 * N(n - 1)) r.fail("", "n=" + std::to_string(n));
  }
  return out;
}

}  // namespace ssdlat
