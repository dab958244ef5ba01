#pragma once

// Text formats: the counts cache, CSV rows and the ASCII drawing.

#include <filesystem>
#include <string>
#include <vector>

#include "ssdlat/counting.hpp"
#include "ssdlat/diagram.hpp"

namespace ssdlat {

inline constexpr const char* kCacheHeader = "# ssdlat-counts v1";

/// `n,N,W`
std::string format_row(const CountRow& row);
/// `n,r,err` with shortest round-trip decimals.
std::string format_row(const NormalizedRow& row);
/// Inverse of format_row for exact rows. Throws ParseError.
CountRow parse_row(std::string_view text, std::size_t line = 1);

/// A file of exact rows starting at n = 1 and increasing by one.
class CountsCache {
 public:
  /// Loads the file when it exists. Throws ParseError for a bad header or row
  /// and CacheMismatch when the rows are not 1, 2, 3, ...
  explicit CountsCache(std::filesystem::path path);

  const std::filesystem::path& path() const noexcept { return path_; }
  const std::vector<CountRow>& rows() const noexcept { return rows_; }

  /// Compares every cached row that `fresh` also covers and appends the rest.
  /// Throws CacheMismatch naming the first divergent n; the cache is then unchanged.
  void merge(const std::vector<CountRow>& fresh);
  /// Writes through a temporary file and a rename.
  void save() const;

 private:
  std::filesystem::path path_;
  std::vector<CountRow> rows_;
};

/// `--cache` wins; otherwise $SSDLAT_CACHE_DIR/counts.csv; otherwise empty.
std::filesystem::path resolve_cache_path(const std::string& flag);

/// Top level first, one text row per level and one per gap. Nodes are `o`,
/// corners `#`; edges `/`, `\` or `|` at the midpoint of their endpoints.
std::string render_ascii(const Diagram& d);

}  // namespace ssdlat
