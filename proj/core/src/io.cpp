#include "ssdlat/io.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>

namespace ssdlat {

namespace {

std::string shortest(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

bool is_decimal(std::string_view s) {
  if (s.empty() || (s.size() > 1 && s[0] == '0')) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

std::string format_row(const CountRow& row) {
  return std::to_string(row.n) + "," + row.N.get_str() + "," + row.W.get_str();
}

std::string format_row(const NormalizedRow& row) {
  return std::to_string(row.n) + "," + shortest(row.r) + "," + shortest(row.err);
}

CountRow parse_row(std::string_view text, std::size_t line) {
  if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    fields.push_back(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (!is_decimal(fields.back())) throw ParseError(line, start + 1, "expected a decimal integer");
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (fields.size() != 3) throw ParseError(line, 1, "expected three fields n,N,W");
  CountRow row;
  std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), row.n);
  row.N = BigInt(std::string(fields[1]));
  row.W = BigInt(std::string(fields[2]));
  return row;
}

CountsCache::CountsCache(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  std::string text;
  std::size_t line = 0;
  if (!std::getline(in, text)) return;
  ++line;
  if (!text.empty() && text.back() == '\r') text.pop_back();
  if (text != kCacheHeader) throw ParseError(1, 1, "expected header '" + std::string(kCacheHeader) + "'");
  while (std::getline(in, text)) {
    ++line;
    if (text.empty()) continue;
    CountRow row = parse_row(text, line);
    if (row.n != rows_.size() + 1)
      throw Error(ErrorKind::CacheMismatch, "row n=" + std::to_string(row.n) + " out of sequence at line " + std::to_string(line));
    rows_.push_back(std::move(row));
  }
}

void CountsCache::merge(const std::vector<CountRow>& fresh) {
  for (const auto& row : fresh) {
    if (row.n == 0 || row.n > rows_.size()) continue;
    const auto& old = rows_[row.n - 1];
    if (old.N != row.N || old.W != row.W)
      throw Error(ErrorKind::CacheMismatch, "cached row differs from recomputation at n=" + std::to_string(row.n));
  }
  for (const auto& row : fresh)
    if (row.n == rows_.size() + 1) rows_.push_back(row);
}

void CountsCache::save() const {
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  auto tmp = path_;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << kCacheHeader << '\n';
    for (const auto& row : rows_) out << format_row(row) << '\n';
    if (!out) throw Error(ErrorKind::DomainError, "cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path_);
}

std::filesystem::path resolve_cache_path(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* dir = std::getenv("SSDLAT_CACHE_DIR"); dir && *dir) return std::filesystem::path(dir) / "counts.csv";
  return {};
}

std::string render_ascii(const Diagram& d) {
  std::uint32_t widest = 0;
  for (auto s : d.level_sizes()) widest = std::max(widest, s);
  auto column = [&](NodeRef x) { return 2 * (widest - d.level_size(x.level)) + 4 * (x.pos - 1); };
  const std::size_t width = 4 * (widest - 1) + 1;
  const NodeRef cl = corner_left(d), cr = corner_right(d);

  std::vector<std::string> rows(2 * d.level_count() - 1, std::string(width, ' '));
  auto row_of = [&](std::size_t level) -> std::string& { return rows[rows.size() - 1 - 2 * level]; };
  for (std::uint32_t l = 0; l < d.level_count(); ++l)
    for (std::uint32_t p = 1; p <= d.level_size(l); ++p) {
      const NodeRef x{l, p};
      row_of(l)[column(x)] = x == cl || x == cr ? '#' : 'o';
    }
  for (std::uint32_t g = 0; g + 1 < d.level_count(); ++g)
    for (const Edge& e : d.gap(g)) {
      const auto a = column({g, e.lower}), b = column({g + 1, e.upper});
      rows[rows.size() - 2 - 2 * g][(a + b) / 2] = a == b ? '|' : (b > a ? '/' : '\\');
    }
  std::string out;
  for (auto& r : rows) {
    r.erase(r.find_last_not_of(' ') + 1);
    out += r;
    out += '\n';
  }
  return out;
}

}  // namespace ssdlat
