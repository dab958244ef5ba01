#include <charconv>

#include "ssdlat/diagram.hpp"

namespace ssdlat {

std::string render_code(const Diagram& d) {
  std::string out = "SSD1 n=" + std::to_string(d.size()) + " L=";
  for (std::size_t k = 0; k < d.level_count(); ++k) {
    if (k) out += ',';
    out += std::to_string(d.level_size(k));
  }
  out += " E=";
  for (std::size_t g = 0; g < d.length(); ++g) {
    if (g) out += ';';
    out += std::to_string(g);
    out += ':';
    bool first = true;
    for (const auto& e : d.gap(g)) {
      if (!first) out += ',';
      first = false;
      out += std::to_string(e.lower);
      out += '-';
      out += std::to_string(e.upper);
    }
  }
  return out;
}

namespace {

class Cursor {
 public:
  Cursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, pos_ + 1, what); }

  bool done() const { return pos_ == text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }

  void expect(std::string_view literal) {
    if (text_.substr(pos_, literal.size()) != literal) fail("expected '" + std::string(literal) + "'");
    pos_ += literal.size();
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  std::uint32_t number() {
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    if (first == last || *first < '0' || *first > '9') fail("expected a decimal number");
    if (*first == '0' && first + 1 != last && first[1] >= '0' && first[1] <= '9') fail("leading zero");
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc()) fail("number out of range");
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace

Diagram parse_code(std::string_view text, std::size_t line) {
  if (!text.empty() && text.back() == '\n') text.remove_suffix(1);
  if (!text.empty() && text.back() == '\r') text.remove_suffix(1);

  Cursor in(text, line);
  in.expect("SSD1 n=");
  const std::uint32_t n = in.number();
  in.expect(" L=");
  std::vector<std::uint32_t> levels{in.number()};
  while (in.accept(',')) levels.push_back(in.number());
  in.expect(" E=");

  GapEdges gaps;
  if (levels.size() > 1) {
    for (std::uint32_t g = 0; g + 1 < levels.size(); ++g) {
      if (g > 0) in.expect(";");
      if (in.number() != g) in.fail("expected gap " + std::to_string(g));
      in.expect(":");
      std::vector<Edge> edges;
      do {
        Edge e;
        e.lower = in.number();
        in.expect("-");
        e.upper = in.number();
        if (!edges.empty() && !(edges.back() < e)) in.fail("edges not in canonical order");
        edges.push_back(e);
      } while (in.accept(','));
      gaps.push_back(std::move(edges));
    }
  }
  if (!in.done()) in.fail("unexpected trailing input");

  std::uint64_t total = 0;
  for (auto s : levels) total += s;
  if (total != n) in.fail("n=" + std::to_string(n) + " disagrees with level sizes summing to " + std::to_string(total));

  return build(std::move(levels), gaps);
}

}  // namespace ssdlat
