// ssdlat: counts, enumerates and checks slim semimodular diagrams.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or data error,
// 3 resource limit.

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>

#include "ssdlat/asymptotics.hpp"
#include "ssdlat/generation.hpp"
#include "ssdlat/io.hpp"
#include "ssdlat/verification.hpp"

using namespace ssdlat;

namespace {

constexpr int kOk = 0, kFailed = 1, kUsage = 2, kLimit = 3;

std::string shortest(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

struct CountArgs {
  std::size_t max_n = 0;
  std::string mode = "exact";
  std::string out;
  std::string cache;
};

int run_count(const CountArgs& a) {
  std::ostringstream csv;
  if (a.mode == "float") {
    csv << "n,r,err\n";
    for (const auto& row : count_float(a.max_n)) csv << format_row(row) << '\n';
  } else {
    const auto rows = count_exact(a.max_n);
    if (const auto path = resolve_cache_path(a.cache); !path.empty()) {
      CountsCache cache(path);
      cache.merge(rows);
      cache.save();
    }
    csv << "n,N,W\n";
    for (const auto& row : rows) csv << format_row(row) << '\n';
  }
  if (a.out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream file(a.out, std::ios::trunc);
    file << csv.str();
    if (!file) throw Error(ErrorKind::DomainError, "cannot write " + a.out);
  }
  return kOk;
}

struct EnumerateArgs {
  std::size_t n = 0;
  std::string emit = "codes";
  std::size_t workers = 1;
  std::size_t ceiling = 30;
  std::uint64_t budget = 0;
};

int run_enumerate(const EnumerateArgs& a) {
  if (a.n > a.ceiling)
    throw Error(ErrorKind::ResourceLimit, "n=" + std::to_string(a.n) + " exceeds the enumeration ceiling " + std::to_string(a.ceiling));
  EnumerateOptions options;
  options.workers = a.workers;
  options.node_budget = a.budget;
  std::mutex out_lock;
  Visitor visitor;
  if (a.emit == "codes")
    visitor = [&](const Diagram& d, std::size_t size) {
      if (size != a.n) return;
      std::string line = render_code(d);
      line += '\n';
      std::lock_guard lock(out_lock);
      std::fwrite(line.data(), 1, line.size(), stdout);
    };
  const auto report = enumerate(a.n, visitor, options);
  if (a.emit == "stats") {
    const std::uint64_t w = a.n >= 2 ? report.blocked[a.n] : 0;
    std::cout << "N=" << report.counts[a.n] << " W=" << w << '\n';
  }
  std::fflush(stdout);
  return kOk;
}

struct VerifyArgs {
  std::size_t max_n = 10;
  std::string checks = "all";
  std::size_t exhaustive_max = 10;
  std::size_t sample_cap = 10000;
};

int run_verify(const VerifyArgs& a) {
  std::vector<std::string> names;
  if (a.checks == "all") {
    names = check_names();
  } else {
    std::stringstream list(a.checks);
    for (std::string name; std::getline(list, name, ',');) {
      if (std::find(check_names().begin(), check_names().end(), name) == check_names().end()) {
        std::cerr << "unknown check '" << name << "'\n";
        return kUsage;
      }
      names.push_back(name);
    }
  }
  const Corpus corpus = build_corpus(a.max_n, {a.exhaustive_max, a.sample_cap});
  int status = kOk;
  for (const auto& name : names) {
    const auto report = run_check(name, corpus);
    std::cout << format_check(report) << '\n';
    if (!report.pass()) status = kFailed;
  }
  return status;
}

void print_params(const ConstantInterval& c) {
  const auto& p = c.params;
  std::cout << "# m=" << p.m << " z0=" << shortest(p.z0) << " mu=" << shortest(p.mu) << " nu=" << shortest(p.nu)
            << " alpha=" << shortest(p.alpha) << " delta=" << shortest(p.delta) << '\n';
  const double anchor = c.variant == BoundVariant::Remark ? static_cast<double>(p.m) : static_cast<double>(p.m - 1);
  std::cout << "# F(" << shortest(anchor) << ")=" << shortest(primitive(anchor)) << " source_n=" << c.source_n << '\n';
}

struct BoundsArgs {
  std::size_t m = 0;
  std::string count;
  std::string variant = "proof";
};

int run_bounds(const BoundsArgs& a) {
  BigInt n_m;
  if (a.count.empty()) {
    analysis_params(a.m);
    n_m = count_exact(a.m).back().N;
  } else if (n_m.set_str(a.count, 10) != 0) {
    throw Error(ErrorKind::DomainError, "--N must be a decimal integer");
  }
  const auto c = remark_bounds(a.m, n_m, parse_variant(a.variant));
  print_params(c);
  std::cout << format_interval(c) << '\n';
  return kOk;
}

struct EstimateArgs {
  std::size_t max_n = 0;
  std::string mode = "float";
};

int run_estimate(const EstimateArgs& a) {
  analysis_params(a.max_n);
  const ConstantInterval c = a.mode == "exact" ? estimate_constant(count_exact(a.max_n), a.max_n)
                                               : estimate_constant(count_float(a.max_n), a.max_n);
  print_params(c);
  std::cout << "# relative_width=" << shortest((c.hi - c.lo) / c.hi) << '\n';
  const bool inside = 0.023 <= c.lo && c.hi <= 0.073;
  std::cout << "# conjectured range 0.023..0.073: " << (inside ? "consistent" : "not confirmed") << '\n';
  std::cout << format_interval(c) << '\n';
  return kOk;
}

int run_show(const std::string& code) {
  if (!code.empty()) {
    std::cout << render_ascii(parse_code(code));
    return kOk;
  }
  std::string line;
  std::size_t number = 0;
  bool first = true;
  while (std::getline(std::cin, line)) {
    ++number;
    if (line.empty()) continue;
    const Diagram d = parse_code(line, number);
    if (!first) std::cout << '\n';
    first = false;
    std::cout << render_ascii(d);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Slim semimodular diagrams: enumeration, exact counts and bounds on the growth constant"};
  app.require_subcommand(1);

  CountArgs count;
  auto* c = app.add_subcommand("count", "Exact or normalized counts N(n), W(n) as CSV");
  c->add_option("--max-n", count.max_n, "Largest size")->required()->check(CLI::PositiveNumber);
  c->add_option("--mode", count.mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  c->add_option("--out", count.out, "CSV file instead of stdout");
  c->add_option("--cache", count.cache, "Counts cache file (default $SSDLAT_CACHE_DIR/counts.csv)");

  EnumerateArgs en;
  auto* e = app.add_subcommand("enumerate", "Generate every diagram of one size");
  e->add_option("--n", en.n, "Size")->required()->check(CLI::PositiveNumber);
  e->add_option("--emit", en.emit, "codes or stats")->check(CLI::IsMember({"codes", "stats"}));
  e->add_option("--workers", en.workers, "Worker threads")->check(CLI::PositiveNumber);
  e->add_option("--ceiling", en.ceiling, "Largest n accepted");
  e->add_option("--max-nodes", en.budget, "Node budget, 0 for none");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Run lemma checks on generated diagrams");
  v->add_option("--max-n", ver.max_n, "Largest size")->check(CLI::PositiveNumber);
  v->add_option("--checks", ver.checks, "Comma-separated check names or 'all'");
  v->add_option("--exhaustive-max", ver.exhaustive_max, "Keep every diagram up to this size");
  v->add_option("--sample-cap", ver.sample_cap, "Diagrams kept per larger size")->check(CLI::PositiveNumber);

  BoundsArgs bo;
  auto* b = app.add_subcommand("bounds", "Interval for the constant from one anchor");
  b->add_option("--m", bo.m, "Anchor size (>= 5)")->required();
  b->add_option("--N", bo.count, "N(m); computed when omitted");
  b->add_option("--variant", bo.variant, "proof or remark")->check(CLI::IsMember({"proof", "remark"}));

  EstimateArgs es;
  auto* s = app.add_subcommand("estimate", "Interval for the constant anchored at --max-n");
  s->add_option("--max-n", es.max_n, "Anchor size (>= 5)")->required();
  s->add_option("--mode", es.mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));

  std::string code;
  auto* w = app.add_subcommand("show", "ASCII drawing of a code, or of each line on stdin");
  w->add_option("--code", code, "Canonical code");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int status = app.exit(err);
    return status == 0 ? kOk : kUsage;
  }

  try {
    if (*c) return run_count(count);
    if (*e) return run_enumerate(en);
    if (*v) return run_verify(ver);
    if (*b) return run_bounds(bo);
    if (*s) return run_estimate(es);
    if (*w) return run_show(code);
  } catch (const Error& err) {
    std::fflush(stdout);
    std::cerr << "ssdlat: " << err.what() << '\n';
    return err.kind() == ErrorKind::ResourceLimit ? kLimit : kUsage;
  } catch (const std::exception& err) {
    std::cerr << "ssdlat: " << err.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
