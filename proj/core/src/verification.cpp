#include "ssdlat/verification.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "ssdlat/generation.hpp"

namespace ssdlat {

std::set<std::string> Corpus::codes(std::size_t n) const {
  std::set<std::string> out;
  for (const auto& d : by_size.at(n)) out.insert(render_code(d));
  return out;
}

Corpus build_corpus(std::size_t n_max, const CorpusOptions& options) {
  if (n_max < 1) throw Error(ErrorKind::DomainError, "n_max must be at least 1");
  Corpus corpus;
  corpus.n_max = n_max;
  corpus.rows = count_exact(n_max);
  corpus.by_size.resize(n_max + 1);
  corpus.complete.assign(n_max + 1, true);
  corpus.complete[0] = false;

  std::vector<std::uint64_t> stride(n_max + 1, 1), seen(n_max + 1, 0);
  for (std::size_t n = options.exhaustive_max + 1; n <= n_max; ++n) {
    const BigInt& total = corpus.rows[n - 1].N;
    if (total <= options.sample_cap) continue;
    BigInt s = (total + options.sample_cap - 1) / options.sample_cap;
    stride[n] = s.get_ui();
    corpus.complete[n] = false;
  }
  enumerate(n_max, [&](const Diagram& d, std::size_t n) {
    if (seen[n]++ % stride[n] == 0) corpus.by_size[n].push_back(d);
  });
  return corpus;
}

namespace {

CheckReport start(std::string name, const Corpus& corpus, std::size_t n_min = 1) {
  return CheckReport{std::move(name), n_min, corpus.n_max, 0, std::nullopt};
}

// Removes `drop` and rebuilds. Leading levels left empty are discarded when
// `trim` is set; any other empty level makes build() reject the result.
Diagram without(const Diagram& d, const std::set<NodeRef>& drop, bool trim) {
  const std::size_t levels = d.level_count();
  std::vector<std::vector<std::uint32_t>> renumber(levels);
  std::vector<std::uint32_t> sizes(levels, 0);
  for (std::size_t l = 0; l < levels; ++l) {
    renumber[l].assign(d.level_size(l) + 1, 0);
    for (std::uint32_t p = 1; p <= d.level_size(l); ++p)
      if (!drop.count({static_cast<std::uint32_t>(l), p})) renumber[l][p] = ++sizes[l];
  }
  GapEdges gaps(levels - 1);
  for (std::size_t g = 0; g + 1 < levels; ++g)
    for (const Edge& e : d.gap(g))
      if (renumber[g][e.lower] && renumber[g + 1][e.upper]) gaps[g].push_back({renumber[g][e.lower], renumber[g + 1][e.upper]});
  if (trim) {
    std::size_t lead = 0;
    while (lead + 1 < levels && sizes[lead] == 0) ++lead;
    sizes.erase(sizes.begin(), sizes.begin() + static_cast<std::ptrdiff_t>(lead));
    gaps.erase(gaps.begin(), gaps.begin() + static_cast<std::ptrdiff_t>(lead));
  }
  return build(std::move(sizes), gaps);
}

std::vector<NodeRef> ideal(const Diagram& d, NodeRef top) {
  std::vector<NodeRef> out;
  const auto& order = d.order();
  const std::size_t t = d.index(top);
  for (std::size_t i = 0; i < d.size(); ++i)
    if (order.leq(i, t)) out.push_back(d.node(i));
  return out;
}

bool slim_semimodular(const Diagram& d) { return is_slim(d) && is_semimodular(d); }

}  // namespace

CheckReport check_dichotomy(const Corpus& corpus) {
  auto r = start("dichotomy", corpus);
  for (std::size_t n = 1; n <= corpus.n_max; ++n)
    for (const auto& d : corpus.by_size[n]) {
      ++r.checked;
      const NodeRef cl = corner_left(d), cr = corner_right(d);
      const bool zero_l = cl.level == 0, zero_r = cr.level == 0;
      if (zero_l != zero_r || (zero_l && (cl != d.bottom() || cr != d.bottom())))
        r.fail(render_code(d), "corners " + to_string(cl) + " " + to_string(cr));
    }
  return r;
}

CheckReport check_corner_ideal(const Corpus& corpus) {
  auto r = start("corner-ideal", corpus);
  for (std::size_t n = 1; n <= corpus.n_max; ++n)
    for (const auto& d : corpus.by_size[n]) {
      ++r.checked;
      const NodeRef c = corner_left(d);
      for (std::uint32_t l = 1; l <= c.level; ++l)
        if (d.lower_degree({l, 1}) != 1) r.fail(render_code(d), "join-reducible " + to_string({l, 1}));
      if (!insert_blocked(d)) continue;
      const auto below = ideal(d, c);
      const bool chain = below.size() == c.level + 1 &&
                         std::all_of(below.begin(), below.end(), [](NodeRef x) { return x.pos == 1; });
      if (!chain) r.fail(render_code(d), "ideal of " + to_string(c) + " leaves the left boundary");
    }
  return r;
}

CheckReport check_gk(const Corpus& corpus, std::size_t oracle_max) {
  auto r = start("gk", corpus);
  for (std::size_t n = 1; n <= corpus.n_max; ++n)
    for (const auto& d : corpus.by_size[n]) {
      ++r.checked;
      if (!gk_condition(d)) r.fail(render_code(d), "slim semimodular diagram violates the 4-cell condition");
    }
  for (std::size_t n = 1; n <= std::min(oracle_max, corpus.n_max); ++n)
    for (const auto& d : brute_force_lattices(n)) {
      ++r.checked;
      if (is_semimodular(d) != gk_condition(d))
        r.fail(render_code(d), is_semimodular(d) ? "semimodular without the 4-cell condition"
                                                 : "4-cell condition without semimodularity");
    }
  return r;
}

CheckReport check_w_set(const Corpus& corpus) {
  auto r = start("w-set", corpus, 2);
  for (std::size_t n = 2; n <= corpus.n_max; ++n) {
    if (!corpus.complete[n] || !corpus.complete[n - 1]) continue;
    r.n_max = n;
    const auto smaller = corpus.codes(n - 1);
    std::set<std::string> image;
    for (const auto& d : corpus.by_size[n])
      if (left_rank(d) > 0) image.insert(render_code(remove_corner(d)));
    std::uint64_t missing = 0;
    for (const auto& e : corpus.by_size[n - 1]) {
      ++r.checked;
      const std::string code = render_code(e);
      const bool outside = !image.count(code);
      missing += outside;
      if (outside != insert_blocked(e))
        r.fail(code, outside ? "outside the hat image but corner is not a coatom" : "blocked but in the hat image");
    }
    for (const auto& code : image)
      if (!smaller.count(code)) r.fail(code, "hat image is not a generated diagram");
    if (BigInt(static_cast<unsigned long>(missing)) != corpus.rows[n - 1].W)
      r.fail("", "W(" + std::to_string(n) + ") count " + std::to_string(missing) + " differs from the recurrence");
  }
  return r;
}

CheckReport check_trunk(const Corpus& corpus) {
  auto r = start("trunk", corpus, 2);
  for (std::size_t n = 2; n <= corpus.n_max; ++n) {
    std::map<std::pair<std::string, std::size_t>, std::string> seen;
    for (const auto& e : corpus.by_size[n]) {
      if (!insert_blocked(e)) continue;
      ++r.checked;
      const std::string code = render_code(e);
      const auto below = ideal(e, corner_left(e));
      try {
        const Diagram trunk = without(e, {below.begin(), below.end()}, true);
        if (trunk.size() != e.size() - e.length())
          r.fail(code, "trunk has " + std::to_string(trunk.size()) + " elements");
        if (!slim_semimodular(trunk)) r.fail(code, "trunk is not slim semimodular");
        auto [it, fresh] = seen.emplace(std::pair{render_code(trunk), e.length()}, code);
        if (!fresh) r.fail(code, "same trunk and length as " + it->second);
      } catch (const Error& err) {
        r.fail(code, std::string("trunk rejected: ") + err.what());
      }
    }
  }
  return r;
}

CheckReport check_partitions(const Corpus& corpus) {
  auto r = start("partitions", corpus, 4);
  for (std::size_t n = 4; n <= corpus.n_max; ++n) {
    if (!corpus.complete[n]) continue;
    r.n_max = n;
    std::uint64_t zero = 0, ones = 0;
    std::set<std::string> reduced;
    for (const auto& d : corpus.by_size[n]) {
      ++r.checked;
      const std::size_t lr = left_rank(d), rr = right_rank(d);
      if (lr == 0) ++zero;
      if (lr != 1 || rr != 1) continue;
      ++ones;
      // drop the bottom and both corners
      const std::string code = render_code(d);
      try {
        const Diagram rest = without(d, {d.bottom(), corner_left(d), corner_right(d)}, true);
        if (rest.size() != n - 3 || !slim_semimodular(rest)) r.fail(code, "three-element removal breaks the diagram");
        if (!reduced.insert(render_code(rest)).second) r.fail(code, "three-element removal is not injective");
      } catch (const Error& err) {
        r.fail(code, std::string("three-element removal rejected: ") + err.what());
      }
    }
    const auto& rows = corpus.rows;
    if (BigInt(static_cast<unsigned long>(zero)) != rows[n - 2].N)
      r.fail("", "rank-0 count " + std::to_string(zero) + " != N(" + std::to_string(n - 1) + ")");
    if (BigInt(static_cast<unsigned long>(ones)) != rows[n - 4].N)
      r.fail("", "rank-(1,1) count " + std::to_string(ones) + " != N(" + std::to_string(n - 3) + ")");
  }
  return r;
}

CheckReport check_size_bound(const Corpus& corpus) {
  auto r = start("size-bound", corpus);
  for (std::size_t n = 1; n <= corpus.n_max; ++n)
    for (const auto& d : corpus.by_size[n]) {
      ++r.checked;
      const std::size_t side = d.length() + 1;
      if (d.size() > side * side) r.fail(render_code(d), "length " + std::to_string(d.length()));
    }
  return r;
}

CheckReport check_mirror(const Corpus& corpus) {
  auto r = start("mirror", corpus);
  for (std::size_t n = 1; n <= corpus.n_max; ++n) {
    std::set<std::string> images;
    for (const auto& d : corpus.by_size[n]) {
      ++r.checked;
      const Diagram m = mirror(d);
      const std::string code = render_code(d);
      images.insert(render_code(m));
      if (!(mirror(m) == d)) r.fail(code, "mirror is not an involution");
      if (corner_left(m) != mirror(d, corner_right(d)) || corner_right(m) != mirror(d, corner_left(d)))
        r.fail(code, "corners do not swap under mirror");
    }
    if (corpus.complete[n] && images != corpus.codes(n)) r.fail("", "size " + std::to_string(n) + " not closed under mirror");
  }
  return r;
}

CheckReport check_boundary(const Corpus& corpus) {
  auto r = start("boundary", corpus);
  for (std::size_t n = 1; n <= corpus.n_max; ++n)
    for (const auto& d : corpus.by_size[n]) {
      ++r.checked;
      const std::string code = render_code(d);
      try {
        const auto b = boundaries(d);
        if (n >= 3 && std::none_of(b.left.begin() + 1, b.left.end() - 1,
                                   [&](NodeRef x) { return is_doubly_irreducible(d, x); }))
          r.fail(code, "no doubly irreducible left-boundary element besides 0 and 1");
      } catch (const Error& err) {
        r.fail(code, err.what());
      }
      for (std::size_t i = 0; i < d.size(); ++i)
        if (d.upper_degree(d.node(i)) > 2) r.fail(code, to_string(d.node(i)) + " has more than two upper covers");
    }
  return r;
}

CheckReport check_adjunction(const Corpus& corpus) {
  auto r = start("adjunction", corpus, 2);
  for (std::size_t n = 2; n <= corpus.n_max; ++n)
    for (const auto& d : corpus.by_size[n]) {
      ++r.checked;
      const auto [p, tag] = parent(d);
      const ParentTag expected = left_rank(d) == 0 ? ParentTag::RemovedBottom : ParentTag::RemovedLeftCorner;
      const auto kids = children(p);
      if (tag != expected || p.size() != n - 1 || std::find(kids.begin(), kids.end(), d) == kids.end())
        r.fail(render_code(d), "not a child of its parent " + render_code(p));
    }
  return r;
}

CheckReport check_mutants(const Corpus& corpus, const MutantOptions& options) {
  auto r = start("mutants", corpus, 2);
  std::mt19937_64 rng(options.seed);
  std::vector<std::set<std::string>> members(corpus.n_max + 1);
  for (std::size_t n = 1; n <= corpus.n_max; ++n)
    if (corpus.complete[n]) members[n] = corpus.codes(n);

  auto judge = [&](const std::string& origin, const std::string& how, auto make) {
    ++r.checked;
    try {
      const Diagram m = make();
      if (!slim_semimodular(m)) return;
      if (!members[m.size()].count(render_code(m))) r.fail(origin, how + " yields an unlisted diagram " + render_code(m));
    } catch (const Error&) {
    }
  };

  for (std::size_t n = 2; n <= corpus.n_max; ++n) {
    if (!corpus.complete[n] || !corpus.complete[n - 1]) continue;
    r.n_max = n;
    std::vector<Diagram> picked;
    const auto& pool = corpus.by_size[n];
    std::sample(pool.begin(), pool.end(), std::back_inserter(picked), options.per_size, rng);
    for (const auto& d : picked) {
      const std::string code = render_code(d);
      const GapEdges gaps = d.gap_edges();
      const std::vector<std::uint32_t> sizes(d.level_sizes().begin(), d.level_sizes().end());
      for (std::size_t g = 0; g < gaps.size(); ++g)
        for (std::size_t i = 0; i < gaps[g].size(); ++i) {
          const std::string at = "gap " + std::to_string(g) + " edge " + std::to_string(i);
          judge(code, "deleting " + at, [&] {
            GapEdges cut = gaps;
            cut[g].erase(cut[g].begin() + static_cast<std::ptrdiff_t>(i));
            return build(sizes, cut);
          });
          for (int shift : {-1, 1}) {
            const std::int64_t upper = static_cast<std::int64_t>(gaps[g][i].upper) + shift;
            if (upper < 1 || upper > sizes[g + 1]) continue;
            judge(code, "moving " + at, [&] {
              GapEdges moved = gaps;
              moved[g][i].upper = static_cast<std::uint32_t>(upper);
              return build(sizes, moved);
            });
          }
        }
      for (std::size_t i = 0; i < d.size(); ++i)
        judge(code, "dropping " + to_string(d.node(i)), [&] { return without(d, {d.node(i)}, false); });
    }
  }
  return r;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{"dichotomy", "corner-ideal", "gk",       "w-set",    "trunk",      "partitions",
                                              "size-bound", "mirror",      "boundary", "adjunction", "mutants"};
  return names;
}

CheckReport run_check(const std::string& name, const Corpus& corpus) {
  if (name == "dichotomy") return check_dichotomy(corpus);
  if (name == "corner-ideal") return check_corner_ideal(corpus);
  if (name == "gk") return check_gk(corpus);
  if (name == "w-set") return check_w_set(corpus);
  if (name == "trunk") return check_trunk(corpus);
  if (name == "partitions") return check_partitions(corpus);
  if (name == "size-bound") return check_size_bound(corpus);
  if (name == "mirror") return check_mirror(corpus);
  if (name == "boundary") return check_boundary(corpus);
  if (name == "adjunction") return check_adjunction(corpus);
  if (name == "mutants") return check_mutants(corpus);
  throw Error(ErrorKind::DomainError, "unknown check '" + name + "'");
}

std::string format_check(const CheckReport& report) {
  std::string line = "CHECK " + report.name + " n<=" + std::to_string(report.n_max) + (report.pass() ? " PASS" : " FAIL");
  if (!report.pass()) {
    const auto& c = *report.counterexample;
    line += " witness=" + (c.code.empty() ? c.witness : c.code + " (" + c.witness + ")");
  }
  return line;
}

}  // namespace ssdlat
