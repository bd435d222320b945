#include "doctest.h"
#include "support.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "hexfold/oracles.hpp"

using namespace hexfold;
using namespace testing;

namespace {

IntersectionGraph from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  IntersectionGraph g(n);
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

IntersectionGraph cycle(std::size_t n) {
  IntersectionGraph g(n);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

IntersectionGraph complete(std::size_t n) {
  IntersectionGraph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

IntersectionGraph random_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  IntersectionGraph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) g.add_edge(i, j);
  return g;
}

bool is_clique(const IntersectionGraph& g, std::uint32_t mask) {
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if ((mask >> i & 1) && (mask >> j & 1) && !g.adjacent(i, j)) return false;
  return true;
}

std::size_t subset_clique(const IntersectionGraph& g) {
  std::size_t best = 0;
  for (std::uint32_t m = 0; m < (1u << g.size()); ++m)
    if (is_clique(g, m)) best = std::max<std::size_t>(best, static_cast<std::size_t>(std::popcount(m)));
  return best;
}

// Chromatic number by DP over independent sets.
std::size_t subset_chromatic(const IntersectionGraph& g) {
  const std::uint32_t full = (1u << g.size()) - 1;
  std::vector<char> independent(full + 1, 1);
  for (std::uint32_t m = 0; m <= full; ++m)
    for (std::size_t i = 0; i < g.size() && independent[m]; ++i)
      for (std::size_t j = i + 1; j < g.size(); ++j)
        if ((m >> i & 1) && (m >> j & 1) && g.adjacent(i, j)) {
          independent[m] = 0;
          break;
        }
  std::vector<std::size_t> best(full + 1, g.size() + 1);
  best[0] = 0;
  for (std::uint32_t m = 1; m <= full; ++m)
    for (std::uint32_t s = m; s; s = (s - 1) & m)
      if (independent[s]) best[m] = std::min(best[m], best[m ^ s] + 1);
  return best[full];
}

bool l21_ok(const IntersectionGraph& g, const std::vector<std::int64_t>& lab) {
  for (std::size_t u = 0; u < g.size(); ++u)
    for (std::size_t v = u + 1; v < g.size(); ++v) {
      if (g.adjacent(u, v)) {
        if (std::abs(lab[u] - lab[v]) < 2) return false;
        continue;
      }
      for (std::size_t w = 0; w < g.size(); ++w)
        if (g.adjacent(u, w) && g.adjacent(w, v) && lab[u] == lab[v]) return false;
    }
  return true;
}

// Smallest span found by enumerating every labeling with labels in [0, s].
std::int64_t odometer_span(const IntersectionGraph& g) {
  for (std::int64_t s = 0;; ++s) {
    std::vector<std::int64_t> lab(g.size(), 0);
    while (true) {
      if (l21_ok(g, lab)) return s;
      std::size_t i = 0;
      while (i < lab.size() && lab[i] == s) lab[i++] = 0;
      if (i == lab.size()) break;
      ++lab[i];
    }
  }
}

std::shared_ptr<const PlaneColoring> share(PlaneColoring c) { return std::make_shared<const PlaneColoring>(std::move(c)); }

}  // namespace

TEST_CASE("graph construction") {
  const std::vector<Disk> tangent{{pt(0, 0), ExactScalar(1)}, {pt(1, 0), ExactScalar(1)}};
  CHECK(build_graph(tangent).edge_count() == 1);
  const std::vector<Disk> apart{{pt(0, 0), ExactScalar(1)}, {pt(dec("1.000001"), 0), ExactScalar(1)}};
  CHECK(build_graph(apart).edge_count() == 0);
  std::vector<Disk> same(7, Disk{pt(3, 3), ExactScalar(2)});
  CHECK(build_graph(same) == complete(7));
  CHECK(build_graph(std::vector<Disk>{}).size() == 0);

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto disks = gen_random_disks(300, dec("4"), Rational(15), seed);
    const IntersectionGraph fast = build_graph(disks);
    CHECK(fast == build_graph_brute(disks));
    for (const auto& [u, v] : fast.edges()) CHECK(disks_intersect(disks[u], disks[v]));
    for (std::size_t v = 0; v < fast.size(); ++v)
      CHECK(std::is_sorted(fast.neighbors(v).begin(), fast.neighbors(v).end()));
  }
}

TEST_CASE("graph basics") {
  IntersectionGraph g(4);
  g.add_edge(0, 1);
  g.add_edge(1, 0);
  g.add_edge(2, 2);
  CHECK(g.edge_count() == 1);
  CHECK(g.adjacent(1, 0));
  CHECK_FALSE(g.adjacent(2, 2));
  const IntersectionGraph sub = complete(5).induced({4, 2, 0});
  CHECK(sub == complete(3));
}

TEST_CASE("coloring verifier") {
  const IntersectionGraph g = cycle(4);
  CHECK(verify_coloring(g, std::vector<std::uint64_t>{1, 2, 1, 2}).pass);
  const ColoringVerdict bad = verify_coloring(g, std::vector<std::uint64_t>{1, 2, 2, 1});
  CHECK_FALSE(bad.pass);
  CHECK(bad.conflicts.size() == 2);
  std::vector<OnlineColor> c(2);
  c[0].value = c[1].value = 1;
  c[1].branch = 1;
  CHECK(verify_coloring(from_edges(2, {{0, 1}}), c).pass);
  c[1].branch = 0;
  CHECK_FALSE(verify_coloring(from_edges(2, {{0, 1}}), c).pass);
}

TEST_CASE("L(2,1) verifier") {
  const IntersectionGraph path = from_edges(3, {{0, 1}, {1, 2}});
  const L21Verdict bad = verify_l21(path, {1, 3, 1});
  CHECK_FALSE(bad.pass);
  CHECK(bad.distance2_violations.size() == 1);
  CHECK(bad.edge_violations.empty());
  CHECK(verify_l21(path, {1, 3, 5}).pass);
  const L21Verdict close = verify_l21(path, {1, 2, 5});
  CHECK_FALSE(close.pass);
  CHECK(close.edge_violations.size() == 1);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const IntersectionGraph g = random_graph(7, 0.35, seed);
    std::mt19937_64 rng(seed);
    std::vector<std::int64_t> lab(7);
    for (auto& l : lab) l = static_cast<std::int64_t>(rng() % 6);
    CHECK(verify_l21(g, lab).pass == l21_ok(g, lab));
  }
}

TEST_CASE("exact clique number") {
  CHECK(max_clique_exact(IntersectionGraph(0)) == 0);
  CHECK(max_clique_exact(IntersectionGraph(3)) == 1);
  CHECK(max_clique_exact(complete(6)) == 6);
  CHECK(max_clique_exact(cycle(5)) == 2);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const IntersectionGraph g = random_graph(14, 0.5, seed);
    const std::size_t w = max_clique_exact(g);
    CHECK(w == subset_clique(g));
    CHECK(greedy_clique(g) <= w);
  }
  CHECK_THROWS_AS(max_clique_exact(IntersectionGraph(101)), OracleRefusal);
}

TEST_CASE("exact chromatic number") {
  CHECK(chromatic_exact(complete(4)) == 4);
  CHECK(chromatic_exact(cycle(5)) == 3);
  CHECK(chromatic_exact(cycle(6)) == 2);
  CHECK(chromatic_exact(IntersectionGraph(3)) == 1);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const IntersectionGraph g = random_graph(10, 0.45, seed);
    CHECK(chromatic_exact(g) == subset_chromatic(g));
  }
  CHECK_THROWS_AS(chromatic_exact(IntersectionGraph(21)), OracleRefusal);
}

TEST_CASE("exact L(2,1) span") {
  CHECK(l21_span_exact(IntersectionGraph(1)) == 0);
  CHECK(l21_span_exact(complete(2)) == 2);
  CHECK(l21_span_exact(complete(3)) == 4);
  CHECK(l21_span_exact(from_edges(3, {{0, 1}, {1, 2}})) == 3);
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const IntersectionGraph g = random_graph(5, 0.5, seed);
    CHECK(l21_span_exact(g) == odometer_span(g));
  }
  CHECK_THROWS_AS(l21_span_exact(IntersectionGraph(11)), OracleRefusal);
}

TEST_CASE("random disk generator") {
  const auto a = gen_random_disks(500, dec("2.5"), Rational(10), 77);
  const auto b = gen_random_disks(500, dec("2.5"), Rational(10), 77);
  const auto c = gen_random_disks(500, dec("2.5"), Rational(10), 78);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].center == b[i].center);
    CHECK(a[i].diameter == b[i].diameter);
    differs = differs || !(a[i].center == c[i].center);
    const Rational x = a[i].center.x.rational_part(), d = a[i].diameter.rational_part();
    CHECK(x >= 0);
    CHECK(x <= 10);
    CHECK(d >= 1);
    CHECK(d <= dec("2.5"));
    CHECK(Rational(d * 1000).get_den() == 1);
    CHECK(Rational(x * 1000).get_den() == 1);
  }
  CHECK(differs);
}

TEST_CASE("tile clique generator") {
  const auto base = share(hsq_coloring(1, Rational(1)));
  REQUIRE(base->k() == 9);
  const auto disks = gen_adversarial_tile_clique(5, *base);
  for (const Disk& d : disks) CHECK(hex_strictly_contains(1, {0, 0}, d.center));
  const IntersectionGraph g = build_graph(disks);
  CHECK(g == complete(5));
  AlgorithmConfig cfg;
  cfg.kind = AlgorithmKind::SimpleColor;
  cfg.base = base;
  const RunResult r = run(cfg, disks);
  CHECK(r.max_value <= 45);
  CHECK(r.max_value == static_cast<std::uint64_t>(base->tile_color({0, 0}) + 36));
}

TEST_CASE("competitive report") {
  AlgorithmConfig cfg;
  cfg.kind = AlgorithmKind::FoldShadeColor;
  cfg.base = share(hsq_coloring(2, Rational(1)));
  const ReportOutcome one = competitive_report(cfg, {{pt(0, 0), ExactScalar(1)}}, "k1");
  CHECK(one.report.omega == 1);
  CHECK(one.report.ratio_vs_omega == doctest::Approx(1.0));
  CHECK(one.report.verified);
  CHECK(one.report.chi == std::optional<std::size_t>(1));

  const auto clique = gen_adversarial_tile_clique(20, *cfg.base, 3);
  const ReportOutcome out = competitive_report(cfg, clique, "clique");
  CHECK(out.report.omega == 20);
  CHECK(out.report.omega_exact);
  CHECK(out.report.verified);
  CHECK(out.report.bound_respected == std::optional<bool>(true));
  CHECK(out.report.max_value <= out.report.bound_value);
  CHECK(out.report.bound_value ==
        bound_formula(AlgorithmKind::FoldShadeColor, 20, {cfg.base->k(), cfg.base->b(), gamma(2), 1}));

  const std::string row = ratio_csv_row(out.report);
  const std::string header = ratio_csv_header();
  CHECK(std::count(row.begin(), row.end(), ',') == std::count(header.begin(), header.end(), ','));
  CHECK(row.find("true") != std::string::npos);
}

TEST_CASE("report in L(2,1) mode") {
  AlgorithmConfig cfg;
  cfg.kind = AlgorithmKind::FoldShadeColor;
  cfg.mode = Mode::L21;
  cfg.base = share(lstar_small_sigma(1, Rational(1)));
  const auto disks = gen_random_disks(6, Rational(1), Rational(2), 4);
  const ReportOutcome out = competitive_report(cfg, disks, "l21");
  CHECK(out.report.verified);
  REQUIRE(out.report.lambda.has_value());
  const IntersectionGraph g = build_graph(disks);
  CHECK(*out.report.lambda == odometer_span(g));
}
