#include "doctest.h"
#include "support.hpp"

#include <map>
#include <set>

#include "hexfold/online.hpp"
#include "hexfold/oracles.hpp"

using namespace hexfold;
using namespace testing;

namespace {

Disk disk(const Rational& x, const Rational& y, const Rational& d = Rational(1)) { return {pt(x, y), ExactScalar(d)}; }

std::vector<Disk> random_disks(std::size_t n, const Rational& sigma, long box, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Disk> out;
  for (std::size_t i = 0; i < n; ++i) {
    const Rational x = grid_rational(rng, 0, box, 100), y = grid_rational(rng, 0, box, 100);
    const Rational top = sigma * 1000;
    std::uniform_int_distribution<long> dd(1000, top.get_num().get_si() / top.get_den().get_si());
    out.push_back(disk(x, y, ratio(dd(rng), 1000)));
  }
  return out;
}

std::shared_ptr<const PlaneColoring> share(PlaneColoring c) { return std::make_shared<const PlaneColoring>(std::move(c)); }

AlgorithmConfig make(AlgorithmKind kind, const char* sigma, std::shared_ptr<const PlaneColoring> base,
                     Mode mode = Mode::Proper) {
  AlgorithmConfig c;
  c.kind = kind;
  c.sigma = dec(sigma);
  c.base = std::move(base);
  c.mode = mode;
  return c;
}

// Power-of-two bracket by repeated halving.
int reference_branch(const Rational& d, const Rational& sigma) {
  Rational s = sigma;
  int t = 0;
  while (s > 1 && s.get_den() == 1 && s.get_num() % 2 == 0) {
    s /= 2;
    ++t;
  }
  if (t >= 1 && s == 1 && d == sigma) return t - 1;
  int j = 0;
  Rational lo(1);
  while (lo * 2 <= d) {
    lo *= 2;
    ++j;
  }
  return j;
}

}  // namespace

TEST_CASE("branch index") {
  CHECK(branch_index(ExactScalar(dec("1.5")), Rational(2)) == 0);
  CHECK(branch_index(ExactScalar(4), Rational(4)) == 1);
  CHECK(branch_index(ExactScalar(4), Rational(5)) == 2);
  CHECK(branch_index(ExactScalar(2), Rational(2)) == 0);
  CHECK(branch_index(ExactScalar(1), Rational(1)) == 0);
  CHECK_THROWS_AS(branch_index(ExactScalar(dec("0.99")), Rational(2)), std::invalid_argument);
  CHECK_THROWS_AS(branch_index(ExactScalar(3), Rational(2)), std::invalid_argument);
  std::mt19937_64 rng(2);
  for (const char* s : {"1", "1.5", "2", "3", "4", "8", "10"}) {
    const Rational sigma = dec(s);
    for (int trial = 0; trial < 200; ++trial) {
      const Rational top = sigma * 1000;
      std::uniform_int_distribution<long> dd(1000, top.get_num().get_si());
      const Rational d = ratio(dd(rng), 1000);
      CHECK(branch_index(ExactScalar(d), sigma) == reference_branch(d, sigma));
      CHECK(branch_index_sq(ExactScalar(d * d), sigma) == reference_branch(d, sigma));
    }
    CHECK(branch_index(ExactScalar(sigma), sigma) == reference_branch(sigma, sigma));
    CHECK(branch_index(ExactScalar(sigma), sigma) < branch_count(sigma));
  }
  CHECK(branch_count(Rational(1)) == 1);
  CHECK(branch_count(Rational(8)) == 3);
  CHECK(branch_count(Rational(9)) == 4);
}

TEST_CASE("SimpleColor adds k per earlier vertex of the tile") {
  const auto base = share(hsq_coloring(1, Rational(1)));
  REQUIRE(base->k() == 9);
  OnlineColorer colorer(make(AlgorithmKind::SimpleColor, "1", base));
  const std::int64_t phi = base->tile_color({0, 0});
  CHECK(colorer.step(disk(0, 0)).value == static_cast<std::uint64_t>(phi));
  CHECK(colorer.step(disk(dec("0.1"), 0)).value == static_cast<std::uint64_t>(phi + 9));
  const OnlineColor third = colorer.step(disk(0, dec("0.1")));
  CHECK(third.value == static_cast<std::uint64_t>(phi + 18));
  CHECK(third.tile == TileIndex{0, 0});
}

TEST_CASE("counters match a recount of the output") {
  for (AlgorithmKind kind : {AlgorithmKind::SimpleColor, AlgorithmKind::FoldColor, AlgorithmKind::FoldShadeColor,
                             AlgorithmKind::BranchColor, AlgorithmKind::BranchFoldColor}) {
    const bool branching = is_branching(kind);
    const char* sigma = branching ? "4" : "1";
    std::shared_ptr<const PlaneColoring> base;
    if (kind == AlgorithmKind::SimpleColor) base = share(hsq_coloring(1, Rational(1)));
    else if (kind == AlgorithmKind::BranchColor) base = share(PlaneColoring::pq(1, 2, 2));
    else if (kind == AlgorithmKind::BranchFoldColor) base = share(PlaneColoring::pq(3, 0, 10));
    else base = share(hsq_coloring(2, Rational(1)));
    const auto disks = random_disks(400, dec(sigma), 6, 9);
    const RunResult r = run(make(kind, sigma, base), disks);
    const int h = base->h();
    std::map<std::pair<int, TileIndex>, std::uint64_t> per_tile;
    std::map<std::pair<int, SubtileKey>, std::uint64_t> per_subtile;
    for (std::size_t i = 0; i < disks.size(); ++i) {
      const OnlineColor& c = r.colors[i];
      const int j = branching ? reference_branch(disks[i].diameter.rational_part(), dec(sigma)) : 0;
      CHECK(c.branch == j);
      const Point scaled = ExactScalar(Rational(1, 1 << j)) * disks[i].center;
      CHECK(hex_closed_contains(h, c.tile, scaled));
      CHECK(base->lattice().layer_of(c.tile) == c.layer);
      std::uint64_t& t = per_tile[{j, c.tile}];
      CHECK(c.value == static_cast<std::uint64_t>(base->tile_color(c.tile)) + static_cast<std::uint64_t>(base->k()) * t);
      ++t;
      if (kind == AlgorithmKind::FoldColor || kind == AlgorithmKind::FoldShadeColor ||
          kind == AlgorithmKind::BranchFoldColor) {
        const SubtileKey key = base->lattice().subtile_key(scaled);
        std::uint64_t& a = per_subtile[{j, key}];
        const std::uint64_t shift = kind == AlgorithmKind::FoldColor ? 0 : base->lattice().shade(key) - 1;
        CHECK(c.layer == static_cast<int>(1 + (shift + a) % static_cast<std::uint64_t>(base->b())));
        ++a;
      }
    }
  }
}

TEST_CASE("folding cycles through the layers of a subtile") {
  const auto base = share(hsq_coloring(2, Rational(1)));
  const int b = base->b();
  OnlineColorer fold(make(AlgorithmKind::FoldColor, "1", base));
  OnlineColorer shade(make(AlgorithmKind::FoldShadeColor, "1", base));
  const Point p = pt(Rational(1, 37), Rational(1, 41));
  const int eta = base->lattice().shade(base->lattice().subtile_key(p));
  std::vector<int> loads(static_cast<std::size_t>(b), 0);
  for (int i = 0; i < 3 * b + 2; ++i) {
    const OnlineColor f = fold.step({p, ExactScalar(1)});
    CHECK(f.layer == 1 + i % b);
    const OnlineColor s = shade.step({p, ExactScalar(1)});
    if (i == 0) CHECK(s.layer == eta);
    CHECK(s.layer == 1 + (eta - 1 + i) % b);
    ++loads[static_cast<std::size_t>(s.layer - 1)];
    const auto [lo, hi] = std::minmax_element(loads.begin(), loads.end());
    CHECK(*hi - *lo <= 1);
  }
}

TEST_CASE("BranchColor colors a scaled copy") {
  const auto base = share(PlaneColoring::pq(1, 2, 2));
  OnlineColorer branch(make(AlgorithmKind::BranchColor, "8", base));
  OnlineColorer simple(make(AlgorithmKind::SimpleColor, "2", base));
  const OnlineColor c = branch.step(disk(dec("3.3"), dec("-1.7"), Rational(3)));
  CHECK(c.branch == 1);
  const OnlineColor s = simple.step(disk(dec("1.65"), dec("-0.85"), Rational(1)));
  CHECK(c.value == s.value);
  CHECK(c.tile == s.tile);
  const OnlineColor first = branch.step(disk(0, 0, Rational(1)));
  CHECK(first.branch == 0);
  CHECK(first.value == static_cast<std::uint64_t>(base->tile_color({0, 0})));
}

TEST_CASE("BranchFF is first-fit inside each branch") {
  OnlineColorer ff(make(AlgorithmKind::BranchFF, "8", nullptr));
  const OnlineColor a = ff.step(disk(0, 0, Rational(1)));
  CHECK(a.branch == 0);
  CHECK(a.value == 1);
  const OnlineColor b = ff.step(disk(dec("0.5"), 0, dec("1.2")));
  CHECK(b.branch == 0);
  CHECK(b.value == 2);
  const OnlineColor c = ff.step(disk(0, dec("0.5"), Rational(3)));
  CHECK(c.branch == 1);
  CHECK(c.value == 1);
  const OnlineColor d = ff.step(disk(10, 10, Rational(1)));
  CHECK(d.value == 1);
  CHECK_THROWS_AS(ff.step_at(pt(0, 0), 0), std::logic_error);
}

TEST_CASE("runs are proper, deterministic and online") {
  const auto g12 = share(PlaneColoring::pq(1, 2, 2));
  const auto g100 = share(PlaneColoring::pq(3, 0, 10));
  for (const char* sigma : {"1", "1.5", "2", "4"}) {
    const Rational s = dec(sigma);
    const auto simple = share(find_pq_base(1, s * s));
    const auto fold = share(find_pq_base(2, s * s));
    const auto disks = random_disks(250, s, 8, 31);
    for (AlgorithmKind kind : {AlgorithmKind::BranchFF, AlgorithmKind::SimpleColor, AlgorithmKind::BranchColor,
                               AlgorithmKind::FoldColor, AlgorithmKind::FoldShadeColor, AlgorithmKind::BranchFoldColor}) {
      std::shared_ptr<const PlaneColoring> base = kind == AlgorithmKind::SimpleColor       ? simple
                                                  : kind == AlgorithmKind::BranchColor     ? g12
                                                  : kind == AlgorithmKind::BranchFoldColor ? g100
                                                  : kind == AlgorithmKind::BranchFF        ? nullptr
                                                                                           : fold;
      const AlgorithmConfig cfg = make(kind, sigma, base);
      const RunResult r = run(cfg, disks);
      for (std::size_t u = 0; u < disks.size(); ++u) {
        for (std::size_t v = u + 1; v < disks.size(); ++v) {
          if (!disks_intersect(disks[u], disks[v])) continue;
          CHECK_FALSE((r.colors[u].branch == r.colors[v].branch && r.colors[u].value == r.colors[v].value));
          CHECK(r.colors[u].flat != r.colors[v].flat);
        }
      }
      const RunResult again = run(cfg, disks);
      const std::vector<Disk> prefix(disks.begin(), disks.begin() + 100);
      const RunResult head = run(cfg, prefix);
      for (std::size_t i = 0; i < disks.size(); ++i) {
        CHECK(again.colors[i].flat == r.colors[i].flat);
        if (i < prefix.size()) CHECK(head.colors[i].flat == r.colors[i].flat);
      }
    }
  }
}

TEST_CASE("empty stream") {
  const RunResult r = run(make(AlgorithmKind::FoldShadeColor, "1", share(hsq_coloring(2, Rational(1)))), {});
  CHECK(r.colors.empty());
  CHECK(r.colors_used == 0);
  CHECK(r.max_value == 0);
}

TEST_CASE("flattened colors are injective") {
  for (const char* sigma : {"2", "4", "5", "16"}) {
    OnlineColorer c(make(AlgorithmKind::BranchColor, sigma, share(PlaneColoring::pq(1, 2, 2))));
    std::set<std::uint64_t> seen;
    for (int j = 0; j < c.branches(); ++j) {
      for (std::uint64_t v = 1; v <= 60; ++v) CHECK(seen.insert(c.flatten(j, v)).second);
    }
    CHECK(*seen.rbegin() == static_cast<std::uint64_t>(60 * c.branches()));
  }
}

TEST_CASE("bound formulas") {
  const BoundParams h5{121, 25, 150, 1};
  CHECK(bound_formula(AlgorithmKind::FoldColor, 108901, h5) == 544500);
  CHECK(bound_formula(AlgorithmKind::FoldShadeColor, 54450, h5) == 272250);
  CHECK(bound_formula(AlgorithmKind::FoldShadeColor, 54451, h5) < 5 * 54451);
  CHECK(bound_formula(AlgorithmKind::SimpleColor, 4, {9, 1, 1, 1}) == 36);
  CHECK(bound_formula(AlgorithmKind::BranchColor, 5, {12, 1, 1, 3}) == 180);
  CHECK(bound_formula(AlgorithmKind::BranchFF, 5, {1, 1, 1, 3}) == 420);
  CHECK(bound_formula(AlgorithmKind::BranchFoldColor, 54450, {121, 25, 150, 2}) == 544500);
  CHECK(threshold_omega(AlgorithmKind::FoldColor, h5) == 108901);
  CHECK(threshold_omega(AlgorithmKind::FoldShadeColor, h5) == 54451);
  // Brute-force scan of the same threshold.
  for (AlgorithmKind kind : {AlgorithmKind::FoldColor, AlgorithmKind::FoldShadeColor}) {
    std::uint64_t last_bad = 0;
    for (std::uint64_t w = 1; w <= 200000; ++w) {
      if (bound_formula(kind, w, h5) >= 5 * w) last_bad = w;
    }
    CHECK(threshold_omega(kind, h5) == last_bad + 1);
  }
  CHECK_THROWS(threshold_omega(AlgorithmKind::SimpleColor, h5));
}

TEST_CASE("configuration checks") {
  const auto pq = share(PlaneColoring::pq(1, 2, 2));
  const auto folded = share(hsq_coloring(2, Rational(1)));
  const auto label = share(lstar_small_sigma(1, Rational(1)));
  CHECK_THROWS_AS(OnlineColorer(make(AlgorithmKind::BranchColor, "1", label, Mode::L21)), std::invalid_argument);
  CHECK_THROWS_AS(OnlineColorer(make(AlgorithmKind::FoldShadeColor, "1", folded, Mode::L21)), std::invalid_argument);
  CHECK_THROWS_AS(OnlineColorer(make(AlgorithmKind::SimpleColor, "1", folded)), std::invalid_argument);
  CHECK_THROWS_AS(OnlineColorer(make(AlgorithmKind::SimpleColor, "2.5", pq)), std::invalid_argument);
  CHECK_THROWS_AS(OnlineColorer(make(AlgorithmKind::FoldColor, "1", nullptr)), std::invalid_argument);
  CHECK_NOTHROW(OnlineColorer(make(AlgorithmKind::FoldShadeColor, "1", label, Mode::L21)));
  OnlineColorer ok(make(AlgorithmKind::SimpleColor, "2", pq));
  CHECK_THROWS_AS(ok.step(disk(0, 0, dec("2.5"))), std::invalid_argument);
  CHECK_THROWS_AS(ok.step(disk(0, 0, dec("0.5"))), std::invalid_argument);
}

TEST_CASE("default bases") {
  AlgorithmConfig c = make(AlgorithmKind::BranchColor, "8", nullptr);
  CHECK(default_base(c, 2)->k() == 12);
  c = make(AlgorithmKind::BranchFoldColor, "8", nullptr);
  CHECK(default_base(c, 3)->k() == 100);
  c = make(AlgorithmKind::FoldShadeColor, "1", nullptr, Mode::L21);
  CHECK(default_base(c, 1)->kind() == ColoringKind::LStar3);
  c = make(AlgorithmKind::FoldShadeColor, "2", nullptr, Mode::L21);
  CHECK(default_base(c, 1)->kind() == ColoringKind::LStar6);
  c = make(AlgorithmKind::BranchFF, "2", nullptr);
  CHECK(default_base(c, 1) == nullptr);
}

TEST_CASE("L(2,1) mode separates labels at distance one and two") {
  const auto label = share(lstar_small_sigma(1, Rational(1)));
  const auto disks = random_disks(120, Rational(1), 5, 4);
  const RunResult r = run(make(AlgorithmKind::FoldShadeColor, "1", label, Mode::L21), disks);
  const std::size_t n = disks.size();
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const auto cu = static_cast<std::int64_t>(r.colors[u].value), cv = static_cast<std::int64_t>(r.colors[v].value);
      if (disks_intersect(disks[u], disks[v])) {
        CHECK(std::abs(cu - cv) >= 2);
        continue;
      }
      bool two = false;
      for (std::size_t w = 0; w < n && !two; ++w) {
        two = w != u && w != v && disks_intersect(disks[u], disks[w]) && disks_intersect(disks[w], disks[v]);
      }
      if (two) CHECK(cu != cv);
    }
  }
}
