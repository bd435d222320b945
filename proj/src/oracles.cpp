#include "hexfold/oracles.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numeric>
#include <stdexcept>

#include "hexfold/random.hpp"

namespace hexfold {

IntersectionGraph::IntersectionGraph(std::size_t n, std::string provenance)
    : n_(n), provenance_(std::move(provenance)), matrix_(n * n, 0), adj_(n) {}

void IntersectionGraph::add_edge(std::size_t u, std::size_t v) {
  if (u >= n_ || v >= n_) throw std::out_of_range("vertex out of range");
  if (u == v || adjacent(u, v)) return;
  matrix_[u * n_ + v] = matrix_[v * n_ + u] = 1;
  adj_[u].insert(std::lower_bound(adj_[u].begin(), adj_[u].end(), v), v);
  adj_[v].insert(std::lower_bound(adj_[v].begin(), adj_[v].end(), u), u);
  ++edges_;
}

std::vector<std::pair<std::size_t, std::size_t>> IntersectionGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(edges_);
  for (std::size_t u = 0; u < n_; ++u) {
    for (std::size_t v : adj_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

IntersectionGraph IntersectionGraph::induced(const std::vector<std::size_t>& vertices) const {
  IntersectionGraph g(vertices.size(), provenance_);
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t c = a + 1; c < vertices.size(); ++c) {
      if (adjacent(vertices[a], vertices[c])) g.add_edge(a, c);
    }
  }
  return g;
}

IntersectionGraph build_graph(const std::vector<Disk>& disks) {
  IntersectionGraph g(disks.size(), "disks");
  if (disks.empty()) return g;
  ExactScalar cell(1);
  for (const Disk& d : disks) cell = std::max(cell, d.diameter);
  const ExactScalar inv = ExactScalar(1) / cell;
  std::map<TileIndex, std::vector<std::size_t>> grid;
  std::vector<TileIndex> where(disks.size());
  for (std::size_t i = 0; i < disks.size(); ++i) {
    where[i] = {floor(disks[i].center.x * inv), floor(disks[i].center.y * inv)};
    grid[where[i]].push_back(i);
  }
  for (std::size_t i = 0; i < disks.size(); ++i) {
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = grid.find({where[i].i + dx, where[i].j + dy});
        if (it == grid.end()) continue;
        for (std::size_t j : it->second) {
          if (j > i && disks_intersect(disks[i], disks[j])) g.add_edge(i, j);
        }
      }
    }
  }
  return g;
}

IntersectionGraph build_graph_brute(const std::vector<Disk>& disks) {
  IntersectionGraph g(disks.size(), "disks");
  for (std::size_t i = 0; i < disks.size(); ++i) {
    for (std::size_t j = i + 1; j < disks.size(); ++j) {
      if (disks_intersect(disks[i], disks[j])) g.add_edge(i, j);
    }
  }
  return g;
}

namespace {

struct Radii {
  ExactScalar inner_sq;
  ExactScalar outer_sq;
};

std::vector<Radii> shape_radii(const std::vector<ConvexShape>& shapes) {
  std::vector<Radii> out;
  out.reserve(shapes.size());
  for (const ConvexShape& s : shapes) {
    const ShapeMetrics m = inner_outer(s);
    out.push_back({m.inner_diameter_sq / ExactScalar(4), m.outer_diameter_sq / ExactScalar(4)});
  }
  return out;
}

ExactScalar center_dist_sq(const ConvexShape& a, const ConvexShape& b) { return sq_dist(a.center, b.center); }

template <class Edge>
IntersectionGraph shape_graph(const std::vector<ConvexShape>& shapes, const char* provenance, Edge edge) {
  IntersectionGraph g(shapes.size(), provenance);
  const std::vector<Radii> radii = shape_radii(shapes);
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    for (std::size_t j = i + 1; j < shapes.size(); ++j) {
      if (edge(i, j, radii, center_dist_sq(shapes[i], shapes[j]))) g.add_edge(i, j);
    }
  }
  return g;
}

}  // namespace

IntersectionGraph build_graph(const std::vector<ConvexShape>& shapes) {
  return shape_graph(shapes, "shapes", [&](std::size_t i, std::size_t j, const std::vector<Radii>& r, const ExactScalar& d) {
    return within_radii(d, r[i].outer_sq, r[j].outer_sq) && shapes_intersect(shapes[i], shapes[j]);
  });
}

IntersectionGraph inner_disk_graph(const std::vector<ConvexShape>& shapes) {
  return shape_graph(shapes, "inner-disks", [](std::size_t i, std::size_t j, const std::vector<Radii>& r, const ExactScalar& d) {
    return within_radii(d, r[i].inner_sq, r[j].inner_sq);
  });
}

IntersectionGraph outer_disk_graph(const std::vector<ConvexShape>& shapes) {
  return shape_graph(shapes, "outer-disks", [](std::size_t i, std::size_t j, const std::vector<Radii>& r, const ExactScalar& d) {
    return within_radii(d, r[i].outer_sq, r[j].outer_sq);
  });
}

namespace {

template <class Same>
ColoringVerdict verify_with(const IntersectionGraph& graph, std::size_t count, Same same) {
  if (count != graph.size()) throw std::invalid_argument("assignment size differs from the graph");
  ColoringVerdict v;
  for (const auto& [a, b] : graph.edges()) {
    if (same(a, b)) v.conflicts.emplace_back(a, b);
  }
  v.pass = v.conflicts.empty();
  return v;
}

}  // namespace

ColoringVerdict verify_coloring(const IntersectionGraph& graph, const std::vector<OnlineColor>& colors) {
  return verify_with(graph, colors.size(), [&](std::size_t a, std::size_t b) {
    return colors[a].branch == colors[b].branch && colors[a].value == colors[b].value;
  });
}

ColoringVerdict verify_coloring(const IntersectionGraph& graph, const std::vector<std::uint64_t>& colors) {
  return verify_with(graph, colors.size(), [&](std::size_t a, std::size_t b) { return colors[a] == colors[b]; });
}

L21Verdict verify_l21(const IntersectionGraph& graph, const std::vector<std::int64_t>& labels) {
  if (labels.size() != graph.size()) throw std::invalid_argument("labeling size differs from the graph");
  L21Verdict v;
  const std::size_t n = graph.size();
  std::vector<std::size_t> seen(n, n);
  for (std::size_t s = 0; s < n; ++s) {
    seen[s] = s;
    for (std::size_t u : graph.neighbors(s)) seen[u] = s;
    for (std::size_t u : graph.neighbors(s)) {
      if (s < u && std::abs(labels[s] - labels[u]) < 2) v.edge_violations.emplace_back(s, u);
      for (std::size_t w : graph.neighbors(u)) {
        if (seen[w] == s) continue;
        seen[w] = s;
        if (s < w && labels[s] == labels[w]) v.distance2_violations.emplace_back(s, w);
      }
    }
  }
  v.pass = v.edge_violations.empty() && v.distance2_violations.empty();
  return v;
}

namespace {

void refuse_above(const IntersectionGraph& g, std::size_t limit, const char* what) {
  if (g.size() > limit) {
    throw OracleRefusal(std::string(what) + ": n = " + std::to_string(g.size()) + " exceeds the limit " +
                        std::to_string(limit));
  }
}

class CliqueSearch {
 public:
  explicit CliqueSearch(const IntersectionGraph& g) : g_(g) {}

  std::size_t run() {
    std::vector<std::size_t> all(g_.size());
    std::iota(all.begin(), all.end(), 0);
    std::stable_sort(all.begin(), all.end(),
                     [&](std::size_t a, std::size_t b) { return g_.neighbors(a).size() > g_.neighbors(b).size(); });
    expand(all, 0);
    return best_;
  }

 private:
  // Greedy sequential coloring; colors[i] bounds the clique within order[0..i].
  void color_sort(const std::vector<std::size_t>& cand, std::vector<std::size_t>& order,
                  std::vector<std::size_t>& colors) const {
    std::vector<std::vector<std::size_t>> classes;
    for (std::size_t v : cand) {
      auto fits = [&](const std::vector<std::size_t>& cls) {
        return std::none_of(cls.begin(), cls.end(), [&](std::size_t u) { return g_.adjacent(u, v); });
      };
      auto it = std::find_if(classes.begin(), classes.end(), fits);
      if (it == classes.end()) {
        classes.emplace_back(1, v);
      } else {
        it->push_back(v);
      }
    }
    for (std::size_t c = 0; c < classes.size(); ++c) {
      for (std::size_t v : classes[c]) {
        order.push_back(v);
        colors.push_back(c + 1);
      }
    }
  }

  void expand(const std::vector<std::size_t>& cand, std::size_t size) {
    std::vector<std::size_t> order, colors;
    color_sort(cand, order, colors);
    for (std::size_t i = order.size(); i-- > 0;) {
      if (size + colors[i] <= best_) return;
      const std::size_t v = order[i];
      std::vector<std::size_t> next;
      for (std::size_t a = 0; a < i; ++a) {
        if (g_.adjacent(v, order[a])) next.push_back(order[a]);
      }
      if (next.empty()) {
        best_ = std::max(best_, size + 1);
      } else {
        expand(next, size + 1);
      }
    }
  }

  const IntersectionGraph& g_;
  std::size_t best_ = 0;
};

class ColorSearch {
 public:
  ColorSearch(const IntersectionGraph& g, std::size_t k) : g_(g), k_(k), color_(g.size(), kNone) {}

  bool run() { return place(0, 0); }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::size_t saturation(std::size_t v) const {
    std::vector<bool> used(k_, false);
    std::size_t count = 0;
    for (std::size_t u : g_.neighbors(v)) {
      if (color_[u] != kNone && !used[color_[u]]) {
        used[color_[u]] = true;
        ++count;
      }
    }
    return count;
  }

  bool place(std::size_t placed, std::size_t used) {
    if (placed == g_.size()) return true;
    std::size_t pick = kNone, best_sat = 0, best_deg = 0;
    for (std::size_t v = 0; v < g_.size(); ++v) {
      if (color_[v] != kNone) continue;
      const std::size_t sat = saturation(v);
      const std::size_t deg = g_.neighbors(v).size();
      if (pick == kNone || sat > best_sat || (sat == best_sat && deg > best_deg)) {
        pick = v;
        best_sat = sat;
        best_deg = deg;
      }
    }
    const std::size_t limit = std::min(k_, used + 1);
    for (std::size_t c = 0; c < limit; ++c) {
      const auto& nb = g_.neighbors(pick);
      if (std::any_of(nb.begin(), nb.end(), [&](std::size_t u) { return color_[u] == c; })) continue;
      color_[pick] = c;
      if (place(placed + 1, std::max(used, c + 1))) return true;
      color_[pick] = kNone;
    }
    return false;
  }

  const IntersectionGraph& g_;
  std::size_t k_;
  std::vector<std::size_t> color_;
};

class L21Search {
 public:
  L21Search(const IntersectionGraph& g, std::int64_t span) : g_(g), span_(span), label_(g.size(), -1) {
    const std::size_t n = g.size();
    near_.assign(n * n, 0);
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t u : g.neighbors(v)) {
        near_[v * n + u] = 1;
        for (std::size_t w : g.neighbors(u)) {
          if (w != v && !g.adjacent(v, w)) near_[v * n + w] = 2;
        }
      }
    }
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return g.neighbors(a).size() > g.neighbors(b).size(); });
  }

  bool run() { return place(0); }

 private:
  bool fits(std::size_t v, std::int64_t l) const {
    const std::size_t n = g_.size();
    for (std::size_t u = 0; u < n; ++u) {
      if (label_[u] < 0) continue;
      const char rel = near_[v * n + u];
      if (rel == 1 && std::abs(label_[u] - l) < 2) return false;
      if (rel == 2 && label_[u] == l) return false;
    }
    return true;
  }

  bool place(std::size_t idx) {
    if (idx == order_.size()) return true;
    const std::size_t v = order_[idx];
    for (std::int64_t l = 0; l <= span_; ++l) {
      if (!fits(v, l)) continue;
      label_[v] = l;
      if (place(idx + 1)) return true;
      label_[v] = -1;
    }
    return false;
  }

  const IntersectionGraph& g_;
  std::int64_t span_;
  std::vector<std::int64_t> label_;
  std::vector<char> near_;
  std::vector<std::size_t> order_;
};

}  // namespace

std::size_t max_clique_exact(const IntersectionGraph& graph, std::size_t limit) {
  refuse_above(graph, limit, "max_clique_exact");
  return CliqueSearch(graph).run();
}

std::size_t greedy_clique(const IntersectionGraph& graph) {
  std::size_t best = 0;
  for (std::size_t s = 0; s < graph.size(); ++s) {
    std::vector<std::size_t> clique{s};
    for (std::size_t u : graph.neighbors(s)) {
      if (std::all_of(clique.begin(), clique.end(), [&](std::size_t c) { return graph.adjacent(c, u); })) {
        clique.push_back(u);
      }
    }
    best = std::max(best, clique.size());
  }
  return best;
}

std::size_t chromatic_exact(const IntersectionGraph& graph, std::size_t limit) {
  refuse_above(graph, limit, "chromatic_exact");
  if (graph.size() == 0) return 0;
  for (std::size_t k = max_clique_exact(graph, graph.size());; ++k) {
    if (ColorSearch(graph, k).run()) return k;
  }
}

std::int64_t l21_span_exact(const IntersectionGraph& graph, std::size_t limit) {
  refuse_above(graph, limit, "l21_span_exact");
  if (graph.size() == 0) return 0;
  const auto omega = static_cast<std::int64_t>(max_clique_exact(graph, graph.size()));
  for (std::int64_t span = 2 * (omega - 1);; ++span) {
    if (L21Search(graph, span).run()) return span;
  }
}

std::vector<Disk> gen_random_disks(std::size_t n, const Rational& sigma, const Rational& box_side, std::uint64_t seed) {
  if (sigma < 1) throw std::invalid_argument("sigma must be at least 1");
  if (box_side < 0) throw std::invalid_argument("box side must be non-negative");
  std::mt19937_64 rng(seed);
  std::vector<Disk> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational x = uniform_grid(rng, Rational(0), box_side, 1000);
    Rational y = uniform_grid(rng, Rational(0), box_side, 1000);
    Rational d = uniform_grid(rng, Rational(1), sigma, 1000);
    out.push_back({{ExactScalar(std::move(x)), ExactScalar(std::move(y))}, ExactScalar(std::move(d))});
  }
  return out;
}

std::vector<Disk> gen_adversarial_tile_clique(std::size_t n, const PlaneColoring& coloring, std::uint64_t seed) {
  const HexLattice& lattice = coloring.lattice();
  const TileIndex origin{0, 0};
  const int layer = lattice.layer_of(origin);
  std::mt19937_64 rng(seed);
  const Rational lo(-3, 10), hi(3, 10);
  std::vector<Disk> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Point c{ExactScalar(uniform_grid(rng, lo, hi, 1000)), ExactScalar(uniform_grid(rng, lo, hi, 1000))};
    if (lattice.locate(c, layer) != origin) throw std::logic_error("tile clique point escaped H_{0,0}");
    out.push_back({std::move(c), ExactScalar(1)});
  }
  return out;
}

namespace {

void fill_base(RatioReport& r, const PlaneColoring* base) {
  if (!base) return;
  r.h = base->h();
  r.p = base->p();
  r.q = base->q();
  r.b = base->b();
  r.k = base->k();
}

void fill_oracles(RatioReport& r, const IntersectionGraph& graph, const RunResult& run, const BoundParams& params,
                  const OracleLimits& limits) {
  r.n = graph.size();
  r.colors_used = run.colors_used;
  r.max_value = run.max_value;
  if (graph.size() <= limits.clique) {
    r.omega = max_clique_exact(graph, limits.clique);
    r.omega_exact = true;
  } else {
    r.omega = greedy_clique(graph);
  }
  if (graph.size() <= limits.chromatic) r.chi = chromatic_exact(graph, limits.chromatic);
  if (graph.size() <= limits.l21) r.lambda = l21_span_exact(graph, limits.l21);
  if (r.n == 0) {
    r.bound_respected = true;
    return;
  }
  r.bound_value = bound_formula(r.algorithm, r.omega, params);
  if (r.max_value <= r.bound_value) {
    r.bound_respected = true;
  } else if (r.omega_exact) {
    r.bound_respected = false;
  }
  r.ratio_vs_omega = static_cast<double>(r.colors_used) / static_cast<double>(r.omega);
  if (r.chi) r.ratio_vs_chi = static_cast<double>(r.colors_used) / static_cast<double>(*r.chi);
}

}  // namespace

ReportOutcome competitive_report(const AlgorithmConfig& config, const std::vector<Disk>& disks,
                                 const std::string& instance_id, const OracleLimits& limits) {
  ReportOutcome out;
  RatioReport& r = out.report;
  r.instance = instance_id;
  r.algorithm = config.kind;
  r.sigma = config.sigma;
  r.mode = config.mode;
  fill_base(r, config.base.get());
  out.run = run(config, disks);
  const IntersectionGraph graph = build_graph(disks);
  if (config.mode == Mode::L21) {
    std::vector<std::int64_t> labels;
    labels.reserve(out.run.colors.size());
    for (const OnlineColor& c : out.run.colors) labels.push_back(static_cast<std::int64_t>(c.value));
    const L21Verdict v = verify_l21(graph, labels);
    r.verified = v.pass;
    r.violations = v.edge_violations.size() + v.distance2_violations.size();
  } else {
    const ColoringVerdict v = verify_coloring(graph, out.run.colors);
    r.verified = v.pass;
    r.violations = v.conflicts.size();
  }
  fill_oracles(r, graph, out.run, bound_params(config), limits);
  return out;
}

ReportOutcome competitive_report(const ShapeAdapterConfig& config, const std::vector<ConvexShape>& shapes,
                                 const std::string& instance_id, const OracleLimits& limits) {
  ReportOutcome out;
  RatioReport& r = out.report;
  r.instance = instance_id;
  r.algorithm = config.kind;
  r.sigma = config.sigma;
  fill_base(r, config.base.get());
  out.run = shape_stream_adapter(config, shapes);
  const IntersectionGraph graph = build_graph(shapes);
  const ColoringVerdict v = verify_coloring(graph, out.run.colors);
  r.verified = v.pass;
  r.violations = v.conflicts.size();
  AlgorithmConfig algo;
  algo.kind = config.kind;
  algo.sigma = config.sigma;
  algo.base = config.base;
  fill_oracles(r, graph, out.run, bound_params(algo), limits);
  return out;
}

std::string ratio_csv_header() {
  return "instance,algorithm,sigma,h,p,q,b,k,mode,n,omega,omega_exact,chi,lambda,colors_used,max_value,"
         "bound_value,bound_respected,ratio_vs_omega";
}

std::string ratio_csv_row(const RatioReport& r) {
  char ratio[64];
  std::snprintf(ratio, sizeof ratio, "%.6f", r.ratio_vs_omega);
  const std::string respected = r.bound_respected ? (*r.bound_respected ? "true" : "false") : "unknown";
  std::string row;
  row += r.instance + ',' + to_string(r.algorithm) + ',' + format_rational(r.sigma) + ',';
  row += std::to_string(r.h) + ',' + std::to_string(r.p) + ',' + std::to_string(r.q) + ',' + std::to_string(r.b) + ',' +
         std::to_string(r.k) + ',';
  row += to_string(r.mode) + ',' + std::to_string(r.n) + ',' + std::to_string(r.omega) + ',' +
         (r.omega_exact ? "true" : "false") + ',';
  row += (r.chi ? std::to_string(*r.chi) : "") + ',' + (r.lambda ? std::to_string(*r.lambda) : "") + ',';
  row += std::to_string(r.colors_used) + ',' + std::to_string(r.max_value) + ',' + std::to_string(r.bound_value) + ',' +
         respected + ',' + ratio;
  return row;
}

}  // namespace hexfold
