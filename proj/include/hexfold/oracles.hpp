#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hexfold/geometry.hpp"
#include "hexfold/online.hpp"
#include "hexfold/plane_coloring.hpp"
#include "hexfold/shapes.hpp"

namespace hexfold {

/// Undirected simple graph with an adjacency matrix and sorted neighbor lists.
class IntersectionGraph {
 public:
  explicit IntersectionGraph(std::size_t n = 0, std::string provenance = {});

  std::size_t size() const { return n_; }
  const std::string& provenance() const { return provenance_; }
  /// Ignores self-loops and repeated edges.
  void add_edge(std::size_t u, std::size_t v);
  bool adjacent(std::size_t u, std::size_t v) const { return matrix_[u * n_ + v] != 0; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adj_[v]; }
  std::size_t edge_count() const { return edges_; }
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  /// Subgraph on `vertices`, renumbered in the given order.
  IntersectionGraph induced(const std::vector<std::size_t>& vertices) const;

  friend bool operator==(const IntersectionGraph& a, const IntersectionGraph& b) {
    return a.n_ == b.n_ && a.matrix_ == b.matrix_;
  }

 private:
  std::size_t n_ = 0;
  std::string provenance_;
  std::vector<char> matrix_;
  std::vector<std::vector<std::size_t>> adj_;
  std::size_t edges_ = 0;
};

/// Bucketed by a grid of the largest diameter; every candidate pair goes
/// through the exact disks_intersect test.
IntersectionGraph build_graph(const std::vector<Disk>& disks);
/// All n(n-1)/2 pairs, no bucketing.
IntersectionGraph build_graph_brute(const std::vector<Disk>& disks);
IntersectionGraph build_graph(const std::vector<ConvexShape>& shapes);
IntersectionGraph inner_disk_graph(const std::vector<ConvexShape>& shapes);
IntersectionGraph outer_disk_graph(const std::vector<ConvexShape>& shapes);

struct ColoringVerdict {
  bool pass = true;
  std::vector<std::pair<std::size_t, std::size_t>> conflicts;
};

/// Compares (branch, value) pairs along every edge.
ColoringVerdict verify_coloring(const IntersectionGraph& graph, const std::vector<OnlineColor>& colors);
ColoringVerdict verify_coloring(const IntersectionGraph& graph, const std::vector<std::uint64_t>& colors);

struct L21Verdict {
  bool pass = true;
  /// Edges whose labels differ by less than 2.
  std::vector<std::pair<std::size_t, std::size_t>> edge_violations;
  /// Pairs at distance exactly 2 with equal labels.
  std::vector<std::pair<std::size_t, std::size_t>> distance2_violations;
};

L21Verdict verify_l21(const IntersectionGraph& graph, const std::vector<std::int64_t>& labels);

/// Thrown when an exact oracle is asked for a graph above its size limit.
struct OracleRefusal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OracleLimits {
  std::size_t clique = 100;
  std::size_t chromatic = 20;
  std::size_t l21 = 10;
};

/// Branch and bound with greedy-coloring bounds.
std::size_t max_clique_exact(const IntersectionGraph& graph, std::size_t limit = 100);
/// Greedy clique from every start vertex; a lower bound on omega.
std::size_t greedy_clique(const IntersectionGraph& graph);
/// Tries k = omega, omega + 1, ... with DSATUR-ordered backtracking.
std::size_t chromatic_exact(const IntersectionGraph& graph, std::size_t limit = 20);
/// Smallest span s such that labels in [0, s] admit an L(2,1)-labeling.
std::int64_t l21_span_exact(const IntersectionGraph& graph, std::size_t limit = 10);

/// Centers uniform on a 1/1000 grid in [0, box_side]^2, diameters uniform on
/// a 1/1000 grid in [1, sigma].
std::vector<Disk> gen_random_disks(std::size_t n, const Rational& sigma, const Rational& box_side, std::uint64_t seed);

/// n unit disks with centers on a 1/1000 grid in [-3/10, 3/10]^2, strictly
/// inside the layer-1 tile H_{0,0} of the coloring's tiling.
std::vector<Disk> gen_adversarial_tile_clique(std::size_t n, const PlaneColoring& coloring, std::uint64_t seed = 1);

struct RatioReport {
  std::string instance;
  AlgorithmKind algorithm = AlgorithmKind::SimpleColor;
  Rational sigma{1};
  int h = 0;
  int p = 0;
  int q = 0;
  int b = 0;
  std::int64_t k = 0;
  Mode mode = Mode::Proper;
  std::size_t n = 0;
  /// Exact when omega_exact, otherwise a greedy lower bound.
  std::size_t omega = 0;
  bool omega_exact = false;
  std::optional<std::size_t> chi;
  std::optional<std::int64_t> lambda;
  std::uint64_t colors_used = 0;
  std::uint64_t max_value = 0;
  std::uint64_t bound_value = 0;
  /// Unknown when omega is only a lower bound and the check fails against it.
  std::optional<bool> bound_respected;
  double ratio_vs_omega = 0;
  std::optional<double> ratio_vs_chi;
  bool verified = false;
  std::size_t violations = 0;
};

struct ReportOutcome {
  RatioReport report;
  RunResult run;
};

/// Runs the algorithm, verifies the output (proper or L(2,1) by mode) and
/// fills in omega, chi and lambda where the limits allow.
ReportOutcome competitive_report(const AlgorithmConfig& config, const std::vector<Disk>& disks,
                                 const std::string& instance_id, const OracleLimits& limits = {});

/// Same, for shapes through the shape adapter; verified on the true shape graph.
ReportOutcome competitive_report(const ShapeAdapterConfig& config, const std::vector<ConvexShape>& shapes,
                                 const std::string& instance_id, const OracleLimits& limits = {});

std::string ratio_csv_header();
std::string ratio_csv_row(const RatioReport& report);

}  // namespace hexfold
