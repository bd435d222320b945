#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hexfold/geometry.hpp"
#include "hexfold/plane_coloring.hpp"
#include "hexfold/tiling.hpp"

namespace hexfold {

enum class AlgorithmKind { BranchFF, SimpleColor, BranchColor, FoldColor, FoldShadeColor, BranchFoldColor };
enum class Mode { Proper, L21 };

std::string to_string(AlgorithmKind kind);
/// Accepts the class names ("FoldShadeColor") and short forms ("fold-shade").
AlgorithmKind parse_algorithm_kind(std::string_view text);
std::string to_string(Mode mode);
Mode parse_mode(std::string_view text);

bool is_branching(AlgorithmKind kind);

/// max(1, ceil(log2 sigma)): the number of size classes.
int branch_count(const Rational& sigma);

/// floor(log2 d), except d = sigma = 2^t (t >= 1) which goes to t - 1.
/// Throws std::invalid_argument unless 1 <= d <= sigma.
int branch_index(const ExactScalar& diameter, const Rational& sigma);
/// Same, for a diameter known through its square.
int branch_index_sq(const ExactScalar& diameter_sq, const Rational& sigma);

struct AlgorithmConfig {
  AlgorithmKind kind = AlgorithmKind::FoldShadeColor;
  Rational sigma{1};
  /// Unused by BranchFF.  Branching kinds expect a coloring of G[1,2].
  std::shared_ptr<const PlaneColoring> base;
  Mode mode = Mode::Proper;
  /// Squared reach the base must support; defaults to sigma^2, or 4 for the
  /// branching kinds.  The shape adapter raises it by rho.
  std::optional<Rational> reach_sq;
};

/// Squared reach the base must support under `config` (see reach_sq).
Rational required_reach_sq(const AlgorithmConfig& config);

/// Base chosen when none is given: none for BranchFF; an L* labeling in L21
/// mode (3 labels when sigma allows, else 6); the smallest (1, p, q) coloring
/// for SimpleColor and BranchColor; the smallest (h^2, p, q) coloring
/// otherwise.  Ignores config.base.
std::shared_ptr<const PlaneColoring> default_base(const AlgorithmConfig& config, int h);

struct OnlineColor {
  int branch = 0;
  std::uint64_t value = 0;
  /// Layer and tile used (0 and (0,0) for BranchFF).
  int layer = 0;
  TileIndex tile;
  /// (value - 1) * branches + branch + 1, with one branch unless branching.
  std::uint64_t flat = 0;
};

/// One pass over a stream of disks.  Colors are final once returned.
class OnlineColorer {
 public:
  /// Throws std::invalid_argument for inconsistent configurations.
  explicit OnlineColorer(AlgorithmConfig config);

  OnlineColor step(const Disk& disk);
  /// Colors a vertex given only its center and size class.  Not available
  /// for BranchFF, which needs the disk itself.
  OnlineColor step_at(const Point& center, int branch);

  const AlgorithmConfig& config() const { return config_; }
  int branches() const { return branches_; }
  std::uint64_t flatten(int branch, std::uint64_t value) const;
  std::uint64_t steps() const { return steps_; }

 private:
  struct TileHash {
    std::size_t operator()(const TileIndex& t) const noexcept { return TileIndexHash{}(t); }
  };
  struct FirstFitEntry {
    Disk disk;
    std::uint64_t value;
  };
  struct BranchState {
    std::unordered_map<SubtileKey, std::uint64_t, SubtileKeyHash> arrivals;
    std::unordered_map<TileIndex, std::uint64_t, TileHash> tile_counts;
    std::vector<FirstFitEntry> ff_disks;
    std::unordered_map<TileIndex, std::vector<std::size_t>, TileHash> ff_grid;
  };

  OnlineColor first_fit(const Disk& disk, int branch);
  OnlineColor lattice_step(const Point& scaled, int branch);

  AlgorithmConfig config_;
  int branches_ = 1;
  std::uint64_t steps_ = 0;
  std::vector<BranchState> state_;
};

struct RunResult {
  std::vector<OnlineColor> colors;
  std::vector<std::uint64_t> max_value_per_branch;
  int branches_used = 0;
  std::uint64_t colors_used = 0;  // distinct flat colors
  std::uint64_t max_value = 0;    // largest flat color
};

RunResult run(const AlgorithmConfig& config, const std::vector<Disk>& disks);
/// Summarizes colors produced elsewhere (e.g. by the shape adapter).
RunResult summarize(std::vector<OnlineColor> colors, int branch_count);

struct BoundParams {
  std::int64_t k = 1;
  std::int64_t b = 1;
  std::int64_t gamma = 1;
  int branches = 1;
};

BoundParams bound_params(const AlgorithmConfig& config);

/// Largest color the algorithm can emit for the given clique number.
/// BranchFF gives its competitive-ratio bound 28 * branches * omega.
std::uint64_t bound_formula(AlgorithmKind kind, std::uint64_t omega, const BoundParams& params);

/// Smallest omega0 with bound_formula(omega) < ratio * omega for every
/// omega >= omega0.  Fold kinds only; throws if the bound never drops below.
std::uint64_t threshold_omega(AlgorithmKind kind, const BoundParams& params, std::uint64_t ratio = 5);

}  // namespace hexfold
