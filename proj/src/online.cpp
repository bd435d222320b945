#include "hexfold/online.hpp"

#include <cctype>
#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace hexfold {

namespace {

std::string lower_alnum(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

Rational power_of_two(int exponent) {
  mpz_class v(1);
  mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), static_cast<mp_bitcnt_t>(exponent));
  return Rational(v);
}

// t >= 1 with sigma = 2^t, or 0.
int dyadic_exponent(const Rational& sigma) {
  if (sigma.get_den() != 1 || sigma <= 1) return 0;
  const mpz_class& n = sigma.get_num();
  if (mpz_popcount(n.get_mpz_t()) != 1) return 0;
  return static_cast<int>(mpz_scan1(n.get_mpz_t(), 0));
}

}  // namespace

std::string to_string(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::BranchFF: return "BranchFF";
    case AlgorithmKind::SimpleColor: return "SimpleColor";
    case AlgorithmKind::BranchColor: return "BranchColor";
    case AlgorithmKind::FoldColor: return "FoldColor";
    case AlgorithmKind::FoldShadeColor: return "FoldShadeColor";
    case AlgorithmKind::BranchFoldColor: return "BranchFoldColor";
  }
  return "?";
}

AlgorithmKind parse_algorithm_kind(std::string_view text) {
  const std::string key = lower_alnum(text);
  if (key == "branchff" || key == "ff") return AlgorithmKind::BranchFF;
  if (key == "simplecolor" || key == "simple") return AlgorithmKind::SimpleColor;
  if (key == "branchcolor" || key == "branch") return AlgorithmKind::BranchColor;
  if (key == "foldcolor" || key == "fold") return AlgorithmKind::FoldColor;
  if (key == "foldshadecolor" || key == "foldshade") return AlgorithmKind::FoldShadeColor;
  if (key == "branchfoldcolor" || key == "branchfold") return AlgorithmKind::BranchFoldColor;
  throw std::invalid_argument("unknown algorithm '" + std::string(text) + "'");
}

std::string to_string(Mode mode) { return mode == Mode::L21 ? "L21" : "proper"; }

Mode parse_mode(std::string_view text) {
  const std::string key = lower_alnum(text);
  if (key == "proper") return Mode::Proper;
  if (key == "l21") return Mode::L21;
  throw std::invalid_argument("unknown mode '" + std::string(text) + "'");
}

bool is_branching(AlgorithmKind kind) {
  return kind == AlgorithmKind::BranchFF || kind == AlgorithmKind::BranchColor ||
         kind == AlgorithmKind::BranchFoldColor;
}

int branch_count(const Rational& sigma) {
  if (sigma < 1) throw std::invalid_argument("sigma must be at least 1");
  int t = 0;
  while (power_of_two(t) < sigma) ++t;
  return std::max(1, t);
}

int branch_index(const ExactScalar& diameter, const Rational& sigma) {
  if (diameter < ExactScalar(1) || diameter > ExactScalar(sigma)) {
    throw std::invalid_argument("diameter " + diameter.to_string() + " outside [1, " + format_rational(sigma) + "]");
  }
  const int t = dyadic_exponent(sigma);
  if (t >= 1 && diameter == ExactScalar(sigma)) return t - 1;
  int j = 0;
  while (ExactScalar(power_of_two(j + 1)) <= diameter) ++j;
  return j;
}

int branch_index_sq(const ExactScalar& diameter_sq, const Rational& sigma) {
  const ExactScalar sigma_sq(sigma * sigma);
  if (diameter_sq < ExactScalar(1) || diameter_sq > sigma_sq) {
    throw std::invalid_argument("diameter^2 " + diameter_sq.to_string() + " outside [1, sigma^2]");
  }
  const int t = dyadic_exponent(sigma);
  if (t >= 1 && diameter_sq == sigma_sq) return t - 1;
  int j = 0;
  while (ExactScalar(power_of_two(2 * (j + 1))) <= diameter_sq) ++j;
  return j;
}

Rational required_reach_sq(const AlgorithmConfig& config) {
  if (config.reach_sq) return *config.reach_sq;
  if (is_branching(config.kind)) return Rational(4);
  return config.sigma * config.sigma;
}

std::shared_ptr<const PlaneColoring> default_base(const AlgorithmConfig& config, int h) {
  const AlgorithmKind kind = config.kind;
  if (kind == AlgorithmKind::BranchFF) return nullptr;
  if (config.mode == Mode::L21) {
    if (ExactScalar(config.sigma) * ExactScalar(4, -2) <= ExactScalar(1)) {
      return std::make_shared<const PlaneColoring>(lstar_small_sigma(h, config.sigma));
    }
    return std::make_shared<const PlaneColoring>(lstar_general(h, config.sigma));
  }
  const bool one_fold = kind == AlgorithmKind::SimpleColor || kind == AlgorithmKind::BranchColor;
  return std::make_shared<const PlaneColoring>(find_pq_base(one_fold ? 1 : h, required_reach_sq(config)));
}

OnlineColorer::OnlineColorer(AlgorithmConfig config) : config_(std::move(config)) {
  const AlgorithmKind kind = config_.kind;
  branches_ = is_branching(kind) ? branch_count(config_.sigma) : 1;
  if (config_.mode == Mode::L21) {
    if (kind != AlgorithmKind::SimpleColor && kind != AlgorithmKind::FoldColor &&
        kind != AlgorithmKind::FoldShadeColor) {
      throw std::invalid_argument("L21 mode needs SimpleColor, FoldColor or FoldShadeColor");
    }
    if (!config_.base || !config_.base->is_labeling()) throw std::invalid_argument("L21 mode needs an L* labeling base");
  }
  if (kind != AlgorithmKind::BranchFF) {
    if (!config_.base) throw std::invalid_argument(to_string(kind) + " needs a base coloring");
    if ((kind == AlgorithmKind::SimpleColor || kind == AlgorithmKind::BranchColor) && config_.base->b() != 1) {
      throw std::invalid_argument(to_string(kind) + " needs a 1-fold base coloring");
    }
    const Rational reach = required_reach_sq(config_);
    if (config_.base->sigma_max_sq() < reach) {
      throw std::invalid_argument("base coloring supports sigma^2 = " + format_rational(config_.base->sigma_max_sq()) +
                                  ", needs " + format_rational(reach));
    }
  }
  state_.resize(static_cast<std::size_t>(branches_));
}

std::uint64_t OnlineColorer::flatten(int branch, std::uint64_t value) const {
  return (value - 1) * static_cast<std::uint64_t>(branches_) + static_cast<std::uint64_t>(branch) + 1;
}

OnlineColor OnlineColorer::step(const Disk& disk) {
  const AlgorithmKind kind = config_.kind;
  int branch = 0;
  if (is_branching(kind)) {
    branch = branch_index(disk.diameter, config_.sigma);
  } else if (disk.diameter < ExactScalar(1) || disk.diameter > ExactScalar(config_.sigma)) {
    throw std::invalid_argument("diameter " + disk.diameter.to_string() + " outside [1, " +
                                format_rational(config_.sigma) + "]");
  }
  if (kind == AlgorithmKind::BranchFF) return first_fit(disk, branch);
  return step_at(disk.center, branch);
}

OnlineColor OnlineColorer::step_at(const Point& center, int branch) {
  if (config_.kind == AlgorithmKind::BranchFF) throw std::logic_error("BranchFF needs the whole disk");
  if (branch < 0 || branch >= branches_ || (branch > 0 && !is_branching(config_.kind))) {
    throw std::invalid_argument("branch out of range");
  }
  if (branch == 0) return lattice_step(center, 0);
  const ExactScalar scale(Rational(1) / power_of_two(branch));
  return lattice_step(scale * center, branch);
}

OnlineColor OnlineColorer::lattice_step(const Point& scaled, int branch) {
  const PlaneColoring& base = *config_.base;
  const HexLattice& lattice = base.lattice();
  BranchState& st = state_[static_cast<std::size_t>(branch)];
  OnlineColor out;
  out.branch = branch;
  switch (config_.kind) {
    case AlgorithmKind::SimpleColor:
    case AlgorithmKind::BranchColor:
      out.layer = 1;
      out.tile = lattice.locate(scaled, 1);
      break;
    default: {
      const SubtileKey key = lattice.subtile_key(lattice.cell_of(scaled));
      std::uint64_t& arrivals = st.arrivals[key];
      const std::uint64_t offset =
          config_.kind == AlgorithmKind::FoldColor ? 0 : static_cast<std::uint64_t>(lattice.shade(key) - 1);
      out.layer = 1 + static_cast<int>((offset + arrivals) % static_cast<std::uint64_t>(lattice.b()));
      ++arrivals;
      out.tile = key.tiles[static_cast<std::size_t>(out.layer - 1)];
      break;
    }
  }
  std::uint64_t& t = st.tile_counts[out.tile];
  out.value = static_cast<std::uint64_t>(base.tile_color(out.tile)) + static_cast<std::uint64_t>(base.k()) * t;
  ++t;
  out.flat = flatten(branch, out.value);
  ++steps_;
  return out;
}

OnlineColor OnlineColorer::first_fit(const Disk& disk, int branch) {
  BranchState& st = state_[static_cast<std::size_t>(branch)];
  // Intersecting centers lie in neighbouring cells of side 2^(branch+1).
  const ExactScalar inv_cell(Rational(1) / power_of_two(branch + 1));
  const TileIndex cell{floor(disk.center.x * inv_cell), floor(disk.center.y * inv_cell)};
  std::vector<std::uint64_t> forbidden;
  for (std::int64_t dx = -1; dx <= 1; ++dx) {
    for (std::int64_t dy = -1; dy <= 1; ++dy) {
      auto it = st.ff_grid.find({cell.i + dx, cell.j + dy});
      if (it == st.ff_grid.end()) continue;
      for (std::size_t idx : it->second) {
        const FirstFitEntry& prior = st.ff_disks[idx];
        if (disks_intersect(prior.disk, disk)) forbidden.push_back(prior.value);
      }
    }
  }
  std::sort(forbidden.begin(), forbidden.end());
  std::uint64_t value = 1;
  for (std::uint64_t f : forbidden) {
    if (f == value) ++value;
    else if (f > value) break;
  }
  st.ff_grid[cell].push_back(st.ff_disks.size());
  st.ff_disks.push_back({disk, value});
  OnlineColor out;
  out.branch = branch;
  out.value = value;
  out.flat = flatten(branch, value);
  ++steps_;
  return out;
}

RunResult summarize(std::vector<OnlineColor> colors, int branch_count) {
  RunResult result;
  result.max_value_per_branch.assign(static_cast<std::size_t>(branch_count), 0);
  std::unordered_set<std::uint64_t> distinct;
  for (const OnlineColor& c : colors) {
    auto& slot = result.max_value_per_branch[static_cast<std::size_t>(c.branch)];
    slot = std::max(slot, c.value);
    distinct.insert(c.flat);
    result.max_value = std::max(result.max_value, c.flat);
  }
  result.colors_used = distinct.size();
  result.branches_used = static_cast<int>(
      std::count_if(result.max_value_per_branch.begin(), result.max_value_per_branch.end(), [](auto v) { return v > 0; }));
  result.colors = std::move(colors);
  return result;
}

RunResult run(const AlgorithmConfig& config, const std::vector<Disk>& disks) {
  OnlineColorer colorer(config);
  std::vector<OnlineColor> colors;
  colors.reserve(disks.size());
  for (const Disk& d : disks) colors.push_back(colorer.step(d));
  return summarize(std::move(colors), colorer.branches());
}

BoundParams bound_params(const AlgorithmConfig& config) {
  BoundParams params;
  params.branches = is_branching(config.kind) ? branch_count(config.sigma) : 1;
  if (config.base) {
    params.k = config.base->k();
    params.b = config.base->b();
    params.gamma = gamma(config.base->h());
  }
  return params;
}

std::uint64_t bound_formula(AlgorithmKind kind, std::uint64_t omega, const BoundParams& params) {
  const auto k = static_cast<std::uint64_t>(params.k);
  const auto b = static_cast<std::uint64_t>(params.b);
  const auto g = static_cast<std::uint64_t>(params.gamma);
  const auto branches = static_cast<std::uint64_t>(params.branches);
  const std::uint64_t fold_shade = k * ((2 * omega + (b - 1) * g) / (2 * b));
  switch (kind) {
    case AlgorithmKind::BranchFF: return 28 * branches * omega;
    case AlgorithmKind::SimpleColor: return k * omega;
    case AlgorithmKind::BranchColor: return k * branches * omega;
    case AlgorithmKind::FoldColor: return k * ((omega + (b - 1) * g) / b);
    case AlgorithmKind::FoldShadeColor: return fold_shade;
    case AlgorithmKind::BranchFoldColor: return branches * fold_shade;
  }
  return 0;
}

std::uint64_t threshold_omega(AlgorithmKind kind, const BoundParams& params, std::uint64_t ratio) {
  if (kind != AlgorithmKind::FoldColor && kind != AlgorithmKind::FoldShadeColor &&
      kind != AlgorithmKind::BranchFoldColor) {
    throw std::invalid_argument("threshold_omega is defined for the folding algorithms");
  }
  const std::uint64_t slope_num = static_cast<std::uint64_t>(params.k) *
                                  (kind == AlgorithmKind::BranchFoldColor ? static_cast<std::uint64_t>(params.branches) : 1);
  const auto b = static_cast<std::uint64_t>(params.b);
  if (slope_num >= ratio * b) throw std::invalid_argument("bound / omega never drops below the ratio");
  // bound <= slope * (omega + c) with c = (b-1) gamma (or half of it), so
  // bound >= ratio * omega forces omega <= slope * c / (ratio - slope).
  const std::uint64_t c2 = (b - 1) * static_cast<std::uint64_t>(params.gamma) * (kind == AlgorithmKind::FoldColor ? 2 : 1);
  const std::uint64_t limit = slope_num * c2 / (2 * (ratio * b - slope_num)) + 1;
  for (std::uint64_t omega = limit; omega >= 1; --omega) {
    if (bound_formula(kind, omega, params) >= ratio * omega) return omega + 1;
  }
  return 1;
}

}  // namespace hexfold
