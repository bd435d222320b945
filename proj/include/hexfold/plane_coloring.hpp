#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hexfold/geometry.hpp"
#include "hexfold/tiling.hpp"

namespace hexfold {

/// One immutable lattice per h, built on first use.
std::shared_ptr<const HexLattice> shared_lattice(int h);

enum class ColoringKind { Pq, LStar3, LStar6 };

std::string to_string(ColoringKind kind);
/// Accepts "pq", "lstar3", "lstar6".
ColoringKind parse_coloring_kind(std::string_view text);

std::int64_t pq_color_count(int p, int q);

/// Squared distance between the closed tiles H_t and H_{t+d}.  Always rational.
Rational tile_gap_sq(int h, TileIndex d);

struct SigmaBound {
  Rational lower;  // certified: lower <= value
  Rational upper;  // certified: value <= upper
  bool valid = false;  // value >= 1
};

/// (sqrt3 / 2h) * sqrt(p^2 + pq + q^2) - 1, as a certified interval.
SigmaBound pq_sigma_bound(int h, int p, int q, int decimals = 12);

struct SigmaExact {
  Rational sq;     // exact square of sigma_max
  Rational lower;  // certified decimal bounds on sqrt(sq)
  Rational upper;
  TileIndex witness;  // a nearest same-colored offset
};

/// Smallest gap between H_{0,0} and a same-colored tile, for any sigma_max.
SigmaExact pq_sigma_max(int h, int p, int q, int decimals = 12);
/// Same as pq_sigma_max but throws std::domain_error when sigma_max < 1.
SigmaExact pq_sigma_exact(int h, int p, int q, int decimals = 12);

/// A solid b-fold plane coloring built on the h^2 layered hexagonal tiling.
///
/// Pq: colors are the cosets of the lattice spanned by (p, q), (p+q, -p).
/// LStar3 / LStar6: L*(2,1)-labelings; the (h^2, p, 0) classes are visited in
/// serpentine order and each class is split into 3 or 6 consecutive labels.
class PlaneColoring {
 public:
  static PlaneColoring pq(int h, int p, int q);
  static PlaneColoring lstar(int h, int p, ColoringKind kind, bool guard = true);

  ColoringKind kind() const { return kind_; }
  int h() const { return h_; }
  int b() const { return h_ * h_; }
  int p() const { return p_; }
  int q() const { return q_; }
  std::int64_t k() const { return k_; }
  bool guard() const { return guard_; }
  bool is_labeling() const { return kind_ != ColoringKind::Pq; }
  const HexLattice& lattice() const { return *lattice_; }

  std::int64_t tile_color(TileIndex t) const;
  std::int64_t color(const Point& pt, int layer) const;
  /// One color per layer, layer 1 first.
  std::vector<std::int64_t> colors_at(const Point& pt) const;

  /// Tiles whose colors determine the whole coloring up to translations
  /// that preserve it.
  std::vector<TileIndex> fundamental_tiles() const;

  /// Exact square of the largest sigma the coloring supports: the same-color
  /// gap for Pq; min(same-label gap / 2, consecutive-label gap) for labelings.
  const Rational& sigma_max_sq() const { return sigma_max_sq_; }

 private:
  PlaneColoring() = default;
  void compute_sigma_max();

  ColoringKind kind_ = ColoringKind::Pq;
  int h_ = 1;
  int p_ = 1;
  int q_ = 0;
  std::int64_t k_ = 1;
  bool guard_ = true;
  // Hermite normal form of the color lattice: rows (e, f) and (0, g).
  std::int64_t e_ = 1;
  std::int64_t f_ = 0;
  std::int64_t g_ = 1;
  Rational sigma_max_sq_;
  std::shared_ptr<const HexLattice> lattice_;
};

/// (h^2, p, 0) with p = ceil((2 sigma / sqrt3 + 1) h).
PlaneColoring hsq_coloring(int h, const Rational& sigma);
/// 3-label L* labeling; requires 1 <= sigma <= 1/(4 - 2 sqrt3).
PlaneColoring lstar_small_sigma(int h, const Rational& sigma);
/// 6-label L* labeling for any sigma >= 1.
PlaneColoring lstar_general(int h, const Rational& sigma);
/// Parameter p = ceil(h (2 sigma / sqrt3 + 1) + 1) shared by both L* builders.
int lstar_p(int h, const Rational& sigma);

/// Smallest k = p^2+pq+q^2 (ties broken by (p, q)) whose (h^2, p, q)-coloring
/// has sigma_max^2 >= sigma_sq.
PlaneColoring find_pq_base(int h, const Rational& sigma_sq);

struct ValidationReport {
  bool pass = true;
  /// 0 none; 1 layer colors at a point; 2 same color / label; 3 consecutive
  /// labels; 4 wrap-around labels; 5 tile diameter; 6 extra 6-label margin.
  int condition = 0;
  TileIndex t1;
  TileIndex t2;
  std::int64_t c1 = 0;
  std::int64_t c2 = 0;
  Rational gap_sq;
  std::optional<Rational> min_same_gap_sq;
  std::optional<Rational> min_consecutive_gap_sq;
  std::uint64_t pairs_checked = 0;
  std::string message;
};

/// Distances are between closed tiles and compared with >=: a point owned by
/// a tile never lies on the part of its boundary that realizes the minimum.
ValidationReport validate_solid(const PlaneColoring& coloring, const Rational& sigma,
                                std::uint64_t samples = 10000, std::uint64_t seed = 1);
ValidationReport validate_lstar(const PlaneColoring& coloring, const Rational& sigma);

struct RecordRow {
  int h = 1;
  int p = 0;
  int q = 0;
  std::int64_t k = 0;
  Rational sigma_sq;
};

/// Pareto-optimal (max sigma_max, min k/h^2) colorings over h <= h_max,
/// p <= q and pq_sigma_bound <= sigma_limit, with sigma_max >= 1.
/// Sorted by increasing sigma.
std::vector<RecordRow> pq_records(int h_max, const Rational& sigma_limit);

/// Text format: a names line, a values line, then optionally a
/// `i j color` table over the fundamental tiles.
void write_coloring(std::ostream& out, const PlaneColoring& coloring, bool with_table);
/// Throws std::runtime_error on malformed input or a table that disagrees
/// with the reconstructed coloring.
PlaneColoring read_coloring(std::istream& in);

}  // namespace hexfold
