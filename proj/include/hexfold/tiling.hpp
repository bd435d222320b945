#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hexfold/geometry.hpp"

namespace hexfold {

struct TileIndex {
  std::int64_t i = 0;
  std::int64_t j = 0;

  friend auto operator<=>(const TileIndex&, const TileIndex&) = default;
  friend TileIndex operator+(TileIndex a, TileIndex b) { return {a.i + b.i, a.j + b.j}; }
  friend TileIndex operator-(TileIndex a, TileIndex b) { return {a.i - b.i, a.j - b.j}; }
};

/// Entry r-1 is the layer-r tile containing the subtile.
struct SubtileKey {
  std::vector<TileIndex> tiles;

  friend bool operator==(const SubtileKey&, const SubtileKey&) = default;
  friend auto operator<=>(const SubtileKey&, const SubtileKey&) = default;
};

struct TileIndexHash {
  std::size_t operator()(const TileIndex& t) const noexcept {
    auto mix = static_cast<std::uint64_t>(t.i) * 0x9E3779B97F4A7C15ULL;
    mix ^= static_cast<std::uint64_t>(t.j) + 0x632BE59BD9B4E019ULL + (mix << 6) + (mix >> 2);
    return static_cast<std::size_t>(mix);
  }
};

struct SubtileKeyHash {
  std::size_t operator()(const SubtileKey& key) const noexcept {
    std::size_t seed = key.tiles.size();
    for (const TileIndex& t : key.tiles) seed ^= TileIndexHash{}(t) + 0x9E3779B97F4A7C15ULL + (seed << 6) + (seed >> 2);
    return seed;
  }
};

/// A triangle of the grid cut out by every hexagon edge of every layer.
///
/// In the skew coordinates a = 4hx/sqrt3, w = 2hy - a/2, v = w + a, hexagon
/// edges lie on the integer lines of a, w and v.  The cell with these indices
/// has a in (a, a+1), w in (w, w+1) and v in (a+w+orientation, a+w+orientation+1).
struct Cell {
  std::int64_t a = 0;
  std::int64_t w = 0;
  int orientation = 0;

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

enum class ShadingScheme { CanonicalEnumeration, Stripes };

/// Number of subtiles in one tile of the h^2-layer hexagonal family.
int gamma(int h);

/// The h^2 layered hexagonal tilings.  H_{0,0} has two vertical sides, center
/// at the origin and diameter 1; H_{i,j} is shifted by (i*s1 + j*s2)/h with
/// s1 = (sqrt3/2, 0) and s2 = (sqrt3/4, -3/4).
///
/// A point on a shared boundary belongs to the lexicographically smallest
/// (i, j) among the closed hexagons of the layer containing it: the tile
/// whose interior contains p - eps*(1, 0), as locate() evaluates it.
class HexLattice {
 public:
  /// Builds the shading table and checks its balance; throws
  /// std::logic_error if the shading is not balanced.
  explicit HexLattice(int h);

  int h() const { return h_; }
  int b() const { return h_ * h_; }
  ShadingScheme shading_scheme() const { return scheme_; }

  Point tile_center(TileIndex t) const;
  /// Counterclockwise vertices of the closed hexagon, starting at the top.
  std::array<Point, 6> hexagon(TileIndex t) const;
  int layer_of(TileIndex t) const;
  /// The tile of `layer` with the smallest indices (the layer's representative).
  TileIndex layer_representative(int layer) const;

  bool closed_contains(TileIndex t, const Point& p) const;

  Cell cell_of(const Point& p) const;
  TileIndex tile_of_cell(const Cell& cell, int layer) const;
  TileIndex locate(const Point& p, int layer) const;

  SubtileKey subtile_key(const Point& p) const;
  SubtileKey subtile_key(const Cell& cell) const;

  /// Cells whose interior lies inside tile t.
  std::vector<Cell> cells_in_tile(TileIndex t) const;
  std::vector<SubtileKey> subtiles_in_tile(TileIndex t) const;

  /// Shade in [1, b]; periodic under shifts by h in either index.
  int shade(const SubtileKey& key) const;
  /// Stripe shade of a grid cell (only meaningful for h >= 3).
  int stripe_shade(const Cell& cell) const;

  /// An interior point of the cell (its centroid).
  Point cell_centroid(const Cell& cell) const;

 private:
  SubtileKey canonical(const SubtileKey& key) const;
  void build_shading();

  int h_;
  ShadingScheme scheme_;
  std::unordered_map<SubtileKey, int, SubtileKeyHash> shade_table_;
};

struct ShadingReport {
  bool pass = true;
  int expected_per_shade = 0;
  /// counts[layer-1][shade-1] for the representative tile of each layer.
  std::vector<std::vector<int>> counts;
  std::vector<int> subtiles_per_layer;
  int bad_layer = 0;
  int bad_shade = 0;
  int bad_count = 0;
  std::string message;
};

using ShadeFunction = std::function<int(const SubtileKey&)>;

ShadingReport validate_shading(const HexLattice& lattice);
/// Same check with a caller-supplied shade map (used for negative controls).
ShadingReport validate_shading(const HexLattice& lattice, const ShadeFunction& shade);

}  // namespace hexfold
