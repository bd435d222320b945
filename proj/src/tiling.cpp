#include "hexfold/tiling.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace hexfold {

namespace {

struct SkewCoords {
  ExactScalar a;
  ExactScalar w;
  ExactScalar v;
};

// a = 4hx/sqrt3, w = 2hy - a/2, v = 2hy + a/2.
SkewCoords skew(const Point& p, int h) {
  const Rational two_h(2 * h);
  const Rational& xa = p.x.rational_part();
  const Rational& xb = p.x.root3_part();
  const Rational& ya = p.y.rational_part();
  const Rational& yb = p.y.root3_part();
  ExactScalar a(2 * two_h * xb, 2 * two_h * xa / 3);
  ExactScalar w(two_h * ya - two_h * xb, two_h * yb - two_h * xa / 3);
  ExactScalar v(two_h * ya + two_h * xb, two_h * yb + two_h * xa / 3);
  return {std::move(a), std::move(w), std::move(v)};
}

// Centroid of a cell, scaled by 3 so it is integral in (a, w).
std::pair<std::int64_t, std::int64_t> centroid3(const Cell& c) {
  const std::int64_t off = c.orientation == 0 ? 1 : 2;
  return {3 * c.a + off, 3 * c.w + off};
}

bool centroid_inside(std::int64_t pa, std::int64_t pw, TileIndex t, int h) {
  const std::int64_t ac = 3 * (2 * t.i + t.j);
  const std::int64_t wc = 3 * (-t.i - 2 * t.j);
  const std::int64_t lim = 3 * static_cast<std::int64_t>(h);
  auto within = [lim](std::int64_t d) { return d < lim && d > -lim; };
  return within(pa - ac) && within(pw - wc) && within((pa + pw) - (ac + wc));
}

}  // namespace

int gamma(int h) {
  if (h < 1) throw std::invalid_argument("gamma: h must be positive");
  if (h == 1) return 1;
  if (h == 2) return 12;
  return 6 * h * h;
}

HexLattice::HexLattice(int h) : h_(h), scheme_(h >= 3 ? ShadingScheme::Stripes : ShadingScheme::CanonicalEnumeration) {
  if (h < 1) throw std::invalid_argument("HexLattice: h must be positive");
  build_shading();
  const ShadingReport report = validate_shading(*this);
  if (!report.pass) throw std::logic_error("shading is not balanced: " + report.message);
}

Point HexLattice::tile_center(TileIndex t) const {
  const Rational scale(1, 4 * h_);
  return {ExactScalar(0, Rational(2 * t.i + t.j) * scale), ExactScalar(Rational(-3 * t.j) * scale)};
}

std::array<Point, 6> HexLattice::hexagon(TileIndex t) const {
  const Point c = tile_center(t);
  const ExactScalar half(Rational(1, 2));
  const ExactScalar quarter(Rational(1, 4));
  const ExactScalar side(0, Rational(1, 4));
  return {{
      c + Point{0, half},
      c + Point{-side, quarter},
      c + Point{-side, -quarter},
      c + Point{0, -half},
      c + Point{side, -quarter},
      c + Point{side, quarter},
  }};
}

int HexLattice::layer_of(TileIndex t) const {
  return 1 + static_cast<int>(mod_floor(t.i, h_) + h_ * mod_floor(t.j, h_));
}

TileIndex HexLattice::layer_representative(int layer) const {
  if (layer < 1 || layer > b()) throw std::out_of_range("layer out of range");
  return {(layer - 1) % h_, (layer - 1) / h_};
}

bool HexLattice::closed_contains(TileIndex t, const Point& p) const {
  const SkewCoords s = skew(p, h_);
  const ExactScalar lim(h_);
  const ExactScalar da = s.a - ExactScalar(2 * t.i + t.j);
  const ExactScalar dw = s.w - ExactScalar(-t.i - 2 * t.j);
  const ExactScalar dv = s.v - ExactScalar(t.i - t.j);
  auto within = [&lim](const ExactScalar& d) { return d <= lim && d >= -lim; };
  return within(da) && within(dw) && within(dv);
}

Cell HexLattice::cell_of(const Point& p) const {
  const SkewCoords s = skew(p, h_);
  Cell cell;
  cell.a = ceil(s.a) - 1;
  cell.w = floor(s.w);
  const std::int64_t v = ceil(s.v) - 1;
  const std::int64_t orientation = v - cell.a - cell.w;
  if (orientation != 0 && orientation != 1) throw std::logic_error("inconsistent grid cell");
  cell.orientation = static_cast<int>(orientation);
  return cell;
}

TileIndex HexLattice::tile_of_cell(const Cell& cell, int layer) const {
  if (layer < 1 || layer > b()) throw std::out_of_range("layer out of range");
  const auto [pa, pw] = centroid3(cell);
  const std::int64_t i0 = (layer - 1) % h_;
  const std::int64_t j0 = (layer - 1) / h_;
  const std::int64_t h = h_;
  // Nine times the real-valued index of the centroid.
  const std::int64_t i9 = 2 * pa + pw;
  const std::int64_t j9 = -(pa + 2 * pw);
  for (std::int64_t m = floor_div(i9 - 9 * h - 9 * i0, 9 * h); m <= floor_div(i9 + 9 * h - 9 * i0, 9 * h); ++m) {
    for (std::int64_t n = floor_div(j9 - 9 * h - 9 * j0, 9 * h); n <= floor_div(j9 + 9 * h - 9 * j0, 9 * h); ++n) {
      const TileIndex t{i0 + h * m, j0 + h * n};
      if (centroid_inside(pa, pw, t, h_)) return t;
    }
  }
  throw std::logic_error("no tile of the layer contains the cell");
}

TileIndex HexLattice::locate(const Point& p, int layer) const { return tile_of_cell(cell_of(p), layer); }

SubtileKey HexLattice::subtile_key(const Point& p) const { return subtile_key(cell_of(p)); }

SubtileKey HexLattice::subtile_key(const Cell& cell) const {
  SubtileKey key;
  key.tiles.reserve(static_cast<std::size_t>(b()));
  for (int r = 1; r <= b(); ++r) key.tiles.push_back(tile_of_cell(cell, r));
  return key;
}

std::vector<Cell> HexLattice::cells_in_tile(TileIndex t) const {
  const std::int64_t ac = 2 * t.i + t.j;
  const std::int64_t wc = -t.i - 2 * t.j;
  std::vector<Cell> cells;
  for (std::int64_t a = ac - h_ - 1; a <= ac + h_; ++a) {
    for (std::int64_t w = wc - h_ - 1; w <= wc + h_; ++w) {
      for (int o = 0; o < 2; ++o) {
        const Cell c{a, w, o};
        const auto [pa, pw] = centroid3(c);
        if (centroid_inside(pa, pw, t, h_)) cells.push_back(c);
      }
    }
  }
  return cells;
}

std::vector<SubtileKey> HexLattice::subtiles_in_tile(TileIndex t) const {
  std::vector<SubtileKey> keys;
  std::unordered_set<SubtileKey, SubtileKeyHash> seen;
  for (const Cell& c : cells_in_tile(t)) {
    SubtileKey key = subtile_key(c);
    if (seen.insert(key).second) keys.push_back(std::move(key));
  }
  return keys;
}

Point HexLattice::cell_centroid(const Cell& cell) const {
  const auto [pa, pw] = centroid3(cell);
  // x = a*sqrt3/(4h), y = (w + a/2)/(2h), with a = pa/3 and w = pw/3.
  return {ExactScalar(0, ratio(pa, 12 * h_)), ExactScalar(ratio(2 * pw + pa, 12 * h_))};
}

int HexLattice::stripe_shade(const Cell& cell) const {
  // Stripe a gets the shade block (a mod h)*h + [1..h]; the two cells
  // (a, w, 0) and (a, w, 1) form one diamond, and diamonds cycle through the
  // block going up the stripe.
  return static_cast<int>(mod_floor(cell.a, h_) * h_ + mod_floor(cell.a + cell.w, h_)) + 1;
}

SubtileKey HexLattice::canonical(const SubtileKey& key) const {
  const TileIndex shift = key.tiles.front();
  SubtileKey out;
  out.tiles.reserve(key.tiles.size());
  for (const TileIndex& t : key.tiles) out.tiles.push_back(t - shift);
  return out;
}

int HexLattice::shade(const SubtileKey& key) const {
  if (static_cast<int>(key.tiles.size()) != b()) throw std::invalid_argument("subtile key has wrong length");
  auto it = shade_table_.find(canonical(key));
  if (it == shade_table_.end()) throw std::logic_error("unknown subtile");
  return it->second;
}

void HexLattice::build_shading() {
  const TileIndex origin{0, 0};
  const std::vector<Cell> cells = cells_in_tile(origin);
  if (scheme_ == ShadingScheme::Stripes) {
    for (const Cell& c : cells) shade_table_.emplace(canonical(subtile_key(c)), stripe_shade(c));
    return;
  }

  // Group the cells of H_{0,0} by subtile; each subtile is represented by the
  // lexicographically smallest centroid (x, then y) among its cells.
  std::map<SubtileKey, Point> representative;
  for (const Cell& c : cells) {
    SubtileKey key = subtile_key(c);
    const Point p = cell_centroid(c);
    auto it = representative.find(key);
    if (it == representative.end()) {
      representative.emplace(std::move(key), p);
    } else if (p.x < it->second.x || (p.x == it->second.x && p.y < it->second.y)) {
      it->second = p;
    }
  }
  std::vector<std::pair<Point, SubtileKey>> ordered;
  for (auto& [key, p] : representative) ordered.emplace_back(p, key);
  std::sort(ordered.begin(), ordered.end(), [](const auto& l, const auto& r) {
    if (l.first.x != r.first.x) return l.first.x < r.first.x;
    return l.first.y < r.first.y;
  });
  for (std::size_t idx = 0; idx < ordered.size(); ++idx) {
    shade_table_.emplace(canonical(ordered[idx].second), static_cast<int>(idx % static_cast<std::size_t>(b())) + 1);
  }
}

ShadingReport validate_shading(const HexLattice& lattice) {
  return validate_shading(lattice, [&lattice](const SubtileKey& k) { return lattice.shade(k); });
}

ShadingReport validate_shading(const HexLattice& lattice, const ShadeFunction& shade) {
  ShadingReport report;
  const int b = lattice.b();
  const int g = gamma(lattice.h());
  report.expected_per_shade = g / b;
  for (int r = 1; r <= b; ++r) {
    const std::vector<SubtileKey> subtiles = lattice.subtiles_in_tile(lattice.layer_representative(r));
    report.subtiles_per_layer.push_back(static_cast<int>(subtiles.size()));
    std::vector<int> counts(static_cast<std::size_t>(b), 0);
    for (const SubtileKey& key : subtiles) {
      const int s = shade(key);
      if (s < 1 || s > b) {
        report.pass = false;
        report.bad_layer = r;
        report.bad_shade = s;
        report.message = "shade out of range";
        report.counts.push_back(counts);
        return report;
      }
      ++counts[static_cast<std::size_t>(s - 1)];
    }
    for (int s = 1; s <= b && report.pass; ++s) {
      if (counts[static_cast<std::size_t>(s - 1)] != report.expected_per_shade || g % b != 0) {
        report.pass = false;
        report.bad_layer = r;
        report.bad_shade = s;
        report.bad_count = counts[static_cast<std::size_t>(s - 1)];
        std::ostringstream msg;
        msg << "layer " << r << " shade " << s << " has " << report.bad_count << " subtiles, expected "
            << report.expected_per_shade;
        report.message = msg.str();
      }
    }
    report.counts.push_back(std::move(counts));
  }
  return report;
}

}  // namespace hexfold
