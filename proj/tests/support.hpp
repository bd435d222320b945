#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hexfold/geometry.hpp"
#include "hexfold/tiling.hpp"

namespace testing {

using hexfold::ExactScalar;
using hexfold::Point;
using hexfold::Rational;
using hexfold::TileIndex;

inline Rational dec(const char* text) { return hexfold::parse_decimal(text); }

inline Point pt(const Rational& x, const Rational& y) { return {ExactScalar(x), ExactScalar(y)}; }

inline ExactScalar root3(const Rational& r) { return ExactScalar(Rational(0), r); }

// Tile H_{i,j} of refinement h recomputed from the tiling's definition:
// center (i s1 + j s2) / h with s1 = (sqrt3/2, 0), s2 = (sqrt3/4, -3/4),
// vertical sides, circumradius 1/2.
inline Point hex_center(int h, TileIndex t) {
  const Rational ii(static_cast<long>(t.i)), jj(static_cast<long>(t.j));
  return {root3((ii / 2 + jj / 4) / h), ExactScalar(Rational(-3 * jj / 4) / h)};
}

inline std::array<Point, 6> hex_vertices(int h, TileIndex t) {
  const Point c = hex_center(h, t);
  const ExactScalar q = root3(Rational(1, 4));
  const std::array<Point, 6> off{{{ExactScalar(0), ExactScalar(Rational(1, 2))},
                                   {-q, ExactScalar(Rational(1, 4))},
                                   {-q, ExactScalar(Rational(-1, 4))},
                                   {ExactScalar(0), ExactScalar(Rational(-1, 2))},
                                   {q, ExactScalar(Rational(-1, 4))},
                                   {q, ExactScalar(Rational(1, 4))}}};
  std::array<Point, 6> out;
  for (int k = 0; k < 6; ++k) out[k] = c + off[k];
  return out;
}

inline bool hex_closed_contains(int h, TileIndex t, const Point& p) {
  const auto v = hex_vertices(h, t);
  for (int k = 0; k < 6; ++k) {
    if (hexfold::cross(v[(k + 1) % 6] - v[k], p - v[k]) < ExactScalar(0)) return false;
  }
  return true;
}

inline bool hex_strictly_contains(int h, TileIndex t, const Point& p) {
  const auto v = hex_vertices(h, t);
  for (int k = 0; k < 6; ++k) {
    if (hexfold::cross(v[(k + 1) % 6] - v[k], p - v[k]) <= ExactScalar(0)) return false;
  }
  return true;
}

// Approximate tile of p, for choosing a search window.
inline TileIndex rough_tile(int h, const Point& p) {
  const double j = -4.0 * h * p.y.to_double() / 3.0;
  const double i = 2.0 * h * p.x.to_double() / std::sqrt(3.0) - j / 2.0;
  return {static_cast<std::int64_t>(std::llround(i)), static_cast<std::int64_t>(std::llround(j))};
}

inline Rational grid_rational(std::mt19937_64& rng, long lo, long hi, long denom) {
  std::uniform_int_distribution<long> d(lo * denom, hi * denom);
  return hexfold::ratio(d(rng), denom);
}

}  // namespace testing
