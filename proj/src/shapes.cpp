#include "hexfold/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "hexfold/random.hpp"

namespace hexfold {

namespace {

const Rational& rat(const ExactScalar& v) { return v.rational_part(); }

// Cross product of (b - a) and (c - a).
ExactScalar turn(const Point& a, const Point& b, const Point& c) { return cross(b - a, c - a); }

bool strictly_inside(const std::vector<Point>& poly, const Point& p) {
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (turn(poly[i], poly[(i + 1) % poly.size()], p) <= ExactScalar(0)) return false;
  }
  return true;
}

ExactScalar inner_radius_sq(const std::vector<Point>& poly, const Point& p) {
  std::optional<ExactScalar> best;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % poly.size()];
    const ExactScalar c = turn(a, b, p);
    ExactScalar d = c * c / sq_dist(a, b);
    if (!best || d < *best) best = std::move(d);
  }
  return *best;
}

ExactScalar outer_radius_sq(const std::vector<Point>& poly, const Point& p) {
  ExactScalar best(0);
  for (const Point& v : poly) best = std::max(best, sq_dist(v, p));
  return best;
}

// Nearest multiple of 1/denom.
Rational round_to(const Rational& v, long denom) {
  const Rational scaled = v * denom + Rational(1, 2);
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Rational out(q, mpz_class(denom));
  out.canonicalize();
  return out;
}

Rational approx(const ExactScalar& v) { return round_to(Rational(v.to_double()), 1'000'000'000); }

}  // namespace

void validate_shape(const ConvexShape& shape) {
  const auto& poly = shape.vertices;
  if (poly.size() < 3) throw std::invalid_argument("shape needs at least 3 vertices");
  // Every other vertex strictly left of every edge.
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || j == (i + 1) % n) continue;
      if (turn(poly[i], poly[(i + 1) % n], poly[j]) <= ExactScalar(0)) {
        throw std::invalid_argument("shape is not strictly convex and counterclockwise");
      }
    }
  }
  if (!strictly_inside(poly, shape.center)) throw std::invalid_argument("shape center is not strictly inside");
}

ShapeMetrics inner_outer(const ConvexShape& shape) {
  validate_shape(shape);
  ShapeMetrics m;
  m.inner_diameter_sq = ExactScalar(4) * inner_radius_sq(shape.vertices, shape.center);
  m.outer_diameter_sq = ExactScalar(4) * outer_radius_sq(shape.vertices, shape.center);
  m.rho_sq = m.outer_diameter_sq / m.inner_diameter_sq;
  m.rho_lower = sqrt_lower(m.rho_sq, 12);
  m.rho_upper = sqrt_upper(m.rho_sq, 12);
  return m;
}

bool shapes_intersect(const ConvexShape& a, const ConvexShape& b) {
  return convex_polygons_intersect(a.vertices, b.vertices);
}

bool within_radii(const ExactScalar& center_dist_sq, const ExactScalar& r1_sq, const ExactScalar& r2_sq) {
  // d <= r1 + r2  <=>  d^2 - r1^2 - r2^2 <= 2 r1 r2
  const ExactScalar lhs = center_dist_sq - r1_sq - r2_sq;
  if (lhs <= ExactScalar(0)) return true;
  return lhs * lhs <= ExactScalar(4) * r1_sq * r2_sq;
}

Point suggest_center(const std::vector<Point>& vertices, int rounds) {
  if (vertices.size() < 3) throw std::invalid_argument("shape needs at least 3 vertices");
  ExactScalar sx(0), sy(0);
  for (const Point& v : vertices) {
    sx += v.x;
    sy += v.y;
  }
  const ExactScalar count(static_cast<long>(vertices.size()));
  Point best{sx / count, sy / count};
  ExactScalar best_rho = outer_radius_sq(vertices, best) / inner_radius_sq(vertices, best);
  Rational lo_x = approx(vertices[0].x), hi_x = lo_x, lo_y = approx(vertices[0].y), hi_y = lo_y;
  for (const Point& v : vertices) {
    lo_x = std::min(lo_x, approx(v.x));
    hi_x = std::max(hi_x, approx(v.x));
    lo_y = std::min(lo_y, approx(v.y));
    hi_y = std::max(hi_y, approx(v.y));
  }
  constexpr int kSteps = 8;
  for (int r = 0; r < rounds; ++r) {
    for (int i = 0; i <= kSteps; ++i) {
      for (int j = 0; j <= kSteps; ++j) {
        const Point p{ExactScalar(lo_x + (hi_x - lo_x) * ratio(i, kSteps)),
                      ExactScalar(lo_y + (hi_y - lo_y) * ratio(j, kSteps))};
        if (!strictly_inside(vertices, p)) continue;
        ExactScalar rho = outer_radius_sq(vertices, p) / inner_radius_sq(vertices, p);
        if (rho < best_rho) {
          best_rho = std::move(rho);
          best = p;
        }
      }
    }
    const Rational half_w = (hi_x - lo_x) / 4, half_h = (hi_y - lo_y) / 4;
    lo_x = approx(best.x) - half_w;
    hi_x = approx(best.x) + half_w;
    lo_y = approx(best.y) - half_h;
    hi_y = approx(best.y) + half_h;
  }
  return best;
}

Rational shape_reach_sq(AlgorithmKind kind, const Rational& sigma, const Rational& rho_sq_bound) {
  if (is_branching(kind)) return 4 * rho_sq_bound;
  return rho_sq_bound * sigma * sigma;
}

RunResult shape_stream_adapter(const ShapeAdapterConfig& config, const std::vector<ConvexShape>& shapes) {
  if (config.kind == AlgorithmKind::BranchFF) throw std::invalid_argument("the shape adapter does not run BranchFF");
  AlgorithmConfig algo;
  algo.kind = config.kind;
  algo.sigma = config.sigma;
  algo.base = config.base;
  algo.reach_sq = shape_reach_sq(config.kind, config.sigma, config.rho_sq_bound);
  OnlineColorer colorer(algo);
  const ExactScalar sigma_sq(config.sigma * config.sigma);
  std::vector<OnlineColor> colors;
  colors.reserve(shapes.size());
  for (const ConvexShape& shape : shapes) {
    const ShapeMetrics m = inner_outer(shape);
    if (m.inner_diameter_sq < ExactScalar(1) || m.inner_diameter_sq > sigma_sq) {
      throw std::invalid_argument("inner diameter outside [1, sigma]");
    }
    if (m.rho_sq > ExactScalar(config.rho_sq_bound)) throw std::invalid_argument("shape rho exceeds the declared bound");
    const int branch = is_branching(config.kind) ? branch_index_sq(m.inner_diameter_sq, config.sigma) : 0;
    colors.push_back(colorer.step_at(shape.center, branch));
  }
  return summarize(std::move(colors), colorer.branches());
}

namespace {

// Rational point on the unit circle near angle theta: t = tan(theta/2)
// rounded to 1/1000, then ((1-t^2)/(1+t^2), 2t/(1+t^2)).
Point unit_normal(double theta) {
  const Rational t = ratio(static_cast<long>(std::lround(std::tan(theta / 2) * 1000)), 1000);
  const Rational den = 1 + t * t;
  return {ExactScalar(Rational((1 - t * t) / den)), ExactScalar(Rational(2 * t / den))};
}


}  // namespace

std::vector<ConvexShape> gen_random_shapes(std::size_t n, const Rational& sigma, const Rational& box_side,
                                           std::uint64_t seed, int max_vertices) {
  if (sigma < 1) throw std::invalid_argument("sigma must be at least 1");
  if (max_vertices < 3) throw std::invalid_argument("max_vertices must be at least 3");
  std::mt19937_64 rng(seed);
  std::vector<ConvexShape> out;
  out.reserve(n);
  const double two_pi = 2 * std::numbers::pi;
  constexpr long kVertexGrid = 1'000'000;
  while (out.size() < n) {
    const Point center{ExactScalar(uniform_grid(rng, Rational(0), box_side, 1000)),
                       ExactScalar(uniform_grid(rng, Rational(0), box_side, 1000))};
    // Diameter kept 2e-5 clear of both ends of [1, sigma].
    const Rational margin = sigma - 1 >= Rational(1, 10000) ? Rational(1, 100000) : Rational(0);
    const Rational radius = uniform_grid(rng, 1 + 2 * margin, sigma - 2 * margin, 1000) / 2;
    const int m = 3 + static_cast<int>(uniform_upto(rng, static_cast<std::uint64_t>(max_vertices - 3)));
    // Evenly spaced directions in (-pi, pi), jittered by up to a quarter step.
    const double step = two_pi / m;
    const double start = -std::numbers::pi + step / 2;
    std::vector<Point> normals;
    for (int i = 0; i < m; ++i) {
      const double jitter = (static_cast<double>(uniform_upto(rng, 1000)) / 1000.0 - 0.5) * step / 2;
      normals.push_back(unit_normal(start + i * step + jitter));
    }
    ConvexShape shape;
    shape.center = center;
    for (int i = 0; i < m; ++i) {
      const Point& n1 = normals[static_cast<std::size_t>(i)];
      const Point& n2 = normals[static_cast<std::size_t>((i + 1) % m)];
      // n1.y = n2.y = r for y = r (n1 + n2) / (1 + n1.n2).
      const ExactScalar scale = ExactScalar(radius) / (ExactScalar(1) + dot(n1, n2));
      const Point v = center + scale * (n1 + n2);
      shape.vertices.push_back({ExactScalar(round_to(rat(v.x), kVertexGrid)), ExactScalar(round_to(rat(v.y), kVertexGrid))});
    }
    try {
      const ShapeMetrics metrics = inner_outer(shape);
      if (metrics.rho_sq > ExactScalar(4) || metrics.inner_diameter_sq < ExactScalar(1) ||
          metrics.inner_diameter_sq > ExactScalar(sigma * sigma)) {
        continue;
      }
    } catch (const std::invalid_argument&) {
      continue;
    }
    out.push_back(std::move(shape));
  }
  return out;
}

}  // namespace hexfold
