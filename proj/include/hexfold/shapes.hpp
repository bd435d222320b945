#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "hexfold/geometry.hpp"
#include "hexfold/online.hpp"

namespace hexfold {

/// Convex polygon (counterclockwise) with a chosen interior center.
/// Coordinates live in Q[sqrt3]; files only carry rational ones.
struct ConvexShape {
  std::vector<Point> vertices;
  Point center;
};

/// Squared quantities are exact; rho itself is reported through bounds.
struct ShapeMetrics {
  ExactScalar inner_diameter_sq;
  ExactScalar outer_diameter_sq;
  ExactScalar rho_sq;
  Rational rho_lower;
  Rational rho_upper;
};

/// Throws std::invalid_argument for fewer than 3 vertices, non-strict
/// convexity, clockwise order, or a center that is not strictly inside.
void validate_shape(const ConvexShape& shape);

ShapeMetrics inner_outer(const ConvexShape& shape);

/// Closed shapes; touching counts.
bool shapes_intersect(const ConvexShape& a, const ConvexShape& b);

/// |c1 c2| <= r1 + r2 for radii given by their squares.
bool within_radii(const ExactScalar& center_dist_sq, const ExactScalar& r1_sq, const ExactScalar& r2_sq);

/// Interior point near the one minimizing rho, by grid refinement over the
/// bounding box.  Heuristic only.
Point suggest_center(const std::vector<Point>& vertices, int rounds = 6);

struct ShapeAdapterConfig {
  AlgorithmKind kind = AlgorithmKind::FoldShadeColor;
  /// Inner diameters must lie in [1, sigma].
  Rational sigma{1};
  /// Declared bound on rho^2.
  Rational rho_sq_bound{1};
  std::shared_ptr<const PlaneColoring> base;
};

/// Squared reach the base needs: rho^2 sigma^2, or 4 rho^2 when branching.
Rational shape_reach_sq(AlgorithmKind kind, const Rational& sigma, const Rational& rho_sq_bound);

/// Runs the online algorithm on shape centers (branching on inner diameter).
/// Throws std::invalid_argument for BranchFF, a base that does not cover the
/// reach, or a shape outside the declared inner-diameter / rho bounds.
RunResult shape_stream_adapter(const ShapeAdapterConfig& config, const std::vector<ConvexShape>& shapes);

/// Random convex polygons circumscribed about a circle of diameter drawn from
/// a 1/1000 grid in [1, sigma], with vertices rounded to 1/10^6.  Only shapes
/// with rho <= 2 and inner diameter in [1, sigma] are kept.  Slow for sigma
/// within 1e-4 of 1, where most rounded shapes fall outside the range.
std::vector<ConvexShape> gen_random_shapes(std::size_t n, const Rational& sigma, const Rational& box_side,
                                           std::uint64_t seed, int max_vertices = 8);

}  // namespace hexfold
