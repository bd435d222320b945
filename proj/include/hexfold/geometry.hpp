#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hexfold {

using Rational = mpq_class;

/// num / den in canonical form (mpq_class(num, den) does not reduce).
inline Rational ratio(const mpz_class& num, const mpz_class& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses a decimal literal ("-1.25", "3", "2.5e-3") into an exact rational.
/// Throws std::invalid_argument on malformed input.
Rational parse_decimal(std::string_view text);

/// Shortest exact decimal for rationals whose denominator divides a power of
/// ten, otherwise "num/den".
std::string format_rational(const Rational& value);

std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t mod_floor(std::int64_t a, std::int64_t b);

/// A number a + b*sqrt(3) with rational a, b.  Comparisons are exact.
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(Rational rational, Rational root3 = 0);  // NOLINT(implicit)
  ExactScalar(long value) : ExactScalar(Rational(value)) {}  // NOLINT
  ExactScalar(int value) : ExactScalar(Rational(value)) {}   // NOLINT

  static ExactScalar sqrt3() { return {0, 1}; }

  const Rational& rational_part() const { return a_; }
  const Rational& root3_part() const { return b_; }
  bool is_rational() const { return sgn(b_) == 0; }

  /// -1, 0 or +1.  Decided by comparing a^2 with 3b^2 when the parts disagree.
  int sign() const;

  ExactScalar& operator+=(const ExactScalar& o);
  ExactScalar& operator-=(const ExactScalar& o);
  ExactScalar& operator*=(const ExactScalar& o);
  ExactScalar& operator/=(const ExactScalar& o);

  friend ExactScalar operator+(ExactScalar l, const ExactScalar& r) { return l += r; }
  friend ExactScalar operator-(ExactScalar l, const ExactScalar& r) { return l -= r; }
  friend ExactScalar operator*(ExactScalar l, const ExactScalar& r) { return l *= r; }
  friend ExactScalar operator/(ExactScalar l, const ExactScalar& r) { return l /= r; }
  ExactScalar operator-() const { return {-a_, -b_}; }

  friend bool operator==(const ExactScalar& l, const ExactScalar& r) {
    return l.a_ == r.a_ && l.b_ == r.b_;
  }
  friend std::strong_ordering operator<=>(const ExactScalar& l, const ExactScalar& r);

  double to_double() const;
  std::string to_string() const;

 private:
  Rational a_{0};
  Rational b_{0};
};

std::strong_ordering cmp(const ExactScalar& a, const ExactScalar& b);

/// Largest integer <= x.  Exact; the double estimate is only a starting guess.
std::int64_t floor(const ExactScalar& x);
std::int64_t ceil(const ExactScalar& x);

/// Square root of a non-negative value to at least `bits` of precision.
double sqrt_approx(const ExactScalar& x, unsigned bits = 256);
/// sqrt(x) rounded down to `decimals` places; a certified lower bound.
Rational sqrt_lower(const ExactScalar& x, int decimals = 12);
/// sqrt(x) rounded up to `decimals` places; a certified upper bound.
Rational sqrt_upper(const ExactScalar& x, int decimals = 12);

struct Point {
  ExactScalar x;
  ExactScalar y;

  friend Point operator+(const Point& p, const Point& q) { return {p.x + q.x, p.y + q.y}; }
  friend Point operator-(const Point& p, const Point& q) { return {p.x - q.x, p.y - q.y}; }
  friend Point operator*(const ExactScalar& s, const Point& p) { return {s * p.x, s * p.y}; }
  friend bool operator==(const Point&, const Point&) = default;
};

/// Closed disk; `diameter` is in units of the smallest admissible diameter.
struct Disk {
  Point center;
  ExactScalar diameter;
};

ExactScalar dot(const Point& p, const Point& q);
ExactScalar cross(const Point& p, const Point& q);
ExactScalar sq_dist(const Point& p, const Point& q);

/// Squared distance from p to the closed segment [a, b].
ExactScalar point_segment_sq_dist(const Point& p, const Point& a, const Point& b);

/// Closed disks: tangency counts as intersection.
bool disks_intersect(const Disk& d1, const Disk& d2);

/// True iff two disks could share a neighbour whose diameter is at most sigma.
bool second_neighbor_possible(const Disk& d1, const Disk& d2, const ExactScalar& sigma);

/// Separating-axis test on closed convex polygons (counterclockwise).
bool convex_polygons_intersect(std::span<const Point> a, std::span<const Point> b);

/// Minimum squared distance between two closed convex polygons (0 when they
/// touch or overlap).  Throws std::invalid_argument for fewer than 3 vertices.
ExactScalar polygon_min_sq_dist(std::span<const Point> a, std::span<const Point> b);

}  // namespace hexfold
