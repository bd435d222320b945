#include "hexfold/geometry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace hexfold {

namespace {

mpz_class pow10(unsigned long exponent) {
  mpz_class result;
  mpz_ui_pow_ui(result.get_mpz_t(), 10, exponent);
  return result;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Rational parse_decimal(std::string_view text) {
  const std::string original(text);
  auto fail = [&]() -> Rational { throw std::invalid_argument("not a decimal number: '" + original + "'"); };

  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return fail();

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = text.substr(e + 1);
    text = text.substr(0, e);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) return fail();
    exponent = std::stol(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
  }

  std::string_view int_part = text;
  std::string_view frac_part;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    int_part = text.substr(0, dot);
    frac_part = text.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) return fail();
  if (!int_part.empty() && !all_digits(int_part)) return fail();
  if (!frac_part.empty() && !all_digits(frac_part)) return fail();

  std::string digits = std::string(int_part) + std::string(frac_part);
  if (digits.empty()) return fail();
  mpz_class numerator(digits, 10);
  long scale = static_cast<long>(frac_part.size()) - exponent;

  Rational value;
  if (scale >= 0) {
    value = Rational(numerator, pow10(static_cast<unsigned long>(scale)));
  } else {
    value = Rational(numerator * pow10(static_cast<unsigned long>(-scale)));
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

std::string format_rational(const Rational& value) {
  mpz_class den = value.get_den();
  unsigned long twos = 0;
  unsigned long fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return value.get_str();

  const unsigned long places = std::max(twos, fives);
  if (places == 0) return value.get_num().get_str();
  mpz_class scaled = value.get_num() * pow10(places) / value.get_den();
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.get_str();
  if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
  digits.insert(digits.size() - places, ".");
  return negative ? "-" + digits : digits;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t mod_floor(std::int64_t a, std::int64_t b) { return a - b * floor_div(a, b); }

ExactScalar::ExactScalar(Rational rational, Rational root3) : a_(std::move(rational)), b_(std::move(root3)) {
  a_.canonicalize();
  b_.canonicalize();
}

int ExactScalar::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: |a| vs |b|*sqrt(3).  Never equal unless both vanish.
  const Rational lhs = a_ * a_;
  const Rational rhs = 3 * b_ * b_;
  return lhs > rhs ? sa : sb;
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
  if (is_rational() && o.is_rational()) {
    a_ *= o.a_;
    return *this;
  }
  Rational a = a_ * o.a_ + 3 * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& o) {
  if (o.sign() == 0) throw std::domain_error("ExactScalar division by zero");
  if (o.is_rational()) {
    a_ /= o.a_;
    b_ /= o.a_;
    return *this;
  }
  const Rational norm = o.a_ * o.a_ - 3 * o.b_ * o.b_;
  *this *= ExactScalar(o.a_, -o.b_);
  a_ /= norm;
  b_ /= norm;
  return *this;
}

std::strong_ordering operator<=>(const ExactScalar& l, const ExactScalar& r) {
  const int s = (l - r).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::strong_ordering cmp(const ExactScalar& a, const ExactScalar& b) { return a <=> b; }

double ExactScalar::to_double() const { return a_.get_d() + b_.get_d() * std::sqrt(3.0); }

std::string ExactScalar::to_string() const {
  if (is_rational()) return format_rational(a_);
  std::string out;
  if (sgn(a_) != 0) out = format_rational(a_) + (sgn(b_) > 0 ? "+" : "");
  return out + format_rational(b_) + "*sqrt3";
}

std::int64_t floor(const ExactScalar& x) {
  if (x.is_rational()) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.rational_part().get_num_mpz_t(), x.rational_part().get_den_mpz_t());
    if (!q.fits_slong_p()) throw std::overflow_error("floor out of 64-bit range");
    return q.get_si();
  }
  const double approx = x.to_double();
  if (!(std::fabs(approx) < 9.0e18)) throw std::overflow_error("floor out of 64-bit range");
  auto guess = static_cast<std::int64_t>(std::floor(approx));
  while (x < ExactScalar(Rational(guess))) --guess;
  while (x >= ExactScalar(Rational(guess + 1))) ++guess;
  return guess;
}

std::int64_t ceil(const ExactScalar& x) { return -floor(-x); }

double sqrt_approx(const ExactScalar& x, unsigned bits) {
  if (x.sign() < 0) throw std::domain_error("sqrt of a negative value");
  mpf_class a(x.rational_part(), bits);
  mpf_class b(x.root3_part(), bits);
  mpf_class three(3, bits);
  mpf_class v(a + b * sqrt(three), bits);
  if (v < 0) v = 0;
  return mpf_class(sqrt(v), bits).get_d();
}

namespace {

// Largest m with m^2 <= x * 10^(2*decimals).
mpz_class scaled_isqrt(const ExactScalar& x, int decimals) {
  if (x.sign() < 0) throw std::domain_error("sqrt of a negative value");
  const mpz_class scale = pow10(static_cast<unsigned long>(decimals));
  const ExactScalar target = x * ExactScalar(Rational(scale * scale));
  const unsigned bits = 128 + 4 * static_cast<unsigned>(decimals);
  mpf_class a(target.rational_part(), bits);
  mpf_class b(target.root3_part(), bits);
  mpf_class three(3, bits);
  mpf_class v(a + b * sqrt(three), bits);
  if (v < 0) v = 0;
  mpf_class root(sqrt(v), bits);
  mpz_class m(root);
  auto square_le = [&](const mpz_class& c) { return ExactScalar(Rational(c * c)) <= target; };
  while (m > 0 && !square_le(m)) --m;
  while (square_le(m + 1)) ++m;
  return m;
}

}  // namespace

Rational sqrt_lower(const ExactScalar& x, int decimals) {
  const mpz_class m = scaled_isqrt(x, decimals);
  Rational r(m, pow10(static_cast<unsigned long>(decimals)));
  r.canonicalize();
  return r;
}

Rational sqrt_upper(const ExactScalar& x, int decimals) {
  mpz_class m = scaled_isqrt(x, decimals);
  const mpz_class scale = pow10(static_cast<unsigned long>(decimals));
  if (ExactScalar(Rational(m * m)) != x * ExactScalar(Rational(scale * scale))) ++m;
  Rational r(m, scale);
  r.canonicalize();
  return r;
}

ExactScalar dot(const Point& p, const Point& q) { return p.x * q.x + p.y * q.y; }

ExactScalar cross(const Point& p, const Point& q) { return p.x * q.y - p.y * q.x; }

ExactScalar sq_dist(const Point& p, const Point& q) {
  const Point d = p - q;
  return dot(d, d);
}

ExactScalar point_segment_sq_dist(const Point& p, const Point& a, const Point& b) {
  const Point d = b - a;
  const ExactScalar along = dot(p - a, d);
  if (along.sign() <= 0) return sq_dist(p, a);
  const ExactScalar len2 = dot(d, d);
  if (along >= len2) return sq_dist(p, b);
  const ExactScalar t = along / len2;
  return sq_dist(p, a + t * d);
}

bool disks_intersect(const Disk& d1, const Disk& d2) {
  const ExactScalar reach = (d1.diameter + d2.diameter) / ExactScalar(2);
  return sq_dist(d1.center, d2.center) <= reach * reach;
}

bool second_neighbor_possible(const Disk& d1, const Disk& d2, const ExactScalar& sigma) {
  const ExactScalar reach = (d1.diameter + d2.diameter) / ExactScalar(2) + sigma;
  return sq_dist(d1.center, d2.center) <= reach * reach;
}

namespace {

// True if some edge normal of `a` strictly separates the two vertex sets.
bool has_separating_edge(std::span<const Point> a, std::span<const Point> b) {
  const std::size_t n = a.size();
  for (std::size_t e = 0; e < n; ++e) {
    const Point& p = a[e];
    const Point edge = a[(e + 1) % n] - p;
    // Outward normal of a counterclockwise polygon: (dy, -dx).
    const Point normal{edge.y, -edge.x};
    bool all_outside = true;
    for (const Point& q : b) {
      if (dot(q - p, normal).sign() <= 0) {
        all_outside = false;
        break;
      }
    }
    if (all_outside) return true;
  }
  return false;
}

void require_polygon(std::span<const Point> poly) {
  if (poly.size() < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
}

}  // namespace

bool convex_polygons_intersect(std::span<const Point> a, std::span<const Point> b) {
  require_polygon(a);
  require_polygon(b);
  return !has_separating_edge(a, b) && !has_separating_edge(b, a);
}

ExactScalar polygon_min_sq_dist(std::span<const Point> a, std::span<const Point> b) {
  require_polygon(a);
  require_polygon(b);
  if (convex_polygons_intersect(a, b)) return ExactScalar(0);

  ExactScalar best = sq_dist(a[0], b[0]);
  auto scan = [&best](std::span<const Point> from, std::span<const Point> to) {
    for (const Point& p : from) {
      for (std::size_t e = 0; e < to.size(); ++e) {
        ExactScalar d = point_segment_sq_dist(p, to[e], to[(e + 1) % to.size()]);
        if (d < best) best = std::move(d);
      }
    }
  };
  scan(a, b);
  scan(b, a);
  return best;
}

}  // namespace hexfold
