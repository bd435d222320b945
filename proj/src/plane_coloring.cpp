#include "hexfold/plane_coloring.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "hexfold/random.hpp"

namespace hexfold {

std::shared_ptr<const HexLattice> shared_lattice(int h) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const HexLattice>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(h);
  if (it != cache.end()) return it->second;
  auto lattice = std::make_shared<const HexLattice>(h);
  cache.emplace(h, lattice);
  return lattice;
}

std::string to_string(ColoringKind kind) {
  switch (kind) {
    case ColoringKind::Pq: return "pq";
    case ColoringKind::LStar3: return "lstar3";
    case ColoringKind::LStar6: return "lstar6";
  }
  return "pq";
}

ColoringKind parse_coloring_kind(std::string_view text) {
  if (text == "pq") return ColoringKind::Pq;
  if (text == "lstar3") return ColoringKind::LStar3;
  if (text == "lstar6") return ColoringKind::LStar6;
  throw std::invalid_argument("unknown coloring kind '" + std::string(text) + "'");
}

std::int64_t pq_color_count(int p, int q) {
  if (p < 0 || q < 0 || (p == 0 && q == 0)) throw std::invalid_argument("need (p, q) != (0, 0), both non-negative");
  const std::int64_t P = p, Q = q;
  return P * P + P * Q + Q * Q;
}

namespace {

// In skew coordinates (a, w) = (2i + j, -i - 2j) the squared Euclidean length
// is (a^2 + a w + w^2) / (4h^2).
std::int64_t qform(std::int64_t a, std::int64_t w) { return a * a + a * w + w * w; }
std::int64_t bform2(std::int64_t a1, std::int64_t w1, std::int64_t a2, std::int64_t w2) {
  return 2 * a1 * a2 + a1 * w2 + w1 * a2 + 2 * w1 * w2;
}

std::int64_t norm_index(TileIndex d) { return d.i * d.i + d.i * d.j + d.j * d.j; }

// Offsets d != 0 with center distance^2 = 3 norm_index(d) / (4h^2) <= radius_sq.
std::vector<TileIndex> offsets_within(int h, const Rational& radius_sq) {
  const Rational limit_r = radius_sq * 4 * h * h / 3;
  mpz_class lim_z;
  mpz_fdiv_q(lim_z.get_mpz_t(), limit_r.get_num_mpz_t(), limit_r.get_den_mpz_t());
  const std::int64_t limit = lim_z.get_si();
  // i^2 + ij + j^2 >= 3/4 max(i, j)^2.
  std::int64_t span = 0;
  while (3 * (span + 1) * (span + 1) <= 4 * limit) ++span;
  std::vector<TileIndex> out;
  for (std::int64_t i = -span; i <= span; ++i) {
    for (std::int64_t j = -span; j <= span; ++j) {
      if (i == 0 && j == 0) continue;
      if (norm_index({i, j}) <= limit) out.push_back({i, j});
    }
  }
  return out;
}

struct Hnf {
  std::int64_t e;
  std::int64_t f;
  std::int64_t g;
};

// Rows (e, f), (0, g) span the same lattice as (p, q), (p+q, -p).
Hnf color_lattice_hnf(int p, int q) {
  const std::int64_t k = pq_color_count(p, q);
  std::int64_t r0 = p, r1 = p + q, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
  while (r1 != 0) {
    const std::int64_t t = r0 / r1;
    std::tie(r0, r1) = std::make_tuple(r1, r0 - t * r1);
    std::tie(x0, x1) = std::make_tuple(x1, x0 - t * x1);
    std::tie(y0, y1) = std::make_tuple(y1, y0 - t * y1);
  }
  // x0 * p + y0 * (p + q) = r0 = gcd.
  if (r0 < 0) {
    r0 = -r0;
    x0 = -x0;
    y0 = -y0;
  }
  Hnf hnf;
  hnf.e = r0;
  hnf.g = k / r0;
  hnf.f = mod_floor(x0 * q - y0 * p, hnf.g);
  return hnf;
}

bool in_lattice(const Hnf& hnf, TileIndex d) {
  if (mod_floor(d.i, hnf.e) != 0) return false;
  return mod_floor(d.j - (d.i / hnf.e) * hnf.f, hnf.g) == 0;
}

Rational sigma_upper(const Rational& sigma_sq) { return sqrt_upper(ExactScalar(sigma_sq), 6); }

Rational search_radius_sq(const Rational& reach) {
  const Rational r = reach + 1;
  return r * r;
}

// True when no lattice offset has a gap below sqrt(sigma_sq).
bool pq_supports(int h, const Hnf& hnf, const Rational& sigma_sq) {
  for (const TileIndex& d : offsets_within(h, search_radius_sq(sigma_upper(sigma_sq)))) {
    if (in_lattice(hnf, d) && tile_gap_sq(h, d) < sigma_sq) return false;
  }
  return true;
}

Rational pq_sigma_max_sq(int h, const Hnf& hnf, TileIndex* witness) {
  for (std::int64_t radius = 2;; radius *= 2) {
    std::optional<Rational> best;
    TileIndex arg;
    for (const TileIndex& d : offsets_within(h, Rational(radius * radius))) {
      if (!in_lattice(hnf, d)) continue;
      Rational gap = tile_gap_sq(h, d);
      if (!best || gap < *best || (gap == *best && d < arg)) {
        best = std::move(gap);
        arg = d;
      }
    }
    // Every tile farther than `radius` is at least radius - 1 away.
    if (best && *best <= Rational((radius - 1) * (radius - 1))) {
      if (witness) *witness = arg;
      return *best;
    }
  }
}

SigmaExact make_sigma(Rational sq, TileIndex witness, int decimals) {
  SigmaExact out;
  out.lower = sqrt_lower(ExactScalar(sq), decimals);
  out.upper = sqrt_upper(ExactScalar(sq), decimals);
  out.sq = std::move(sq);
  out.witness = witness;
  return out;
}

}  // namespace

Rational tile_gap_sq(int h, TileIndex d) {
  const std::int64_t a = 2 * d.i + d.j;
  const std::int64_t w = -d.i - 2 * d.j;
  const std::int64_t lim = 2 * static_cast<std::int64_t>(h);
  // H - H = 2H, so the gap is the distance from the offset center to 2H.
  if (std::abs(a) <= lim && std::abs(w) <= lim && std::abs(a + w) <= lim) return Rational(0);
  const std::int64_t va[6] = {lim, lim, 0, -lim, -lim, 0};
  const std::int64_t vw[6] = {0, -lim, -lim, 0, lim, lim};
  std::optional<Rational> best;
  for (int k = 0; k < 6; ++k) {
    const std::int64_t ea = va[(k + 1) % 6] - va[k];
    const std::int64_t ew = vw[(k + 1) % 6] - vw[k];
    const std::int64_t pa = a - va[k];
    const std::int64_t pw = w - vw[k];
    const std::int64_t along2 = bform2(pa, pw, ea, ew);
    const std::int64_t len = qform(ea, ew);
    Rational dist;
    if (along2 <= 0) {
      dist = qform(pa, pw);
    } else if (along2 >= 2 * len) {
      dist = qform(pa - ea, pw - ew);
    } else {
      dist = Rational(qform(pa, pw)) - ratio(along2 * along2, 4 * len);
    }
    if (!best || dist < *best) best = dist;
  }
  Rational out = *best / (4 * h * h);
  out.canonicalize();
  return out;
}

SigmaBound pq_sigma_bound(int h, int p, int q, int decimals) {
  if (h < 1) throw std::invalid_argument("h must be positive");
  const std::int64_t k = pq_color_count(p, q);
  // (sqrt3 / 2h) sqrt(k) = sqrt(3k / 4h^2).
  const ExactScalar sq(ratio(3 * k, 4 * h * h));
  SigmaBound out;
  out.lower = sqrt_lower(sq, decimals) - 1;
  out.upper = sqrt_upper(sq, decimals) - 1;
  out.valid = sq >= ExactScalar(4);
  return out;
}

SigmaExact pq_sigma_max(int h, int p, int q, int decimals) {
  if (h < 1) throw std::invalid_argument("h must be positive");
  const Hnf hnf = color_lattice_hnf(p, q);
  TileIndex witness;
  Rational sq = pq_sigma_max_sq(h, hnf, &witness);
  return make_sigma(std::move(sq), witness, decimals);
}

SigmaExact pq_sigma_exact(int h, int p, int q, int decimals) {
  SigmaExact out = pq_sigma_max(h, p, q, decimals);
  if (out.sq < 1) throw std::domain_error("sigma_max < 1 for this (h^2, p, q)-coloring");
  return out;
}

PlaneColoring PlaneColoring::pq(int h, int p, int q) {
  if (h < 1) throw std::invalid_argument("h must be positive");
  PlaneColoring c;
  c.kind_ = ColoringKind::Pq;
  c.h_ = h;
  c.p_ = p;
  c.q_ = q;
  c.k_ = pq_color_count(p, q);
  const Hnf hnf = color_lattice_hnf(p, q);
  c.e_ = hnf.e;
  c.f_ = hnf.f;
  c.g_ = hnf.g;
  c.lattice_ = shared_lattice(h);
  c.sigma_max_sq_ = pq_sigma_max_sq(h, hnf, nullptr);
  return c;
}

PlaneColoring PlaneColoring::lstar(int h, int p, ColoringKind kind, bool guard) {
  if (h < 1) throw std::invalid_argument("h must be positive");
  if (p < 1) throw std::invalid_argument("p must be positive");
  if (kind == ColoringKind::Pq) throw std::invalid_argument("lstar needs kind lstar3 or lstar6");
  PlaneColoring c;
  c.kind_ = kind;
  c.h_ = h;
  c.p_ = p;
  c.q_ = 0;
  c.guard_ = guard;
  const std::int64_t per_class = kind == ColoringKind::LStar3 ? 3 : 6;
  c.k_ = per_class * p * p + (guard ? 1 : 0);
  c.e_ = p;
  c.f_ = 0;
  c.g_ = p;
  c.lattice_ = shared_lattice(h);
  c.compute_sigma_max();
  return c;
}

std::int64_t PlaneColoring::tile_color(TileIndex t) const {
  if (kind_ == ColoringKind::Pq) {
    const std::int64_t i0 = mod_floor(t.i, e_);
    const std::int64_t m = floor_div(t.i, e_);
    return i0 * g_ + mod_floor(t.j - m * f_, g_) + 1;
  }
  const std::int64_t p = p_;
  const std::int64_t i0 = mod_floor(t.i, p);
  const std::int64_t j0 = mod_floor(t.j, p);
  const std::int64_t big_i = floor_div(t.i, p);
  const std::int64_t big_j = floor_div(t.j, p);
  const std::int64_t cls = i0 * p + (i0 % 2 == 0 ? j0 : p - 1 - j0);
  if (kind_ == ColoringKind::LStar3) return 3 * cls + mod_floor(big_i - big_j, 3) + 1;
  return 6 * cls + mod_floor(big_j + 3 * big_i, 6) + 1;
}

std::int64_t PlaneColoring::color(const Point& pt, int layer) const {
  return tile_color(lattice_->locate(pt, layer));
}

std::vector<std::int64_t> PlaneColoring::colors_at(const Point& pt) const {
  const Cell cell = lattice_->cell_of(pt);
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(b()));
  for (int r = 1; r <= b(); ++r) out.push_back(tile_color(lattice_->tile_of_cell(cell, r)));
  return out;
}

std::vector<TileIndex> PlaneColoring::fundamental_tiles() const {
  std::int64_t ni = e_, nj = g_;
  if (kind_ == ColoringKind::LStar3) {
    ni = 3 * p_;
    nj = 3 * p_;
  } else if (kind_ == ColoringKind::LStar6) {
    ni = 2 * p_;
    nj = 6 * p_;
  }
  std::vector<TileIndex> out;
  out.reserve(static_cast<std::size_t>(ni * nj));
  for (std::int64_t i = 0; i < ni; ++i) {
    for (std::int64_t j = 0; j < nj; ++j) out.push_back({i, j});
  }
  return out;
}

namespace {

bool consecutive(std::int64_t a, std::int64_t b, std::int64_t k) {
  return a - b == 1 || b - a == 1 || (std::min(a, b) == 1 && std::max(a, b) == k);
}

}  // namespace

void PlaneColoring::compute_sigma_max() {
  const std::vector<TileIndex> base = fundamental_tiles();
  for (std::int64_t radius = 2;; radius *= 2) {
    std::optional<Rational> same;
    std::optional<Rational> cons;
    std::unordered_map<TileIndex, Rational, TileIndexHash> gaps;
    const std::vector<TileIndex> offsets = offsets_within(h_, Rational(radius * radius));
    for (const TileIndex& t : base) {
      const std::int64_t c = tile_color(t);
      for (const TileIndex& d : offsets) {
        const std::int64_t c2 = tile_color(t + d);
        const bool is_same = c2 == c;
        if (!is_same && !consecutive(c, c2, k_)) continue;
        auto it = gaps.find(d);
        if (it == gaps.end()) it = gaps.emplace(d, tile_gap_sq(h_, d)).first;
        std::optional<Rational>& slot = is_same ? same : cons;
        if (!slot || it->second < *slot) slot = it->second;
      }
    }
    const Rational far((radius - 1) * (radius - 1));
    Rational value = far / 4;
    if (same) value = std::min(value, Rational(*same / 4));
    if (cons) value = std::min(value, *cons);
    // Unseen pairs are more than radius - 1 apart.
    if (value < far / 4) {
      value.canonicalize();
      sigma_max_sq_ = value;
      return;
    }
  }
}

namespace {

// ceil(h (2 sigma / sqrt3 + 1) + extra)
int ceil_lattice_param(int h, const Rational& sigma, int extra) {
  const ExactScalar value =
      ExactScalar(h) * (ExactScalar(0, Rational(2, 3)) * ExactScalar(sigma) + ExactScalar(1)) + ExactScalar(extra);
  return static_cast<int>(ceil(value));
}

void require_sigma(const Rational& sigma) {
  if (sigma < 1) throw std::invalid_argument("sigma must be at least 1");
}

}  // namespace

PlaneColoring hsq_coloring(int h, const Rational& sigma) {
  require_sigma(sigma);
  return PlaneColoring::pq(h, ceil_lattice_param(h, sigma, 0), 0);
}

int lstar_p(int h, const Rational& sigma) { return ceil_lattice_param(h, sigma, 1); }

PlaneColoring lstar_small_sigma(int h, const Rational& sigma) {
  require_sigma(sigma);
  // sigma <= 1 / (4 - 2 sqrt3)  <=>  sigma (4 - 2 sqrt3) <= 1
  if (ExactScalar(sigma) * ExactScalar(4, -2) > ExactScalar(1)) {
    throw std::invalid_argument("sigma exceeds 1/(4 - 2 sqrt3) for the 3-label construction");
  }
  return PlaneColoring::lstar(h, lstar_p(h, sigma), ColoringKind::LStar3);
}

PlaneColoring lstar_general(int h, const Rational& sigma) {
  require_sigma(sigma);
  return PlaneColoring::lstar(h, lstar_p(h, sigma), ColoringKind::LStar6);
}

PlaneColoring find_pq_base(int h, const Rational& sigma_sq) {
  if (sigma_sq < 1) throw std::invalid_argument("sigma must be at least 1");
  const Rational sigma_hi = sqrt_upper(ExactScalar(sigma_sq), 9);
  const std::int64_t p_max = ceil_lattice_param(h, sigma_hi, 0);
  const std::int64_t k_max = p_max * p_max;
  std::vector<std::tuple<std::int64_t, int, int>> candidates;
  for (int p = 0; static_cast<std::int64_t>(p) * p <= k_max; ++p) {
    for (int q = 0; static_cast<std::int64_t>(q) * q <= k_max; ++q) {
      if (p == 0 && q == 0) continue;
      const std::int64_t k = pq_color_count(p, q);
      if (k <= k_max) candidates.emplace_back(k, p, q);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  for (const auto& [k, p, q] : candidates) {
    // Skip k with 3k/4h^2 below sigma^2.
    if (ratio(3 * k, 4 * h * h) < sigma_sq) continue;
    if (pq_supports(h, color_lattice_hnf(p, q), sigma_sq)) return PlaneColoring::pq(h, p, q);
  }
  throw std::logic_error("no lattice coloring found");
}

namespace {

void fail(ValidationReport& report, int condition, TileIndex t1, TileIndex t2, std::int64_t c1, std::int64_t c2,
          const Rational& gap_sq, const std::string& what) {
  report.pass = false;
  report.condition = condition;
  report.t1 = t1;
  report.t2 = t2;
  report.c1 = c1;
  report.c2 = c2;
  report.gap_sq = gap_sq;
  std::ostringstream msg;
  msg << what << ": tiles (" << t1.i << "," << t1.j << ") and (" << t2.i << "," << t2.j << ") with colors " << c1
      << ", " << c2 << " have squared gap " << format_rational(gap_sq);
  report.message = msg.str();
}

bool diameter_is_one(const HexLattice& lattice) {
  const auto hex = lattice.hexagon({0, 0});
  ExactScalar best(0);
  for (std::size_t a = 0; a < hex.size(); ++a) {
    for (std::size_t b = a + 1; b < hex.size(); ++b) best = std::max(best, sq_dist(hex[a], hex[b]));
  }
  return best == ExactScalar(1);
}

void keep_min(std::optional<Rational>& slot, const Rational& value) {
  if (!slot || value < *slot) slot = value;
}

}  // namespace

ValidationReport validate_solid(const PlaneColoring& coloring, const Rational& sigma, std::uint64_t samples,
                                std::uint64_t seed) {
  require_sigma(sigma);
  ValidationReport report;
  if (!diameter_is_one(coloring.lattice())) {
    report.pass = false;
    report.condition = 5;
    report.message = "tile diameter is not 1";
    return report;
  }
  const Rational sigma_sq = sigma * sigma;
  const int h = coloring.h();
  std::unordered_map<TileIndex, Rational, TileIndexHash> gaps;
  const std::vector<TileIndex> offsets = offsets_within(h, search_radius_sq(sigma));
  for (const TileIndex& t : coloring.fundamental_tiles()) {
    const std::int64_t c = coloring.tile_color(t);
    for (const TileIndex& d : offsets) {
      ++report.pairs_checked;
      const std::int64_t c2 = coloring.tile_color(t + d);
      if (c2 != c) continue;
      auto it = gaps.find(d);
      if (it == gaps.end()) it = gaps.emplace(d, tile_gap_sq(h, d)).first;
      keep_min(report.min_same_gap_sq, it->second);
      if (it->second < sigma_sq && report.pass) fail(report, 2, t, t + d, c, c2, it->second, "same color closer than sigma");
    }
  }
  if (!report.pass) return report;

  // Layer colors at sampled points; coordinates on a 1/10^6 grid in [-3, 3]^2.
  std::mt19937_64 rng(seed);
  auto coord = [&rng]() { return ExactScalar(uniform_grid(rng, Rational(-3), Rational(3), 1'000'000)); };
  for (std::uint64_t s = 0; s < samples; ++s) {
    const Point pt{coord(), coord()};
    std::vector<std::int64_t> colors = coloring.colors_at(pt);
    std::sort(colors.begin(), colors.end());
    if (std::adjacent_find(colors.begin(), colors.end()) != colors.end()) {
      report.pass = false;
      report.condition = 1;
      report.message = "repeated color among the layers at (" + pt.x.to_string() + ", " + pt.y.to_string() + ")";
      return report;
    }
  }
  return report;
}

ValidationReport validate_lstar(const PlaneColoring& labeling, const Rational& sigma) {
  require_sigma(sigma);
  if (!labeling.is_labeling()) throw std::invalid_argument("validate_lstar needs an L* labeling");
  ValidationReport report;
  if (!diameter_is_one(labeling.lattice())) {
    report.pass = false;
    report.condition = 5;
    report.message = "tile diameter is not 1";
    return report;
  }
  const int h = labeling.h();
  const std::int64_t k = labeling.k();
  const Rational same_sq = 4 * sigma * sigma;
  const Rational cons_sq = sigma * sigma;
  const bool six = labeling.kind() == ColoringKind::LStar6;
  // Six-label layouts keep same labels at least 2 sigma + sqrt3/2 apart.
  const ExactScalar margin = ExactScalar(2 * sigma) + ExactScalar(0, Rational(1, 2));
  const ExactScalar margin_sq = margin * margin;
  std::unordered_map<TileIndex, Rational, TileIndexHash> gaps;
  const std::vector<TileIndex> offsets = offsets_within(h, search_radius_sq(2 * sigma + 1));
  for (const TileIndex& t : labeling.fundamental_tiles()) {
    const std::int64_t c = labeling.tile_color(t);
    for (const TileIndex& d : offsets) {
      ++report.pairs_checked;
      const std::int64_t c2 = labeling.tile_color(t + d);
      const bool is_same = c == c2;
      if (!is_same && !consecutive(c, c2, k)) continue;
      auto it = gaps.find(d);
      if (it == gaps.end()) it = gaps.emplace(d, tile_gap_sq(h, d)).first;
      const Rational& gap = it->second;
      if (is_same) {
        keep_min(report.min_same_gap_sq, gap);
        if (!report.pass) continue;
        if (gap < same_sq) {
          fail(report, 2, t, t + d, c, c2, gap, "same label closer than 2 sigma");
        } else if (six && ExactScalar(gap) < margin_sq) {
          fail(report, 6, t, t + d, c, c2, gap, "same label closer than 2 sigma + sqrt3/2");
        }
      } else {
        keep_min(report.min_consecutive_gap_sq, gap);
        if (report.pass && gap < cons_sq) {
          const bool wrap = std::abs(c - c2) != 1;
          fail(report, wrap ? 4 : 3, t, t + d, c, c2, gap,
               wrap ? "labels 1 and k closer than sigma" : "consecutive labels closer than sigma");
        }
      }
    }
  }
  return report;
}

std::vector<RecordRow> pq_records(int h_max, const Rational& sigma_limit) {
  std::vector<RecordRow> candidates;
  const Rational reach = (sigma_limit + 1) * (sigma_limit + 1);
  for (int h = 1; h <= h_max; ++h) {
    // sigma bound <= limit  <=>  3k / 4h^2 <= (limit + 1)^2
    const Rational k_cap = reach * 4 * h * h / 3;
    for (int p = 0; Rational(static_cast<long>(p) * p) <= k_cap; ++p) {
      for (int q = std::max(p, 1);; ++q) {
        const std::int64_t k = pq_color_count(p, q);
        if (Rational(k) > k_cap) break;
        const Rational sq = pq_sigma_max_sq(h, color_lattice_hnf(p, q), nullptr);
        if (sq < 1) continue;
        candidates.push_back({h, p, q, k, sq});
      }
    }
  }
  auto density = [](const RecordRow& r) { return ratio(r.k, static_cast<long>(r.h) * r.h); };
  std::vector<RecordRow> frontier;
  for (const RecordRow& a : candidates) {
    bool dominated = false;
    for (const RecordRow& b : candidates) {
      if (b.sigma_sq > a.sigma_sq && density(b) <= density(a)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) frontier.push_back(a);
  }
  std::sort(frontier.begin(), frontier.end(), [&](const RecordRow& l, const RecordRow& r) {
    if (l.sigma_sq != r.sigma_sq) return l.sigma_sq < r.sigma_sq;
    return std::make_tuple(l.h, l.p, l.q) < std::make_tuple(r.h, r.p, r.q);
  });
  return frontier;
}

void write_coloring(std::ostream& out, const PlaneColoring& coloring, bool with_table) {
  out << "h p q k b kind sigma_max\n";
  out << coloring.h() << ' ' << coloring.p() << ' ' << coloring.q() << ' ' << coloring.k() << ' ' << coloring.b()
      << ' ' << to_string(coloring.kind()) << ' '
      << format_rational(sqrt_lower(ExactScalar(coloring.sigma_max_sq()), 12)) << '\n';
  out << "# sigma_max rounded down, error < 1e-12; sigma_max^2 = " << format_rational(coloring.sigma_max_sq())
      << '\n';
  if (!with_table) return;
  out << "i j color\n";
  for (const TileIndex& t : coloring.fundamental_tiles()) {
    out << t.i << ' ' << t.j << ' ' << coloring.tile_color(t) << '\n';
  }
}

PlaneColoring read_coloring(std::istream& in) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    lines.push_back(line);
  }
  if (lines.size() < 2 || lines[0] != "h p q k b kind sigma_max") {
    throw std::runtime_error("coloring file: missing 'h p q k b kind sigma_max' header");
  }
  std::istringstream values(lines[1]);
  int h = 0, p = 0, q = 0, b = 0;
  std::int64_t k = 0;
  std::string kind_text, sigma_text;
  if (!(values >> h >> p >> q >> k >> b >> kind_text >> sigma_text)) {
    throw std::runtime_error("coloring file: malformed values line");
  }
  const ColoringKind kind = parse_coloring_kind(kind_text);
  std::optional<PlaneColoring> coloring;
  if (kind == ColoringKind::Pq) {
    coloring = PlaneColoring::pq(h, p, q);
  } else {
    const std::int64_t per_class = kind == ColoringKind::LStar3 ? 3 : 6;
    const std::int64_t base = per_class * p * p;
    if (k != base && k != base + 1) throw std::runtime_error("coloring file: label count does not match p");
    coloring = PlaneColoring::lstar(h, p, kind, k == base + 1);
  }
  if (coloring->k() != k || coloring->b() != b || coloring->q() != q) {
    throw std::runtime_error("coloring file: k or b does not match (h, p, q)");
  }
  if (lines.size() > 2) {
    if (lines[2] != "i j color") throw std::runtime_error("coloring file: expected 'i j color' table header");
    for (std::size_t n = 3; n < lines.size(); ++n) {
      std::istringstream row(lines[n]);
      TileIndex t;
      std::int64_t c = 0;
      if (!(row >> t.i >> t.j >> c)) throw std::runtime_error("coloring file: malformed table row " + lines[n]);
      if (coloring->tile_color(t) != c) throw std::runtime_error("coloring file: table disagrees at " + lines[n]);
    }
  }
  return *coloring;
}

}  // namespace hexfold
