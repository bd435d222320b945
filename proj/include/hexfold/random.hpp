#pragma once

#include <cstdint>
#include <limits>
#include <random>

#include "hexfold/geometry.hpp"

namespace hexfold {

/// Generator identifier recorded in instance metadata.
inline constexpr const char* kRngName = "mt19937_64";

/// Uniform integer in [0, n] by rejection; depends only on the engine.
inline std::uint64_t uniform_upto(std::mt19937_64& rng, std::uint64_t n) {
  if (n == std::numeric_limits<std::uint64_t>::max()) return rng();
  const std::uint64_t span = n + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x;
  do x = rng(); while (x >= limit);
  return x % span;
}

/// lo + u / denom with u uniform in [0, floor((hi - lo) * denom)].
inline Rational uniform_grid(std::mt19937_64& rng, const Rational& lo, const Rational& hi, long denom) {
  const Rational span = (hi - lo) * denom;
  mpz_class steps;
  mpz_fdiv_q(steps.get_mpz_t(), span.get_num_mpz_t(), span.get_den_mpz_t());
  const std::uint64_t u = uniform_upto(rng, steps.get_ui());
  Rational out = lo + ratio(mpz_class(static_cast<unsigned long>(u)), mpz_class(denom));
  out.canonicalize();
  return out;
}

}  // namespace hexfold
