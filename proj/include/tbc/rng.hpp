#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tbc/permutation.hpp"

namespace tbc {

/// Seeded generator. Bounded draws use rejection sampling on the raw 64-bit
/// stream so results do not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound); bound must be nonzero.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % bound;
  }

  bool coin() { return (engine_() >> 63) != 0; }

  /// Fisher-Yates shuffle of 0..n-1 with the first `fixed` points kept in place.
  std::vector<Point> permutation_images(std::size_t n, std::size_t fixed = 0) {
    std::vector<Point> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<Point>(i);
    for (std::size_t i = n; i > fixed + 1; --i) {
      const std::size_t j = fixed + below(i - fixed);
      std::swap(p[i - 1], p[j]);
    }
    return p;
  }

  Permutation permutation(std::size_t n, std::size_t fixed = 0) {
    return Permutation::from_images_unchecked(permutation_images(n, fixed));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tbc
