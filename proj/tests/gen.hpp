#pragma once

// Seeded generators for property tests. Seeds are fixed so failures reproduce.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "orbicheck/int_matrix.hpp"
#include "orbicheck/rational.hpp"

namespace gen {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long long integer(long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng_);
  }
  bool coin() { return integer(0, 1) == 1; }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(integer(0, static_cast<long long>(n) - 1)); }

  orbicheck::Rat rat(long long num_bound = 20, long long den_bound = 12) {
    return orbicheck::Rat(integer(-num_bound, num_bound), integer(1, den_bound));
  }

  // Product of random elementary operations; determinant +-1.
  orbicheck::IntMatrix unimodular(std::size_t n, int steps = 6) {
    orbicheck::IntMatrix m = orbicheck::IntMatrix::identity(n);
    for (int s = 0; s < steps; ++s) {
      std::size_t i = index(n), j = index(n);
      if (i == j) {
        for (std::size_t c = 0; c < n; ++c) m(i, c) = -m(i, c);
        continue;
      }
      long long k = integer(-2, 2);
      for (std::size_t c = 0; c < n; ++c) m(i, c) += k * m(j, c);
    }
    return m;
  }

  orbicheck::IntMatrix matrix(std::size_t rows, std::size_t cols, long long bound) {
    orbicheck::IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = integer(-bound, bound);
    return m;
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    std::shuffle(v.begin(), v.end(), rng_);
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace gen
