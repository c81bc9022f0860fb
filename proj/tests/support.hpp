#pragma once

#include "hsm/rat.hpp"

#include <cstdint>
#include <random>

namespace hsm::testing {

// Hand-rolled generators for property tests. Fixed seeds keep failures reproducible.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  Rat rational(long bound = 1000) {
    long den = 0;
    while (den == 0) den = integer(-bound, bound);
    return make_rat(integer(-bound, bound), den);
  }

  Rat nonzero_rational(long bound = 1000) {
    Rat r;
    do {
      r = rational(bound);
    } while (r == 0);
    return r;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace hsm::testing
