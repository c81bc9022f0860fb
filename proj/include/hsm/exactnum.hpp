#pragma once

// Exact factorial-family values and the two closed-form integral families
// used by the moment pipeline:
//   line integrals   int_{-1}^{1} z^{2p} (1 - z^2)^{q/2} dz
//   simplex integrals int_{sum x = 1} prod x_i^{a_i} dx
// Gamma at half-integers carries a sqrt(pi), so results are PiScalar.

#include "hsm/pi_scalar.hpp"
#include "hsm/rat.hpp"

#include <compare>
#include <span>
#include <string>
#include <vector>

namespace hsm {

/// A number n/2 with integer n.
struct HalfInteger {
  long twice = 0;

  static constexpr HalfInteger integer(long n) { return HalfInteger{2 * n}; }
  /// n + 1/2
  static constexpr HalfInteger plus_half(long n) { return HalfInteger{2 * n + 1}; }

  constexpr bool is_integer() const { return twice % 2 == 0; }
  Rat value() const { return make_rat(twice, 2); }
  std::string to_string() const;

  friend constexpr HalfInteger operator+(HalfInteger a, HalfInteger b) { return {a.twice + b.twice}; }
  friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;
};

/// Monomial exponents for the simplex integrals; every entry must exceed -1.
using ExponentVector = std::vector<HalfInteger>;

/// n!! with (-1)!! = (0)!! = 1. Throws std::domain_error for n < -1.
Rat double_factorial(long n);

BigInt factorial(long n);

/// Gamma(x) for x > 0 with 2x integral. Integers give grade 0, half-integers
/// grade 1 (a single sqrt(pi)). Memoized; safe to call concurrently.
PiScalar gamma_exact(HalfInteger x);

/// Rising factorial a (a+1) ... (a+n-1). Throws std::domain_error for n < 0.
Rat pochhammer(const Rat& a, long n);

/// int_{-1}^{1} z^{2p} (1 - z^2)^{q/2} dz
///   = Gamma(p + 1/2) Gamma(q/2 + 1) / Gamma(p + q/2 + 3/2).
/// Odd powers of z integrate to zero and are the caller's business.
PiScalar beta_line_integral(int even_power, int half_power);

/// Dirichlet integral over the unit simplex {x_i >= 0, sum x_i = 1} of
/// prod x_i^{a_i}, measured in the first n-1 coordinates:
///   prod Gamma(a_i + 1) / Gamma(sum a_i + n).
PiScalar dirichlet_simplex_integral(std::span<const HalfInteger> exponents);

}  // namespace hsm
