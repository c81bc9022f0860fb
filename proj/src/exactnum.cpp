#include "hsm/exactnum.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace hsm {

std::string HalfInteger::to_string() const {
  return is_integer() ? std::to_string(twice / 2) : std::to_string(twice) + "/2";
}

Rat double_factorial(long n) {
  if (n < -1) throw std::domain_error("double_factorial: argument below -1");
  BigInt product = 1;
  for (long k = n; k > 1; k -= 2) product *= k;
  return Rat(product);
}

BigInt factorial(long n) {
  if (n < 0) throw std::domain_error("factorial: negative argument");
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

PiScalar gamma_exact(HalfInteger x) {
  if (x.twice <= 0) {
    throw std::domain_error("gamma_exact: argument must be positive, got " + x.to_string());
  }

  static std::mutex mutex;
  static std::map<long, PiScalar> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(x.twice); it != cache.end()) return it->second;
  }

  PiScalar value;
  if (x.is_integer()) {
    value = PiScalar(Rat(factorial(x.twice / 2 - 1)));
  } else {
    // Gamma(n + 1/2) = (2n-1)!! / 2^n * sqrt(pi)
    const long n = (x.twice - 1) / 2;
    Rat c = double_factorial(2 * n - 1);
    c /= rat_pow(Rat(2), static_cast<unsigned long>(n));
    value = PiScalar::term(c, 1);
  }

  std::lock_guard lock(mutex);
  return cache.emplace(x.twice, std::move(value)).first->second;
}

Rat pochhammer(const Rat& a, long n) {
  if (n < 0) throw std::domain_error("pochhammer: negative length");
  Rat out = 1;
  Rat factor = a;
  for (long k = 0; k < n; ++k) {
    out *= factor;
    factor += 1;
  }
  return out;
}

PiScalar beta_line_integral(int even_power, int half_power) {
  if (even_power < 0 || half_power < 0) {
    throw std::domain_error("beta_line_integral: negative exponent");
  }

  static std::mutex mutex;
  static std::map<std::pair<int, int>, PiScalar> cache;
  const std::pair key{even_power, half_power};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }

  const PiScalar numerator = gamma_exact(HalfInteger::plus_half(even_power)) *
                             gamma_exact(HalfInteger{half_power + 2});
  const PiScalar value = numerator / gamma_exact(HalfInteger{2 * even_power + half_power + 3});

  std::lock_guard lock(mutex);
  return cache.emplace(key, value).first->second;
}

PiScalar dirichlet_simplex_integral(std::span<const HalfInteger> exponents) {
  if (exponents.empty()) throw std::domain_error("dirichlet_simplex_integral: no exponents");
  PiScalar numerator(Rat(1));
  HalfInteger total = HalfInteger::integer(static_cast<long>(exponents.size()));
  for (const HalfInteger a : exponents) {
    if (a.twice <= -2) {
      throw std::domain_error("dirichlet_simplex_integral: exponent " + a.to_string() +
                              " is not above -1");
    }
    numerator *= gamma_exact(a + HalfInteger::integer(1));
    total = total + a;
  }
  return numerator / gamma_exact(total);
}

}  // namespace hsm
