#include "hsm/exactnum.hpp"
#include "hsm/pi_scalar.hpp"
#include "hsm/rat.hpp"
#include "support.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

using namespace hsm;

namespace {

Rat product_oracle(long from, long to, long step) {
  Rat acc(1);
  for (long k = from; k <= to; k += step) acc *= k;
  return acc;
}

// Gamma by the recurrence Gamma(x+1) = x Gamma(x), anchored at Gamma(1) = 1 and
// Gamma(1/2) = sqrt(pi).
PiScalar gamma_by_recurrence(long twice) {
  PiScalar g = twice % 2 == 0 ? PiScalar(Rat(1)) : PiScalar::term(Rat(1), 1);
  for (long t = twice % 2 == 0 ? 2 : 1; t < twice; t += 2) g *= make_rat(t, 2);
  return g;
}

}  // namespace

TEST_CASE("rational arithmetic stays canonical") {
  const Rat r = make_rat(6, -4);
  CHECK(to_string(r) == "-3/2");
  CHECK(r.get_den() > 0);
  CHECK(to_string(make_rat(0, 7)) == "0");
  CHECK(parse_rat("10/4") == make_rat(5, 2));
  CHECK(parse_rat("-7") == Rat(-7));
  CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("abc"), std::invalid_argument);
  CHECK(from_double(0.375) == make_rat(3, 8));
  CHECK(rat_pow(make_rat(-2, 3), 3) == make_rat(-8, 27));
}

TEST_CASE("to_double rounds to nearest") {
  CHECK(to_double(make_rat(34, 125)) == 0.272);
  CHECK(to_double(make_rat(-1, 5)) == -0.2);
  CHECK(to_double(make_rat(1, 3)) == 1.0 / 3.0);
  CHECK(to_double(make_rat(1, 2489344)) == 1.0 / 2489344.0);
  CHECK(to_double(Rat(0)) == 0.0);
  CHECK(to_double(Rat(BigInt(1) << 80)) == std::ldexp(1.0, 80));
  // 2^53 + 1 is a tie between 2^53 and 2^53 + 2; ties go to even.
  CHECK(to_double(Rat((BigInt(1) << 53) + 1)) == std::ldexp(1.0, 53));
  CHECK(to_double(Rat((BigInt(1) << 53) + 3)) == std::ldexp(1.0, 53) + 4);
}

TEST_CASE("property: to_double matches correctly rounded division") {
  testing::Gen gen(2);
  for (int i = 0; i < 2000; ++i) {
    const long num = gen.integer(-(1L << 40), 1L << 40);
    const long den = gen.integer(1, 1L << 20);
    // Both operands are exact doubles, so IEEE division is correctly rounded.
    CHECK(to_double(make_rat(num, den)) == static_cast<double>(num) / static_cast<double>(den));
  }
}

TEST_CASE("property: rational round trips are exact") {
  testing::Gen gen(11);
  for (int i = 0; i < 500; ++i) {
    const Rat a = gen.rational();
    const Rat b = gen.nonzero_rational();
    CHECK((a + b) - b == a);
    CHECK((a * b) / b == a);
    CHECK(parse_rat(to_string(a)) == a);
  }
}

TEST_CASE("double_factorial") {
  CHECK(double_factorial(-1) == 1);
  CHECK(double_factorial(0) == 1);
  CHECK(double_factorial(5) == 15);
  CHECK(double_factorial(9) == product_oracle(1, 9, 2));
  CHECK(double_factorial(10) == product_oracle(2, 10, 2));
  CHECK_THROWS_AS(double_factorial(-2), std::domain_error);
}

TEST_CASE("gamma_exact at integers and half-integers") {
  CHECK(gamma_exact(HalfInteger::integer(4)) == PiScalar(Rat(6)));
  CHECK(gamma_exact(HalfInteger{5}) == PiScalar::term(make_rat(3, 4), 1));
  CHECK(gamma_exact(HalfInteger{15}) == PiScalar::term(make_rat(135135, 128), 1));
  CHECK(gamma_exact(HalfInteger{15}) == gamma_by_recurrence(15));
  CHECK(gamma_exact(HalfInteger{1}).to_double() == doctest::Approx(std::sqrt(std::numbers::pi)));
  CHECK_THROWS_AS(gamma_exact(HalfInteger{0}), std::domain_error);
  CHECK_THROWS_AS(gamma_exact(HalfInteger{-3}), std::domain_error);
}

TEST_CASE("property: gamma recurrence on (0, 20]") {
  for (long twice = 1; twice <= 40; ++twice) {
    const HalfInteger x{twice};
    CHECK(gamma_exact(x + HalfInteger::integer(1)) == gamma_exact(x) * x.value());
    CHECK(std::lgamma(twice / 2.0) == doctest::Approx(std::log(gamma_exact(x).to_double())).epsilon(1e-12));
  }
}

TEST_CASE("pochhammer") {
  CHECK(pochhammer(make_rat(3, 2), 0) == 1);
  CHECK(pochhammer(make_rat(11, 4), 1) == make_rat(11, 4));
  CHECK(pochhammer(make_rat(1, 2), 3) == make_rat(1, 2) * make_rat(3, 2) * make_rat(5, 2));
  CHECK(pochhammer(make_rat(1, 2), 3) == make_rat(15, 8));
  CHECK(pochhammer(Rat(1), 6) == 720);
}

TEST_CASE("beta_line_integral") {
  CHECK(beta_line_integral(0, 0) == PiScalar(Rat(2)));
  CHECK(beta_line_integral(0, 1) == PiScalar::term(make_rat(1, 2), 2));
  // z^2 (1 - z^2) integrates to [z^3/3 - z^5/5] over [-1, 1].
  CHECK(beta_line_integral(1, 2) == PiScalar(2 * (make_rat(1, 3) - make_rat(1, 5))));
  for (int p = 0; p <= 10; ++p) CHECK(beta_line_integral(p, 0) == PiScalar(make_rat(2, 2 * p + 1)));
}

TEST_CASE("property: beta_line_integral agrees with quadrature") {
  for (int p = 0; p <= 4; ++p) {
    for (int q = 0; q <= 5; ++q) {
      const int n = 200000;
      double sum = 0;
      for (int i = 0; i < n; ++i) {
        const double z = -1 + (i + 0.5) * 2.0 / n;
        sum += std::pow(z, 2 * p) * std::pow(1 - z * z, q / 2.0);
      }
      CHECK(beta_line_integral(p, q).to_double() == doctest::Approx(sum * 2.0 / n).epsilon(1e-5));
    }
  }
}

TEST_CASE("dirichlet_simplex_integral") {
  const std::array<HalfInteger, 4> zero{};
  CHECK(dirichlet_simplex_integral(zero) == PiScalar(make_rat(1, 6)));

  const std::array<HalfInteger, 4> three_halves{HalfInteger{3}, HalfInteger{3}, HalfInteger{3}, HalfInteger{3}};
  CHECK(dirichlet_simplex_integral(three_halves) == PiScalar::term(make_rat(81, 256) / 362880, 4));

  const std::array<HalfInteger, 4> mixed{HalfInteger{5}, HalfInteger{3}, HalfInteger{3}, HalfInteger{5}};
  const PiScalar g72 = gamma_exact(HalfInteger{7});
  const PiScalar g52 = gamma_exact(HalfInteger{5});
  // Exponent sum 8 over four variables: Gamma(8 + 4) in the denominator.
  CHECK(dirichlet_simplex_integral(mixed) == g72 * g72 * g52 * g52 / gamma_exact(HalfInteger::integer(12)));

  const std::array<HalfInteger, 4> bad{HalfInteger{-2}, HalfInteger{}, HalfInteger{}, HalfInteger{}};
  CHECK_THROWS_AS(dirichlet_simplex_integral(bad), std::domain_error);
}

TEST_CASE("property: integer-exponent simplex integrals match iterated sums") {
  // Brute-force iterated integration: midpoint rule over the 3-simplex
  // x1 + x2 + x3 <= 1 with x4 = 1 - x1 - x2 - x3.
  testing::Gen gen(5);
  for (int trial = 0; trial < 6; ++trial) {
    std::array<long, 4> a{};
    for (auto& e : a) e = gen.integer(0, 2);
    const int n = 60;
    const double h = 1.0 / n;
    double sum = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n - i; ++j) {
        for (int k = 0; k < n - i - j; ++k) {
          const double x1 = (i + 0.5) * h, x2 = (j + 0.5) * h, x3 = (k + 0.5) * h;
          const double x4 = 1 - x1 - x2 - x3;
          if (x4 <= 0) continue;
          sum += std::pow(x1, a[0]) * std::pow(x2, a[1]) * std::pow(x3, a[2]) * std::pow(x4, a[3]);
        }
      }
    }
    const std::array<HalfInteger, 4> exps{HalfInteger::integer(a[0]), HalfInteger::integer(a[1]),
                                          HalfInteger::integer(a[2]), HalfInteger::integer(a[3])};
    const PiScalar exact = dirichlet_simplex_integral(exps);
    CHECK(exact.is_rational());
    CHECK(exact.to_double() == doctest::Approx(sum * h * h * h).epsilon(0.08));
  }
}

TEST_CASE("property: PiScalar ring laws") {
  testing::Gen gen(23);
  auto random_scalar = [&] {
    PiScalar s;
    const long terms = gen.integer(1, 3);
    for (long t = 0; t < terms; ++t) s += PiScalar::term(gen.rational(50), static_cast<int>(gen.integer(-4, 4)));
    return s;
  };
  for (int i = 0; i < 200; ++i) {
    const PiScalar a = random_scalar(), b = random_scalar(), c = random_scalar();
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) - b == a);
    CHECK((a * b) == (b * a));
  }
  const PiScalar x = PiScalar::term(make_rat(3, 5), 3);
  const PiScalar y = PiScalar::term(make_rat(2, 7), -1);
  CHECK((x * y).is_monomial());
  CHECK((x * y).coefficient(2) == make_rat(6, 35));
  CHECK((x - x).is_zero());
  CHECK(PiScalar(Rat(4)).rational() == 4);
  CHECK_THROWS_AS(x.rational(), std::domain_error);
}
