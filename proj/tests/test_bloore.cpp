#include "hsm/bloore.hpp"
#include "hsm/exactnum.hpp"
#include "support.hpp"

#include <Eigen/Dense>
#include <doctest.h>

#include <cmath>

using namespace hsm;

namespace {

CorrelationPoint random_point(testing::Gen& gen, double mu = 1.0) {
  return {gen.uniform(-1, 1), gen.uniform(-1, 1), gen.uniform(-1, 1),
          gen.uniform(-1, 1), gen.uniform(-1, 1), gen.uniform(-1, 1), mu};
}

Eigen::Matrix4d correlation_matrix(const Correlations<double>& z) {
  Eigen::Matrix4d c;
  c << 1, z.ij, z.ik, z.il,
       z.ij, 1, z.jk, z.jl,
       z.ik, z.jk, 1, z.kl,
       z.il, z.jl, z.kl, 1;
  return c;
}

}  // namespace

TEST_CASE("eval_P at fixed points") {
  CHECK(eval_P(Correlations<double>{0, 0, 0, 0, 0, 0}, 1.0) == 1.0);
  CHECK(eval_P(Correlations<double>{0, 0, 0, 0, 0, 1}, 1.0) == 0.0);
  CHECK(eval_P(Correlations<double>{0, 1, 0, 0, 0, 0}, 0.0) == -1.0);
  // Exact instantiation agrees with the float one.
  const Correlations<Rat> zr{make_rat(1, 3), make_rat(-1, 5), make_rat(2, 7), make_rat(1, 2), make_rat(-3, 4),
                             make_rat(1, 9)};
  const Correlations<double> zd{1.0 / 3, -0.2, 2.0 / 7, 0.5, -0.75, 1.0 / 9};
  CHECK(to_double(eval_P(zr, make_rat(3, 2))) == doctest::Approx(eval_P(zd, 1.5)).epsilon(1e-14));
}

TEST_CASE("property: P is the partial-transpose determinant up to (r22 r33)^2") {
  // Oracle: build a real two-qubit matrix from diagonal entries and correlations,
  // transpose the second factor, and take the determinant with Eigen.
  testing::Gen gen(101);
  for (int trial = 0; trial < 300; ++trial) {
    const CorrelationPoint p = random_point(gen);
    const Correlations<double> z = correlations_from_partials(p);
    Eigen::Vector4d d;
    for (int i = 0; i < 4; ++i) d[i] = gen.uniform(0.05, 1.0);
    d /= d.sum();
    Eigen::Matrix4d rho = correlation_matrix(z);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) rho(a, b) *= std::sqrt(d[a] * d[b]);
    Eigen::Matrix4d pt = rho;
    std::swap(pt(0, 3), pt(1, 2));
    std::swap(pt(3, 0), pt(2, 1));
    const double mu = std::sqrt(d[0] * d[3] / (d[1] * d[2]));
    const double scale = d[1] * d[2] * d[1] * d[2];
    CHECK(pt.determinant() == doctest::Approx(scale * eval_P(z, mu)).epsilon(1e-9).scale(1e-6));
  }
}

TEST_CASE("vine transform") {
  CorrelationPoint zero{};
  const auto z0 = correlations_from_partials(zero);
  CHECK(z0.ik == 0.0);
  CHECK(z0.jl == 0.0);
  CHECK(z0.il == 0.0);

  CorrelationPoint edge{};
  edge.ij = 1;
  edge.jk = 1;
  CHECK(correlations_from_partials(edge).ik == 1.0);
}

TEST_CASE("property: vine images are valid correlation matrices") {
  testing::Gen gen(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const Correlations<double> z = correlations_from_partials(random_point(gen));
    for (double v : {z.ij, z.jk, z.kl, z.ik, z.jl, z.il}) {
      CHECK(std::abs(v) <= 1.0 + 1e-12);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(correlation_matrix(z));
    CHECK(es.eigenvalues().minCoeff() >= -1e-12);
  }
}

TEST_CASE("jacobian") {
  CHECK(jacobian(CorrelationPoint{}) == 1.0);
  CorrelationPoint p{};
  p.ij = 0.5;
  CHECK(jacobian(p) == doctest::Approx(0.75));
  for (int c = 0; c < 5; ++c) {
    CorrelationPoint q{0.3, -0.2, 0.1, 0.4, -0.6, 0.7, 1.0};
    double* coords[] = {&q.ij, &q.jk, &q.kl, &q.ik_j, &q.jl_k};
    *coords[c] = c % 2 == 0 ? 1.0 : -1.0;
    CHECK(jacobian(q) == 0.0);
  }
  CorrelationPoint last{0.3, -0.2, 0.1, 0.4, -0.6, 1.0, 1.0};
  CHECK(jacobian(last) > 0.0);

  testing::Gen gen(3);
  for (int trial = 0; trial < 1000; ++trial) CHECK(jacobian(random_point(gen)) >= 0.0);
}

TEST_CASE("derive_intermediate_exact reproduces the low-order tables") {
  CHECK(derive_intermediate_exact(0) == EvenPoly(0, {Rat(1)}));
  const EvenPoly i1 = derive_intermediate_exact(1);
  CHECK(i1 == EvenPoly(1, {make_rat(-1, 5), make_rat(34, 125), make_rat(-1, 5)}));
  CHECK(i1 == intermediate_table(1));
  const EvenPoly i2 = derive_intermediate_exact(2);
  CHECK(i2 == EvenPoly(2, {make_rat(3, 35), make_rat(-12, 875), make_rat(20898, 42875), make_rat(-12, 875),
                           make_rat(3, 35)}));
  CHECK(i2 == intermediate_table(2));
}

TEST_CASE("derive_intermediate_exact respects the term guard") {
  CHECK_THROWS_AS(derive_intermediate_exact(2, 50), CapacityError);
  CHECK_THROWS_AS(derive_intermediate_exact(-1), std::invalid_argument);
}

TEST_CASE("coefficient_C") {
  CHECK(coefficient_C(0, 1) == make_rat(-1, 5));
  CHECK(coefficient_C(1, 1) == make_rat(34, 125));
  CHECK(coefficient_C(3, 2) == make_rat(-12, 875));
  CHECK_THROWS_AS(coefficient_C(4, 5), UnsupportedOrder);
}

TEST_CASE("property: closed-form coefficients match the tables") {
  for (int m = 1; m <= kMaxTabulatedOrder; ++m) {
    const EvenPoly table = intermediate_table(m);
    for (int j = 0; j <= std::min(3, 2 * m); ++j) {
      CAPTURE(m);
      CAPTURE(j);
      CHECK(coefficient_C(j, m) == table.coefficient(j));
      CHECK(coefficient_C(j, m) == table.coefficient(2 * m - j));
    }
  }
}

TEST_CASE("property: coefficient numerators and denominators") {
  for (int j = 1; j <= 3; ++j) CHECK(coefficient_C_numerator(j, 0) == 0);
  CHECK(coefficient_C_numerator(3, 1) == 0);
  for (int m = 1; m <= 12; ++m) {
    for (int j = 0; j <= 3; ++j) {
      CHECK(coefficient_C_denominator(j, m) == pochhammer(make_rat(1 - 2 * j, 2) + m, j + 2));
      CHECK(coefficient_C(j, m) == coefficient_C_numerator(j, m) / coefficient_C_denominator(j, m));
    }
  }
}

TEST_CASE("intermediate tables") {
  CHECK(intermediate_table(4).coefficient(8) == make_rat(1, 33));
  CHECK(intermediate_table(9).coefficient(0) == make_rat(-1, 133));
  CHECK(intermediate_table(0) == EvenPoly(0, {Rat(1)}));
  CHECK_THROWS_AS(intermediate_table(10), UnsupportedOrder);
  CHECK_THROWS_AS(intermediate_table(-1), UnsupportedOrder);
}

TEST_CASE("property: every table is palindromic with alternating constant term") {
  for (int m = 0; m <= kMaxTabulatedOrder; ++m) {
    const EvenPoly p = intermediate_table(m);
    CHECK(p.is_palindromic());
    CHECK(static_cast<int>(p.coefficients().size()) == 2 * m + 1);
    CHECK(sign(p.coefficient(0)) == (m % 2 == 0 ? 1 : -1));
    for (int j = 0; j <= 2 * m; ++j) CHECK(p.coefficient(j) == p.coefficient(2 * m - j));
  }
}

TEST_CASE("coefficient records round-trip and report line numbers") {
  const auto records = parse_coefficient_records(intermediate_table_text());
  CHECK(parse_coefficient_records(format_coefficient_records(records)).size() == records.size());
  for (int m = 1; m <= kMaxTabulatedOrder; ++m) CHECK(complete_from_records(m, records) == intermediate_table(m));

  const std::string bad = "# hsmoments intermediate-coefficients v1\n1 0 -1 5\n1 1 34 oops\n";
  try {
    parse_coefficient_records(bad);
    FAIL("expected a parse failure");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS(parse_coefficient_records("1 0 -1 5\n"));
  // An asymmetric record set is rejected instead of silently completed.
  const std::string asym = "# hsmoments intermediate-coefficients v1\n1 0 -1 5\n1 1 34 125\n1 2 1 5\n";
  CHECK_THROWS(complete_from_records(1, parse_coefficient_records(asym)));
}

TEST_CASE("Monte Carlo cube integral agrees with the exact polynomials") {
  struct Case {
    int m;
    double mu;
  };
  for (const Case c : {Case{1, 1.0}, Case{2, 0.5}, Case{1, 2.0}}) {
    const Rat exact = intermediate_table(c.m).evaluate(from_double(c.mu));
    const McEstimate est = mc_intermediate_check(c.m, c.mu, 1'000'000, 2024 + c.m);
    CAPTURE(c.m);
    CAPTURE(c.mu);
    CHECK(std::abs(est.estimate - to_double(exact)) <= 4 * est.std_error);
  }
  CHECK(to_double(intermediate_table(1).evaluate(Rat(1))) == doctest::Approx(-16.0 / 125));
  // -1/5 + (34/125) 4 - (1/5) 16
  CHECK(intermediate_table(1).evaluate(Rat(2)) == make_rat(-289, 125));
}
