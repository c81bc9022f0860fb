#include "hsm/moments.hpp"

#include "hsm/bloore.hpp"
#include "hsm/exactnum.hpp"
#include "hsm/pi_scalar.hpp"

#include <array>
#include <cmath>

namespace hsm {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::real:
      return "real";
    case Family::complex:
      return "complex";
    case Family::quaternion:
      return "quaternion";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  if (name == "real") return Family::real;
  if (name == "complex") return Family::complex;
  if (name == "quaternion") return Family::quaternion;
  throw std::invalid_argument("unknown family '" + std::string(name) +
                              "' (expected real, complex or quaternion)");
}

Rat MomentVector::moment(int k) const {
  if (k == 0) return Rat(1);
  if (k < 0 || k > size()) throw std::out_of_range("moment order " + std::to_string(k) + " not available");
  return raw[static_cast<std::size_t>(k - 1)];
}

Interval pt_support() { return {make_rat(-1, 16), make_rat(1, 256)}; }
Interval det_support() { return {Rat(0), make_rat(1, 256)}; }

Rat assemble_moment(int m) {
  const EvenPoly intermediate = intermediate_table(m);

  // Substituting mu^{2j} = (r11 r44)^j (r22 r33)^{-j} leaves a Dirichlet
  // monomial in the four diagonal entries for every coefficient:
  //   (r22 r33)^{2m} (r11 r22 r33 r44)^{3/2} mu^{2j}.
  const std::array<HalfInteger, 4> base{HalfInteger::plus_half(1), HalfInteger::plus_half(1),
                                        HalfInteger::plus_half(1), HalfInteger::plus_half(1)};
  const PiScalar normalizer = dirichlet_simplex_integral(base);

  PiScalar total;
  for (int j = 0; j <= 2 * m; ++j) {
    const std::array<HalfInteger, 4> exponents{
        HalfInteger::plus_half(1 + j), HalfInteger::plus_half(1 + 2 * m - j),
        HalfInteger::plus_half(1 + 2 * m - j), HalfInteger::plus_half(1 + j)};
    total += dirichlet_simplex_integral(exponents) * intermediate.coefficient(j);
  }
  return (total / normalizer).rational();
}

Rat hs_det_moment(Family family, int m) {
  if (m < 0) throw std::invalid_argument("hs_det_moment: negative order");
  switch (family) {
    case Family::real: {
      // 2^{1-8m} (1)_m (3/2)_m / ((m+2) (11/4)_m (13/4)_m)
      Rat num = pochhammer(Rat(1), m) * pochhammer(make_rat(3, 2), m) * 2;
      Rat den = Rat(m + 2) * pochhammer(make_rat(11, 4), m) * pochhammer(make_rat(13, 4), m) *
                rat_pow(Rat(256), static_cast<unsigned long>(m));
      return Rat(num / den);
    }
    case Family::complex: {
      // 256^{-m} (1)_m (2)_m (3)_m / ((17/4)_m (9/2)_m (19/4)_m)
      Rat num = pochhammer(Rat(1), m) * pochhammer(Rat(2), m) * pochhammer(Rat(3), m);
      Rat den = pochhammer(make_rat(17, 4), m) * pochhammer(make_rat(9, 2), m) *
                pochhammer(make_rat(19, 4), m) * rat_pow(Rat(256), static_cast<unsigned long>(m));
      return Rat(num / den);
    }
    case Family::quaternion: {
      // C Gamma(m+1) Gamma(m+3) Gamma(m+5) Gamma(m+7) / Gamma(4m+28)
      const BigInt constant("315071454005160652800000", 10);
      const BigInt num = constant * factorial(m) * factorial(m + 2) * factorial(m + 4) * factorial(m + 6);
      return make_rat(num, factorial(4 * m + 27));
    }
  }
  throw std::invalid_argument("hs_det_moment: unknown family");
}

MomentVector pt_moment_vector(int max_order) {
  MomentVector mv{pt_support(), {}};
  for (int m = 1; m <= max_order; ++m) mv.raw.push_back(assemble_moment(m));
  return mv;
}

MomentVector det_moment_vector(Family family, int max_order) {
  MomentVector mv{det_support(), {}};
  for (int m = 1; m <= max_order; ++m) mv.raw.push_back(hs_det_moment(family, m));
  return mv;
}

DistributionSummary summarize(const MomentVector& mv) {
  if (mv.size() < 4) throw std::invalid_argument("summarize: needs at least four raw moments");
  const Rat m1 = mv.moment(1), m2 = mv.moment(2), m3 = mv.moment(3), m4 = mv.moment(4);

  DistributionSummary s;
  s.mean = m1;
  s.variance = m2 - m1 * m1;
  if (s.variance <= 0) throw DegenerateDistribution("summarize: variance is not positive");
  s.third_central = m3 - 3 * m1 * m2 + 2 * m1 * m1 * m1;
  s.fourth_central = m4 - 4 * m1 * m3 + 6 * m1 * m1 * m2 - 3 * m1 * m1 * m1 * m1;

  const double var = to_double(s.variance);
  s.skewness = to_double(s.third_central) / std::pow(var, 1.5);
  s.kurtosis = to_double(Rat(s.fourth_central / (s.variance * s.variance)));
  return s;
}

CantelliBound cantelli_upper_bound(const Rat& mean, const Rat& variance, const Rat& threshold) {
  if (variance <= 0) throw std::domain_error("cantelli_upper_bound: variance must be positive");
  const Rat t = threshold - mean;
  if (t <= 0) return {Rat(1), true};
  return {Rat(variance / (variance + t * t)), false};
}

RealInterval mode_interval(double mean, double variance) {
  if (!(variance > 0)) throw std::domain_error("mode_interval: variance must be positive");
  const double half_width = std::sqrt(3.0 * variance);
  return {mean - half_width, mean + half_width};
}

double mgf_eval(Family family, double t, int terms) {
  if (terms < 1) throw std::invalid_argument("mgf_eval: needs at least one term");
  double sum = 1.0;
  double t_power = 1.0;
  for (int k = 1; k <= terms; ++k) {
    t_power *= t;
    const Rat coefficient = hs_det_moment(family, k) / Rat(factorial(k));
    sum += to_double(coefficient) * t_power;
  }
  return sum;
}

Rat six_term_approximation(int m) {
  if (m < 3) throw std::invalid_argument("six_term_approximation: requires m >= 3");
  const Rat mm(m);
  const Rat sign(m % 2 == 0 ? 1 : -1);

  const Rat poly = mm * (2 * mm * (2 * mm * (2 * mm * (40 * mm * (6 * mm - 5) - 169) + 101) - 495) - 9) + 27;
  const Rat first = 945 * sign * poly / (2 * (16 * mm * mm * mm * mm - 40 * mm * mm + 9));

  // 256 Gamma(2m + 1/2)^2 / (pi Gamma(4m + 10))
  const PiScalar g = gamma_exact(HalfInteger::plus_half(2 * m));
  const PiScalar head = (g * g * Rat(256)) / (PiScalar::term(Rat(1), 2) * gamma_exact(HalfInteger::integer(4 * m + 10)));

  // 2^{-8m} Gamma(4m+8) / ((m+2)(4m+1)^2(4m+3)^2(4m+5)^2(4m+7)^2(4m+9) Gamma(2m+4)^2)
  const BigInt g2 = factorial(2 * m + 3);
  Rat tail_den = Rat(mm + 2) * rat_pow(4 * mm + 1, 2) * rat_pow(4 * mm + 3, 2) * rat_pow(4 * mm + 5, 2) *
                 rat_pow(4 * mm + 7, 2) * Rat(4 * mm + 9) * Rat(g2 * g2) *
                 rat_pow(Rat(256), static_cast<unsigned long>(m));
  const Rat tail = Rat(factorial(4 * m + 7)) / tail_den;

  return Rat(first * (head.rational() + tail));
}

Rat qubit_qutrit_first_moment() { return make_rat(1, 4496388); }
Rat qubit_qutrit_second_moment_ratio() { return make_rat(1, 1533939); }

}  // namespace hsm
