#include "hsm/bloore.hpp"

#include "hsm/exactnum.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <optional>
#include <sstream>

namespace hsm {

namespace detail {
extern const std::string_view kIntermediateCoefficientTable;
}

namespace {

constexpr std::string_view kTableHeader = "# hsmoments intermediate-coefficients v1";

double root(double z) { return std::sqrt(std::max(0.0, 1.0 - z * z)); }

bool in_unit(double z) { return z >= -1.0 && z <= 1.0; }

// 27 / (32 pi^2): makes the cube integral of J equal to one.
PiScalar cube_normalization() { return PiScalar::term(make_rat(27, 32), -4); }

}  // namespace

bool CorrelationPoint::valid() const {
  return in_unit(ij) && in_unit(jk) && in_unit(kl) && in_unit(ik_j) && in_unit(jl_k) &&
         in_unit(il_jk) && mu > 0;
}

Correlations<double> correlations_from_partials(const CorrelationPoint& p) {
  const VineValues<double> v{p.ij,      p.jk,      p.kl,        p.ik_j,        p.jl_k,       p.il_jk,
                             root(p.ij), root(p.jk), root(p.kl), root(p.ik_j), root(p.jl_k)};
  return vine_to_correlations(v);
}

double eval_P_tilde(const CorrelationPoint& p) { return eval_P(correlations_from_partials(p), p.mu); }

double jacobian(const CorrelationPoint& p) {
  return (1 - p.ij * p.ij) * (1 - p.jk * p.jk) * (1 - p.kl * p.kl) * root(p.ik_j) * root(p.jl_k);
}

SparseMonomialSum symbolic_P_tilde() {
  using S = SparseMonomialSum;
  const VineValues<S> v{S::variable(VineCoord::ij),   S::variable(VineCoord::jk),
                        S::variable(VineCoord::kl),   S::variable(VineCoord::ik_j),
                        S::variable(VineCoord::jl_k), S::variable(VineCoord::il_jk),
                        S::root(VineCoord::ij),       S::root(VineCoord::jk),
                        S::root(VineCoord::kl),       S::root(VineCoord::ik_j),
                        S::root(VineCoord::jl_k)};
  return eval_P(vine_to_correlations(v), S::mu());
}

SparseMonomialSum symbolic_jacobian() {
  Monomial m;
  m.root_power = {2, 2, 2, 1, 1, 0};
  SparseMonomialSum out;
  out.add(m, Rat(1));
  return out;
}

EvenPoly derive_intermediate_exact(int m, std::size_t term_limit) {
  if (m < 0) throw std::invalid_argument("derive_intermediate_exact: negative order");

  SparseMonomialSum integrand = symbolic_jacobian();
  if (m > 0) {
    const SparseMonomialSum p_tilde = symbolic_P_tilde();
    for (int k = 0; k < m; ++k) {
      integrand = integrand.multiply(p_tilde, k == m - 1, term_limit);
    }
  }

  // Each factor of the cube integral is a single-grade PiScalar, so a
  // monomial integrates to (rational, grade); accumulate per (mu power, grade).
  std::map<std::pair<int, int>, Rat> sums;
  for (const auto& [mono, coef] : integrand.terms()) {
    if (!mono.survives_integration()) continue;
    Rat value = coef;
    int grade = 0;
    for (std::size_t v = 0; v < kVineCoords; ++v) {
      const PiScalar factor = beta_line_integral(mono.power[v] / 2, mono.root_power[v]);
      const auto& [g, c] = *factor.terms().begin();
      value *= c;
      grade += g;
    }
    sums[{mono.mu_power, grade}] += value;
  }

  std::vector<PiScalar> by_mu_power(static_cast<std::size_t>(4 * m + 1));
  for (const auto& [key, value] : sums) {
    const auto [mu_power, grade] = key;
    if (mu_power > 4 * m) throw std::logic_error("mu power exceeds 4m");
    by_mu_power[static_cast<std::size_t>(mu_power)] += PiScalar::term(value, grade);
  }

  std::vector<Rat> coeffs;
  coeffs.reserve(static_cast<std::size_t>(2 * m + 1));
  for (int power = 0; power <= 4 * m; ++power) {
    const PiScalar scaled = by_mu_power[static_cast<std::size_t>(power)] * cube_normalization();
    const Rat c = scaled.rational();
    if (power % 2 == 1) {
      if (c != 0) throw std::domain_error("odd power of mu survived the cube integration");
      continue;
    }
    coeffs.push_back(c);
  }
  return EvenPoly(m, std::move(coeffs));
}

Rat coefficient_C_numerator(int j, int m) {
  const Rat mm(m);
  const Rat sign(m % 2 == 0 ? 1 : -1);
  switch (j) {
    case 0:
      return sign * make_rat(3, 4);
    case 1:
      return Rat(sign * 3 * mm * (2 * mm * (4 * mm - 5) - 15) / 100);
    case 2:
      return Rat(sign * 3 * mm *
                 (2 * mm * (2 * mm * (2 * mm * (8 * mm * (6 * mm - 7) + 155) - 13) - 1017) - 315) /
                 19600);
    case 3:
      return Rat(sign * (mm - 1) * mm *
                 (4 * mm *
                      (2 * mm *
                           (2 * mm * (mm * (4 * mm * (20 * mm * (4 * mm - 11) + 173) - 4303) + 4733) +
                            14911) -
                       9165) -
                  4725) /
                 529200);
    default:
      throw UnsupportedOrder("coefficient_C: closed forms exist for j = 0..3 only, got j = " +
                             std::to_string(j));
  }
}

Rat coefficient_C_denominator(int j, int m) {
  if (j < 0) throw UnsupportedOrder("coefficient_C: negative j");
  Rat out = 1;
  for (int k = -2; k <= 2 * j; k += 2) out *= Rat(m) + make_rat(1 - k, 2);
  return out;
}

Rat coefficient_C(int j, int m) {
  if (j < 0 || j > kMaxClosedFormCoefficient) {
    throw UnsupportedOrder("coefficient_C: closed forms exist for j = 0..3 only, got j = " +
                           std::to_string(j));
  }
  if (m < 0) throw UnsupportedOrder("coefficient_C: negative order");
  return Rat(coefficient_C_numerator(j, m) / coefficient_C_denominator(j, m));
}

std::vector<CoefficientRecord> parse_coefficient_records(std::string_view text) {
  std::vector<CoefficientRecord> records;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      if (line != kTableHeader) {
        throw std::runtime_error("coefficient table line 1: expected header '" +
                                 std::string(kTableHeader) + "'");
      }
      saw_header = true;
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    CoefficientRecord rec;
    std::string num, den, extra;
    if (!(fields >> rec.m >> rec.j >> num >> den) || (fields >> extra)) {
      throw std::runtime_error("coefficient table line " + std::to_string(line_no) +
                               ": expected 'm j numerator denominator'");
    }
    try {
      rec.value = parse_rat(num + "/" + den);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("coefficient table line " + std::to_string(line_no) + ": " + e.what());
    }
    if (rec.m < 0 || rec.j < 0 || rec.j > 2 * rec.m) {
      throw std::runtime_error("coefficient table line " + std::to_string(line_no) +
                               ": index j outside 0..2m");
    }
    records.push_back(std::move(rec));
  }
  if (!saw_header) throw std::runtime_error("coefficient table: empty input");
  return records;
}

std::string format_coefficient_records(const std::vector<CoefficientRecord>& records) {
  std::ostringstream os;
  os << kTableHeader << "\n# fields: m j numerator denominator\n";
  for (const auto& r : records) {
    os << r.m << ' ' << r.j << ' ' << r.value.get_num().get_str() << ' '
       << r.value.get_den().get_str() << '\n';
  }
  return os.str();
}

EvenPoly complete_from_records(int m, const std::vector<CoefficientRecord>& records) {
  if (m == 0) return EvenPoly(0, {Rat(1)});
  std::vector<std::optional<Rat>> slots(static_cast<std::size_t>(2 * m + 1));
  const auto place = [&](int j, const Rat& value) {
    auto& slot = slots[static_cast<std::size_t>(j)];
    if (slot && *slot != value) {
      throw std::runtime_error("coefficient table: inconsistent entries for m=" + std::to_string(m) +
                               ", j=" + std::to_string(j));
    }
    slot = value;
  };
  for (const auto& r : records) {
    if (r.m != m) continue;
    place(r.j, r.value);
    place(2 * m - r.j, r.value);
  }
  std::vector<Rat> coeffs;
  coeffs.reserve(slots.size());
  for (std::size_t j = 0; j < slots.size(); ++j) {
    if (!slots[j]) {
      throw UnsupportedOrder("coefficient table: missing m=" + std::to_string(m) +
                             ", j=" + std::to_string(j));
    }
    coeffs.push_back(*slots[j]);
  }
  return EvenPoly(m, std::move(coeffs));
}

std::string_view intermediate_table_text() { return detail::kIntermediateCoefficientTable; }

EvenPoly intermediate_table(int m) {
  if (m < 0 || m > kMaxTabulatedOrder) {
    throw UnsupportedOrder("intermediate_table: supported orders are 0..9, got " + std::to_string(m));
  }
  static const std::vector<CoefficientRecord> records =
      parse_coefficient_records(intermediate_table_text());
  return complete_from_records(m, records);
}

McEstimate mc_intermediate_check(int m, double mu, std::int64_t n, std::uint64_t seed) {
  if (m < 0 || n < 2 || !(mu > 0)) throw std::invalid_argument("mc_intermediate_check: bad arguments");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double mean = 0, m2 = 0;
  for (std::int64_t s = 0; s < n; ++s) {
    CorrelationPoint p{unit(rng), unit(rng), unit(rng), unit(rng), unit(rng), unit(rng), mu};
    const double x = jacobian(p) * std::pow(eval_P_tilde(p), m);
    // Welford update
    const double delta = x - mean;
    mean += delta / double(s + 1);
    m2 += delta * (x - mean);
  }
  const double scale = 27.0 / (32.0 * std::numbers::pi * std::numbers::pi) * 64.0;
  const double variance = m2 / double(n - 1);
  return {scale * mean, scale * std::sqrt(variance / double(n))};
}

}  // namespace hsm
