#pragma once

// First integration stage. A 4x4 real state is written in Bloore form,
// rho_ab = z_ab sqrt(rho_aa rho_bb), and then
//     det(rho^PT) = (rho_22 rho_33)^2 * P(z, mu),   mu = sqrt(rho_11 rho_44 / (rho_22 rho_33)).
// Three of the six correlations are replaced by vine (partial) correlations so
// that the feasible correlation matrices fill the cube [-1, 1]^6. Integrating
// J * P^m over the cube yields the even polynomial I_m(mu).
//
// Index map: i, j, k, l = 1, 2, 3, 4.

#include "hsm/even_poly.hpp"
#include "hsm/monomial_sum.hpp"
#include "hsm/rat.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hsm {

class UnsupportedOrder : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

inline constexpr int kMaxTabulatedOrder = 9;
inline constexpr int kMaxClosedFormCoefficient = 3;

/// The six plain correlations of a 4x4 state.
template <class T>
struct Correlations {
  T ij, jk, kl, ik, jl, il;
};

/// Vine coordinates (z_ij, z_jk, z_kl, z_ik;j, z_jl;k, z_il;jk) and mu.
struct CorrelationPoint {
  double ij = 0, jk = 0, kl = 0, ik_j = 0, jl_k = 0, il_jk = 0;
  double mu = 1;

  bool valid() const;
};

/// Vine coordinates together with the square-root factors sqrt(1 - z^2) of
/// the first five; lets the same transform run numerically or symbolically.
template <class T>
struct VineValues {
  T ij, jk, kl, ik_j, jl_k, il_jk;
  T root_ij, root_jk, root_kl, root_ik_j, root_jl_k;
};

/// P(z, mu); a degree-4 polynomial in mu.
template <class T>
T eval_P(const Correlations<T>& z, const T& mu) {
  const T one(1);
  const T two(2);
  const T mu2 = mu * mu;
  const T bracket = (z.kl * z.kl - one) * z.ij * z.ij - two * (z.il * z.jk + z.ik * z.jl) * z.kl * z.ij +
                    z.il * z.il * z.jk * z.jk - z.jl * z.jl - z.kl * z.kl -
                    two * z.ik * z.il * z.jk * z.jl + z.ik * z.ik * (z.jl * z.jl - one) + one;
  const T il2 = z.il * z.il;
  return T(-(il2 * mu2 * mu2)) + two * z.il * (z.ij * z.ik + z.jl * z.kl) * mu2 * mu +
         two * z.jk * (z.ij * z.jl + z.ik * z.kl) * mu - z.jk * z.jk + mu2 * bracket;
}

/// Plain correlations from vine coordinates. The transform is written with
/// sqrt(z^2 - 1) = i sqrt(1 - z^2), so paired roots contribute a factor -1.
template <class T>
Correlations<T> vine_to_correlations(const VineValues<T>& v) {
  Correlations<T> z{v.ij, v.jk, v.kl, T(0), T(0), T(0)};
  z.ik = v.ij * v.jk - v.root_ij * v.root_jk * v.ik_j;
  z.jl = v.jk * v.kl - v.root_jk * v.root_kl * v.jl_k;
  z.il = v.ij * v.jk * v.kl - v.root_ij * v.root_jk * v.ik_j * v.kl -
         v.ij * v.root_jk * v.root_kl * v.jl_k +
         v.root_ij * v.root_kl * v.root_ik_j * v.root_jl_k * v.il_jk -
         v.root_ij * v.jk * v.root_kl * v.ik_j * v.jl_k;
  return z;
}

Correlations<double> correlations_from_partials(const CorrelationPoint& p);

/// P after the vine substitution.
double eval_P_tilde(const CorrelationPoint& p);

/// (1-z_ij^2)(1-z_jk^2)(1-z_kl^2) sqrt(1-z_ik;j^2) sqrt(1-z_jl;k^2)
double jacobian(const CorrelationPoint& p);

SparseMonomialSum symbolic_P_tilde();
SparseMonomialSum symbolic_jacobian();

/// Integrates J * P~^m over the cube monomial by monomial, scaled by
/// 27 / (32 pi^2). Throws CapacityError when the expansion outgrows
/// term_limit and std::domain_error if the result is not a pure rational.
EvenPoly derive_intermediate_exact(int m,
                                   std::size_t term_limit = SparseMonomialSum::kDefaultTermLimit);

/// Closed-form coefficient C_{2j}(m) of mu^{2j} (and of mu^{4m-2j}) for
/// j = 0..3. Throws UnsupportedOrder for other j.
Rat coefficient_C(int j, int m);
Rat coefficient_C_numerator(int j, int m);
/// prod_{k=-2,0,..,2j} (m + (1-k)/2)
Rat coefficient_C_denominator(int j, int m);

struct CoefficientRecord {
  int m = 0;
  int j = 0;
  Rat value;
};

/// Parses the versioned "m j numerator denominator" record format. Errors
/// name the offending line.
std::vector<CoefficientRecord> parse_coefficient_records(std::string_view text);
std::string format_coefficient_records(const std::vector<CoefficientRecord>& records);

/// Completes order m from the records using c_j = c_{2m-j}; duplicated entries
/// must agree.
EvenPoly complete_from_records(int m, const std::vector<CoefficientRecord>& records);

/// Tabulated I_m for m = 1..9 (I_0 = 1 is accepted as well).
EvenPoly intermediate_table(int m);

/// The raw embedded coefficient file.
std::string_view intermediate_table_text();

struct McEstimate {
  double estimate = 0;
  double std_error = 0;
};

/// Plain Monte Carlo over the cube of (27/(32 pi^2)) 2^6 E[J P~^m].
McEstimate mc_intermediate_check(int m, double mu, std::int64_t n, std::uint64_t seed);

}  // namespace hsm
