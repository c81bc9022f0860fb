#pragma once

// Second integration stage and the closed-form moment machinery.

#include "hsm/rat.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hsm {

enum class Family { real, complex, quaternion };

std::string_view to_string(Family family);
/// Throws std::invalid_argument for unknown names.
Family parse_family(std::string_view name);

struct Interval {
  Rat lo;
  Rat hi;
};

struct RealInterval {
  double lo = 0;
  double hi = 0;
};

/// Raw moments m_1..m_K of a distribution on `support`; m_0 = 1 is implicit.
struct MomentVector {
  Interval support;
  std::vector<Rat> raw;

  /// m_k for k = 0..size(); m_0 is 1.
  Rat moment(int k) const;
  int size() const { return static_cast<int>(raw.size()); }
};

class DegenerateDistribution : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct DistributionSummary {
  Rat mean;
  Rat variance;
  Rat third_central;
  Rat fourth_central;
  double skewness = 0;
  /// Pearson kurtosis mu_4 / sigma^4 (not the excess).
  double kurtosis = 0;
};

struct CantelliBound {
  Rat bound;
  /// threshold <= mean: the inequality says nothing and bound is 1.
  bool vacuous = false;
};

/// Supports of the two determinant distributions for 4x4 states.
Interval pt_support();
Interval det_support();

/// zeta'_m = E[det(rho^PT)^m] over real two-qubit states, m = 0..9.
/// Throws UnsupportedOrder (from the coefficient tables) outside that range.
Rat assemble_moment(int m);

/// E[det(rho)^m] for 4x4 states of the given family.
Rat hs_det_moment(Family family, int m);

/// Moment vectors built from the exact formulas.
MomentVector pt_moment_vector(int max_order);
MomentVector det_moment_vector(Family family, int max_order);

/// Needs m_1..m_4. Throws DegenerateDistribution when the variance is not
/// positive.
DistributionSummary summarize(const MomentVector& mv);

/// One-sided Chebyshev: P(X >= threshold) <= var / (var + (threshold - mean)^2).
CantelliBound cantelli_upper_bound(const Rat& mean, const Rat& variance, const Rat& threshold);

/// mean -/+ sqrt(3) sigma.
RealInterval mode_interval(double mean, double variance);

/// sum_{k=0}^{terms} E[det^k] t^k / k!
double mgf_eval(Family family, double t, int terms);

/// Exact contribution to zeta'_m of the six outermost coefficients
/// C_0, C_2, C_4 and their mirror images. Requires m >= 3.
Rat six_term_approximation(int m);

/// Mean determinant of a complex qubit-qutrit (6x6) state, and the factor
/// separating the second moment from the first.
Rat qubit_qutrit_first_moment();
Rat qubit_qutrit_second_moment_ratio();

}  // namespace hsm
