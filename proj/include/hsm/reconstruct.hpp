#pragma once

// Densities from moments on a bounded interval. Everything works on the
// unit interval after the increasing affine map [a, b] -> [0, 1].

#include "hsm/moments.hpp"
#include "hsm/rat.hpp"

#include <vector>

namespace hsm {

struct AffineMappedMoments {
  Interval support;         // original [a, b]
  std::vector<Rat> mapped;  // E[Y^k], k = 0..K, with Y = (X - a) / (b - a)

  int max_order() const { return static_cast<int>(mapped.size()) - 1; }
};

/// Throws std::invalid_argument for a degenerate support (a >= b).
AffineMappedMoments map_moments(const MomentVector& mv);

/// Polynomial density p(y) = sum c_i y^i on [0, 1].
class PolyDensity {
 public:
  PolyDensity(std::vector<Rat> coeffs, Interval support);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rat>& coefficients() const { return coeffs_; }
  const Interval& support() const { return support_; }

  Rat evaluate(const Rat& y) const;
  double evaluate(double y) const;
  /// Density of X = a + (b - a) Y at x.
  double density_at(double x) const;

  /// int_lo^hi p(y) dy in mapped coordinates.
  Rat integral(const Rat& lo, const Rat& hi) const;
  /// int_0^1 y^k p(y) dy
  Rat moment(int k) const;

  /// Maps an original-scale point into [0, 1] coordinates.
  Rat to_unit(const Rat& x) const;
  double from_unit(double y) const;

 private:
  std::vector<Rat> coeffs_;
  Interval support_;
};

/// Solves the (D+1) x (D+1) Hilbert system  sum_i c_i / (k + i + 1) = m_k,
/// k = 0..D, exactly. No positivity constraint is imposed.
PolyDensity fit_poly_density(const AffineMappedMoments& mapped, int degree);

inline constexpr int kMaxStableAlpha = 60;

/// Piecewise-constant moment-recovered density on [0, 1]:
///   f_a(x) = (a+1)!/k! sum_{j=0}^{a-k} (-1)^j m_{k+j} / (j! (a-k-j)!),  k = floor(a x).
/// Evaluated exactly, returned as double.
double stable_density(const AffineMappedMoments& mapped, int alpha, double x);

/// Exact mass of the fitted polynomial over `sub` (original scale).
Rat mass_on_interval(const PolyDensity& pd, const Interval& sub);

struct NegativeMass {
  double below = 0;  // integral of the negative part, as a positive number
  double above = 0;  // integral of the positive part
};

/// Sign changes are bracketed on a 2^12 grid and bisected to 1e-12, then the
/// polynomial is integrated exactly between consecutive roots.
NegativeMass negative_mass(const PolyDensity& pd);

/// Roots in (0, 1) found by the same procedure (mapped coordinates).
std::vector<Rat> sign_change_roots(const PolyDensity& pd);

struct CurvePoint {
  double x = 0;
  double density = 0;
};

/// `points` equally spaced samples over the original support.
std::vector<CurvePoint> density_curve(const PolyDensity& pd, int points);
std::vector<CurvePoint> stable_curve(const AffineMappedMoments& mapped, int alpha, int points);

/// Grid argmax of the fitted density, original scale.
double density_argmax(const PolyDensity& pd, int points = 4097);

}  // namespace hsm
