#include "hsm/reconstruct.hpp"

#include "hsm/exactnum.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hsm {

namespace {

constexpr int kGridLog2 = 12;
constexpr double kRootWidth = 1e-12;

Rat binomial(int n, int k) {
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rat(out);
}

}  // namespace

AffineMappedMoments map_moments(const MomentVector& mv) {
  const Rat& a = mv.support.lo;
  const Rat& b = mv.support.hi;
  if (!(a < b)) throw std::invalid_argument("map_moments: support must satisfy a < b");
  const Rat width = b - a;
  const Rat shift = -a;

  AffineMappedMoments out{mv.support, {}};
  out.mapped.reserve(static_cast<std::size_t>(mv.size() + 1));
  Rat width_power = 1;
  for (int k = 0; k <= mv.size(); ++k) {
    Rat sum = 0;
    Rat shift_power = 1;  // shift^{k-i}, built from i = k downwards
    for (int i = k; i >= 0; --i) {
      sum += binomial(k, i) * mv.moment(i) * shift_power;
      shift_power *= shift;
    }
    out.mapped.push_back(sum / width_power);
    width_power *= width;
  }
  return out;
}

PolyDensity::PolyDensity(std::vector<Rat> coeffs, Interval support)
    : coeffs_(std::move(coeffs)), support_(std::move(support)) {
  if (coeffs_.empty()) throw std::invalid_argument("PolyDensity: no coefficients");
}

Rat PolyDensity::evaluate(const Rat& y) const {
  Rat acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * y + *it;
  return acc;
}

double PolyDensity::evaluate(double y) const { return to_double(evaluate(from_double(y))); }

double PolyDensity::density_at(double x) const {
  const double a = to_double(support_.lo);
  const double width = to_double(Rat(support_.hi - support_.lo));
  return evaluate((x - a) / width) / width;
}

Rat PolyDensity::integral(const Rat& lo, const Rat& hi) const {
  // Horner on the antiderivative sum c_i y^{i+1} / (i+1)
  const auto antiderivative = [this](const Rat& y) {
    Rat acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * y + coeffs_[i] / Rat(long(i + 1));
    return Rat(acc * y);
  };
  return antiderivative(hi) - antiderivative(lo);
}

Rat PolyDensity::moment(int k) const {
  Rat sum = 0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) sum += coeffs_[i] / Rat(long(i) + k + 1);
  return sum;
}

Rat PolyDensity::to_unit(const Rat& x) const { return (x - support_.lo) / (support_.hi - support_.lo); }

double PolyDensity::from_unit(double y) const {
  return to_double(support_.lo) + y * to_double(Rat(support_.hi - support_.lo));
}

PolyDensity fit_poly_density(const AffineMappedMoments& mapped, int degree) {
  if (degree < 0) throw std::invalid_argument("fit_poly_density: negative degree");
  if (degree > mapped.max_order()) {
    throw std::invalid_argument("fit_poly_density: degree " + std::to_string(degree) + " needs " +
                                std::to_string(degree) + " moments, have " +
                                std::to_string(mapped.max_order()));
  }
  const auto n = static_cast<std::size_t>(degree + 1);
  // Augmented system [H | m], H_kj = 1 / (k + j + 1).
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n + 1));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) a[k][j] = make_rat(1, long(k + j + 1));
    a[k][n] = mapped.mapped[k];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw std::runtime_error("fit_poly_density: singular moment system");
    std::swap(a[col], a[pivot]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rat factor = a[row][col] / a[col][col];
      for (std::size_t j = col; j <= n; ++j) a[row][j] -= factor * a[col][j];
    }
  }
  std::vector<Rat> coeffs(n);
  for (std::size_t k = 0; k < n; ++k) coeffs[k] = a[k][n] / a[k][k];
  return PolyDensity(std::move(coeffs), mapped.support);
}

double stable_density(const AffineMappedMoments& mapped, int alpha, double x) {
  if (alpha < 1 || alpha > kMaxStableAlpha) {
    throw std::invalid_argument("stable_density: alpha must be in 1.." + std::to_string(kMaxStableAlpha));
  }
  if (alpha > mapped.max_order()) {
    throw std::invalid_argument("stable_density: alpha " + std::to_string(alpha) + " exceeds the " +
                                std::to_string(mapped.max_order()) + " available moments");
  }
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("stable_density: x outside [0, 1]");

  const int k = std::min(alpha, static_cast<int>(std::floor(alpha * x)));
  Rat sum = 0;
  for (int j = 0; j <= alpha - k; ++j) {
    Rat term = mapped.mapped[static_cast<std::size_t>(k + j)] / Rat(factorial(j) * factorial(alpha - k - j));
    if (j % 2 == 1) term = -term;
    sum += term;
  }
  return to_double(Rat(sum * Rat(factorial(alpha + 1)) / Rat(factorial(k))));
}

Rat mass_on_interval(const PolyDensity& pd, const Interval& sub) {
  const Rat lo = pd.to_unit(sub.lo);
  const Rat hi = pd.to_unit(sub.hi);
  if (lo < 0 || hi > 1 || lo > hi) {
    throw std::invalid_argument("mass_on_interval: sub-interval must lie inside the support");
  }
  return pd.integral(lo, hi);
}

std::vector<Rat> sign_change_roots(const PolyDensity& pd) {
  const long cells = 1L << kGridLog2;
  std::vector<Rat> roots;
  Rat prev_y = 0;
  int prev_sign = sign(pd.evaluate(prev_y));
  for (long i = 1; i <= cells; ++i) {
    const Rat y = make_rat(i, cells);
    const int s = sign(pd.evaluate(y));
    if (s == 0) {
      if (i < cells) roots.push_back(y);
      prev_y = y;
      prev_sign = s;
      continue;
    }
    if (prev_sign != 0 && s != prev_sign) {
      Rat lo = prev_y, hi = y;
      int lo_sign = prev_sign;
      int iterations = 0;
      while (to_double(Rat(hi - lo)) > kRootWidth) {
        if (++iterations > 200) throw std::runtime_error("negative_mass: root bisection did not converge");
        const Rat mid = (lo + hi) / 2;
        const int ms = sign(pd.evaluate(mid));
        if (ms == 0) {
          lo = hi = mid;
          break;
        }
        if (ms == lo_sign) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      roots.push_back((lo + hi) / 2);
    }
    prev_y = y;
    prev_sign = s;
  }
  if (static_cast<int>(roots.size()) > pd.degree()) {
    throw std::runtime_error("negative_mass: found " + std::to_string(roots.size()) +
                             " roots for a degree-" + std::to_string(pd.degree()) + " polynomial");
  }
  return roots;
}

NegativeMass negative_mass(const PolyDensity& pd) {
  std::vector<Rat> breaks{Rat(0)};
  for (const Rat& r : sign_change_roots(pd)) breaks.push_back(r);
  breaks.push_back(Rat(1));

  Rat below = 0, above = 0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const Rat piece = pd.integral(breaks[i], breaks[i + 1]);
    if (piece < 0) {
      below -= piece;
    } else {
      above += piece;
    }
  }
  return {to_double(below), to_double(above)};
}

std::vector<CurvePoint> density_curve(const PolyDensity& pd, int points) {
  if (points < 2) throw std::invalid_argument("density_curve: need at least two points");
  std::vector<CurvePoint> out;
  out.reserve(static_cast<std::size_t>(points));
  const double width = to_double(Rat(pd.support().hi - pd.support().lo));
  for (int i = 0; i < points; ++i) {
    const Rat y = make_rat(i, points - 1);
    out.push_back({pd.from_unit(to_double(y)), to_double(pd.evaluate(y)) / width});
  }
  return out;
}

std::vector<CurvePoint> stable_curve(const AffineMappedMoments& mapped, int alpha, int points) {
  if (points < 2) throw std::invalid_argument("stable_curve: need at least two points");
  const double a = to_double(mapped.support.lo);
  const double width = to_double(Rat(mapped.support.hi - mapped.support.lo));
  std::vector<CurvePoint> out;
  out.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double y = double(i) / double(points - 1);
    out.push_back({a + y * width, stable_density(mapped, alpha, y) / width});
  }
  return out;
}

double density_argmax(const PolyDensity& pd, int points) {
  const auto curve = density_curve(pd, points);
  std::size_t best = 0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (curve[i].density > curve[best].density) best = i;
  }
  return curve[best].x;
}

}  // namespace hsm
