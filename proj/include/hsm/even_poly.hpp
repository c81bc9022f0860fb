#pragma once

#include "hsm/rat.hpp"

#include <vector>

namespace hsm {

/// Even polynomial  sum_{j=0}^{2m} c_j mu^{2j}  of degree 4m, the result of the
/// correlation-cube integration at moment order m.
class EvenPoly {
 public:
  /// Throws std::invalid_argument unless coeffs.size() == 2m + 1.
  EvenPoly(int order, std::vector<Rat> coeffs);

  int order() const { return order_; }
  /// Coefficient of mu^{2j}.
  const Rat& coefficient(int j) const { return coeffs_.at(static_cast<std::size_t>(j)); }
  const std::vector<Rat>& coefficients() const { return coeffs_; }

  /// c_j == c_{2m-j} for every j.
  bool is_palindromic() const;

  Rat evaluate(const Rat& mu) const;
  double evaluate(double mu) const;

  friend bool operator==(const EvenPoly&, const EvenPoly&) = default;

 private:
  int order_;
  std::vector<Rat> coeffs_;
};

}  // namespace hsm
