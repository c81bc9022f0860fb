#include "hsm/even_poly.hpp"

#include <stdexcept>

namespace hsm {

EvenPoly::EvenPoly(int order, std::vector<Rat> coeffs) : order_(order), coeffs_(std::move(coeffs)) {
  if (order < 0 || coeffs_.size() != static_cast<std::size_t>(2 * order + 1)) {
    throw std::invalid_argument("EvenPoly: order m needs 2m+1 coefficients");
  }
}

bool EvenPoly::is_palindromic() const {
  const std::size_t n = coeffs_.size();
  for (std::size_t j = 0; j < n / 2; ++j) {
    if (coeffs_[j] != coeffs_[n - 1 - j]) return false;
  }
  return true;
}

Rat EvenPoly::evaluate(const Rat& mu) const {
  const Rat mu2 = mu * mu;
  Rat acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * mu2 + *it;
  return acc;
}

double EvenPoly::evaluate(double mu) const {
  const double mu2 = mu * mu;
  double acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * mu2 + it->get_d();
  return acc;
}

}  // namespace hsm
