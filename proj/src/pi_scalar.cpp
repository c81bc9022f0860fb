#include "hsm/pi_scalar.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hsm {

PiScalar::PiScalar(const Rat& rational) { add_term(0, rational); }

PiScalar PiScalar::term(const Rat& coefficient, int grade) {
  PiScalar out;
  out.add_term(grade, coefficient);
  return out;
}

Rat PiScalar::coefficient(int grade) const {
  const auto it = terms_.find(grade);
  return it == terms_.end() ? Rat(0) : it->second;
}

bool PiScalar::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

Rat PiScalar::rational() const {
  if (!is_rational()) {
    throw std::domain_error("PiScalar is not rational: " + to_string());
  }
  return coefficient(0);
}

double PiScalar::to_double() const {
  double sum = 0.0;
  for (const auto& [grade, c] : terms_) {
    sum += hsm::to_double(c) * std::pow(std::numbers::pi, 0.5 * grade);
  }
  return sum;
}

std::string PiScalar::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [grade, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << hsm::to_string(c) << ")";
    if (grade != 0) os << "*pi^(" << grade << "/2)";
  }
  return os.str();
}

void PiScalar::add_term(int grade, const Rat& coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(grade, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

PiScalar& PiScalar::operator+=(const PiScalar& other) {
  for (const auto& [grade, c] : other.terms_) add_term(grade, c);
  return *this;
}

PiScalar& PiScalar::operator-=(const PiScalar& other) {
  for (const auto& [grade, c] : other.terms_) add_term(grade, Rat(-c));
  return *this;
}

PiScalar& PiScalar::operator*=(const PiScalar& other) {
  PiScalar product;
  for (const auto& [ga, a] : terms_) {
    for (const auto& [gb, b] : other.terms_) product.add_term(ga + gb, Rat(a * b));
  }
  terms_ = std::move(product.terms_);
  return *this;
}

PiScalar& PiScalar::operator*=(const Rat& factor) {
  if (factor == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [grade, c] : terms_) c *= factor;
  return *this;
}

PiScalar PiScalar::divided_by(const PiScalar& divisor) const {
  if (!divisor.is_monomial()) {
    throw std::domain_error("PiScalar division needs a single-grade nonzero divisor");
  }
  const auto& [dgrade, dcoef] = *divisor.terms_.begin();
  PiScalar out;
  for (const auto& [grade, c] : terms_) out.add_term(grade - dgrade, Rat(c / dcoef));
  return out;
}

PiScalar PiScalar::operator-() const {
  PiScalar out = *this;
  for (auto& [grade, c] : out.terms_) c = -c;
  return out;
}

}  // namespace hsm
