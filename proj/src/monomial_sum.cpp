#include "hsm/monomial_sum.hpp"

#include <limits>
#include <string>

namespace hsm {

namespace {

std::uint8_t add_exponent(std::uint8_t a, std::uint8_t b) {
  const unsigned sum = unsigned(a) + unsigned(b);
  if (sum > std::numeric_limits<std::uint8_t>::max()) {
    throw CapacityError("monomial exponent overflow");
  }
  return static_cast<std::uint8_t>(sum);
}

}  // namespace

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  for (std::size_t v = 0; v < kVineCoords; ++v) {
    out.power[v] = add_exponent(power[v], other.power[v]);
    out.root_power[v] = add_exponent(root_power[v], other.root_power[v]);
  }
  out.mu_power = add_exponent(mu_power, other.mu_power);
  return out;
}

bool Monomial::survives_integration() const {
  for (const auto p : power) {
    if (p % 2 != 0) return false;
  }
  return true;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  const auto mix = [&h](std::uint8_t byte) {
    h ^= byte;
    h *= 1099511628211ULL;
  };
  for (const auto p : m.power) mix(p);
  for (const auto q : m.root_power) mix(q);
  mix(m.mu_power);
  return static_cast<std::size_t>(h);
}

SparseMonomialSum::SparseMonomialSum(int constant) : SparseMonomialSum(Rat(constant)) {}

SparseMonomialSum::SparseMonomialSum(const Rat& constant) { add(Monomial{}, constant); }

SparseMonomialSum SparseMonomialSum::variable(VineCoord v) {
  Monomial m;
  m.power[static_cast<std::size_t>(v)] = 1;
  SparseMonomialSum out;
  out.add(m, Rat(1));
  return out;
}

SparseMonomialSum SparseMonomialSum::root(VineCoord v) {
  Monomial m;
  m.root_power[static_cast<std::size_t>(v)] = 1;
  SparseMonomialSum out;
  out.add(m, Rat(1));
  return out;
}

SparseMonomialSum SparseMonomialSum::mu() {
  Monomial m;
  m.mu_power = 1;
  SparseMonomialSum out;
  out.add(m, Rat(1));
  return out;
}

void SparseMonomialSum::add(const Monomial& m, const Rat& coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

SparseMonomialSum SparseMonomialSum::multiply(const SparseMonomialSum& other, bool drop_odd,
                                              std::size_t term_limit) const {
  SparseMonomialSum out;
  Rat product;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : other.terms_) {
      const Monomial m = ma * mb;
      if (drop_odd && !m.survives_integration()) continue;
      product = ca * cb;
      out.add(m, product);
    }
    if (out.size() > term_limit) {
      throw CapacityError("monomial expansion exceeded " + std::to_string(term_limit) + " terms");
    }
  }
  return out;
}

SparseMonomialSum operator*(const SparseMonomialSum& a, const SparseMonomialSum& b) {
  return a.multiply(b, false, SparseMonomialSum::kDefaultTermLimit);
}

SparseMonomialSum& SparseMonomialSum::operator+=(const SparseMonomialSum& other) {
  for (const auto& [m, c] : other.terms_) add(m, c);
  return *this;
}

SparseMonomialSum& SparseMonomialSum::operator-=(const SparseMonomialSum& other) {
  for (const auto& [m, c] : other.terms_) add(m, Rat(-c));
  return *this;
}

SparseMonomialSum SparseMonomialSum::operator-() const {
  SparseMonomialSum out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

}  // namespace hsm
