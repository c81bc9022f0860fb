#pragma once

// Sparse polynomial algebra in the six vine coordinates and mu, extended by
// the square-root factors sqrt(1 - z^2) of the first five coordinates. A
// monomial stands for
//     mu^e * prod_v z_v^{p_v} (1 - z_v^2)^{q_v / 2}
// which is exactly the shape the cube integration consumes.

#include "hsm/pi_scalar.hpp"
#include "hsm/rat.hpp"

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <unordered_map>

namespace hsm {

enum class VineCoord : std::uint8_t { ij = 0, jk, kl, ik_j, jl_k, il_jk };
inline constexpr std::size_t kVineCoords = 6;

struct Monomial {
  std::array<std::uint8_t, kVineCoords> power{};
  std::array<std::uint8_t, kVineCoords> root_power{};
  std::uint8_t mu_power = 0;

  friend auto operator<=>(const Monomial&, const Monomial&) = default;

  Monomial operator*(const Monomial& other) const;
  /// Every z power even; anything else integrates to zero over [-1, 1]^6.
  bool survives_integration() const;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SparseMonomialSum {
 public:
  using Terms = std::unordered_map<Monomial, Rat, MonomialHash>;

  SparseMonomialSum() = default;
  SparseMonomialSum(int constant);  // NOLINT: ring literals in generic formulas
  explicit SparseMonomialSum(const Rat& constant);

  static SparseMonomialSum variable(VineCoord v);
  /// sqrt(1 - z_v^2)
  static SparseMonomialSum root(VineCoord v);
  static SparseMonomialSum mu();

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  void add(const Monomial& m, const Rat& coefficient);

  /// Product with optional dropping of monomials that cannot survive the cube
  /// integration. Throws CapacityError once the result exceeds term_limit.
  SparseMonomialSum multiply(const SparseMonomialSum& other, bool drop_odd,
                             std::size_t term_limit) const;

  SparseMonomialSum& operator+=(const SparseMonomialSum& other);
  SparseMonomialSum& operator-=(const SparseMonomialSum& other);
  SparseMonomialSum operator-() const;

  friend SparseMonomialSum operator+(SparseMonomialSum a, const SparseMonomialSum& b) { return a += b; }
  friend SparseMonomialSum operator-(SparseMonomialSum a, const SparseMonomialSum& b) { return a -= b; }
  friend SparseMonomialSum operator*(const SparseMonomialSum& a, const SparseMonomialSum& b);

  static constexpr std::size_t kDefaultTermLimit = 10'000'000;

 private:
  Terms terms_;
};

}  // namespace hsm
