#pragma once

#include "hsm/rat.hpp"

#include <map>
#include <string>

namespace hsm {

/// Finite sum  sum_k c_k * pi^(k/2)  with rational c_k. The integer key k is
/// the grade; grade 0 is the rational part. Zero coefficients are never
/// stored, so the empty sum is zero.
class PiScalar {
 public:
  PiScalar() = default;
  explicit PiScalar(const Rat& rational);

  static PiScalar term(const Rat& coefficient, int grade);

  const std::map<int, Rat>& terms() const { return terms_; }
  Rat coefficient(int grade) const;

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  /// Single-grade values only (the only kind that can be inverted).
  bool is_monomial() const { return terms_.size() == 1; }

  /// The grade-0 value. Throws std::domain_error when any other grade is
  /// present.
  Rat rational() const;

  double to_double() const;
  std::string to_string() const;

  PiScalar& operator+=(const PiScalar& other);
  PiScalar& operator-=(const PiScalar& other);
  PiScalar& operator*=(const PiScalar& other);
  PiScalar& operator*=(const Rat& factor);

  /// Division by a single-grade value. Throws std::domain_error for a zero
  /// or multi-grade divisor.
  PiScalar divided_by(const PiScalar& divisor) const;

  friend PiScalar operator+(PiScalar a, const PiScalar& b) { return a += b; }
  friend PiScalar operator-(PiScalar a, const PiScalar& b) { return a -= b; }
  friend PiScalar operator*(PiScalar a, const PiScalar& b) { return a *= b; }
  friend PiScalar operator*(PiScalar a, const Rat& b) { return a *= b; }
  friend PiScalar operator*(const Rat& a, PiScalar b) { return b *= a; }
  friend PiScalar operator/(const PiScalar& a, const PiScalar& b) { return a.divided_by(b); }
  PiScalar operator-() const;

  friend bool operator==(const PiScalar& a, const PiScalar& b) { return a.terms_ == b.terms_; }

 private:
  void add_term(int grade, const Rat& coefficient);

  std::map<int, Rat> terms_;
};

}  // namespace hsm
