#include "hsm/rat.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace hsm {

Rat make_rat(long num, long den) {
  if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat make_rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

namespace {

bool is_integer_text(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

BigInt parse_int(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return BigInt(std::string(s), 10);
}

}  // namespace

Rat parse_rat(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);

  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_text(num, true) || !is_integer_text(den, false)) {
    throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  }
  const BigInt d = parse_int(den);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  return make_rat(parse_int(num), d);
}

std::string to_string(const Rat& value) { return value.get_str(10); }

double to_double(const Rat& value) {
  // mpq_get_d truncates; round to nearest, ties to even, instead. Results in
  // the subnormal range may be rounded twice.
  if (value == 0) return 0.0;
  const BigInt num = abs(value.get_num());
  const BigInt& den = value.get_den();
  const long shift = 55 - static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) +
                     static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
  BigInt scaled = num;
  BigInt scaled_den = den;
  if (shift > 0) {
    scaled <<= static_cast<mp_bitcnt_t>(shift);
  } else {
    scaled_den <<= static_cast<mp_bitcnt_t>(-shift);
  }
  BigInt q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled.get_mpz_t(), scaled_den.get_mpz_t());
  const bool sticky = r != 0;

  const long excess = static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 2)) - 53;
  BigInt kept = q >> static_cast<mp_bitcnt_t>(excess);
  const BigInt dropped = q - (kept << static_cast<mp_bitcnt_t>(excess));
  const BigInt half = BigInt(1) << static_cast<mp_bitcnt_t>(excess - 1);
  if (dropped > half || (dropped == half && (sticky || mpz_odd_p(kept.get_mpz_t())))) ++kept;

  const double magnitude = std::ldexp(kept.get_d(), static_cast<int>(excess - shift));
  return sign(value) < 0 ? -magnitude : magnitude;
}

Rat from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("from_double: non-finite value");
  return Rat(value);
}

Rat rat_pow(const Rat& base, unsigned long exponent) {
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rat r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace hsm
