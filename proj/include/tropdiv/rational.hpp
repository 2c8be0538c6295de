#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tropdiv {

/// Exact rational number. GMP keeps every value in lowest terms with a
/// positive denominator after each arithmetic operation.
using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "num/den" or "num". Throws std::invalid_argument on malformed input
/// or a zero denominator.
inline Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  auto valid_int = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  auto slash = text.find('/');
  std::string num(text.substr(0, slash));
  std::string den = slash == std::string_view::npos ? "1" : std::string(text.substr(slash + 1));
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  if (num[0] == '+') num.erase(0, 1);
  BigInt n(num), d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// "num/den" in lowest terms, or "num" for integers.
inline std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline std::string to_string(const BigInt& z) { return z.get_str(); }

inline BigInt floor_int(const Rational& r) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline BigInt ceil_int(const Rational& r) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// Narrowing to a machine integer; throws if the value does not fit.
inline std::int64_t to_int64(const BigInt& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits: " + z.get_str());
  return z.get_si();
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace tropdiv
