#pragma once

#include <gmpxx.h>

#include <cctype>
#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hk {

// Exact arbitrary-precision rational. All arithmetic keeps values normalized
// (positive denominator, coprime numerator/denominator) as long as inputs are
// canonical, which the helpers below guarantee.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline double to_double(const Rat& q) { return q.get_d(); }

// "p/q" for proper fractions, plain "p" for integers.
inline std::string to_string(const Rat& q) { return q.get_str(); }

// Shortest decimal that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace detail {

inline Int parse_integer(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) throw std::invalid_argument("empty integer");
  Int v;
  if (v.set_str(std::string(s), 10) != 0)
    throw std::invalid_argument("invalid integer '" + std::string(s) + "'");
  return v;
}

}  // namespace detail

// Accepts "p/q", integers, and decimal literals with optional exponent
// ("1/3", "-7", "0.25", "2.5e-3"). Decimals convert exactly.
inline Rat parse_rational(std::string_view token) {
  while (!token.empty() && std::isspace(static_cast<unsigned char>(token.front())))
    token.remove_prefix(1);
  while (!token.empty() && std::isspace(static_cast<unsigned char>(token.back())))
    token.remove_suffix(1);
  if (token.empty()) throw std::invalid_argument("empty number");

  if (auto slash = token.find('/'); slash != std::string_view::npos) {
    Int num = detail::parse_integer(token.substr(0, slash));
    Int den = detail::parse_integer(token.substr(slash + 1));
    if (den == 0)
      throw std::invalid_argument("zero denominator in '" + std::string(token) + "'");
    Rat q(num, den);
    q.canonicalize();
    return q;
  }

  std::string_view mant = token;
  long exp10 = 0;
  if (auto e = token.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view es = token.substr(e + 1);
    mant = token.substr(0, e);
    if (!es.empty() && es.front() == '+') es.remove_prefix(1);
    auto res = std::from_chars(es.data(), es.data() + es.size(), exp10);
    if (res.ec != std::errc{} || res.ptr != es.data() + es.size())
      throw std::invalid_argument("invalid exponent in '" + std::string(token) + "'");
  }

  std::string digits;
  long frac_len = 0;
  bool seen_dot = false, seen_digit = false;
  for (std::size_t k = 0; k < mant.size(); ++k) {
    char c = mant[k];
    if (c == '.') {
      if (seen_dot) throw std::invalid_argument("invalid number '" + std::string(token) + "'");
      seen_dot = true;
    } else if ((c == '+' || c == '-') && k == 0) {
      if (c == '-') digits.push_back('-');
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_dot) ++frac_len;
    } else {
      throw std::invalid_argument("invalid number '" + std::string(token) + "'");
    }
  }
  if (!seen_digit) throw std::invalid_argument("invalid number '" + std::string(token) + "'");

  Int num = detail::parse_integer(digits);
  Int den = 1;
  long shift = exp10 - frac_len;
  Int pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  if (shift >= 0)
    num *= pow10;
  else
    den = pow10;
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Int binomial(unsigned long n, unsigned long k) {
  Int b;
  if (k > n) return b;  // 0
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

inline unsigned long isqrt_ceil(unsigned long m) {
  Int v(static_cast<long>(m)), r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  unsigned long root = r.get_ui();
  return root * root == m ? root : root + 1;
}

inline Rat rat_pow(const Rat& base, unsigned long e) {
  Rat out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), e);
  return out;  // canonical since base is
}

}  // namespace hk
