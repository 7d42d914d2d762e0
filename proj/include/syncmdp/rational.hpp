#ifndef SYNCMDP_RATIONAL_HPP
#define SYNCMDP_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>

#include "errors.hpp"

namespace syncmdp {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

namespace detail {
inline bool all_digits(const std::string &s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// BigInt reads a leading 0 as octal
inline BigInt decimal(const std::string &digits) {
  auto i = digits.find_first_not_of('0');
  return i == std::string::npos ? BigInt(0) : BigInt(digits.substr(i));
}
} // namespace detail

// accepts "p/q", integers and plain decimals such as "0.25"
inline Rational parse_rational(const std::string &text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.erase(0, 1);
  }
  Rational r;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den))
      throw ParseError("malformed rational '" + text + "'");
    BigInt d = detail::decimal(den);
    if (d == 0) throw ParseError("zero denominator in '" + text + "'");
    r = Rational(detail::decimal(num), d);
  } else if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (ip.empty()) ip = "0";
    if (!detail::all_digits(ip) || (!fp.empty() && !detail::all_digits(fp)))
      throw ParseError("malformed decimal '" + text + "'");
    BigInt scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    r = Rational(detail::decimal(ip + fp), scale);
  } else {
    if (!detail::all_digits(s)) throw ParseError("malformed rational '" + text + "'");
    r = Rational(detail::decimal(s));
  }
  return neg ? Rational(-r) : r;
}

inline std::string to_string(const Rational &r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

// 2^-k
inline Rational pow2_inverse(unsigned k) {
  BigInt d = 1;
  d <<= k;
  return Rational(BigInt(1), d);
}

} // namespace syncmdp

#endif
