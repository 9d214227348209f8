#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <optional>
#include <stdexcept>
#include <string>

namespace polarslice {

/// Exact arbitrary-precision rational. All symbolic-side computations use
/// this type; no floating point enters the exact modules.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses "p", "-p" or "p/q" (q > 0 after normalization). Rejects anything
/// else, including whitespace and empty strings.
inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw parse_error("empty rational literal");
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') ++i;
  if (i == s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
    throw parse_error("malformed rational literal: '" + s + "'");
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == s.size()) return Rational(s);
  if (s[i] != '/') throw parse_error("malformed rational literal: '" + s + "'");
  std::size_t j = i + 1;
  if (j == s.size()) throw parse_error("malformed rational literal: '" + s + "'");
  for (std::size_t k = j; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k])))
      throw parse_error("malformed rational literal: '" + s + "'");
  Integer den(s.substr(j));
  if (den == 0) throw parse_error("zero denominator in '" + s + "'");
  return Rational(Integer(s.substr(0, i)), den);
}

/// Inverse of parse_rational: "p/q" with q > 0, or "p" when q == 1.
inline std::string rational_to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace polarslice
