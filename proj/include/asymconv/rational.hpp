#pragma once

#include <boost/rational.hpp>

#include <string>
#include <string_view>

namespace asymconv {

using Rational = boost::rational<long long>;

// Accepts "p/q" or "p"; anything else (decimals included) is a ParseError.
Rational parse_rational(std::string_view text);

// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& x);

inline double to_double(const Rational& x) {
    return boost::rational_cast<double>(x);
}
inline bool is_integer(const Rational& x) { return x.denominator() == 1; }
inline bool is_natural(const Rational& x) { return is_integer(x) && x.numerator() >= 0; }

long long floor_int(const Rational& x);

}  // namespace asymconv
