#include "asymconv/rational.hpp"

#include "asymconv/errors.hpp"

#include <charconv>

namespace asymconv {

namespace {

long long parse_int(std::string_view s, std::string_view whole) {
    long long v = 0;
    const char* first = s.data();
    if (!s.empty() && s.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || first == s.data() + s.size())
        throw ParseError("not a rational \"p/q\": \"" + std::string(whole) + "\"");
    return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text, text));
    long long num = parse_int(text.substr(0, slash), text);
    long long den = parse_int(text.substr(slash + 1), text);
    if (den == 0) throw ParseError("zero denominator: \"" + std::string(text) + "\"");
    return Rational(num, den);
}

std::string to_string(const Rational& x) {
    if (x.denominator() == 1) return std::to_string(x.numerator());
    return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

long long floor_int(const Rational& x) {
    long long q = x.numerator() / x.denominator();
    if (x.numerator() % x.denominator() != 0 && x.numerator() < 0) --q;
    return q;
}

}  // namespace asymconv
