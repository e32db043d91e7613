#ifndef HARDLEF_EXACT_HPP
#define HARDLEF_EXACT_HPP

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace hardlef {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integral(const Rational& q) { return denominator_of(q) == 1; }

inline std::string to_string(const Integer& z) { return z.str(); }

/// "p" when the denominator is one, "p/q" otherwise.
inline std::string to_string(const Rational& q) {
    if (is_integral(q)) return numerator_of(q).str();
    return numerator_of(q).str() + "/" + denominator_of(q).str();
}

/// Parses "p", "-p" or "p/q" with decimal integers.
inline Rational parse_rational(std::string_view text) {
    auto is_int = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!is_int(num) || !is_int(den))
        throw InvalidParameter("not a rational number: '" + std::string(text) + "'");
    std::string num_s(num.front() == '+' ? num.substr(1) : num);
    std::string den_s(den.front() == '+' ? den.substr(1) : den);
    Integer d(den_s);
    if (d == 0) throw InvalidParameter("zero denominator in '" + std::string(text) + "'");
    return Rational(Integer(num_s), d);
}

inline std::int64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline Integer factorial(int n) {
    Integer r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

} // namespace hardlef

#endif // HARDLEF_EXACT_HPP
