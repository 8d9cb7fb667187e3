#pragma once

#include "dhlab/errors.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

namespace dhlab {

/// Exact rational number. GMP keeps every value in lowest terms with a
/// positive denominator; expression templates are disabled so the type
/// behaves like a plain value.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

inline Integer num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return den(q) == 1; }

inline int sgn(const Rational& q) { return q.sign(); }

inline Rational power(const Rational& base, unsigned exponent) {
    Rational result{1};
    Rational b = base;
    while (exponent != 0) {
        if (exponent & 1U) result *= b;
        exponent >>= 1U;
        if (exponent != 0) b *= b;
    }
    return result;
}

inline Rational factorial(unsigned n) {
    Rational f{1};
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
}

/// "p/q" or "p" (lowest terms); the inverse of parse_rational.
inline std::string to_string(const Rational& q) {
    if (is_integer(q)) return num(q).str();
    return num(q).str() + "/" + den(q).str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

inline Integer parse_integer(std::string_view s) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw InputError("not an integer: '" + std::string(s) + "'");
    Integer v{std::string(s)};
    return negative ? Integer(-v) : v;
}

} // namespace detail

/// Accepts "p", "p/q" and terminating decimals "d.ddd" (all exact).
/// Anything else, including exponents, "inf" and "nan", is rejected.
inline Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) throw InputError("empty rational literal");
    try {
        if (auto slash = s.find('/'); slash != std::string_view::npos) {
            Integer p = detail::parse_integer(s.substr(0, slash));
            std::string_view qs = s.substr(slash + 1);
            if (!detail::all_digits(qs)) throw InputError("bad denominator");
            Integer q{std::string(qs)};
            if (q == 0) throw InputError("zero denominator");
            return Rational(p, q);
        }
        if (auto dot = s.find('.'); dot != std::string_view::npos) {
            std::string_view whole = s.substr(0, dot);
            std::string_view frac = s.substr(dot + 1);
            bool negative = !whole.empty() && whole.front() == '-';
            if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
            if ((whole.empty() && frac.empty()) || (!whole.empty() && !detail::all_digits(whole)) ||
                (!frac.empty() && !detail::all_digits(frac)))
                throw InputError("bad decimal");
            Integer scale{1};
            for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
            Integer digits{std::string(whole.empty() ? "0" : whole) + std::string(frac)};
            Rational v(digits, scale);
            return negative ? Rational(-v) : v;
        }
        return Rational(detail::parse_integer(s));
    } catch (const InputError& e) {
        throw InputError("invalid rational '" + std::string(text) + "': " + e.what());
    }
}

} // namespace dhlab
