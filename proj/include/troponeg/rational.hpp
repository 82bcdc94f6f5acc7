#ifndef TROPONEG_RATIONAL_HPP
#define TROPONEG_RATIONAL_HPP

// Exact scalar arithmetic shared by every module: GMP-backed rationals,
// rational vectors, exact powers and a handful of number-theoretic helpers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace troponeg {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;
using RationalVector = std::vector<Rational>;

/// Raised when an input lies outside the domain of an operation
/// (non-positive coordinates, non-rational powers, malformed numbers).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when a floating-point evaluation leaves the representable range.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return denominator_of(q) == 1; }

inline int sign(const Rational& q) { return q.sign(); }

inline Rational abs(const Rational& q) { return q.sign() < 0 ? Rational(-q) : q; }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Canonical text form: "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& q) {
    if (is_integer(q)) return numerator_of(q).str();
    return numerator_of(q).str() + "/" + denominator_of(q).str();
}

namespace detail {

inline Integer parse_integer_digits(std::string_view digits, std::string_view whole) {
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw DomainError("malformed number '" + std::string(whole) + "'");
    // GMP reads a leading 0 as an octal prefix.
    const auto first = digits.find_first_not_of('0');
    if (first == std::string_view::npos) return Integer(0);
    return Integer(std::string(digits.substr(first)));
}

}  // namespace detail

/// Parses "p/q", integers, decimals ("0.25", "-1.5") and decimal
/// scientific notation ("1e-3"); the result is exact.
inline Rational parse_rational(std::string_view text) {
    const std::string_view whole = text;
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
    if (text.empty()) throw DomainError("empty number");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Rational num = parse_rational(text.substr(0, slash));
        Rational den = parse_rational(text.substr(slash + 1));
        if (den == 0) throw DomainError("zero denominator in '" + std::string(whole) + "'");
        return num / den;
    }

    bool negative = false;
    if (text.front() == '+' || text.front() == '-') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    long exponent10 = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_part = text.substr(e + 1);
        bool exp_negative = false;
        if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
            exp_negative = exp_part.front() == '-';
            exp_part.remove_prefix(1);
        }
        Integer magnitude = detail::parse_integer_digits(exp_part, whole);
        if (magnitude > 100000) throw DomainError("exponent too large in '" + std::string(whole) + "'");
        exponent10 = magnitude.convert_to<long>() * (exp_negative ? -1 : 1);
        text = text.substr(0, e);
    }
    std::string digits;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = text.substr(0, dot);
        std::string_view frac_part = text.substr(dot + 1);
        if (int_part.empty() && frac_part.empty()) throw DomainError("malformed number '" + std::string(whole) + "'");
        digits = std::string(int_part) + std::string(frac_part);
        exponent10 -= static_cast<long>(frac_part.size());
    } else {
        digits = std::string(text);
    }
    Rational value(detail::parse_integer_digits(digits, whole));
    Integer ten_power = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(exponent10 < 0 ? -exponent10 : exponent10));
    if (exponent10 >= 0)
        value *= ten_power;
    else
        value /= ten_power;
    return negative ? Rational(-value) : value;
}

inline Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }
inline Integer lcm(const Integer& a, const Integer& b) { return boost::multiprecision::lcm(a, b); }

/// Least common multiple of all denominators (1 for an empty range).
inline Integer common_denominator(std::span<const Rational> values) {
    Integer l = 1;
    for (const auto& v : values) l = lcm(l, denominator_of(v));
    return l;
}

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline bool is_zero_vector(std::span<const Rational> v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

/// Positive multiple of v with coprime integer entries (zero stays zero).
inline RationalVector primitive(std::span<const Rational> v) {
    RationalVector out(v.begin(), v.end());
    if (is_zero_vector(v)) return out;
    Integer den = common_denominator(v);
    Integer g = 0;
    for (auto& x : out) {
        x *= den;
        g = gcd(g, numerator_of(x));
    }
    for (auto& x : out) x /= g;
    return out;
}

inline Rational pow_int(const Rational& base, long exponent) {
    if (exponent == 0) return Rational(1);
    if (base == 0 && exponent < 0) throw DomainError("zero to a negative power");
    const auto e = static_cast<unsigned>(exponent < 0 ? -exponent : exponent);
    Rational result(boost::multiprecision::pow(numerator_of(base), e), boost::multiprecision::pow(denominator_of(base), e));
    return exponent < 0 ? Rational(1 / result) : result;
}

/// Exact q-th root of a non-negative integer, if it exists.
inline std::optional<Integer> exact_integer_root(const Integer& value, unsigned long q) {
    if (value < 0) return std::nullopt;
    Integer root;
    if (mpz_root(root.backend().data(), value.backend().data(), q) == 0) return std::nullopt;
    return root;
}

/// x^e for positive rational x and rational e when the result is rational.
inline std::optional<Rational> exact_pow(const Rational& x, const Rational& e) {
    if (x <= 0) throw DomainError("exact power of a non-positive base");
    const Integer q = denominator_of(e);
    if (q > 1000000) return std::nullopt;
    const auto qq = q.convert_to<unsigned long>();
    auto num_root = exact_integer_root(numerator_of(x), qq);
    auto den_root = exact_integer_root(denominator_of(x), qq);
    if (!num_root || !den_root) return std::nullopt;
    const Integer p = numerator_of(e);
    if (abs(Rational(p)) > 1000000) throw OverflowError("exact power exponent too large");
    return pow_int(Rational(*num_root, *den_root), p.convert_to<long>());
}

inline Rational floor_rational(const Rational& q) {
    Integer n = numerator_of(q), d = denominator_of(q);
    Integer f = n / d;  // truncates toward zero
    if (n < 0 && f * d != n) f -= 1;
    return Rational(f);
}

/// The rational of smallest denominator (then smallest magnitude) in the
/// open interval (lo, hi), 0 <= lo < hi; Stern-Brocot descent.
inline Rational simplest_between(const Rational& lo, const Rational& hi) {
    if (!(lo < hi)) throw DomainError("simplest_between: empty interval");
    Rational fl = floor_rational(lo);
    if (fl + 1 < hi) return fl + 1;
    // lo and hi share the integer part fl (hi may equal fl + 1).
    Rational a = lo - fl, b = hi - fl;
    if (a == 0) {
        // (0, b) with b <= 1: 1/k with k the least integer such that 1/k < b.
        Rational k = floor_rational(1 / b) + 1;
        return fl + 1 / k;
    }
    // a in (0,1): recurse on reciprocals 1/b < 1/a.
    return fl + 1 / simplest_between(1 / b, 1 / a);
}

/// Nearest dyadic rational to x with the given number of fractional bits.
inline Rational dyadic_round(double x, int bits) {
    const double scaled = std::nearbyint(std::ldexp(x, bits));
    Rational r(scaled);
    return r / pow_int(Rational(2), bits);
}

inline RationalVector to_rational_vector(std::span<const long> values) {
    return RationalVector(values.begin(), values.end());
}

inline std::vector<double> to_double_vector(std::span<const Rational> values) {
    std::vector<double> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(to_double(v));
    return out;
}

}  // namespace troponeg

#endif  // TROPONEG_RATIONAL_HPP
