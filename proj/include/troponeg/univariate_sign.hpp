#ifndef TROPONEG_UNIVARIATE_SIGN_HPP
#define TROPONEG_UNIVARIATE_SIGN_HPP

// Exact sign decisions for univariate signomials on (0, inf). Rational
// exponents are cleared by t = s^L, which preserves signs, and the lowest
// power of s is factored out; what remains is an integer polynomial whose
// positive real roots are isolated with Sturm sequences.

#include <optional>
#include <vector>

#include "troponeg/polynomial.hpp"
#include "troponeg/signomial.hpp"

namespace troponeg {

/// g(s^L) = s^shift * p(s) for s > 0.
struct IntegerizedUnivariate {
    Polynomial p;
    Integer L = 1;
    Rational shift = 0;

    /// t = s^L.
    Rational t_of(const Rational& s) const { return pow_int(s, L.convert_to<long>()); }
};

inline Integer exponent_denominator_lcm(const UnivariateSignomial& g) {
    Integer L = 1;
    for (const auto& term : g.terms()) L = lcm(L, denominator_of(term.exponent));
    return L;
}

inline IntegerizedUnivariate integerize(const UnivariateSignomial& g, const Integer& L) {
    IntegerizedUnivariate out;
    out.L = L;
    if (g.is_zero()) return out;
    const Rational lowest = g.terms().front().exponent * Rational(L);
    std::vector<Rational> c;
    for (const auto& term : g.terms()) {
        const Rational k = term.exponent * Rational(L) - lowest;
        if (!is_integer(k)) throw DomainError("exponent denominators do not divide L");
        const auto idx = numerator_of(k).convert_to<std::size_t>();
        if (idx >= 1u << 20) throw DomainError("integerized degree too large");
        if (c.size() <= idx) c.resize(idx + 1, Rational(0));
        c[idx] += term.coefficient;
    }
    out.p = Polynomial(std::move(c));
    out.shift = lowest;
    return out;
}

inline IntegerizedUnivariate integerize(const UnivariateSignomial& g) {
    return integerize(g, exponent_denominator_lcm(g));
}

enum class UnivariateSign { PositiveOnDomain, NonnegativeWithRoot, TakesNegative };

inline const char* to_string(UnivariateSign s) {
    switch (s) {
        case UnivariateSign::PositiveOnDomain: return "positive-on-domain";
        case UnivariateSign::NonnegativeWithRoot: return "nonnegative-with-root";
        case UnivariateSign::TakesNegative: return "takes-negative";
    }
    return "takes-negative";
}

struct UnivariateSignResult {
    UnivariateSign kind = UnivariateSign::PositiveOnDomain;
    std::optional<Rational> witness;  // t with g(t) < 0, or an exact root
    std::optional<Rational> value;    // g(witness)
};

inline UnivariateSignResult exact_univariate_sign(const UnivariateSignomial& g) {
    UnivariateSignResult out;
    if (g.is_zero()) {
        out.kind = UnivariateSign::NonnegativeWithRoot;
        out.witness = Rational(1);
        out.value = Rational(0);
        return out;
    }
    const IntegerizedUnivariate ig = integerize(g);
    const std::vector<RootCell> cells = isolate_positive_roots(ig.p);
    for (const Rational& s : sign_region_samples(cells)) {
        if (ig.p(s) < 0) {
            out.kind = UnivariateSign::TakesNegative;
            out.witness = ig.t_of(s);
            out.value = g.evaluate(*out.witness);
            return out;
        }
    }
    if (cells.empty()) return out;
    out.kind = UnivariateSign::NonnegativeWithRoot;
    for (const auto& cell : cells)
        if (cell.exact) {
            out.witness = ig.t_of(cell.lower);
            out.value = Rational(0);
            break;
        }
    return out;
}

/// A t > 0 with g(t) < 0 for every g, or nullopt when none exists. Exact:
/// all g change sign only at roots of the product of their integerized
/// polynomials, so one sample per root-free interval decides.
inline std::optional<Rational> joint_negative_point(const std::vector<UnivariateSignomial>& gs) {
    if (gs.empty()) return Rational(1);
    Integer L = 1;
    for (const auto& g : gs) {
        if (g.is_zero()) return std::nullopt;
        L = lcm(L, exponent_denominator_lcm(g));
    }
    std::vector<IntegerizedUnivariate> ps;
    Polynomial product(std::vector<Rational>{Rational(1)});
    for (const auto& g : gs) {
        ps.push_back(integerize(g, L));
        product = product * ps.back().p.square_free();
    }
    for (const Rational& s : sign_region_samples(isolate_positive_roots(product))) {
        bool all = true;
        for (const auto& ig : ps)
            if (!(ig.p(s) < 0)) {
                all = false;
                break;
            }
        if (all) return pow_int(s, L.convert_to<long>());
    }
    return std::nullopt;
}

/// Rational B such that g has no root in (B, inf); 0 when g has no
/// positive roots. The largest root cell is narrowed to relative width
/// 2^-20 before its upper end is mapped back to t.
inline Rational largest_root_upper_bound(const UnivariateSignomial& g) {
    if (g.is_zero()) throw DomainError("the zero signomial vanishes everywhere");
    const IntegerizedUnivariate ig = integerize(g);
    const std::vector<RootCell> cells = isolate_positive_roots(ig.p);
    if (cells.empty()) return 0;
    RootCell top = cells.back();
    if (!top.exact) {
        const Polynomial sf = ig.p.square_free();
        while (!top.exact && (top.upper - top.lower) * (1 << 20) > top.upper) {
            const Rational mid = (top.lower + top.upper) / 2;
            const Rational v = sf(mid);
            if (v == 0) {
                top = {mid, mid, true};
            } else if ((v > 0) == (sf(top.upper) > 0)) {
                top.upper = mid;
            } else {
                top.lower = mid;
            }
        }
    }
    return ig.t_of(top.upper);
}

}  // namespace troponeg

#endif  // TROPONEG_UNIVARIATE_SIGN_HPP
