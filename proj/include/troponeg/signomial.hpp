#ifndef TROPONEG_SIGNOMIAL_HPP
#define TROPONEG_SIGNOMIAL_HPP

// Signomials f(x) = sum_mu c_mu x^mu on the positive orthant, with rational
// exponents and coefficients, plus their univariate restrictions along
// monomial curves t -> t^v * x.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "troponeg/rational.hpp"

namespace troponeg {

using ExponentVector = RationalVector;

/// Finite map from exponent vectors to nonzero coefficients. The empty map
/// is the zero signomial.
class Signomial {
public:
    using TermMap = std::map<ExponentVector, Rational>;

    explicit Signomial(std::size_t dimension = 0) : dimension_(dimension) {}

    Signomial(std::size_t dimension, std::initializer_list<std::pair<ExponentVector, Rational>> terms)
        : dimension_(dimension) {
        for (const auto& [e, c] : terms) add_term(e, c);
    }

    /// Adds c * x^e, merging with an existing term; zero sums are dropped.
    void add_term(const ExponentVector& exponent, const Rational& coefficient) {
        if (exponent.size() != dimension_)
            throw DomainError("exponent vector of length " + std::to_string(exponent.size()) +
                              " in a signomial of dimension " + std::to_string(dimension_));
        if (coefficient == 0) return;
        auto [it, inserted] = terms_.try_emplace(exponent, coefficient);
        if (!inserted) {
            it->second += coefficient;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::size_t dimension() const { return dimension_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    std::vector<ExponentVector> support() const {
        std::vector<ExponentVector> out;
        out.reserve(terms_.size());
        for (const auto& [e, c] : terms_) out.push_back(e);
        return out;
    }

    Rational coefficient(const ExponentVector& exponent) const {
        auto it = terms_.find(exponent);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    bool all_coefficients_positive() const {
        return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second > 0; });
    }

    friend bool operator==(const Signomial& a, const Signomial& b) {
        return a.dimension_ == b.dimension_ && a.terms_ == b.terms_;
    }

private:
    std::size_t dimension_;
    TermMap terms_;
};

struct SignedSupport {
    std::vector<ExponentVector> positive;
    std::vector<ExponentVector> negative;
};

inline SignedSupport signed_support(const Signomial& f) {
    SignedSupport s;
    for (const auto& [e, c] : f.terms()) (c > 0 ? s.positive : s.negative).push_back(e);
    return s;
}

/// f restricted to the exponents accepted by the predicate.
inline Signomial restrict(const Signomial& f, const std::function<bool(const ExponentVector&)>& keep) {
    Signomial out(f.dimension());
    for (const auto& [e, c] : f.terms())
        if (keep(e)) out.add_term(e, c);
    return out;
}

inline Signomial restrict(const Signomial& f, const std::set<ExponentVector>& exponents) {
    return restrict(f, [&](const ExponentVector& e) { return exponents.count(e) > 0; });
}

/// Restriction to the face cut out by v: the terms maximising v . mu.
inline Signomial restrict_to_direction(const Signomial& f, std::span<const Rational> v) {
    if (f.is_zero()) return f;
    std::optional<Rational> best;
    for (const auto& [e, c] : f.terms()) {
        Rational s = dot(v, e);
        if (!best || s > *best) best = s;
    }
    return restrict(f, [&](const ExponentVector& e) { return dot(v, e) == *best; });
}

namespace detail {

inline void check_point(const Signomial& f, std::size_t length) {
    if (length != f.dimension())
        throw DomainError("point of length " + std::to_string(length) + " for a signomial of dimension " +
                          std::to_string(f.dimension()));
}

}  // namespace detail

/// Exact value f(x). Every x_i^mu_i must be rational (e.g. integer
/// exponents, or x_i a perfect power); otherwise a DomainError is raised.
inline Rational evaluate(const Signomial& f, std::span<const Rational> x) {
    detail::check_point(f, x.size());
    for (const auto& xi : x)
        if (xi <= 0) throw DomainError("signomials are evaluated on the positive orthant only");
    Rational sum = 0;
    for (const auto& [e, c] : f.terms()) {
        Rational term = c;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (e[i] == 0) continue;
            auto p = exact_pow(x[i], e[i]);
            if (!p) throw DomainError("x_" + std::to_string(i + 1) + "^" + to_string(e[i]) + " is not rational at x_" +
                                      std::to_string(i + 1) + " = " + to_string(x[i]));
            term *= *p;
        }
        sum += term;
    }
    return sum;
}

enum class Sign { Negative, Zero, Positive, Indeterminate };

inline const char* to_string(Sign s) {
    switch (s) {
        case Sign::Negative: return "negative";
        case Sign::Zero: return "zero";
        case Sign::Positive: return "positive";
        case Sign::Indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

/// Floating value with a forward error bound; the sign is only claimed when
/// the value clears the bound.
template <class Real>
struct FloatEvaluation {
    Real value;
    Real error_bound;
    Sign sign() const {
        if (value > error_bound) return Sign::Positive;
        if (-value > error_bound) return Sign::Negative;
        return Sign::Indeterminate;
    }
};

/// f(x) in floating arithmetic of type Real (double, long double or a
/// boost::multiprecision float for higher binary precision).
template <class Real>
FloatEvaluation<Real> evaluate_float(const Signomial& f, std::span<const Real> x) {
    using std::abs;
    using std::isfinite;
    using std::log;
    using std::exp;
    detail::check_point(f, x.size());
    std::vector<Real> logs;
    logs.reserve(x.size());
    for (const auto& xi : x) {
        if (!(xi > 0)) throw DomainError("signomials are evaluated on the positive orthant only");
        logs.push_back(log(xi));
    }
    const Real unit = std::numeric_limits<Real>::epsilon();
    Real sum = 0, magnitude = 0, exponent_scale = 0;
    for (const auto& [e, c] : f.terms()) {
        Real l = 0, l_abs = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (e[i] == 0) continue;
            Real ei = e[i].template convert_to<Real>();
            l += ei * logs[i];
            l_abs += abs(ei * logs[i]);
        }
        Real term = c.template convert_to<Real>() * exp(l);
        if (!isfinite(static_cast<double>(term)))
            throw OverflowError("term overflow while evaluating a signomial");
        sum += term;
        magnitude += abs(term);
        exponent_scale = std::max(exponent_scale, l_abs);
    }
    if (!isfinite(static_cast<double>(magnitude))) throw OverflowError("overflow while evaluating a signomial");
    // exp(l) inherits the absolute error of l, proportional to |l|.
    const Real factor = Real(4) * (Real(static_cast<double>(f.size() + x.size() + 4)) + exponent_scale) * unit;
    return {sum, factor * magnitude};
}

/// Sign-stable evaluation of f at x = base^y (log coordinates), scaled by
/// the largest monomial so that no overflow occurs. value/magnitude are the
/// scaled signed sum and scaled sum of absolute terms.
struct LogDomainValue {
    double value = 0;
    double magnitude = 0;
    double error_bound = 0;
    double log_scale = 0;  // natural log of the common scale factor
    Sign sign() const {
        if (value > error_bound) return Sign::Positive;
        if (-value > error_bound) return Sign::Negative;
        return Sign::Indeterminate;
    }
    double normalized() const { return magnitude > 0 ? value / magnitude : 0.0; }
};

/// Precomputed double copy of a signomial for repeated log-domain evaluation.
class CompiledSignomial {
public:
    explicit CompiledSignomial(const Signomial& f) : dimension_(f.dimension()) {
        for (const auto& [e, c] : f.terms()) {
            exponents_.push_back(to_double_vector(e));
            coefficients_.push_back(to_double(c));
        }
    }

    std::size_t dimension() const { return dimension_; }

    /// Evaluates at x = exp(log_base * y).
    LogDomainValue at_log(std::span<const double> y, double log_base = 1.0) const {
        std::vector<double>& scratch = scratch_;
        scratch.resize(coefficients_.size());
        double top = -std::numeric_limits<double>::infinity();
        double exponent_scale = 0;
        for (std::size_t k = 0; k < coefficients_.size(); ++k) {
            double l = 0, l_abs = 0;
            for (std::size_t i = 0; i < dimension_; ++i) {
                const double p = exponents_[k][i] * y[i];
                l += p;
                l_abs += std::abs(p);
            }
            scratch[k] = l * log_base;
            top = std::max(top, scratch[k]);
            exponent_scale = std::max(exponent_scale, l_abs * std::abs(log_base));
        }
        LogDomainValue out;
        if (coefficients_.empty()) return out;
        for (std::size_t k = 0; k < coefficients_.size(); ++k) {
            const double term = coefficients_[k] * std::exp(scratch[k] - top);
            out.value += term;
            out.magnitude += std::abs(term);
        }
        out.log_scale = top;
        const double unit = std::numeric_limits<double>::epsilon();
        out.error_bound = 4.0 * (static_cast<double>(coefficients_.size() + dimension_ + 4) + 2.0 * exponent_scale) * unit *
                          out.magnitude;
        return out;
    }

private:
    std::size_t dimension_;
    std::vector<std::vector<double>> exponents_;
    std::vector<double> coefficients_;
    mutable std::vector<double> scratch_;
};

/// g(t) = sum a_i t^nu_i with strictly increasing exponents and nonzero
/// coefficients.
class UnivariateSignomial {
public:
    struct Term {
        Rational exponent;
        Rational coefficient;
        friend bool operator==(const Term&, const Term&) = default;
    };

    UnivariateSignomial() = default;

    /// Merges like exponents and drops exact zero sums.
    explicit UnivariateSignomial(std::vector<Term> terms) {
        std::map<Rational, Rational> merged;
        for (auto& t : terms) merged[t.exponent] += t.coefficient;
        for (auto& [e, c] : merged)
            if (c != 0) terms_.push_back({e, c});
    }

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    /// Coefficient of the largest exponent (0 for the zero signomial).
    Rational leading_coefficient() const { return terms_.empty() ? Rational(0) : terms_.back().coefficient; }

    Rational evaluate(const Rational& t) const {
        if (t <= 0) throw DomainError("univariate signomials are evaluated on t > 0");
        Rational s = 0;
        for (const auto& term : terms_) {
            auto p = exact_pow(t, term.exponent);
            if (!p) throw DomainError("t^" + to_string(term.exponent) + " is not rational at t = " + to_string(t));
            s += term.coefficient * *p;
        }
        return s;
    }

    double evaluate_double(double t) const {
        double s = 0;
        for (const auto& term : terms_) s += to_double(term.coefficient) * std::pow(t, to_double(term.exponent));
        return s;
    }

    friend bool operator==(const UnivariateSignomial&, const UnivariateSignomial&) = default;

private:
    std::vector<Term> terms_;
};

/// t -> f(t^v * x) = sum c_mu x^mu t^(v . mu), like exponents merged.
inline UnivariateSignomial induced_univariate(const Signomial& f, std::span<const Rational> v,
                                              std::span<const Rational> x) {
    detail::check_point(f, v.size());
    detail::check_point(f, x.size());
    std::vector<UnivariateSignomial::Term> terms;
    for (const auto& [e, c] : f.terms()) {
        Signomial mono(f.dimension());
        mono.add_term(e, c);
        terms.push_back({dot(v, e), evaluate(mono, x)});
    }
    return UnivariateSignomial(std::move(terms));
}

/// Sum of the coefficients c_mu x^mu over the face cut out by v; matches the
/// top coefficient of induced_univariate unless it cancels to zero.
inline Rational leading_coefficient(const Signomial& f, std::span<const Rational> v, std::span<const Rational> x) {
    return evaluate(restrict_to_direction(f, v), x);
}

}  // namespace troponeg

#endif  // TROPONEG_SIGNOMIAL_HPP
