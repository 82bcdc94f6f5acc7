#ifndef TROPONEG_POLYNOMIAL_HPP
#define TROPONEG_POLYNOMIAL_HPP

// Dense univariate polynomials over Q with Sturm-sequence real root
// isolation on (0, inf). Used to decide signs of univariate signomials
// exactly after clearing exponent denominators.

#include <algorithm>
#include <optional>
#include <vector>

#include "troponeg/rational.hpp"

namespace troponeg {

/// Coefficients by ascending degree; no trailing zeros (zero polynomial is empty).
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coefficients) : c_(std::move(coefficients)) { trim(); }

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coefficients() const { return c_; }
    const Rational& leading() const { return c_.back(); }
    Rational operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

    Rational operator()(const Rational& x) const {
        Rational acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Polynomial derivative() const {
        std::vector<Rational> d;
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
        return Polynomial(std::move(d));
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(r));
    }

    friend Polynomial operator-(const Polynomial& p) {
        std::vector<Rational> r = p.c_;
        for (auto& x : r) x = -x;
        return Polynomial(std::move(r));
    }

    /// Euclidean division: returns {quotient, remainder}.
    static std::pair<Polynomial, Polynomial> divide(const Polynomial& num, const Polynomial& den) {
        if (den.is_zero()) throw DomainError("polynomial division by zero");
        std::vector<Rational> rem = num.c_;
        if (num.degree() < den.degree()) return {Polynomial(), num};
        std::vector<Rational> quo(num.c_.size() - den.c_.size() + 1, Rational(0));
        for (long k = num.degree() - den.degree(); k >= 0; --k) {
            const Rational q = rem[k + den.degree()] / den.leading();
            quo[k] = q;
            if (q == 0) continue;
            for (long j = 0; j <= den.degree(); ++j) rem[k + j] -= q * den.c_[j];
        }
        rem.resize(den.c_.size() - 1);
        return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
    }

    Polynomial monic() const {
        if (is_zero()) return *this;
        std::vector<Rational> r = c_;
        const Rational lead = leading();
        for (auto& x : r) x /= lead;
        return Polynomial(std::move(r));
    }

    static Polynomial gcd(Polynomial a, Polynomial b) {
        while (!b.is_zero()) {
            Polynomial r = divide(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    /// p / gcd(p, p'): same roots, all simple.
    Polynomial square_free() const {
        if (degree() < 1) return *this;
        Polynomial g = gcd(*this, derivative());
        return divide(*this, g).first;
    }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

/// Sturm chain p0 = p, p1 = p', p_{k+1} = -rem(p_{k-1}, p_k).
class SturmSequence {
public:
    explicit SturmSequence(const Polynomial& p) {
        chain_.push_back(p);
        if (p.degree() < 1) return;
        chain_.push_back(p.derivative());
        while (true) {
            Polynomial r = Polynomial::divide(chain_[chain_.size() - 2], chain_.back()).second;
            if (r.is_zero()) break;
            chain_.push_back(-r);
        }
    }

    /// Sign variations at x.
    int variations(const Rational& x) const {
        int count = 0, last = 0;
        for (const auto& p : chain_) {
            const int s = p(x).sign();
            if (s == 0) continue;
            if (last != 0 && s != last) ++count;
            last = s;
        }
        return count;
    }

    int variations_at_infinity() const {
        int count = 0, last = 0;
        for (const auto& p : chain_) {
            if (p.is_zero()) continue;
            const int s = p.leading().sign();
            if (last != 0 && s != last) ++count;
            last = s;
        }
        return count;
    }

    /// Number of distinct real roots in (a, b].
    int count(const Rational& a, const Rational& b) const { return variations(a) - variations(b); }
    int count_above(const Rational& a) const { return variations(a) - variations_at_infinity(); }

private:
    std::vector<Polynomial> chain_;
};

/// A positive real root, either exact or isolated in the open interval
/// (lower, upper) whose endpoints are not roots.
struct RootCell {
    Rational lower;
    Rational upper;
    bool exact = false;
};

/// Cauchy bound 1 + max |a_i / a_n| on the modulus of all roots.
inline Rational cauchy_root_bound(const Polynomial& p) {
    Rational m = 0;
    for (long i = 0; i < p.degree(); ++i) m = std::max(m, abs(p[i] / p.leading()));
    return 1 + m;
}

/// Isolates the distinct positive roots of p (p(0) may vanish; 0 is never
/// reported), sorted ascending. Cell endpoints are never roots of p and
/// lower bounds of open cells are strictly positive.
inline std::vector<RootCell> isolate_positive_roots(const Polynomial& p) {
    std::vector<RootCell> cells;
    if (p.degree() < 1) return cells;
    const Polynomial sf = p.square_free();
    const SturmSequence sturm(sf);
    const Rational bound = cauchy_root_bound(sf);

    struct Pending {
        Rational a, b;
        int roots;
    };
    std::vector<Pending> stack{{Rational(0), bound, sturm.count(Rational(0), bound)}};
    while (!stack.empty()) {
        Pending cur = stack.back();
        stack.pop_back();
        if (cur.roots == 0) continue;
        if (sf(cur.b) == 0 && cur.roots == 1) {
            cells.push_back({cur.b, cur.b, true});
            continue;
        }
        if (cur.roots == 1 && cur.a > 0 && sf(cur.a) != 0 && sf(cur.b) != 0) {
            cells.push_back({cur.a, cur.b, false});
            continue;
        }
        const Rational mid = (cur.a + cur.b) / 2;
        int left = sturm.count(cur.a, mid);
        stack.push_back({mid, cur.b, cur.roots - left});
        stack.push_back({cur.a, mid, left});
    }
    std::sort(cells.begin(), cells.end(), [](const RootCell& x, const RootCell& y) { return x.lower < y.lower; });
    return cells;
}

/// One rational sample inside every maximal open interval of (0, inf) that
/// avoids the roots; p has constant sign on each such interval.
inline std::vector<Rational> sign_region_samples(const std::vector<RootCell>& cells) {
    std::vector<Rational> samples;
    Rational left = 0;
    bool left_is_root = true;  // 0 is excluded from the domain
    for (const auto& cell : cells) {
        if (left < cell.lower) {
            samples.push_back(simplest_between(left, cell.lower));
        } else if (!left_is_root && left == cell.lower && !cell.exact) {
            samples.push_back(left);
        }
        left = cell.upper;
        left_is_root = cell.exact;
    }
    samples.push_back(floor_rational(left) + 1);
    return samples;
}

/// Narrows an open cell until its upper end is at most `limit` or it is
/// certain the root exceeds `limit`.
inline RootCell refine_below(const Polynomial& p, RootCell cell, const Rational& limit) {
    const Polynomial sf = p.square_free();
    const SturmSequence sturm(sf);
    while (!cell.exact && cell.lower < limit && cell.upper > limit) {
        const Rational mid = (cell.lower + cell.upper) / 2;
        if (sf(mid) == 0) {
            cell = {mid, mid, true};
        } else if (sturm.count(cell.lower, mid) == 1) {
            cell.upper = mid;
        } else {
            cell.lower = mid;
        }
    }
    return cell;
}

}  // namespace troponeg

#endif  // TROPONEG_POLYNOMIAL_HPP
