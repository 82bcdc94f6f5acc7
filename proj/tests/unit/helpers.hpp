#ifndef TROPONEG_TEST_HELPERS_HPP
#define TROPONEG_TEST_HELPERS_HPP

#include <random>
#include <set>
#include <string>
#include <vector>

#include "troponeg/cone.hpp"
#include "troponeg/io/parse.hpp"
#include "troponeg/signomial.hpp"

namespace testing_support {

using namespace troponeg;

inline Signomial sig(const std::string& text, std::vector<std::string> vars = {}) {
    return io::parse_signomial(text, std::move(vars));
}

inline RationalVector vec(std::initializer_list<long> v) { return RationalVector(v.begin(), v.end()); }

inline RationalVector vecq(std::initializer_list<Rational> v) { return RationalVector(v.begin(), v.end()); }

inline Cone ray_cone(std::size_t n, std::vector<RationalVector> rays) { return Cone::from_generators(n, rays); }

/// Random integer vector with entries in [-r, r].
inline RationalVector random_vector(std::mt19937_64& rng, std::size_t n, long r) {
    std::uniform_int_distribution<long> d(-r, r);
    RationalVector v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

/// Random signomial whose support is in convex position: points on the
/// moment curve / a strictly convex parabola, random signs.
inline Signomial random_maximally_sparse(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<long> pick(0, 6), coin(0, 1), size(n + 1, n + 4);
    std::set<long> params;
    const long m = size(rng);
    while (static_cast<long>(params.size()) < m) params.insert(pick(rng));
    Signomial f(n);
    bool any_negative = false;
    for (long s : params) {
        ExponentVector e(n);
        for (std::size_t j = 0; j < n; ++j) e[j] = pow_int(Rational(s), static_cast<long>(j + 1));
        const bool neg = coin(rng) == 1;
        any_negative = any_negative || neg;
        f.add_term(e, neg ? Rational(-1 - static_cast<long>(coin(rng))) : Rational(1 + static_cast<long>(coin(rng))));
    }
    if (!any_negative) {
        const auto e = f.terms().begin()->first;
        f.add_term(e, -3 * f.coefficient(e));
    }
    return f;
}

}  // namespace testing_support

#endif
