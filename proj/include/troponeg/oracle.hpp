#ifndef TROPONEG_ORACLE_HPP
#define TROPONEG_ORACLE_HPP

// Decides whether signomials jointly take negative values on the positive
// orthant. Exact strategies run first (sign patterns, a small probe grid,
// pushing along a common negative vertex, reduction of collinear supports
// to one variable); a multistart Nelder-Mead search in logarithmic
// coordinates follows, and any floating candidate is re-verified exactly.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "troponeg/negative_cones.hpp"
#include "troponeg/parallel.hpp"
#include "troponeg/signomial.hpp"
#include "troponeg/univariate_sign.hpp"

namespace troponeg {

enum class NonnegativeReason { AllPositiveCoefficients, ExactUnivariate, NegativeVertexAbsentMonomial };

inline const char* to_string(NonnegativeReason r) {
    switch (r) {
        case NonnegativeReason::AllPositiveCoefficients: return "all-positive-coefficients";
        case NonnegativeReason::ExactUnivariate: return "exact-univariate";
        case NonnegativeReason::NegativeVertexAbsentMonomial: return "positive-monomial";
    }
    return "all-positive-coefficients";
}

struct CertNegative {
    RationalVector witness;
    Rational value;                // max over the inputs at the witness
    std::vector<Rational> values;  // one per input
    std::string strategy;
};

struct CertNonnegative {
    NonnegativeReason reason;
    std::size_t index = 0;  // input carrying a sign-only certificate
};

struct Unknown {
    double best_value = std::numeric_limits<double>::infinity();  // normalised, see minimise
    std::size_t evaluations = 0;
};

using Verdict = std::variant<CertNegative, CertNonnegative, Unknown>;

inline bool is_negative(const Verdict& v) { return std::holds_alternative<CertNegative>(v); }
inline bool is_nonnegative(const Verdict& v) { return std::holds_alternative<CertNonnegative>(v); }
inline bool is_unknown(const Verdict& v) { return std::holds_alternative<Unknown>(v); }

inline const char* verdict_name(const Verdict& v) {
    if (is_negative(v)) return "cert-negative";
    if (is_nonnegative(v)) return "cert-nonnegative";
    return "unknown";
}

struct OracleConfig {
    std::size_t starts = 24;
    std::size_t budget = 1500;  // Nelder-Mead iterations per start
    double tolerance = 1e-12;
    std::uint64_t seed = 7;
    std::size_t t_scan_resolution = 64;
    double log_box = 6.0;    // starts drawn from [-log_box, log_box]^n in ln x
    double clip = 30.0;      // search never leaves |ln x_i| <= clip
    std::size_t threads = 1;
    Rational interior_eps = Rational(1, 4);
    Rational boundary_eps = Rational(1, 1000);

    void validate() const {
        if (!(tolerance > 0)) throw DomainError("oracle tolerance must be positive");
        if (starts < 1 || budget < 1) throw DomainError("oracle budgets must be at least 1");
        if (!(log_box > 0) || !(clip >= log_box)) throw DomainError("invalid oracle search box");
        if (interior_eps <= 0 || interior_eps >= 1 || boundary_eps <= 0 || boundary_eps >= 1)
            throw DomainError("perturbation sizes must lie in (0, 1)");
    }
};

// ---------------------------------------------------------------------------
// Cauchy-type root bounds and pushing thresholds

namespace detail {

/// The smallest multiple u of a power of two step (about 2^-bits relative
/// to the result) with u^delta >= base, for base > 0 and delta > 0; exact
/// via u^a >= base^b where delta = a/b.
inline Rational dyadic_root_ceiling(const Rational& base, const Rational& delta, int bits = 40) {
    if (auto exact = exact_pow(base, 1 / delta)) return *exact;
    const long a = numerator_of(delta).convert_to<long>();
    const long b = denominator_of(delta).convert_to<long>();
    const Rational target = pow_int(base, b);
    auto ok = [&](const Rational& u) { return u > 0 && pow_int(u, a) >= target; };
    const double approx = std::exp(std::log(to_double(base)) / to_double(delta));
    if (!std::isfinite(approx)) throw OverflowError("cauchy bound exceeds the double range");
    const Rational step = pow_int(Rational(2), std::ilogb(approx) - bits);
    Rational u = floor_rational(Rational(approx) / step) * step;
    if (u <= 0) u = step;
    while (!ok(u)) u += step;
    while (u - step > 0 && ok(u - step)) u -= step;
    return u;
}

/// (a_d - eps) t^nu_d + sum_{p <= i < d} a_i t^nu_i > 0 on t > 0, decided
/// exactly (1-based p).
inline bool trailing_block_positive(const UnivariateSignomial& g, std::size_t p, const Rational& eps) {
    const auto& terms = g.terms();
    std::vector<UnivariateSignomial::Term> block;
    for (std::size_t i = p - 1; i < terms.size(); ++i) block.push_back(terms[i]);
    block.back().coefficient -= eps;
    const UnivariateSignomial h(std::move(block));
    if (h.is_zero()) return false;
    if (std::all_of(h.terms().begin(), h.terms().end(), [](const auto& t) { return t.coefficient > 0; })) return true;
    return exact_univariate_sign(h).kind == UnivariateSign::PositiveOnDomain;
}

}  // namespace detail

/// max{1, (sum_{i<p} |a_i| / eps)^(1/delta)}: no positive root of g exceeds
/// it once the trailing block from p on (with a_d lowered by eps) is
/// positive. The premise is certified here; the result is exact when the
/// power is rational, and otherwise rounded up to a dyadic.
inline Rational cauchy_bound(const UnivariateSignomial& g, std::size_t p, const Rational& eps, const Rational& delta) {
    const auto& terms = g.terms();
    const std::size_t d = terms.size();
    if (d == 0) throw DomainError("cauchy bound of the zero signomial");
    if (p < 1 || p > d) throw DomainError("cauchy bound: p must lie in 1..d");
    if (eps <= 0) throw DomainError("cauchy bound: eps must be positive");
    if (p >= 2 && (delta <= 0 || delta > terms[p - 1].exponent - terms[p - 2].exponent))
        throw DomainError("cauchy bound: need 0 < delta <= nu_p - nu_(p-1)");
    if (!detail::trailing_block_positive(g, p, eps)) throw DomainError("cauchy bound: premise not certified");
    if (p == 1) return 1;
    Rational lower = 0;
    for (std::size_t i = 0; i + 1 < p; ++i) lower += abs(terms[i].coefficient);
    const Rational base = lower / eps;
    if (base <= 1) return 1;
    return std::max(Rational(1), detail::dyadic_root_ceiling(base, delta));
}

struct PushingThreshold {
    Rational T;                    // min of the two bounds below
    std::optional<Rational> cauchy;  // best certified Cauchy-type bound
    Rational largest_root;         // exact upper bound on the largest root
    std::size_t p = 0;             // index attaining the Cauchy bound
};

/// T such that f(t^v * x) < 0 for every t > T. Requires a negative leading
/// coefficient of t -> f(t^v * x); this holds whenever the face restriction
/// cut out by v is negative at x, and also when it vanishes and the next
/// surviving term is negative. With refine = false the root isolation is
/// skipped whenever a Cauchy-type bound exists (it then also bounds the
/// largest root).
inline PushingThreshold pushing_threshold(const Signomial& f, std::span<const Rational> v, std::span<const Rational> x,
                                          bool refine = true) {
    const UnivariateSignomial u = induced_univariate(f, v, x);
    if (!(u.leading_coefficient() < 0))
        throw DomainError("pushing threshold: f(t^v * x) does not have a negative leading coefficient");
    std::vector<UnivariateSignomial::Term> flipped;
    for (const auto& t : u.terms()) flipped.push_back({t.exponent, -t.coefficient});
    const UnivariateSignomial h(std::move(flipped));
    PushingThreshold out;
    if (h.size() == 1) return out;  // a single negative term
    const auto& terms = h.terms();
    const Rational eps = terms.back().coefficient / 2;
    for (std::size_t p = 1; p <= terms.size(); ++p) {
        if (!detail::trailing_block_positive(h, p, eps)) continue;
        const Rational delta = p >= 2 ? terms[p - 1].exponent - terms[p - 2].exponent : Rational(1);
        const Rational b = cauchy_bound(h, p, eps, delta);
        if (!out.cauchy || b < *out.cauchy) {
            out.cauchy = b;
            out.p = p;
        }
    }
    if (!refine && out.cauchy) {
        out.T = out.largest_root = *out.cauchy;
        return out;
    }
    out.largest_root = largest_root_upper_bound(h);
    out.T = out.cauchy ? std::min(*out.cauchy, out.largest_root) : out.largest_root;
    return out;
}

// ---------------------------------------------------------------------------
// Joint negativity

namespace detail {

inline Integer exponent_denominator(const std::vector<Signomial>& gs, std::size_t j) {
    Integer L = 1;
    for (const auto& g : gs)
        for (const auto& [e, c] : g.terms()) L = lcm(L, denominator_of(e[j]));
    return L;
}

inline std::optional<CertNegative> certify(const std::vector<Signomial>& gs, const RationalVector& x,
                                           const char* strategy) {
    CertNegative out;
    for (const auto& g : gs) {
        const Rational val = evaluate(g, x);
        if (!(val < 0)) return std::nullopt;
        out.values.push_back(val);
    }
    out.value = *std::max_element(out.values.begin(), out.values.end());
    out.witness = x;
    out.strategy = strategy;
    return out;
}

/// x in {1, 2^L_j, 2^-L_j}^n in lexicographic order (1 first).
inline std::optional<CertNegative> probe_grid(const std::vector<Signomial>& gs, std::size_t n) {
    const std::size_t probed = std::min<std::size_t>(n, 7);
    std::vector<std::array<Rational, 3>> values(n);
    for (std::size_t j = 0; j < n; ++j) {
        const Rational two = pow_int(Rational(2), exponent_denominator(gs, j).convert_to<long>());
        values[j] = {Rational(1), two, 1 / two};
    }
    std::size_t total = 1;
    for (std::size_t j = 0; j < probed; ++j) total *= 3;
    for (std::size_t idx = 0; idx < total; ++idx) {
        RationalVector x(n, Rational(1));
        std::size_t rest = idx;
        for (std::size_t j = probed; j-- > 0;) {
            x[j] = values[j][rest % 3];
            rest /= 3;
        }
        if (auto c = certify(gs, x, "probe")) return c;
    }
    return std::nullopt;
}

inline std::optional<CertNegative> push_common_negative_vertex(const std::vector<Signomial>& gs, std::size_t n) {
    std::vector<NewtonPolytope> Ns;
    for (const auto& g : gs) Ns.push_back(newton_polytope(g));
    const RationalVector zero(n, Rational(0));
    const auto v = common_negative_vertex(zero, Ns);
    if (!v) return std::nullopt;
    const RationalVector ones(n, Rational(1));
    Rational T = 0;
    for (const auto& g : gs) T = std::max(T, pushing_threshold(g, *v, ones, false).T);
    Integer L = 1;
    for (std::size_t j = 0; j < n; ++j) L = lcm(L, exponent_denominator(gs, j));
    const long Ll = L.convert_to<long>();
    // Smallest t = 2^(kL) beyond T; all powers t^(v.mu) are then rational.
    long k = 1;
    while (pow_int(Rational(2), k * Ll) <= T) ++k;
    for (const long last = k + 8; k <= last; ++k) {
        const Rational t = pow_int(Rational(2), k * Ll);
        RationalVector x(n);
        for (std::size_t j = 0; j < n; ++j) x[j] = pow_int(t, (*v)[j].convert_to<long>());
        if (auto c = certify(gs, x, "pushing")) return c;
    }
    return std::nullopt;
}

/// Integer a with a.d = 1 for a primitive integer vector d.
inline RationalVector bezout_vector(const RationalVector& d) {
    std::vector<Integer> a(d.size(), Integer(0));
    Integer g = 0;
    for (std::size_t j = 0; j < d.size(); ++j) {
        const Integer dj = numerator_of(d[j]);
        if (dj == 0) continue;
        if (g == 0) {
            g = dj;
            a[j] = 1;
            continue;
        }
        // r*g + s*dj = gcd(g, dj)
        Integer r0 = 1, r1 = 0, s0 = 0, s1 = 1, x = g, y = dj;
        while (y != 0) {
            const Integer q = x / y;
            Integer tmp = x - q * y;
            x = y;
            y = tmp;
            tmp = r0 - q * r1;
            r0 = r1;
            r1 = tmp;
            tmp = s0 - q * s1;
            s0 = s1;
            s1 = tmp;
        }
        for (std::size_t i = 0; i < j; ++i) a[i] *= r0;
        a[j] = s0;
        g = x;
    }
    if (g < 0)
        for (auto& ai : a) ai = -ai;
    return RationalVector(a.begin(), a.end());
}

/// Primitive integer direction of the line through all exponents, when the
/// union of the supports is collinear and not a single point.
inline std::optional<RationalVector> common_line(const std::vector<Signomial>& gs, std::size_t n) {
    std::vector<ExponentVector> pts;
    for (const auto& g : gs)
        for (const auto& [e, c] : g.terms()) pts.push_back(e);
    std::optional<RationalVector> dir;
    for (const auto& p : pts) {
        RationalVector diff(n);
        for (std::size_t j = 0; j < n; ++j) diff[j] = p[j] - pts.front()[j];
        if (is_zero_vector(diff)) continue;
        if (!dir) {
            dir = primitive(diff);
            continue;
        }
        if (linalg::rank({*dir, diff}, n) > 1) return std::nullopt;
    }
    return dir;
}

/// On a line with direction d, g(lambda^a) = lambda^(a.base) h(lambda^(a.d))
/// with a.d = 1, so the induced signomials along a decide everything.
inline std::optional<Verdict> decide_on_line(const std::vector<Signomial>& gs, std::size_t n) {
    const auto d = common_line(gs, n);
    if (!d) return std::nullopt;
    const RationalVector a = bezout_vector(*d);
    const RationalVector ones(n, Rational(1));
    std::vector<UnivariateSignomial> hs;
    for (const auto& g : gs) hs.push_back(induced_univariate(g, a, ones));
    const auto lambda = joint_negative_point(hs);
    if (!lambda) return Verdict(CertNonnegative{NonnegativeReason::ExactUnivariate, 0});
    CertNegative out;
    out.witness.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.witness[j] = pow_int(*lambda, a[j].convert_to<long>());
    for (const auto& h : hs) out.values.push_back(h.evaluate(*lambda));
    out.value = *std::max_element(out.values.begin(), out.values.end());
    out.strategy = "univariate";
    if (!(out.value < 0)) throw std::logic_error("univariate reduction produced a non-negative witness");
    return Verdict(std::move(out));
}

inline double halton(std::size_t index, unsigned base) {
    double f = 1, r = 0;
    while (index > 0) {
        f /= base;
        r += f * static_cast<double>(index % base);
        index /= base;
    }
    return r;
}

inline unsigned nth_prime(std::size_t k) {
    static constexpr unsigned primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
    if (k < std::size(primes)) return primes[k];
    unsigned p = primes[std::size(primes) - 1];
    for (std::size_t found = std::size(primes) - 1; found < k;) {
        p += 2;
        bool prime = true;
        for (unsigned q = 3; q * q <= p && prime; q += 2)
            if (p % q == 0) prime = false;
        if (prime) ++found;
    }
    return p;
}

inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Positive rational close to v with about 40 significant bits.
inline Rational rationalize_positive(double v) {
    int e = 0;
    const double m = std::frexp(v, &e);
    Rational r(static_cast<long long>(std::ldexp(m, 40)));
    if (e - 40 >= 0) return r * pow_int(Rational(2), e - 40);
    return r / pow_int(Rational(2), 40 - e);
}

struct SearchResult {
    double value = std::numeric_limits<double>::infinity();
    std::vector<double> y;
    std::size_t evaluations = 0;
};

/// Nelder-Mead on F(y) = max_i g_i(e^y) / sum |terms of g_i|(e^y).
inline SearchResult nelder_mead(const std::vector<CompiledSignomial>& gs, std::vector<double> start,
                                std::size_t budget, double clip) {
    const std::size_t n = start.size();
    SearchResult out;
    auto F = [&](std::vector<double>& y) {
        for (auto& yi : y) yi = std::clamp(yi, -clip, clip);
        double worst = -std::numeric_limits<double>::infinity();
        for (const auto& g : gs) worst = std::max(worst, g.at_log(y).normalized());
        ++out.evaluations;
        return worst;
    };
    std::vector<std::vector<double>> simplex(n + 1, start);
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += 1.0;
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fv[i] = F(simplex[i]);
    std::vector<std::size_t> order(n + 1);
    for (std::size_t it = 0; it < budget; ++it) {
        for (std::size_t i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return fv[a] < fv[b] || (fv[a] == fv[b] && simplex[a] < simplex[b]);
        });
        const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
        if (fv[worst] - fv[best] < 1e-15 && it > 10) break;
        std::vector<double> centroid(n, 0.0);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[order[k]][i] / static_cast<double>(n);
        auto along = [&](double s) {
            std::vector<double> y(n);
            for (std::size_t i = 0; i < n; ++i) y[i] = centroid[i] + s * (simplex[worst][i] - centroid[i]);
            return y;
        };
        std::vector<double> r = along(-1.0);
        const double fr = F(r);
        if (fr < fv[best]) {
            std::vector<double> e = along(-2.0);
            const double fe = F(e);
            if (fe < fr) {
                simplex[worst] = std::move(e);
                fv[worst] = fe;
            } else {
                simplex[worst] = std::move(r);
                fv[worst] = fr;
            }
        } else if (fr < fv[second]) {
            simplex[worst] = std::move(r);
            fv[worst] = fr;
        } else {
            std::vector<double> c = fr < fv[worst] ? along(-0.5) : along(0.5);
            const double fc = F(c);
            if (fc < std::min(fr, fv[worst])) {
                simplex[worst] = std::move(c);
                fv[worst] = fc;
            } else {
                for (std::size_t k = 1; k <= n; ++k) {
                    auto& s = simplex[order[k]];
                    for (std::size_t i = 0; i < n; ++i) s[i] = simplex[best][i] + 0.5 * (s[i] - simplex[best][i]);
                    fv[order[k]] = F(s);
                }
            }
        }
    }
    const auto best = std::min_element(fv.begin(), fv.end()) - fv.begin();
    out.value = fv[best];
    out.y = simplex[best];
    return out;
}

inline Verdict minimise(const std::vector<Signomial>& gs, std::size_t n, const OracleConfig& cfg) {
    std::vector<CompiledSignomial> compiled;
    for (const auto& g : gs) compiled.emplace_back(g);
    std::mt19937_64 shift_rng(cfg.seed);
    std::vector<double> shift(n);
    for (auto& s : shift) s = unit_uniform(shift_rng);
    std::vector<SearchResult> results(cfg.starts);
    parallel_for(cfg.starts, cfg.threads, [&](std::size_t k) {
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            double u = halton(k + 1, nth_prime(i)) + shift[i];
            u -= std::floor(u);
            y[i] = cfg.log_box * (2 * u - 1);
        }
        results[k] = nelder_mead(compiled, std::move(y), cfg.budget, cfg.clip);
    });
    std::size_t evaluations = 0;
    for (const auto& r : results) evaluations += r.evaluations;
    std::sort(results.begin(), results.end(), [](const SearchResult& a, const SearchResult& b) {
        return a.value < b.value || (a.value == b.value && a.y < b.y);
    });
    std::vector<Integer> L(n);
    for (std::size_t j = 0; j < n; ++j) L[j] = exponent_denominator(gs, j);
    for (const auto& r : results) {
        if (!(r.value < -cfg.tolerance)) break;
        RationalVector x(n);
        for (std::size_t j = 0; j < n; ++j) {
            const long Lj = L[j].convert_to<long>();
            x[j] = pow_int(rationalize_positive(std::exp(r.y[j] / static_cast<double>(Lj))), Lj);
        }
        if (auto c = certify(gs, x, "search")) return std::move(*c);
    }
    Unknown u;
    u.best_value = results.empty() ? u.best_value : results.front().value;
    u.evaluations = evaluations;
    return u;
}

}  // namespace detail

/// Does some x > 0 make every g negative at once?
inline Verdict decide_joint_negativity(const std::vector<Signomial>& gs, const OracleConfig& cfg = {}) {
    cfg.validate();
    if (gs.empty()) throw DomainError("oracle needs at least one signomial");
    const std::size_t n = gs.front().dimension();
    for (std::size_t i = 0; i < gs.size(); ++i) {
        if (gs[i].is_zero()) throw DomainError("oracle input is the zero signomial");
        if (gs[i].dimension() != n) throw DomainError("oracle inputs of different dimension");
    }
    for (std::size_t i = 0; i < gs.size(); ++i)
        if (gs[i].all_coefficients_positive())
            return CertNonnegative{gs[i].size() == 1 ? NonnegativeReason::NegativeVertexAbsentMonomial
                                                     : NonnegativeReason::AllPositiveCoefficients,
                                   i};
    if (auto c = detail::probe_grid(gs, n)) return std::move(*c);
    if (auto c = detail::push_common_negative_vertex(gs, n)) return std::move(*c);
    if (auto v = detail::decide_on_line(gs, n)) return std::move(*v);
    return detail::minimise(gs, n, cfg);
}

inline Verdict decide_negativity(const Signomial& g, const OracleConfig& cfg = {}) {
    return decide_joint_negativity(std::vector<Signomial>{g}, cfg);
}

}  // namespace troponeg

#endif  // TROPONEG_ORACLE_HPP
