#ifndef TROPONEG_TROPICALIZATION_HPP
#define TROPONEG_TROPICALIZATION_HPP

// The actual negative normal cone Sigma(f_1, ..., f_k) cone by cone over the
// common refinement, the sandwich regular part <= Sigma <= intersection of
// negative normal cones, face-wise genericity checks, and empirical
// evidence from logarithmic images of {f_1 < 0, ..., f_k < 0}.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "troponeg/negative_cones.hpp"
#include "troponeg/oracle.hpp"
#include "troponeg/parallel.hpp"

namespace troponeg {

inline std::vector<NewtonPolytope> newton_polytopes(const std::vector<Signomial>& fs, std::size_t threads = 1) {
    if (fs.empty()) throw DomainError("no signomials given");
    std::vector<NewtonPolytope> Ns;
    for (const auto& f : fs) {
        if (f.dimension() != fs.front().dimension()) throw DomainError("signomials of different dimension");
        Ns.push_back(newton_polytope(f, threads));
    }
    return Ns;
}

// ---------------------------------------------------------------------------
// Sigma

struct ConeRecord {
    Cone cone;
    RationalVector representative;
    std::vector<Face> faces;  // N(f_i)_v, one per input
    std::vector<Signomial> restrictions;
    Verdict verdict;
};

struct SigmaResult {
    ConeUnion certified;
    ConeUnion possible;
    std::vector<ConeRecord> records;  // one per cone of the common refinement
};

inline SigmaResult sigma(std::span<const NewtonPolytope> Ns, const OracleConfig& cfg = {}) {
    const Fan fan = refined_normal_fan(Ns, cfg.threads);
    const std::size_t n = Ns.front().dimension();
    OracleConfig inner = cfg;
    inner.threads = 1;
    std::vector<ConeRecord> records(fan.cones.size());
    parallel_for(fan.cones.size(), cfg.threads, [&](std::size_t c) {
        ConeRecord& r = records[c];
        r.cone = fan.cones[c];
        r.representative = r.cone.relint_point();
        for (const auto& N : Ns) {
            r.faces.push_back(N.face_cut_by(r.representative));
            r.restrictions.push_back(restrict_to_direction(N.f, r.representative));
        }
        r.verdict = decide_joint_negativity(r.restrictions, inner);
    });
    SigmaResult out;
    std::vector<Cone> certified, possible;
    for (const auto& r : records) {
        if (is_negative(r.verdict)) certified.push_back(r.cone);
        if (!is_nonnegative(r.verdict)) possible.push_back(r.cone);
    }
    out.certified = ConeUnion::canonical(n, std::move(certified));
    out.possible = ConeUnion::canonical(n, std::move(possible));
    out.records = std::move(records);
    return out;
}

inline SigmaResult sigma(const std::vector<Signomial>& fs, const OracleConfig& cfg = {}) {
    const auto Ns = newton_polytopes(fs, cfg.threads);
    return sigma(Ns, cfg);
}

// ---------------------------------------------------------------------------
// Sandwich

struct Inclusion {
    std::string smaller, larger;
    bool holds = false;
    std::optional<RationalVector> counterexample;  // in smaller, not in larger
    std::optional<RationalVector> strictness;      // in larger, not in smaller
    bool strict() const { return holds && strictness.has_value(); }
};

inline Inclusion compare(const std::string& a_name, const ConeUnion& a, const std::string& b_name, const ConeUnion& b) {
    Inclusion inc{a_name, b_name};
    inc.counterexample = a.point_outside(b);
    inc.holds = !inc.counterexample.has_value();
    inc.strictness = b.point_outside(a);
    return inc;
}

struct InclusionReport {
    ConeUnion regular;
    SigmaResult sigma;
    ConeUnion outer;
    std::vector<Inclusion> inclusions;  // regular <= certified, certified <= outer, regular <= outer

    bool all_hold() const {
        return std::all_of(inclusions.begin(), inclusions.end(), [](const Inclusion& i) { return i.holds; });
    }
    bool all_strict() const {
        return std::all_of(inclusions.begin(), inclusions.end(), [](const Inclusion& i) { return i.strict(); });
    }
};

inline InclusionReport inclusion_report(std::span<const NewtonPolytope> Ns, const OracleConfig& cfg = {}) {
    InclusionReport r;
    r.regular = regular_part(Ns, cfg.threads);
    r.sigma = sigma(Ns, cfg);
    r.outer = intersect_negative_normal_cones(Ns);
    r.inclusions.push_back(compare("regular", r.regular, "sigma", r.sigma.certified));
    r.inclusions.push_back(compare("sigma", r.sigma.certified, "outer", r.outer));
    r.inclusions.push_back(compare("regular", r.regular, "outer", r.outer));
    return r;
}

inline InclusionReport inclusion_report(const std::vector<Signomial>& fs, const OracleConfig& cfg = {}) {
    const auto Ns = newton_polytopes(fs, cfg.threads);
    return inclusion_report(Ns, cfg);
}

// ---------------------------------------------------------------------------
// Face-wise genericity

enum class NbLabel { TakesNegative, Boundary, InteriorLikely, Unknown };

inline const char* to_string(NbLabel l) {
    switch (l) {
        case NbLabel::TakesNegative: return "takes-negative";
        case NbLabel::Boundary: return "boundary";
        case NbLabel::InteriorLikely: return "interior-likely";
        case NbLabel::Unknown: return "unknown";
    }
    return "unknown";
}

struct NbRecord {
    Face face;
    Signomial restriction;
    NbLabel label = NbLabel::Unknown;
    std::string evidence;
    std::optional<RationalVector> witness;  // negative point, or a root
};

struct NbVerdict {
    std::vector<NbRecord> records;  // aligned with the face lattice

    /// Every face restriction takes negative values or is certified
    /// strictly positive with room to spare.
    bool generic() const {
        return std::all_of(records.begin(), records.end(), [](const NbRecord& r) {
            return r.label == NbLabel::TakesNegative || r.label == NbLabel::InteriorLikely;
        });
    }
    bool boundary_found() const {
        return std::any_of(records.begin(), records.end(), [](const NbRecord& r) { return r.label == NbLabel::Boundary; });
    }
};

namespace detail {

/// Exact sign of g when its support is collinear (or a single point).
inline std::optional<UnivariateSignResult> sign_on_line(const Signomial& g) {
    const std::size_t n = g.dimension();
    if (g.size() == 1) {
        UnivariateSignResult r;
        if (g.terms().begin()->second < 0) {
            r.kind = UnivariateSign::TakesNegative;
            r.witness = Rational(1);
            r.value = g.terms().begin()->second;
        }
        return r;
    }
    const auto d = common_line({g}, n);
    if (!d) return std::nullopt;
    UnivariateSignResult r = exact_univariate_sign(induced_univariate(g, bezout_vector(*d), RationalVector(n, Rational(1))));
    return r;
}

inline RationalVector along_line_point(const Signomial& g, const Rational& lambda) {
    const std::size_t n = g.dimension();
    const RationalVector a = bezout_vector(*common_line({g}, n));
    RationalVector x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = pow_int(lambda, a[j].convert_to<long>());
    return x;
}

inline Signomial scale_positive_terms(const Signomial& g, const Rational& factor, const ExponentVector* only = nullptr) {
    Signomial out(g.dimension());
    for (const auto& [e, c] : g.terms()) out.add_term(e, c > 0 && (!only || *only == e) ? c * factor : c);
    return out;
}

inline bool certified_positive(const Signomial& g) {
    if (g.all_coefficients_positive()) return true;
    const auto s = sign_on_line(g);
    return s && s->kind == UnivariateSign::PositiveOnDomain;
}

}  // namespace detail

/// Labels every face restriction of f. Boundary: nonnegative with a
/// positive root, or nonnegative but pushed negative by lowering one
/// positive coefficient by the factor (1 - boundary_eps). InteriorLikely:
/// still certified strictly positive after lowering every positive
/// coefficient by (1 - interior_eps).
inline NbVerdict nb_check(const NewtonPolytope& N, const OracleConfig& cfg = {}) {
    NbVerdict out;
    out.records.resize(N.faces.size());
    OracleConfig inner = cfg;
    inner.threads = 1;
    parallel_for(N.faces.size(), cfg.threads, [&](std::size_t i) {
        NbRecord& r = out.records[i];
        r.face = N.faces[i];
        r.restriction = restrict(N.f, r.face);
        const Verdict v = decide_negativity(r.restriction, inner);
        if (is_negative(v)) {
            r.label = NbLabel::TakesNegative;
            r.evidence = "negative at the witness";
            r.witness = std::get<CertNegative>(v).witness;
            return;
        }
        if (!is_nonnegative(v)) {
            r.evidence = "no exact certificate either way";
            return;
        }
        if (const auto s = detail::sign_on_line(r.restriction); s && s->kind == UnivariateSign::NonnegativeWithRoot) {
            r.label = NbLabel::Boundary;
            r.evidence = "nonnegative with a positive root";
            if (s->witness) r.witness = detail::along_line_point(r.restriction, *s->witness);
            return;
        }
        for (const auto& [e, c] : r.restriction.terms()) {
            if (c < 0) continue;
            const Signomial lowered = detail::scale_positive_terms(r.restriction, 1 - cfg.boundary_eps, &e);
            const Verdict lv = decide_negativity(lowered, inner);
            if (is_negative(lv)) {
                r.label = NbLabel::Boundary;
                r.evidence = "negative after lowering one positive coefficient";
                r.witness = std::get<CertNegative>(lv).witness;
                return;
            }
        }
        if (detail::certified_positive(detail::scale_positive_terms(r.restriction, 1 - cfg.interior_eps))) {
            r.label = NbLabel::InteriorLikely;
            r.evidence = "strictly positive after lowering all positive coefficients";
            return;
        }
        r.evidence = "nonnegative, perturbation inconclusive";
    });
    return out;
}

struct TropClaim {
    bool equals_sigma = false;
    bool equals_negative_cone = false;
    std::string hypothesis;
};

/// Equality claims for a single signomial, each tied to its hypothesis:
/// maximal sparsity gives Trop = N^- (and = Sigma); genericity on every
/// face gives Trop = Sigma.
inline TropClaim trop_claim(const NewtonPolytope& N, const NbVerdict& nb) {
    TropClaim c;
    if (is_maximally_sparse(N)) {
        c.equals_sigma = c.equals_negative_cone = true;
        c.hypothesis = "maximally sparse";
    } else if (nb.generic()) {
        c.equals_sigma = true;
        c.hypothesis = "every face restriction takes negative values or is interior-likely";
    } else {
        c.hypothesis = nb.boundary_found() ? "a face restriction lies on the nonnegativity boundary"
                                           : "genericity not established";
    }
    return c;
}

// ---------------------------------------------------------------------------
// Empirical evidence

struct SampleCloud {
    std::vector<std::vector<double>> points;  // log_t coordinates
    std::size_t drawn = 0;
    std::size_t indeterminate = 0;
};

/// Uniform y in [-box, box]^n, kept when every f_i(t^y) < 0 with a sign
/// that clears the floating error bound. Sample i uses its own generator
/// seeded from (seed, i), so the cloud does not depend on threads.
inline SampleCloud empirical_log_sample(const std::vector<Signomial>& fs, double t, double box, std::size_t count,
                                        std::uint64_t seed, std::size_t threads = 1) {
    if (!(t > 1)) throw DomainError("sampling needs t > 1");
    if (count < 1) throw DomainError("sampling needs at least one point");
    if (!(box > 0)) throw DomainError("sampling box must be positive");
    if (fs.empty()) throw DomainError("no signomials given");
    const std::size_t n = fs.front().dimension();
    std::vector<CompiledSignomial> compiled;
    for (const auto& f : fs) compiled.emplace_back(f);
    const double lt = std::log(t);
    std::vector<std::vector<double>> slots(count);
    std::vector<char> status(count, 0);  // 1 kept, 2 indeterminate
    parallel_for(count, threads, [&](std::size_t i) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(static_cast<std::uint64_t>(i) >> 32)};
        std::mt19937_64 rng(seq);
        std::vector<double> y(n);
        for (auto& yi : y) yi = box * (2 * detail::unit_uniform(rng) - 1);
        // local copies keep the compiled scratch buffers thread-private
        bool all = true, unsure = false;
        for (const auto& g : compiled) {
            const CompiledSignomial local = g;
            const Sign s = local.at_log(y, lt).sign();
            if (s == Sign::Indeterminate) unsure = true;
            if (s != Sign::Negative) all = false;
        }
        if (all) {
            status[i] = 1;
            slots[i] = std::move(y);
        } else if (unsure) {
            status[i] = 2;
        }
    });
    SampleCloud cloud;
    cloud.drawn = count;
    for (std::size_t i = 0; i < count; ++i) {
        if (status[i] == 1) cloud.points.push_back(std::move(slots[i]));
        if (status[i] == 2) ++cloud.indeterminate;
    }
    return cloud;
}

/// Largest max-norm in the cloud (0 for an empty cloud).
inline double sup_norm(const SampleCloud& cloud) {
    double m = 0;
    for (const auto& p : cloud.points)
        for (double x : p) m = std::max(m, std::abs(x));
    return m;
}

/// Angle between p and its nearest point in the closed cone C (pi/2 when
/// that point is the origin). Cone projection by enumerating independent
/// ray subsets, after removing the lineality component.
inline double angular_distance(std::span<const double> p, const Cone& C) {
    const std::size_t n = p.size();
    std::vector<double> q(p.begin(), p.end());
    const double norm = std::sqrt(std::inner_product(q.begin(), q.end(), q.begin(), 0.0));
    if (norm == 0) return 0;
    // Orthonormal lineality basis (Gram-Schmidt in double).
    std::vector<std::vector<double>> basis;
    for (const auto& l : C.lineality()) {
        std::vector<double> b = to_double_vector(l);
        for (const auto& e : basis) {
            const double s = std::inner_product(b.begin(), b.end(), e.begin(), 0.0);
            for (std::size_t i = 0; i < n; ++i) b[i] -= s * e[i];
        }
        const double bn = std::sqrt(std::inner_product(b.begin(), b.end(), b.begin(), 0.0));
        for (auto& x : b) x /= bn;
        basis.push_back(std::move(b));
    }
    std::vector<double> lin(n, 0.0);
    for (const auto& e : basis) {
        const double s = std::inner_product(q.begin(), q.end(), e.begin(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            lin[i] += s * e[i];
            q[i] -= s * e[i];
        }
    }
    std::vector<std::vector<double>> rays;
    for (const auto& r : C.rays()) rays.push_back(to_double_vector(r));
    if (rays.size() > 16) throw UnsupportedError("angular distance: too many rays");
    double best_residual = std::sqrt(std::inner_product(q.begin(), q.end(), q.begin(), 0.0));
    std::vector<double> best_proj = lin;
    for (std::size_t mask = 1; mask < (std::size_t{1} << rays.size()); ++mask) {
        std::vector<std::size_t> S;
        for (std::size_t k = 0; k < rays.size(); ++k)
            if (mask >> k & 1) S.push_back(k);
        if (S.size() > n) continue;
        const std::size_t m = S.size();
        // Normal equations G c = b.
        std::vector<std::vector<double>> G(m, std::vector<double>(m + 1));
        for (std::size_t a = 0; a < m; ++a) {
            for (std::size_t b = 0; b < m; ++b)
                G[a][b] = std::inner_product(rays[S[a]].begin(), rays[S[a]].end(), rays[S[b]].begin(), 0.0);
            G[a][m] = std::inner_product(rays[S[a]].begin(), rays[S[a]].end(), q.begin(), 0.0);
        }
        bool singular = false;
        for (std::size_t col = 0; col < m && !singular; ++col) {
            std::size_t piv = col;
            for (std::size_t r = col + 1; r < m; ++r)
                if (std::abs(G[r][col]) > std::abs(G[piv][col])) piv = r;
            if (std::abs(G[piv][col]) < 1e-12) {
                singular = true;
                break;
            }
            std::swap(G[piv], G[col]);
            for (std::size_t r = 0; r < m; ++r) {
                if (r == col) continue;
                const double f = G[r][col] / G[col][col];
                for (std::size_t k = col; k <= m; ++k) G[r][k] -= f * G[col][k];
            }
        }
        if (singular) continue;
        std::vector<double> proj(n, 0.0);
        bool feasible = true;
        for (std::size_t a = 0; a < m; ++a) {
            const double c = G[a][m] / G[a][a];
            if (c < -1e-12) feasible = false;
            for (std::size_t i = 0; i < n; ++i) proj[i] += std::max(c, 0.0) * rays[S[a]][i];
        }
        if (!feasible) continue;
        double res = 0;
        for (std::size_t i = 0; i < n; ++i) res += (q[i] - proj[i]) * (q[i] - proj[i]);
        res = std::sqrt(res);
        if (res < best_residual) {
            best_residual = res;
            for (std::size_t i = 0; i < n; ++i) best_proj[i] = lin[i] + proj[i];
        }
    }
    const double pn = std::sqrt(std::inner_product(best_proj.begin(), best_proj.end(), best_proj.begin(), 0.0));
    if (pn < 1e-9 * norm) return std::acos(0.0);
    return std::atan2(best_residual, pn);
}

/// Minimum over the cones; +inf for the empty union.
inline double angular_distance(std::span<const double> p, const ConeUnion& U) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : U.cones()) best = std::min(best, angular_distance(p, c));
    return best;
}

struct ConvergenceSample {
    Rational t;
    bool in_set = false;  // every f_i(t^v * x) < 0
    double error = 0;     // |Log_t(t^v * x) - v| = |ln x| / ln t
};

struct ConvergenceRecord {
    Rational threshold;
    RationalVector witness;
    std::vector<ConvergenceSample> samples;
    bool all_in_set() const {
        return std::all_of(samples.begin(), samples.end(), [](const ConvergenceSample& s) { return s.in_set; });
    }
    bool monotone() const {
        for (std::size_t i = 1; i < samples.size(); ++i)
            if (samples[i].error > samples[i - 1].error) return false;
        return true;
    }
};

/// Follows t^v * x for t on a geometric grid in (T, 10^3 T], T the largest
/// pushing threshold (at least 1), confirming membership in the negative set
/// and the decay of the distance to v.
inline ConvergenceRecord witness_convergence(const std::vector<Signomial>& fs, std::span<const Rational> v,
                                             std::span<const Rational> x, const OracleConfig& cfg = {}) {
    const std::size_t n = v.size();
    ConvergenceRecord rec;
    rec.witness.assign(x.begin(), x.end());
    for (const auto& f : fs) rec.threshold = std::max(rec.threshold, pushing_threshold(f, v, x).T);
    const bool integral = std::all_of(v.begin(), v.end(), [](const Rational& q) { return is_integer(q); });
    double log_x_norm = 0;
    std::vector<double> lx(n);
    for (std::size_t j = 0; j < n; ++j) {
        lx[j] = std::log(to_double(x[j]));
        log_x_norm += lx[j] * lx[j];
    }
    log_x_norm = std::sqrt(log_x_norm);
    std::vector<CompiledSignomial> compiled;
    for (const auto& f : fs) compiled.emplace_back(f);
    const double T0 = std::max(1.0, to_double(rec.threshold));
    const std::size_t steps = std::max<std::size_t>(cfg.t_scan_resolution, 1);
    for (std::size_t k = 1; k <= steps; ++k) {
        ConvergenceSample s;
        s.t = detail::rationalize_positive(T0 * std::pow(1000.0, static_cast<double>(k) / static_cast<double>(steps)));
        if (s.t <= rec.threshold) continue;
        const double lt = std::log(to_double(s.t));
        s.error = log_x_norm / lt;
        if (integral) {
            RationalVector p(n);
            for (std::size_t j = 0; j < n; ++j) p[j] = x[j] * pow_int(s.t, v[j].convert_to<long>());
            s.in_set = std::all_of(fs.begin(), fs.end(), [&](const Signomial& f) { return evaluate(f, p) < 0; });
        } else {
            std::vector<double> y(n);
            for (std::size_t j = 0; j < n; ++j) y[j] = lx[j] + to_double(v[j]) * lt;
            s.in_set = std::all_of(compiled.begin(), compiled.end(),
                                   [&](const CompiledSignomial& g) { return g.at_log(y).sign() == Sign::Negative; });
        }
        rec.samples.push_back(std::move(s));
    }
    return rec;
}

/// Runs the oracle on the restrictions cut out by v and follows its witness.
inline ConvergenceRecord witness_convergence(const std::vector<Signomial>& fs, std::span<const Rational> v,
                                             const OracleConfig& cfg = {}) {
    std::vector<Signomial> restrictions;
    for (const auto& f : fs) restrictions.push_back(restrict_to_direction(f, v));
    const Verdict verdict = decide_joint_negativity(restrictions, cfg);
    if (!is_negative(verdict)) throw DomainError("direction has no certified negative witness");
    return witness_convergence(fs, v, std::get<CertNegative>(verdict).witness, cfg);
}

}  // namespace troponeg

#endif  // TROPONEG_TROPICALIZATION_HPP
