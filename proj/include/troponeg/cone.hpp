#ifndef TROPONEG_CONE_HPP
#define TROPONEG_CONE_HPP

// Polyhedral cones at the origin in both representations, kept consistent
// by the double description method (Motzkin's incremental algorithm with
// the combinatorial adjacency test).

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "troponeg/linalg.hpp"
#include "troponeg/rational.hpp"

namespace troponeg {

/// Generators of a cone: lineality basis plus rays (extreme modulo lineality).
struct ConeGenerators {
    std::vector<RationalVector> rays;
    std::vector<RationalVector> lineality;
};

namespace detail {

struct DdRay {
    RationalVector v;
    boost::dynamic_bitset<> zeros;  // processed inequalities tight at v
};

inline void axpy(RationalVector& y, const Rational& a, const RationalVector& x) {
    if (a == 0) return;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

}  // namespace detail

/// Generators of {x : a.x >= 0 (a in inequalities), e.x = 0 (e in equations)}.
inline ConeGenerators double_description(std::size_t n, const std::vector<RationalVector>& inequalities,
                                         const std::vector<RationalVector>& equations) {
    using detail::DdRay;
    const std::size_t m = inequalities.size();
    std::vector<RationalVector> lineality;
    for (std::size_t i = 0; i < n; ++i) {
        RationalVector e(n, Rational(0));
        e[i] = 1;
        lineality.push_back(std::move(e));
    }
    std::vector<DdRay> rays;

    for (const auto& a : equations) {
        auto it = std::find_if(lineality.begin(), lineality.end(), [&](const RationalVector& l) { return dot(a, l) != 0; });
        if (it == lineality.end()) continue;  // implied by earlier constraints
        RationalVector l0 = *it;
        lineality.erase(it);
        const Rational s0 = dot(a, l0);
        for (auto& l : lineality) detail::axpy(l, -dot(a, l) / s0, l0);
    }

    for (std::size_t k = 0; k < m; ++k) {
        const auto& a = inequalities[k];
        auto it = std::find_if(lineality.begin(), lineality.end(), [&](const RationalVector& l) { return dot(a, l) != 0; });
        if (it != lineality.end()) {
            RationalVector l0 = *it;
            lineality.erase(it);
            Rational s0 = dot(a, l0);
            if (s0 < 0) {
                for (auto& x : l0) x = -x;
                s0 = -s0;
            }
            for (auto& l : lineality) detail::axpy(l, -dot(a, l) / s0, l0);
            for (auto& r : rays) {
                detail::axpy(r.v, -dot(a, r.v) / s0, l0);
                r.v = primitive(r.v);
                r.zeros.resize(m);
                r.zeros.set(k);
            }
            DdRay fresh{primitive(l0), boost::dynamic_bitset<>(m)};
            for (std::size_t j = 0; j < k; ++j) fresh.zeros.set(j);
            rays.push_back(std::move(fresh));
            continue;
        }

        std::vector<Rational> s(rays.size());
        std::vector<std::size_t> pos, neg;
        std::vector<DdRay> next;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            rays[i].zeros.resize(m);
            s[i] = dot(a, rays[i].v);
            if (s[i] > 0) pos.push_back(i);
            else if (s[i] < 0) neg.push_back(i);
        }
        if (neg.empty()) {
            for (std::size_t i = 0; i < rays.size(); ++i)
                if (s[i] == 0) rays[i].zeros.set(k);
            continue;
        }
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (s[i] < 0) continue;
            DdRay r = rays[i];
            if (s[i] == 0) r.zeros.set(k);
            next.push_back(std::move(r));
        }
        for (auto p : pos) {
            for (auto q : neg) {
                const boost::dynamic_bitset<> common = rays[p].zeros & rays[q].zeros;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r == p || r == q) continue;
                    if (common.is_subset_of(rays[r].zeros)) adjacent = false;
                }
                if (!adjacent) continue;
                RationalVector combo(n, Rational(0));
                detail::axpy(combo, s[p], rays[q].v);
                detail::axpy(combo, -s[q], rays[p].v);
                DdRay fresh{primitive(combo), common};
                fresh.zeros.set(k);
                next.push_back(std::move(fresh));
            }
        }
        rays = std::move(next);
    }

    ConeGenerators out;
    out.lineality = std::move(lineality);
    for (auto& r : rays) out.rays.push_back(std::move(r.v));
    return out;
}

enum class Membership { Outside, Boundary, RelativeInterior };

inline const char* to_string(Membership m) {
    switch (m) {
        case Membership::Outside: return "outside";
        case Membership::Boundary: return "boundary";
        case Membership::RelativeInterior: return "relative-interior";
    }
    return "outside";
}

/// Closed polyhedral cone in R^n. Both representations are canonical:
/// lineality is a reduced row echelon basis, rays are primitive integer
/// vectors orthogonal to the lineality space (sorted), inequalities are the
/// facet normals (orthogonal to the equations, sorted) and equations a
/// reduced basis of span(C)^perp. Equal cones therefore compare equal.
class Cone {
public:
    Cone() = default;

    static Cone from_constraints(std::size_t n, const std::vector<RationalVector>& inequalities,
                                 const std::vector<RationalVector>& equations = {}) {
        ConeGenerators g = double_description(n, inequalities, equations);
        return from_generators(n, g.rays, g.lineality);
    }

    static Cone from_generators(std::size_t n, const std::vector<RationalVector>& rays,
                                const std::vector<RationalVector>& lineality = {}) {
        Cone c;
        c.n_ = n;
        // Normalise the generating set first (drop redundant rays), then
        // read the facets off the dual cone.
        ConeGenerators dual = double_description(n, rays, lineality);
        ConeGenerators primal = double_description(n, dual.rays, dual.lineality);
        c.set_generators(std::move(primal));
        c.set_constraints(std::move(dual));
        return c;
    }

    static Cone whole_space(std::size_t n) { return from_constraints(n, {}, {}); }

    static Cone origin(std::size_t n) {
        std::vector<RationalVector> eqs;
        for (std::size_t i = 0; i < n; ++i) {
            RationalVector e(n, Rational(0));
            e[i] = 1;
            eqs.push_back(std::move(e));
        }
        return from_constraints(n, {}, eqs);
    }

    std::size_t ambient_dimension() const { return n_; }
    const std::vector<RationalVector>& rays() const { return rays_; }
    const std::vector<RationalVector>& lineality() const { return lineality_; }
    const std::vector<RationalVector>& inequalities() const { return inequalities_; }
    const std::vector<RationalVector>& equations() const { return equations_; }

    std::size_t dimension() const { return n_ - equations_.size(); }
    bool is_full_dimensional() const { return equations_.empty(); }
    bool is_origin() const { return rays_.empty() && lineality_.empty(); }

    Membership classify(std::span<const Rational> w) const {
        for (const auto& e : equations_)
            if (dot(e, w) != 0) return Membership::Outside;
        bool tight = false;
        for (const auto& a : inequalities_) {
            const Rational s = dot(a, w);
            if (s < 0) return Membership::Outside;
            if (s == 0) tight = true;
        }
        return tight ? Membership::Boundary : Membership::RelativeInterior;
    }

    bool contains(std::span<const Rational> w) const { return classify(w) != Membership::Outside; }

    bool contains(const Cone& other) const {
        for (const auto& r : other.rays_)
            if (!contains(r)) return false;
        for (const auto& l : other.lineality_) {
            if (!contains(l)) return false;
            RationalVector neg = l;
            for (auto& x : neg) x = -x;
            if (!contains(neg)) return false;
        }
        return true;
    }

    Cone intersect(const Cone& other) const {
        std::vector<RationalVector> ineqs = inequalities_, eqs = equations_;
        ineqs.insert(ineqs.end(), other.inequalities_.begin(), other.inequalities_.end());
        eqs.insert(eqs.end(), other.equations_.begin(), other.equations_.end());
        return from_constraints(n_, ineqs, eqs);
    }

    /// Sum of the extreme rays: a point of the relative interior (0 for
    /// linear subspaces, including {0}).
    RationalVector relint_point() const {
        RationalVector s(n_, Rational(0));
        for (const auto& r : rays_)
            for (std::size_t i = 0; i < n_; ++i) s[i] += r[i];
        return s;
    }

    friend bool operator==(const Cone& a, const Cone& b) {
        return a.n_ == b.n_ && a.lineality_ == b.lineality_ && a.rays_ == b.rays_;
    }

    /// Total order on canonical forms (dimension first), used for
    /// deterministic deduplication.
    friend bool operator<(const Cone& a, const Cone& b) {
        if (a.dimension() != b.dimension()) return a.dimension() < b.dimension();
        if (a.lineality_ != b.lineality_) return a.lineality_ < b.lineality_;
        return a.rays_ < b.rays_;
    }

private:
    void set_generators(ConeGenerators g) {
        linalg::RowEchelon e = linalg::rref(g.lineality, n_);
        lineality_ = std::move(e.rows);
        for (auto& l : lineality_) l = primitive(l);
        const linalg::Matrix ortho = linalg::orthogonal_basis(lineality_);
        rays_.clear();
        for (auto& r : g.rays) {
            RationalVector p = primitive(linalg::project_out(std::move(r), ortho));
            if (!is_zero_vector(p)) rays_.push_back(std::move(p));
        }
        std::sort(rays_.begin(), rays_.end());
        rays_.erase(std::unique(rays_.begin(), rays_.end()), rays_.end());
    }

    void set_constraints(ConeGenerators dual) {
        linalg::RowEchelon e = linalg::rref(dual.lineality, n_);
        equations_ = std::move(e.rows);
        for (auto& l : equations_) l = primitive(l);
        const linalg::Matrix ortho = linalg::orthogonal_basis(equations_);
        inequalities_.clear();
        for (auto& r : dual.rays) {
            RationalVector p = primitive(linalg::project_out(std::move(r), ortho));
            if (!is_zero_vector(p)) inequalities_.push_back(std::move(p));
        }
        std::sort(inequalities_.begin(), inequalities_.end());
        inequalities_.erase(std::unique(inequalities_.begin(), inequalities_.end()), inequalities_.end());
    }

    std::size_t n_ = 0;
    std::vector<RationalVector> rays_, lineality_;
    std::vector<RationalVector> inequalities_, equations_;
};

}  // namespace troponeg

#endif  // TROPONEG_CONE_HPP
