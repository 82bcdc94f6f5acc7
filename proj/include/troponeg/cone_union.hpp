#ifndef TROPONEG_CONE_UNION_HPP
#define TROPONEG_CONE_UNION_HPP

// Finite unions of closed cones, stored as their inclusion-maximal members,
// with exact set-level containment and equality tests.

#include <algorithm>
#include <optional>
#include <vector>

#include "troponeg/cone.hpp"

namespace troponeg {

class ConeUnion {
public:
    explicit ConeUnion(std::size_t n = 0) : n_(n) {}

    /// Keeps only inclusion-maximal cones, deduplicated and sorted. The
    /// result does not depend on the input order.
    static ConeUnion canonical(std::size_t n, std::vector<Cone> cones) {
        std::sort(cones.begin(), cones.end());
        cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
        ConeUnion u(n);
        for (std::size_t i = 0; i < cones.size(); ++i) {
            bool dominated = false;
            for (std::size_t j = 0; j < cones.size() && !dominated; ++j)
                if (i != j && cones[j].contains(cones[i])) dominated = true;
            if (!dominated) u.cones_.push_back(cones[i]);
        }
        return u;
    }

    std::size_t ambient_dimension() const { return n_; }
    const std::vector<Cone>& cones() const { return cones_; }
    bool empty() const { return cones_.empty(); }

    bool contains(std::span<const Rational> w) const {
        return std::any_of(cones_.begin(), cones_.end(), [&](const Cone& c) { return c.contains(w); });
    }

    /// A point of C outside this union, or nullopt when C is covered.
    std::optional<RationalVector> uncovered_point(const Cone& C) const {
        for (const auto& d : cones_)
            if (d.contains(C)) return std::nullopt;
        std::vector<RationalVector> hyperplanes;
        for (const auto& d : cones_) {
            hyperplanes.insert(hyperplanes.end(), d.inequalities().begin(), d.inequalities().end());
            hyperplanes.insert(hyperplanes.end(), d.equations().begin(), d.equations().end());
        }
        std::sort(hyperplanes.begin(), hyperplanes.end());
        hyperplanes.erase(std::unique(hyperplanes.begin(), hyperplanes.end()), hyperplanes.end());
        return split_search(C, hyperplanes, 0);
    }

    /// Set containment: every point of this union lies in `other`.
    bool subset_of(const ConeUnion& other) const { return !point_outside(other).has_value(); }

    /// A point of this union not contained in `other`, if any.
    std::optional<RationalVector> point_outside(const ConeUnion& other) const {
        for (const auto& c : cones_)
            if (auto p = other.uncovered_point(c)) return p;
        return std::nullopt;
    }

    bool set_equal(const ConeUnion& other) const { return subset_of(other) && other.subset_of(*this); }

    ConeUnion intersect(const ConeUnion& other) const {
        std::vector<Cone> pieces;
        for (const auto& a : cones_)
            for (const auto& b : other.cones_) pieces.push_back(a.intersect(b));
        return canonical(n_, std::move(pieces));
    }

    ConeUnion unite(const ConeUnion& other) const {
        std::vector<Cone> all = cones_;
        all.insert(all.end(), other.cones_.begin(), other.cones_.end());
        return canonical(n_, std::move(all));
    }

    /// Dimension of the union (max over cones); -1 when empty.
    long dimension() const {
        long d = -1;
        for (const auto& c : cones_) d = std::max(d, static_cast<long>(c.dimension()));
        return d;
    }

    friend bool operator==(const ConeUnion& a, const ConeUnion& b) { return a.n_ == b.n_ && a.cones_ == b.cones_; }

private:
    // Splits C along the hyperplanes of the union's cones. On a piece that
    // no hyperplane cuts, the sign vector of the relative interior is
    // constant, so one relative interior point decides coverage.
    std::optional<RationalVector> split_search(const Cone& C, const std::vector<RationalVector>& hyperplanes,
                                               std::size_t index) const {
        for (const auto& d : cones_)
            if (d.contains(C)) return std::nullopt;
        while (index < hyperplanes.size()) {
            const auto& h = hyperplanes[index];
            bool above = false, below = false;
            for (const auto& l : C.lineality())
                if (dot(h, l) != 0) above = below = true;
            for (const auto& r : C.rays()) {
                const Rational s = dot(h, r);
                if (s > 0) above = true;
                if (s < 0) below = true;
            }
            if (above && below) break;
            ++index;
        }
        if (index == hyperplanes.size()) {
            const RationalVector p = C.relint_point();
            if (contains(p)) return std::nullopt;
            return p;
        }
        const auto& h = hyperplanes[index];
        RationalVector minus_h = h;
        for (auto& x : minus_h) x = -x;
        const Cone upper = C.intersect(Cone::from_constraints(n_, {h}));
        if (auto p = split_search(upper, hyperplanes, index + 1)) return p;
        const Cone lower = C.intersect(Cone::from_constraints(n_, {minus_h}));
        return split_search(lower, hyperplanes, index + 1);
    }

    std::size_t n_;
    std::vector<Cone> cones_;
};

}  // namespace troponeg

#endif  // TROPONEG_CONE_UNION_HPP
