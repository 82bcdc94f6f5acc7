#ifndef TROPONEG_POLYTOPE_HPP
#define TROPONEG_POLYTOPE_HPP

// Exact rational polytopes: convex hulls, faces cut out by linear
// functionals, the face lattice, normal cones, normal fans and common
// refinements of fans.

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "troponeg/cone.hpp"
#include "troponeg/linalg.hpp"
#include "troponeg/parallel.hpp"
#include "troponeg/signomial.hpp"

namespace troponeg {

/// normal . x <= offset
struct Facet {
    RationalVector normal;
    Rational offset;
    friend bool operator==(const Facet&, const Facet&) = default;
};

/// equation normal . x == offset
struct AffineEquation {
    RationalVector normal;
    Rational offset;
};

class Polytope {
public:
    std::size_t ambient_dimension() const { return n_; }
    std::size_t dimension() const { return dim_; }
    bool is_full_dimensional() const { return dim_ == n_; }
    const std::vector<RationalVector>& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }
    const std::vector<AffineEquation>& affine_hull() const { return equations_; }

    /// Vertices (by index) lying on facet f.
    const boost::dynamic_bitset<>& facet_vertices(std::size_t f) const { return incidence_[f]; }

    bool is_vertex(const RationalVector& p) const { return std::binary_search(vertices_.begin(), vertices_.end(), p); }

    std::optional<std::size_t> vertex_index(const RationalVector& p) const {
        auto it = std::lower_bound(vertices_.begin(), vertices_.end(), p);
        if (it == vertices_.end() || *it != p) return std::nullopt;
        return static_cast<std::size_t>(it - vertices_.begin());
    }

    bool contains(std::span<const Rational> p) const {
        for (const auto& e : equations_)
            if (dot(e.normal, p) != e.offset) return false;
        for (const auto& f : facets_)
            if (dot(f.normal, p) > f.offset) return false;
        return true;
    }

    /// p strictly inside relative to the affine hull.
    bool relative_interior_contains(std::span<const Rational> p) const {
        if (!contains(p)) return false;
        for (const auto& f : facets_)
            if (dot(f.normal, p) == f.offset) return false;
        return true;
    }

    friend Polytope convex_hull(std::vector<RationalVector> points);

private:
    std::size_t n_ = 0, dim_ = 0;
    std::vector<RationalVector> vertices_;  // sorted lexicographically
    std::vector<Facet> facets_;
    std::vector<AffineEquation> equations_;
    std::vector<boost::dynamic_bitset<>> incidence_;
};

/// Convex hull with irredundant vertices and facets. Lower-dimensional
/// point sets are handled in coordinates of their affine hull.
inline Polytope convex_hull(std::vector<RationalVector> points) {
    if (points.empty()) throw DomainError("convex hull of an empty point set");
    const std::size_t n = points.front().size();
    for (const auto& p : points)
        if (p.size() != n) throw DomainError("convex hull: points of mixed dimension");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    Polytope P;
    P.n_ = n;
    linalg::Matrix diffs;
    for (std::size_t i = 1; i < points.size(); ++i) {
        RationalVector d(n);
        for (std::size_t c = 0; c < n; ++c) d[c] = points[i][c] - points[0][c];
        diffs.push_back(std::move(d));
    }
    const linalg::RowEchelon span = linalg::rref(diffs, n);
    const std::size_t d = span.pivots.size();
    P.dim_ = d;
    for (auto& a : linalg::nullspace(span.rows, n)) {
        a = primitive(a);
        P.equations_.push_back({a, dot(a, points[0])});
    }
    if (d == 0) {
        P.vertices_ = {points[0]};
        return P;
    }

    // Coordinates along the pivot columns are injective on the affine hull.
    auto project = [&](const RationalVector& p) {
        RationalVector y(d + 1);
        y[0] = 1;
        for (std::size_t j = 0; j < d; ++j) y[j + 1] = p[span.pivots[j]];
        return y;
    };
    std::vector<RationalVector> lifted;
    for (const auto& p : points) lifted.push_back(project(p));
    // Dual cone {(b, c) : b + c . y >= 0 for all points}: its extreme rays
    // are the facets c . y >= -b.
    const ConeGenerators dual = double_description(d + 1, lifted, {});
    std::vector<RationalVector> projected_normals;
    for (const auto& r : dual.rays) {
        RationalVector normal(n, Rational(0));
        RationalVector c(d);
        for (std::size_t j = 0; j < d; ++j) {
            normal[span.pivots[j]] = -r[j + 1];
            c[j] = r[j + 1];
        }
        P.facets_.push_back({normal, r[0]});
        projected_normals.push_back(std::move(c));
    }

    // A point is a vertex iff the normals of its tight facets span R^d.
    for (const auto& p : points) {
        linalg::Matrix tight;
        for (std::size_t f = 0; f < P.facets_.size(); ++f)
            if (dot(P.facets_[f].normal, p) == P.facets_[f].offset) tight.push_back(projected_normals[f]);
        if (linalg::rank(tight, d) == d) P.vertices_.push_back(p);
    }
    std::vector<std::size_t> order(P.facets_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::tie(P.facets_[a].normal, P.facets_[a].offset) < std::tie(P.facets_[b].normal, P.facets_[b].offset);
    });
    std::vector<Facet> sorted;
    for (auto i : order) sorted.push_back(P.facets_[i]);
    P.facets_ = std::move(sorted);
    for (const auto& f : P.facets_) {
        boost::dynamic_bitset<> on(P.vertices_.size());
        for (std::size_t v = 0; v < P.vertices_.size(); ++v)
            if (dot(f.normal, P.vertices_[v]) == f.offset) on.set(v);
        P.incidence_.push_back(std::move(on));
    }
    return P;
}

/// A nonempty face, identified by the parent vertices it contains.
struct Face {
    std::vector<std::size_t> vertex_indices;    // into the parent's vertex list
    std::vector<RationalVector> vertices;
    std::vector<RationalVector> support_points; // support of the signomial on the face
    std::vector<Facet> tight_facets;            // parent facets containing the face
    std::size_t dimension = 0;

    /// Membership for points of the parent polytope.
    bool contains(std::span<const Rational> p) const {
        return std::all_of(tight_facets.begin(), tight_facets.end(),
                           [&](const Facet& f) { return dot(f.normal, p) == f.offset; });
    }

    bool is_vertex() const { return vertex_indices.size() == 1; }

    friend bool operator==(const Face& a, const Face& b) { return a.vertex_indices == b.vertex_indices; }
};

namespace detail {

inline Face make_face(const Polytope& P, const boost::dynamic_bitset<>& members,
                      const std::vector<RationalVector>& support) {
    Face F;
    for (std::size_t v = 0; v < P.vertices().size(); ++v)
        if (members.test(v)) {
            F.vertex_indices.push_back(v);
            F.vertices.push_back(P.vertices()[v]);
        }
    for (std::size_t f = 0; f < P.facets().size(); ++f)
        if (members.is_subset_of(P.facet_vertices(f))) F.tight_facets.push_back(P.facets()[f]);
    for (const auto& s : support)
        if (F.contains(s)) F.support_points.push_back(s);
    F.dimension = static_cast<std::size_t>(linalg::affine_rank(F.vertices));
    return F;
}

}  // namespace detail

/// Restriction of f to the exponents lying on a face.
inline Signomial restrict(const Signomial& f, const Face& face) {
    return restrict(f, [&](const ExponentVector& e) { return face.contains(e); });
}

/// Face of P maximising v (v = 0 gives P itself). `support` must lie in P.
inline Face face_of(const Polytope& P, const std::vector<RationalVector>& support, std::span<const Rational> v) {
    if (v.size() != P.ambient_dimension()) throw DomainError("face_of: direction has the wrong length");
    std::optional<Rational> best;
    for (const auto& p : P.vertices()) {
        Rational s = dot(v, p);
        if (!best || s > *best) best = s;
    }
    boost::dynamic_bitset<> members(P.vertices().size());
    for (std::size_t i = 0; i < P.vertices().size(); ++i)
        if (dot(v, P.vertices()[i]) == *best) members.set(i);
    Face F = detail::make_face(P, members, support);
    // The support points on the face are exactly the maximisers.
    F.support_points.clear();
    for (const auto& s : support)
        if (dot(v, s) == *best) F.support_points.push_back(s);
    return F;
}

/// All nonempty faces, sorted by (dimension, vertex indices); the last
/// entry is P itself. Faces are the intersections of facets.
inline std::vector<Face> face_lattice(const Polytope& P, const std::vector<RationalVector>& support = {}) {
    std::set<std::vector<std::size_t>> seen;
    std::vector<boost::dynamic_bitset<>> faces;
    auto add = [&](const boost::dynamic_bitset<>& b) {
        if (b.none()) return false;
        std::vector<std::size_t> key;
        for (auto i = b.find_first(); i != boost::dynamic_bitset<>::npos; i = b.find_next(i)) key.push_back(i);
        if (!seen.insert(key).second) return false;
        faces.push_back(b);
        return true;
    };
    boost::dynamic_bitset<> all(P.vertices().size());
    all.set();
    add(all);
    std::vector<boost::dynamic_bitset<>> frontier;
    for (std::size_t f = 0; f < P.facets().size(); ++f)
        if (add(P.facet_vertices(f))) frontier.push_back(P.facet_vertices(f));
    while (!frontier.empty()) {
        std::vector<boost::dynamic_bitset<>> next;
        for (const auto& a : frontier)
            for (std::size_t f = 0; f < P.facets().size(); ++f) {
                boost::dynamic_bitset<> b = a & P.facet_vertices(f);
                if (add(b)) next.push_back(b);
            }
        frontier = std::move(next);
    }
    std::vector<Face> out;
    for (const auto& b : faces) out.push_back(detail::make_face(P, b, support));
    std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
        return std::tie(a.dimension, a.vertex_indices) < std::tie(b.dimension, b.vertex_indices);
    });
    return out;
}

/// N(F) = {v : F is contained in the face cut out by v}.
inline Cone normal_cone(const Polytope& P, const Face& F) {
    if (F.vertices.empty()) throw DomainError("normal_cone: empty face");
    const std::size_t n = P.ambient_dimension();
    const RationalVector& u0 = F.vertices.front();
    std::vector<RationalVector> eqs, ineqs;
    for (std::size_t i = 1; i < F.vertices.size(); ++i) {
        RationalVector d(n);
        for (std::size_t c = 0; c < n; ++c) d[c] = F.vertices[i][c] - u0[c];
        eqs.push_back(std::move(d));
    }
    for (const auto& w : P.vertices()) {
        if (std::binary_search(F.vertices.begin(), F.vertices.end(), w)) continue;
        RationalVector d(n);
        for (std::size_t c = 0; c < n; ++c) d[c] = u0[c] - w[c];
        ineqs.push_back(std::move(d));
    }
    Cone C = Cone::from_constraints(n, ineqs, eqs);
    const Face check = face_of(P, {}, C.relint_point());
    if (check.vertex_indices != F.vertex_indices) throw DomainError("normal_cone: the vertex set is not a face");
    return C;
}

/// Finite collection of cones closed under taking faces.
struct Fan {
    std::size_t ambient_dimension = 0;
    std::vector<Cone> cones;
    bool complete = false;

    /// Index of the unique cone whose relative interior contains w.
    std::optional<std::size_t> locate(std::span<const Rational> w) const {
        for (std::size_t i = 0; i < cones.size(); ++i)
            if (cones[i].classify(w) == Membership::RelativeInterior) return i;
        return std::nullopt;
    }
};

/// Normal fan; cones[i] is the normal cone of face_lattice(P)[i].
inline Fan normal_fan(const Polytope& P, std::size_t threads = 1) {
    const std::vector<Face> faces = face_lattice(P);
    Fan fan;
    fan.ambient_dimension = P.ambient_dimension();
    fan.complete = true;
    fan.cones.resize(faces.size());
    parallel_for(faces.size(), threads, [&](std::size_t i) { fan.cones[i] = normal_cone(P, faces[i]); });
    return fan;
}

/// All intersections of one cone from each fan, deduplicated by canonical
/// form and sorted (faces included, since the inputs contain all faces).
inline Fan common_refinement(const std::vector<Fan>& fans, std::size_t threads = 1) {
    if (fans.empty()) throw DomainError("common_refinement of no fans");
    const std::size_t n = fans.front().ambient_dimension;
    for (const auto& f : fans)
        if (f.ambient_dimension != n) throw DomainError("common_refinement: fans of different ambient dimension");
    std::vector<Cone> current = fans.front().cones;
    std::sort(current.begin(), current.end());
    current.erase(std::unique(current.begin(), current.end()), current.end());
    for (std::size_t k = 1; k < fans.size(); ++k) {
        const auto& other = fans[k].cones;
        std::vector<Cone> products(current.size() * other.size());
        parallel_for(products.size(), threads, [&](std::size_t idx) {
            products[idx] = current[idx / other.size()].intersect(other[idx % other.size()]);
        });
        std::sort(products.begin(), products.end());
        products.erase(std::unique(products.begin(), products.end()), products.end());
        current = std::move(products);
    }
    Fan out;
    out.ambient_dimension = n;
    out.cones = std::move(current);
    out.complete = std::all_of(fans.begin(), fans.end(), [](const Fan& f) { return f.complete; });
    return out;
}

}  // namespace troponeg

#endif  // TROPONEG_POLYTOPE_HPP
