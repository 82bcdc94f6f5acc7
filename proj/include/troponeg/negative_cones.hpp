#ifndef TROPONEG_NEGATIVE_CONES_HPP
#define TROPONEG_NEGATIVE_CONES_HPP

// Signed-support combinatorics on Newton polytopes: negative faces, the
// negative normal cone, common negative vertices and the regular part of an
// intersection of negative normal cones, plus the sparsity and boundedness
// criteria that follow from them.

#include <functional>
#include <stdexcept>
#include <vector>

#include "troponeg/cone_union.hpp"
#include "troponeg/parallel.hpp"
#include "troponeg/polytope.hpp"
#include "troponeg/signomial.hpp"

namespace troponeg {

class UnsupportedError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A signomial together with its Newton polytope, face lattice and normal
/// fan; faces[i] corresponds to normal_cones[i].
struct NewtonPolytope {
    Signomial f;
    Polytope polytope;
    std::vector<Face> faces;
    std::vector<Cone> normal_cones;

    std::size_t dimension() const { return f.dimension(); }

    bool is_negative_point(const ExponentVector& e) const { return f.coefficient(e) < 0; }

    bool is_negative(const Face& F) const {
        return std::any_of(F.support_points.begin(), F.support_points.end(),
                           [&](const ExponentVector& e) { return is_negative_point(e); });
    }

    Face face_cut_by(std::span<const Rational> v) const { return face_of(polytope, f.support(), v); }

    std::size_t face_index(const Face& F) const {
        for (std::size_t i = 0; i < faces.size(); ++i)
            if (faces[i].vertex_indices == F.vertex_indices) return i;
        throw DomainError("face not found in the lattice");
    }

    Fan fan() const {
        Fan out;
        out.ambient_dimension = dimension();
        out.cones = normal_cones;
        out.complete = true;
        return out;
    }
};

inline NewtonPolytope newton_polytope(const Signomial& f, std::size_t threads = 1) {
    if (f.is_zero()) throw DomainError("the zero signomial has no Newton polytope");
    NewtonPolytope N{f, convex_hull(f.support()), {}, {}};
    N.faces = face_lattice(N.polytope, f.support());
    N.normal_cones.resize(N.faces.size());
    parallel_for(N.faces.size(), threads, [&](std::size_t i) { N.normal_cones[i] = normal_cone(N.polytope, N.faces[i]); });
    return N;
}

inline std::vector<Face> negative_faces(const NewtonPolytope& N) {
    std::vector<Face> out;
    for (const auto& F : N.faces)
        if (N.is_negative(F)) out.push_back(F);
    return out;
}

/// Union of the normal cones of the negative faces, i.e. all v whose face
/// contains a negative exponent vector.
inline ConeUnion negative_normal_cone(const NewtonPolytope& N) {
    std::vector<Cone> cones;
    for (std::size_t i = 0; i < N.faces.size(); ++i)
        if (N.is_negative(N.faces[i])) cones.push_back(N.normal_cones[i]);
    return ConeUnion::canonical(N.dimension(), std::move(cones));
}

/// Intersection of the negative normal cones of all inputs.
inline ConeUnion intersect_negative_normal_cones(std::span<const NewtonPolytope> Ns) {
    if (Ns.empty()) throw DomainError("no signomials given");
    ConeUnion acc = negative_normal_cone(Ns.front());
    for (std::size_t i = 1; i < Ns.size(); ++i) acc = acc.intersect(negative_normal_cone(Ns[i]));
    return acc;
}

inline Fan refined_normal_fan(std::span<const NewtonPolytope> Ns, std::size_t threads = 1) {
    std::vector<Fan> fans;
    for (const auto& N : Ns) {
        if (N.dimension() != Ns.front().dimension()) throw DomainError("signomials of different dimension");
        fans.push_back(N.fan());
    }
    return common_refinement(fans, threads);
}

/// Searches v such that, for every i, the face of N(f_i) cut out by v is a
/// negative vertex of the face cut out by w. Returns such a v, or nullopt
/// (also when w is outside some negative normal cone).
inline std::optional<RationalVector> common_negative_vertex(std::span<const Rational> w,
                                                            std::span<const NewtonPolytope> Ns) {
    std::vector<std::vector<const Cone*>> choices;
    for (const auto& N : Ns) {
        const Face G = N.face_cut_by(w);
        if (!N.is_negative(G)) return std::nullopt;
        std::vector<const Cone*> cones;
        for (const auto& v : G.vertices)
            if (N.is_negative_point(v)) {
                const auto idx = N.polytope.vertex_index(v);
                for (std::size_t k = 0; k < N.faces.size(); ++k)
                    if (N.faces[k].vertex_indices.size() == 1 && N.faces[k].vertex_indices.front() == *idx)
                        cones.push_back(&N.normal_cones[k]);
            }
        if (cones.empty()) return std::nullopt;
        choices.push_back(std::move(cones));
    }
    // Depth-first over vertex tuples; a partial intersection without
    // interior cannot recover.
    std::function<std::optional<RationalVector>(std::size_t, const Cone&)> search =
        [&](std::size_t i, const Cone& acc) -> std::optional<RationalVector> {
        if (i == choices.size()) return acc.relint_point();
        for (const Cone* c : choices[i]) {
            Cone next = acc.intersect(*c);
            if (!next.is_full_dimensional()) continue;
            if (auto v = search(i + 1, next)) return v;
        }
        return std::nullopt;
    };
    return search(0, Cone::whole_space(Ns.front().dimension()));
}

inline bool has_common_negative_vertex(std::span<const Rational> w, std::span<const NewtonPolytope> Ns) {
    return common_negative_vertex(w, Ns).has_value();
}

/// Closure of the interior of the intersection of the negative normal
/// cones: the refinement cones whose relative interior points admit a
/// common negative vertex.
inline ConeUnion regular_part(std::span<const NewtonPolytope> Ns, std::size_t threads = 1) {
    const Fan fan = refined_normal_fan(Ns, threads);
    std::vector<char> keep(fan.cones.size(), 0);
    parallel_for(fan.cones.size(), threads, [&](std::size_t i) {
        keep[i] = has_common_negative_vertex(fan.cones[i].relint_point(), Ns) ? 1 : 0;
    });
    std::vector<Cone> cones;
    for (std::size_t i = 0; i < fan.cones.size(); ++i)
        if (keep[i]) cones.push_back(fan.cones[i]);
    return ConeUnion::canonical(Ns.front().dimension(), std::move(cones));
}

/// Every exponent vector is a vertex of the Newton polytope.
inline bool is_maximally_sparse(const NewtonPolytope& N) { return N.polytope.vertices().size() == N.f.size(); }

/// True when no negative exponent vector lies on the boundary of N(f);
/// then every logarithmic image of {f < 0} is bounded. Requires a
/// full-dimensional Newton polytope unless f has no negative terms.
inline bool bounded_log_image(const NewtonPolytope& N) {
    const SignedSupport s = signed_support(N.f);
    if (s.negative.empty()) return true;
    if (!N.polytope.is_full_dimensional())
        throw UnsupportedError("boundedness criterion needs a full-dimensional Newton polytope");
    return std::all_of(s.negative.begin(), s.negative.end(),
                       [&](const ExponentVector& e) { return N.polytope.relative_interior_contains(e); });
}

}  // namespace troponeg

#endif  // TROPONEG_NEGATIVE_CONES_HPP
