#ifndef TROPONEG_IO_JSON_HPP
#define TROPONEG_IO_JSON_HPP

// JSON encodings. Rationals are strings ("3/2"); floating values are
// numbers and never carry a sign claim on their own.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "troponeg/io/format.hpp"
#include "troponeg/io/parse.hpp"
#include "troponeg/tropicalization.hpp"

namespace troponeg::io {

using nlohmann::json;

inline json to_json(const Rational& q) { return to_string(q); }

inline json to_json(std::span<const Rational> v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

inline json to_json(const std::vector<RationalVector>& vs) {
    json a = json::array();
    for (const auto& v : vs) a.push_back(to_json(v));
    return a;
}

inline json to_json(const Signomial& f, const std::vector<std::string>& vars) {
    if (vars.size() != f.dimension()) throw DomainError("variable table does not match the dimension");
    json terms = json::array();
    for (const auto& [e, c] : f.terms()) terms.push_back({{"c", to_string(c)}, {"e", to_json(e)}});
    return {{"vars", vars}, {"terms", terms}, {"expression", to_expression(f, vars)}};
}

inline json to_json(const SignomialSystem& s) {
    json a = json::array();
    for (const auto& f : s.signomials) a.push_back(to_json(f, s.variables));
    return {{"signomials", a}};
}

inline json to_json(const Cone& c) {
    return {{"dimension", c.dimension()},
            {"rays", to_json(c.rays())},
            {"lineality", to_json(c.lineality())},
            {"ineqs", to_json(c.inequalities())},
            {"eqs", to_json(c.equations())}};
}

inline json to_json(const ConeUnion& u) {
    json cones = json::array();
    for (const auto& c : u.cones()) cones.push_back(to_json(c));
    return {{"ambient_dimension", u.ambient_dimension()}, {"empty", u.empty()}, {"cones", cones}};
}

inline json to_json(const Fan& fan) {
    json cones = json::array();
    for (const auto& c : fan.cones) cones.push_back(to_json(c));
    return {{"ambient_dimension", fan.ambient_dimension}, {"complete", fan.complete}, {"cones", cones}};
}

inline json to_json(const Polytope& P) {
    json facets = json::array();
    for (const auto& f : P.facets()) facets.push_back({{"normal", to_json(f.normal)}, {"offset", to_string(f.offset)}});
    json eqs = json::array();
    for (const auto& e : P.affine_hull()) eqs.push_back({{"normal", to_json(e.normal)}, {"offset", to_string(e.offset)}});
    return {{"dimension", P.dimension()}, {"vertices", to_json(P.vertices())}, {"facets", facets}, {"affine_hull", eqs}};
}

inline json to_json(const Face& F) {
    return {{"dimension", F.dimension}, {"vertices", to_json(F.vertices)}, {"support", to_json(F.support_points)}};
}

inline json to_json(const Verdict& v) {
    json j = {{"verdict", verdict_name(v)}};
    if (const auto* n = std::get_if<CertNegative>(&v)) {
        j["witness"] = to_json(n->witness);
        j["value"] = to_string(n->value);
        j["values"] = to_json(n->values);
        j["strategy"] = n->strategy;
    } else if (const auto* p = std::get_if<CertNonnegative>(&v)) {
        j["reason"] = to_string(p->reason);
        j["index"] = p->index;
    } else {
        const auto& u = std::get<Unknown>(v);
        j["best_value"] = u.best_value;
        j["evaluations"] = u.evaluations;
    }
    return j;
}

inline json to_json(const SigmaResult& s) {
    json records = json::array();
    for (const auto& r : s.records) {
        json faces = json::array();
        for (const auto& F : r.faces) faces.push_back(to_json(F.vertices));
        records.push_back({{"cone", to_json(r.cone)},
                           {"representative", to_json(r.representative)},
                           {"faces", faces},
                           {"verdict", to_json(r.verdict)}});
    }
    return {{"certified", to_json(s.certified)}, {"possible", to_json(s.possible)}, {"records", records}};
}

inline json to_json(const Inclusion& inc) {
    json j = {{"smaller", inc.smaller}, {"larger", inc.larger}, {"holds", inc.holds}, {"strict", inc.strict()}};
    j["counterexample"] = inc.counterexample ? to_json(*inc.counterexample) : json(nullptr);
    j["strictness_witness"] = inc.strictness ? to_json(*inc.strictness) : json(nullptr);
    return j;
}

inline json to_json(const InclusionReport& r) {
    json inc = json::array();
    for (const auto& i : r.inclusions) inc.push_back(to_json(i));
    return {{"regular", to_json(r.regular)},
            {"sigma", to_json(r.sigma)},
            {"outer", to_json(r.outer)},
            {"inclusions", inc}};
}

inline json to_json(const NbVerdict& nb, const std::vector<std::string>& vars) {
    json faces = json::array();
    for (const auto& r : nb.records) {
        json j = {{"dimension", r.face.dimension},
                  {"vertices", to_json(r.face.vertices)},
                  {"restriction", to_expression(r.restriction, vars)},
                  {"label", to_string(r.label)},
                  {"evidence", r.evidence}};
        j["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
        faces.push_back(std::move(j));
    }
    return {{"generic", nb.generic()}, {"boundary_found", nb.boundary_found()}, {"faces", faces}};
}

inline json to_json(const TropClaim& c) {
    return {{"equals_sigma", c.equals_sigma}, {"equals_negative_cone", c.equals_negative_cone}, {"hypothesis", c.hypothesis}};
}

inline json to_json(const PushingThreshold& p) {
    json j = {{"T", to_string(p.T)}, {"largest_root_bound", to_string(p.largest_root)}};
    j["cauchy"] = p.cauchy ? json(to_string(*p.cauchy)) : json(nullptr);
    j["p"] = p.p;
    return j;
}

inline json to_json(const ConvergenceRecord& r) {
    json samples = json::array();
    for (const auto& s : r.samples)
        samples.push_back({{"t", to_string(s.t)}, {"in_set", s.in_set}, {"error", s.error}});
    return {{"threshold", to_string(r.threshold)},
            {"witness", to_json(r.witness)},
            {"all_in_set", r.all_in_set()},
            {"monotone", r.monotone()},
            {"samples", samples}};
}

/// Two-space indented dump with a trailing newline.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace troponeg::io

#endif  // TROPONEG_IO_JSON_HPP
