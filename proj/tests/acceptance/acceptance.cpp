// Acceptance checks: one PASS/FAIL line per criterion, followed by indented
// details. Exit status 1 if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "troponeg/io/parse.hpp"
#include "troponeg/tropicalization.hpp"

using namespace troponeg;
using testing_support::random_maximally_sparse;
using testing_support::ray_cone;
using testing_support::sig;
using testing_support::vec;
using testing_support::vecq;

namespace {

const char* kTriangle = "x1^2 - x1 + 1 - x2^2";
const char* kG = "x1^2 - 2x1 + 1 - x2^2";
const char* kBounded = "x1^9x2^6 + x1^6x2^9 - x1^7x2^7 - 4x1^7x2^6 + 5x1^5x2 + 5x1x2^5 - 5x1x2 + 1";
const char* kThreeVar = "x2^2 - 2x2 + 1 - 2x1x2x3 + x1x2x3^2 + x1^2x2";
const char* kPositiveNotInterior = "x1^2x2^2 - 2x1x2 + 1 + x1^2";

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::vector<std::string>& details) {
    std::cout << (pass ? "PASS" : "FAIL") << "  [" << id << "] " << title << "\n";
    for (const auto& d : details) std::cout << "        " << d << "\n";
    std::cout.flush();
    if (!pass) ++failures;
}

std::string yes(bool b) { return b ? "yes" : "no"; }

std::string vec_text(std::span<const Rational> v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
    return s + ")";
}

std::string cones_text(const ConeUnion& U) {
    if (U.empty()) return "empty";
    std::string s;
    for (const auto& c : U.cones()) {
        s += s.empty() ? "" : " u ";
        if (c.is_origin()) {
            s += "{0}";
            continue;
        }
        s += "cone{";
        for (std::size_t i = 0; i < c.rays().size(); ++i) s += (i ? "," : "") + vec_text(c.rays()[i]);
        for (const auto& l : c.lineality()) s += "; +-" + vec_text(l);
        s += "}";
    }
    return s;
}

std::string fmt(double x, int prec = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    return buf;
}

const NbRecord* record_for(const NbVerdict& nb, const std::vector<RationalVector>& vertices) {
    for (const auto& r : nb.records)
        if (r.face.vertices == vertices) return &r;
    return nullptr;
}

// {v : v2 >= 0, v2 >= v1}
ConeUnion sector() { return ConeUnion::canonical(2, {Cone::from_constraints(2, {vec({0, 1}), vec({-1, 1})})}); }

void criterion_1() {
    const Signomial f = sig(kTriangle);
    const auto N = newton_polytope(f);
    const ConeUnion neg = negative_normal_cone(N);
    const ConeUnion expected = sector().unite(ConeUnion::canonical(2, {ray_cone(2, {vec({0, -1})})}));
    const SigmaResult s = sigma({f});
    const bool a = neg.set_equal(expected), b = s.certified.set_equal(sector());
    report(1, "Triangle exactness", a && b,
           {"N_f^- = " + cones_text(neg) + " (equals sector u south ray: " + yes(a) + ")",
            "Sigma certified = " + cones_text(s.certified) + " (equals sector: " + yes(b) + ")",
            "south ray in Sigma certified: " + yes(s.certified.contains(vec({0, -1})))});
}

void criterion_2() {
    const std::vector<NewtonPolytope> Ns{newton_polytope(sig(kTriangle))};
    const bool cnv = has_common_negative_vertex(vec({0, -1}), Ns);
    const ConeUnion R = regular_part(Ns);
    const SigmaResult s = sigma(Ns);
    const bool eq = R.set_equal(s.certified);
    report(2, "Regularity", !cnv && eq,
           {"has_common_negative_vertex((0,-1)) = " + std::string(cnv ? "true" : "false"),
            "regular part = " + cones_text(R) + " (equals Sigma certified: " + yes(eq) + ")"});
}

void criterion_3() {
    const Signomial f = sig(kThreeVar);
    const auto N = newton_polytope(f);
    const ConeUnion neg = negative_normal_cone(N);
    const ConeUnion stated = ConeUnion::canonical(3, {ray_cone(3, {vec({0, 0, -1}), vec({-1, 0, 2})})});
    const bool a = neg == stated && neg.set_equal(stated);
    const InclusionReport r = inclusion_report({f});
    const bool b = r.sigma.certified.set_equal(ConeUnion::canonical(3, {Cone::origin(3)}));
    const Rational value = evaluate(f, vecq({Rational(1, 2), 1, Rational(1, 2)}));
    const bool c = value == Rational(-1, 8);
    const bool d = r.all_hold() && r.all_strict();
    std::vector<std::string> details{
        "N_f^- computed = " + cones_text(neg),
        "N_f^- stated   = " + cones_text(stated) + " (equal: " + yes(a) + ")",
        "(-1,0,2) in computed N_f^-: " + yes(neg.contains(vec({-1, 0, 2}))) +
            "; its face is " + vec_text(N.face_cut_by(vec({-1, 0, 2})).vertices.front()) + " (a positive vertex)",
        "Sigma certified = " + cones_text(r.sigma.certified) + " (equals {0}: " + yes(b) + ")",
        "f(1/2,1,1/2) = " + to_string(value) + " (equals -1/8: " + yes(c) + ")"};
    for (const auto& inc : r.inclusions)
        details.push_back(inc.smaller + " <= " + inc.larger + ": holds " + yes(inc.holds) + ", strict " + yes(inc.strict()) +
                          (inc.strictness ? " via " + vec_text(*inc.strictness) : ""));
    report(3, "Three-variable exactness", a && b && c && d, details);
}

void criterion_4() {
    const auto Nf = newton_polytope(sig(kTriangle));
    const auto Ng = newton_polytope(sig(kG));
    const NbVerdict nf = nb_check(Nf), ng = nb_check(Ng);
    const std::vector<RationalVector> edge{vec({0, 0}), vec({2, 0})};
    const NbRecord* ef = record_for(nf, edge);
    const NbRecord* eg = record_for(ng, edge);
    const bool a = ef && ef->label == NbLabel::InteriorLikely;
    const bool b = eg && eg->label == NbLabel::Boundary;
    const TropClaim cf = trop_claim(Nf, nf), cg = trop_claim(Ng, ng);
    report(4, "Genericity split", a && b && cf.equals_sigma && !cg.equals_sigma,
           {"f bottom edge: " + std::string(ef ? to_string(ef->label) : "missing") + (ef ? " (" + ef->evidence + ")" : ""),
            "g bottom edge: " + std::string(eg ? to_string(eg->label) : "missing") + (eg ? " (" + eg->evidence + ")" : ""),
            "claim Trop = Sigma for f: " + yes(cf.equals_sigma) + " [" + cf.hypothesis + "]",
            "claim Trop = Sigma for g: " + yes(cg.equals_sigma) + " [" + cg.hypothesis + "]"});
}

void criterion_5() {
    const ConeUnion south = ConeUnion::canonical(2, {ray_cone(2, {vec({0, -1})})});
    const auto hits = [&](const SampleCloud& c) {
        std::size_t h = 0;
        for (const auto& y : c.points) h += angular_distance(y, south) <= 0.1;
        return h;
    };
    const SampleCloud g = empirical_log_sample({sig(kG)}, 1e3, 5, 20000, 7);
    const SampleCloud f = empirical_log_sample({sig(kTriangle)}, 1e3, 5, 20000, 7);
    const std::size_t hg = hits(g), hf = hits(f);
    report(5, "South-ray empirics", hg >= 10 && hf == 0,
           {"g cloud: " + std::to_string(g.points.size()) + " kept, " + std::to_string(hg) +
                " within 0.1 rad of (0,-1) (need >= 10), " + std::to_string(g.indeterminate) + " indeterminate",
            "f cloud: " + std::to_string(f.points.size()) + " kept, " + std::to_string(hf) + " within 0.1 rad of (0,-1) (need 0)"});
}

void criterion_6() {
    const Signomial f = sig(kBounded);
    bool bounded = false;
    std::string bounded_text;
    try {
        bounded = bounded_log_image(newton_polytope(f));
        bounded_text = bounded ? "true" : "false";
    } catch (const std::exception& e) {
        bounded_text = std::string("unsupported: ") + e.what();
    }
    std::vector<double> sups;
    std::vector<std::string> details{"bounded_log_image = " + bounded_text};
    for (double t : {2.0, 10.0, 100.0}) {
        const SampleCloud c = empirical_log_sample({f}, t, 5, 10000, 7);
        sups.push_back(sup_norm(c));
        details.push_back("t = " + fmt(t) + ": " + std::to_string(c.points.size()) + " kept, sup-norm " + fmt(sups.back()) +
                          " (ln t * sup = " + fmt(std::log(t) * sups.back()) + ")");
    }
    const double lo = *std::min_element(sups.begin(), sups.end()), hi = *std::max_element(sups.begin(), sups.end());
    const bool agree = lo > 0 && hi <= 2 * lo;
    details.push_back("max/min sup-norm ratio " + (lo > 0 ? fmt(hi / lo) : std::string("undefined")) + " (need <= 2)");
    report(6, "Boundedness", bounded && agree, details);
}

void criterion_7() {
    std::mt19937_64 rng(20240607);
    std::size_t ok = 0, total = 0;
    std::string first_bad;
    for (std::size_t n : {2u, 3u}) {
        for (int k = 0; k < 50; ++k) {
            const Signomial f = random_maximally_sparse(rng, n);
            const std::vector<NewtonPolytope> Ns{newton_polytope(f)};
            const ConeUnion neg = negative_normal_cone(Ns[0]);
            const bool good = is_maximally_sparse(Ns[0]) && regular_part(Ns).set_equal(neg) && sigma(Ns).certified.set_equal(neg);
            ++total;
            if (good) ++ok;
            else if (first_bad.empty()) first_bad = "first mismatch at n = " + std::to_string(n) + ", instance " + std::to_string(k);
        }
    }
    std::vector<std::string> details{std::to_string(ok) + "/" + std::to_string(total) + " instances with regular = Sigma = N_f^-"};
    if (!first_bad.empty()) details.push_back(first_bad);
    report(7, "Maximally sparse property suite", ok == total, details);
}

/// No positive root of g in (b, inf), decided by bisecting Sturm cells.
bool no_root_above(const UnivariateSignomial& g, const Rational& b) {
    const IntegerizedUnivariate ig = integerize(g);
    const Polynomial sf = ig.p.square_free();
    for (RootCell cell : isolate_positive_roots(ig.p)) {
        for (int it = 0; it < 400; ++it) {
            if (cell.exact) {
                if (ig.t_of(cell.lower) > b) return false;
                break;
            }
            if (ig.t_of(cell.upper) <= b) break;
            if (ig.t_of(cell.lower) >= b) return false;
            const Rational mid = (cell.lower + cell.upper) / 2;
            const Rational v = sf(mid);
            if (v == 0) cell = {mid, mid, true};
            else if ((v > 0) == (sf(cell.upper) > 0)) cell.upper = mid;
            else cell.lower = mid;
            if (it == 399) return false;
        }
    }
    return true;
}

void criterion_8() {
    using T = UnivariateSignomial::Term;
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<long> coef(-9, 9), gap(1, 3), size(2, 6), den(1, 3);
    std::size_t cases = 0, sound = 0, bounds = 0;
    while (cases < 200) {
        std::vector<T> terms;
        Rational e = 0;
        const long d = size(rng);
        for (long i = 0; i < d; ++i) {
            e += Rational(gap(rng), den(rng));
            long c = coef(rng);
            if (c == 0) c = 1;
            terms.push_back({e, Rational(i == d - 1 ? std::abs(c) : c)});
        }
        const UnivariateSignomial g(terms);
        const Rational eps = g.leading_coefficient() / 2;
        std::vector<Rational> bs;
        for (std::size_t p = 1; p <= g.size(); ++p) {
            if (!detail::trailing_block_positive(g, p, eps)) continue;
            const Rational delta = p >= 2 ? g.terms()[p - 1].exponent - g.terms()[p - 2].exponent : Rational(1);
            bs.push_back(cauchy_bound(g, p, eps, delta));
        }
        if (bs.empty()) continue;
        ++cases;
        bool all = true;
        for (const auto& b : bs) {
            ++bounds;
            all = all && no_root_above(g, b);
        }
        sound += all;
    }
    const UnivariateSignomial linear({T{1, 1}, T{0, -3}});
    const UnivariateSignomial cubic({T{3, 2}, T{2, -1}, T{1, 1}, T{0, -5}});
    const Rational b1 = cauchy_bound(linear, 2, Rational(1, 2), 1);
    const Rational b2 = cauchy_bound(cubic, 2, 1, 1);
    const bool fixed = b1 == 6 && b2 == 5;
    report(8, "Cauchy-bound soundness", sound == cases && fixed,
           {std::to_string(sound) + "/" + std::to_string(cases) + " random signomials sound over " + std::to_string(bounds) +
                " certified bounds",
            "t - 3 -> " + to_string(b1) + " (expected 6); 2t^3 - t^2 + t - 5 -> " + to_string(b2) + " (expected 5)"});
}

void criterion_9() {
    std::mt19937_64 rng(9);
    std::size_t ok = 0, total = 0;
    std::vector<std::string> details;
    for (std::size_t n : {2u, 3u, 4u}) {
        std::size_t ok_n = 0;
        for (int trial = 0; trial < 50; ++trial) {
            std::uniform_int_distribution<long> d(0, 4), den(1, 2), extra(2, 5);
            std::vector<RationalVector> pts;
            const std::size_t m = n + static_cast<std::size_t>(extra(rng));
            for (std::size_t i = 0; i < m; ++i) {
                RationalVector p(n);
                for (auto& x : p) x = Rational(d(rng), den(rng));
                pts.push_back(std::move(p));
            }
            const Polytope P = convex_hull(pts);
            const auto faces = face_lattice(P, pts);
            const Fan fan = normal_fan(P);
            bool good = fan.cones.size() == faces.size() && fan.complete;
            for (std::size_t i = 0; good && i < faces.size(); ++i) {
                const Cone& C = fan.cones[i];
                // relint of N(F) gives exactly F
                good = good && face_of(P, pts, C.relint_point()).vertex_indices == faces[i].vertex_indices;
                // dim F = n - dim N(F)
                good = good && faces[i].dimension + C.dimension() == n;
                // F <= G iff N(F) >= N(G)
                for (std::size_t j = 0; good && j < faces.size(); ++j) {
                    const bool sub = std::includes(faces[j].vertex_indices.begin(), faces[j].vertex_indices.end(),
                                                   faces[i].vertex_indices.begin(), faces[i].vertex_indices.end());
                    good = sub == C.contains(fan.cones[j]);
                }
            }
            std::uniform_int_distribution<long> w(-6, 6);
            for (int k = 0; good && k < 40; ++k) {
                RationalVector v(n);
                for (auto& x : v) x = Rational(w(rng));
                std::size_t hits = 0;
                const Face cut = face_of(P, pts, v);
                for (std::size_t i = 0; i < faces.size(); ++i) {
                    const Membership mem = fan.cones[i].classify(v);
                    hits += mem == Membership::RelativeInterior;
                    // v in N(F) iff F <= P_v; v in relint N(F) iff P_v = F
                    const bool sub = std::includes(cut.vertex_indices.begin(), cut.vertex_indices.end(),
                                                   faces[i].vertex_indices.begin(), faces[i].vertex_indices.end());
                    good = good && (mem != Membership::Outside) == sub &&
                           (mem == Membership::RelativeInterior) == (cut.vertex_indices == faces[i].vertex_indices);
                }
                good = good && hits == 1;
            }
            ++total;
            ok += good;
            ok_n += good;
        }
        details.push_back("n = " + std::to_string(n) + ": " + std::to_string(ok_n) + "/50 polytopes");
    }
    report(9, "Polyhedral kernel properties", ok == total, details);
}

void criterion_10() {
    const Signomial g = sig(kPositiveNotInterior);
    std::size_t negatives = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        OracleConfig cfg;
        cfg.seed = seed;
        const Verdict v = decide_negativity(g, cfg);
        if (is_negative(v)) ++negatives;
        if (const auto* u = std::get_if<Unknown>(&v)) worst = std::min(worst, u->best_value);
    }
    const Rational eps(1, 100);
    Signomial g_eps = g;
    g_eps.add_term(ExponentVector(2, Rational(0)), -eps);
    const Verdict v = decide_negativity(g_eps);
    bool ok_eps = false;
    std::string eps_text = std::string("verdict ") + verdict_name(v);
    if (const auto* n = std::get_if<CertNegative>(&v)) {
        const Rational exact = evaluate(g_eps, n->witness);
        const double bound = -0.75 * to_double(eps) + 1e-9;
        ok_eps = exact == n->value && to_double(exact) <= bound;
        eps_text += " via " + n->strategy + ", exact value " + fmt(to_double(exact), 8) + " (need <= " + fmt(bound, 8) +
                    "; re-evaluated exactly: " + yes(exact == n->value) + ")";
    }
    report(10, "Oracle honesty", negatives == 0 && ok_eps,
           {"positive-not-interior signomial: " + std::to_string(negatives) + "/20 seeds CertNegative; smallest normalised best value " +
                fmt(worst),
            "shifted signomial, eps = 1/100: " + eps_text});
}

}  // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (10 - failures) << "/10 criteria passed in " << fmt(secs, 3) << " s\n";
    return failures == 0 ? 0 : 1;
}
