#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "troponeg/tropicalization.hpp"

using namespace troponeg;
using namespace testing_support;

namespace {

const char* kTriangle = "x1^2 - x1 + 1 - x2^2";
const char* kG = "x1^2 - 2x1 + 1 - x2^2";
const char* kThreeVar = "x2^2 - 2x2 + 1 - 2x1x2x3 + x1x2x3^2 + x1^2x2";
const char* kBounded = "x1^9x2^6 + x1^6x2^9 - x1^7x2^7 - 4x1^7x2^6 + 5x1^5x2 + 5x1x2^5 - 5x1x2 + 1";

ConeUnion triangle_sector() { return ConeUnion::canonical(2, {ray_cone(2, {vec({-1, 0}), vec({1, 1})})}); }

const NbRecord& record_for(const NbVerdict& nb, const std::vector<RationalVector>& vertices) {
    for (const auto& r : nb.records)
        if (r.face.vertices == vertices) return r;
    throw std::runtime_error("face not found");
}

}  // namespace

TEST(Sigma, TriangleSector) {
    const SigmaResult s = sigma({sig(kTriangle)});
    EXPECT_TRUE(s.certified.set_equal(triangle_sector()));
    EXPECT_FALSE(s.certified.contains(vec({0, -1})));
    EXPECT_TRUE(s.possible.set_equal(s.certified));
    bool south_checked = false;
    for (const auto& r : s.records) {
        if (r.cone.contains(vec({0, -1})) && r.cone.dimension() == 1u) {
            south_checked = true;
            EXPECT_TRUE(is_nonnegative(r.verdict));
        }
    }
    EXPECT_TRUE(south_checked);
}

TEST(Sigma, ThreeDimensionalExampleIsTheOrigin) {
    const SigmaResult s = sigma({sig(kThreeVar)});
    EXPECT_TRUE(s.certified.set_equal(ConeUnion::canonical(3, {Cone::origin(3)})));
    EXPECT_TRUE(s.certified.subset_of(s.possible));
    EXPECT_TRUE(s.possible.subset_of(negative_normal_cone(newton_polytope(sig(kThreeVar)))));
    EXPECT_EQ(evaluate(sig(kThreeVar), vecq({Rational(1, 2), 1, Rational(1, 2)})), Rational(-1, 8));
}

TEST(Sigma, AllPositiveIsEmpty) {
    const SigmaResult s = sigma({sig("1 + x1 + x2^2 + x1x2")});
    EXPECT_TRUE(s.certified.empty());
    EXPECT_TRUE(s.possible.empty());
}

TEST(Sigma, RelativeInteriorSamplesAgree) {
    // One certified relint vector certifies the whole cone, so other relint
    // vectors of the same cone must also come out negative.
    for (const char* text : {kTriangle, kBounded}) {
        const SigmaResult s = sigma({sig(text)});
        std::mt19937_64 rng(11);
        for (const auto& r : s.records) {
            if (!is_negative(r.verdict)) continue;
            for (int k = 0; k < 5; ++k) {
                RationalVector v = r.representative;
                std::uniform_int_distribution<long> d(1, 5);
                for (const auto& ray : r.cone.rays()) {
                    const Rational c(d(rng), 3);
                    for (std::size_t j = 0; j < v.size(); ++j) v[j] += c * ray[j];
                }
                for (const auto& l : r.cone.lineality()) {
                    const Rational c(d(rng) - 3);
                    for (std::size_t j = 0; j < v.size(); ++j) v[j] += c * l[j];
                }
                ASSERT_EQ(r.cone.classify(v), Membership::RelativeInterior);
                std::vector<Signomial> restrictions{restrict_to_direction(sig(text), v)};
                EXPECT_TRUE(is_negative(decide_joint_negativity(restrictions))) << text;
            }
        }
    }
}

TEST(Sandwich, Triangle) {
    const InclusionReport r = inclusion_report({sig(kTriangle)});
    ASSERT_EQ(r.inclusions.size(), 3u);
    EXPECT_TRUE(r.all_hold());
    EXPECT_TRUE(r.regular.set_equal(r.sigma.certified));
    EXPECT_FALSE(r.inclusions[0].strict());
    EXPECT_TRUE(r.inclusions[1].strict());
    ASSERT_TRUE(r.inclusions[1].strictness.has_value());
    EXPECT_EQ(*r.inclusions[1].strictness, vec({0, -1}));
}

TEST(Sandwich, ThreeDimensionalExampleIsStrictEverywhere) {
    const InclusionReport r = inclusion_report({sig(kThreeVar)});
    EXPECT_TRUE(r.all_hold());
    EXPECT_TRUE(r.all_strict());
    EXPECT_TRUE(r.regular.empty());
    EXPECT_EQ(r.outer.dimension(), 2);
}

TEST(Sandwich, MaximallySparseSetsCoincide) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const Signomial f = random_maximally_sparse(rng, 2 + trial % 2);
        const InclusionReport r = inclusion_report({f});
        EXPECT_TRUE(r.all_hold()) << trial;
        EXPECT_TRUE(r.regular.set_equal(r.outer)) << trial;
        EXPECT_TRUE(r.sigma.certified.set_equal(r.outer)) << trial;
    }
}

TEST(Sandwich, Systems) {
    const std::vector<Signomial> fs{sig("x1 - 1", {"x1", "x2"}), sig("x2 - 1 + x1x2^2", {"x1", "x2"})};
    const InclusionReport r = inclusion_report(fs);
    EXPECT_TRUE(r.all_hold());
    EXPECT_TRUE(r.regular.subset_of(r.sigma.certified));
}

TEST(Genericity, InteriorAndBoundaryFaces) {
    const NbVerdict f = nb_check(newton_polytope(sig(kTriangle)));
    EXPECT_EQ(record_for(f, {vec({0, 0}), vec({2, 0})}).label, NbLabel::InteriorLikely);
    EXPECT_EQ(record_for(f, {vec({0, 2})}).label, NbLabel::TakesNegative);
    EXPECT_TRUE(f.generic());
    const NbVerdict g = nb_check(newton_polytope(sig(kG)));
    const NbRecord& edge = record_for(g, {vec({0, 0}), vec({2, 0})});
    EXPECT_EQ(edge.label, NbLabel::Boundary);
    ASSERT_TRUE(edge.witness.has_value());
    EXPECT_EQ(evaluate(edge.restriction, *edge.witness), 0);
    EXPECT_FALSE(g.generic());
    EXPECT_TRUE(g.boundary_found());
}

TEST(Genericity, PerturbationFindsTheBoundary) {
    // x1^2 - 2x1 + 1 + 10^-5 is strictly positive, but lowering the x1^2
    // coefficient by 1/1000 opens up a negative interval around x1 = 1.
    const NbVerdict nb = nb_check(newton_polytope(sig("x1^2 - 2x1 + 100001/100000 - x2^2")));
    const NbRecord& r = record_for(nb, {vec({0, 0}), vec({2, 0})});
    EXPECT_EQ(r.label, NbLabel::Boundary);
    EXPECT_EQ(r.evidence, "negative after lowering one positive coefficient");
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_GT(evaluate(r.restriction, *r.witness), 0);
}

TEST(Genericity, TropClaimsCarryTheirHypothesis) {
    const auto Nf = newton_polytope(sig(kTriangle));
    const TropClaim cf = trop_claim(Nf, nb_check(Nf));
    EXPECT_TRUE(cf.equals_sigma);
    EXPECT_FALSE(cf.equals_negative_cone);
    const auto Ng = newton_polytope(sig(kG));
    const TropClaim cg = trop_claim(Ng, nb_check(Ng));
    EXPECT_FALSE(cg.equals_sigma);
    EXPECT_FALSE(cg.equals_negative_cone);
    const auto Ns = newton_polytope(sig("x1 + x2 - 1"));
    const TropClaim cs = trop_claim(Ns, nb_check(Ns));
    EXPECT_TRUE(cs.equals_sigma && cs.equals_negative_cone);
    EXPECT_EQ(cs.hypothesis, "maximally sparse");
}

TEST(Sampling, DeterministicAcrossThreads) {
    const std::vector<Signomial> fs{sig(kTriangle)};
    const SampleCloud a = empirical_log_sample(fs, 10, 5, 3000, 7, 1);
    const SampleCloud b = empirical_log_sample(fs, 10, 5, 3000, 7, 4);
    EXPECT_EQ(a.points, b.points);
    EXPECT_FALSE(a.points.empty());
    const SampleCloud c = empirical_log_sample(fs, 10, 5, 3000, 8, 1);
    EXPECT_NE(a.points, c.points);
}

TEST(Sampling, KeptPointsAreNegative) {
    const Signomial f = sig(kTriangle);
    const SampleCloud cloud = empirical_log_sample({f}, 10, 3, 2000, 1);
    for (const auto& y : cloud.points) {
        ASSERT_EQ(y.size(), 2u);
        const double x1 = std::pow(10.0, y[0]), x2 = std::pow(10.0, y[1]);
        EXPECT_LT(x1 * x1 - x1 + 1 - x2 * x2, 0);
        EXPECT_GE(x2, std::sqrt(3.0) / 2 - 1e-9);
    }
}

TEST(Sampling, EmptyAndBoundedClouds) {
    EXPECT_TRUE(empirical_log_sample({sig("1 + x1 + x2")}, 10, 5, 500, 7).points.empty());
    const SampleCloud cloud = empirical_log_sample({sig(kBounded)}, 10, 5, 20000, 7);
    EXPECT_FALSE(cloud.points.empty());
    EXPECT_LT(sup_norm(cloud), 2.0);
    EXPECT_THROW(empirical_log_sample({sig(kTriangle)}, 1, 5, 10, 7), DomainError);
    EXPECT_THROW(empirical_log_sample({sig(kTriangle)}, 10, 5, 0, 7), DomainError);
}

TEST(Sampling, OuterCloudPointsHugTheNegativeCone) {
    const Signomial f = sig(kTriangle);
    const ConeUnion outer = negative_normal_cone(newton_polytope(f));
    const SampleCloud cloud = empirical_log_sample({f}, 1e4, 5, 5000, 7);
    double worst = 0;
    for (const auto& y : cloud.points)
        if (std::hypot(y[0], y[1]) >= 1) worst = std::max(worst, angular_distance(y, outer));
    EXPECT_LE(worst, 0.1);
}

TEST(AngularDistance, HandComputed) {
    const ConeUnion quarter = ConeUnion::canonical(2, {ray_cone(2, {vec({1, 0}), vec({0, 1})})});
    const std::vector<double> inside{1, 2}, left{-1, 1}, opposite{-1, -1};
    EXPECT_NEAR(angular_distance(inside, quarter), 0, 1e-12);
    EXPECT_NEAR(angular_distance(left, quarter), std::atan(1.0), 1e-12);
    EXPECT_NEAR(angular_distance(opposite, quarter), std::acos(0.0), 1e-12);
    const ConeUnion line = ConeUnion::canonical(2, {Cone::from_constraints(2, {}, {vec({0, 1})})});
    EXPECT_NEAR(angular_distance(std::vector<double>{3, 3}, line), std::atan(1.0), 1e-12);
    EXPECT_TRUE(std::isinf(angular_distance(inside, ConeUnion(2))));
}

TEST(WitnessConvergence, ClosedFormError) {
    const Signomial f = sig(kTriangle);
    const ConvergenceRecord rec = witness_convergence({f}, vec({1, 1}), vec({1, 2}));
    ASSERT_FALSE(rec.samples.empty());
    EXPECT_TRUE(rec.all_in_set());
    EXPECT_TRUE(rec.monotone());
    for (const auto& s : rec.samples) {
        EXPECT_GT(s.t, rec.threshold);
        EXPECT_NEAR(s.error, std::log(2.0) / std::log(to_double(s.t)), 1e-12);
    }
}

TEST(WitnessConvergence, TrivialAndStationaryWitnesses) {
    const ConvergenceRecord ones = witness_convergence({sig(kTriangle)}, vec({0, 1}), vec({1, 1}));
    for (const auto& s : ones.samples) EXPECT_EQ(s.error, 0);
    EXPECT_TRUE(ones.all_in_set());
    const ConvergenceRecord still =
        witness_convergence({sig(kThreeVar)}, vec({0, 0, 0}), vecq({Rational(1, 2), 1, Rational(1, 2)}));
    EXPECT_TRUE(still.all_in_set());
    EXPECT_TRUE(still.monotone());
}

TEST(WitnessConvergence, OracleWitnessAndErrors) {
    const ConvergenceRecord rec = witness_convergence({sig(kTriangle)}, vecq({Rational(1, 2), 1}));
    EXPECT_TRUE(rec.all_in_set());
    EXPECT_THROW(witness_convergence({sig(kTriangle)}, vec({0, -1})), DomainError);
}
