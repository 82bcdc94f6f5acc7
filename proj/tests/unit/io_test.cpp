#include <gtest/gtest.h>

#include <random>
#include <regex>

#include "helpers.hpp"
#include "troponeg/io/json.hpp"
#include "troponeg/io/svg.hpp"
#include "troponeg/io/workspace.hpp"

using namespace troponeg;
using namespace testing_support;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

/// Text of the <g class="name"> group, empty if absent.
std::string group(const std::string& svg, const std::string& name) {
    const auto start = svg.find("<g class=\"" + name + "\"");
    if (start == std::string::npos) return {};
    return svg.substr(start, svg.find("</g>", start) - start);
}

Signomial random_signomial(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<long> num(-7, 7), den(1, 3), terms(1, 6);
    Signomial f(n);
    const long m = terms(rng);
    for (long k = 0; k < m; ++k) {
        ExponentVector e(n);
        for (auto& x : e) x = Rational(num(rng), den(rng));
        long c = num(rng);
        f.add_term(e, Rational(c == 0 ? 1 : c, den(rng)));
    }
    return f;
}

}  // namespace

TEST(Parse, MergesLikeTermsAndDropsZeros) {
    const Signomial f = sig("x1^2 - x1 + x1 + 1");
    EXPECT_EQ(f.size(), 2u);
    EXPECT_EQ(f, sig("x1^2 + 1"));
    EXPECT_EQ(sig("x1^2 - x1 + 1 - x2^2").size(), 4u);
    EXPECT_EQ(sig("(x1 - x2)^2 - x1^2 - x2^2"), sig("-2x1x2"));
    EXPECT_EQ(sig("x1x2x3").size(), 1u);
    EXPECT_EQ(sig("x1x2x3").dimension(), 3u);
}

TEST(Parse, RationalAndDecimalExponents) {
    const Signomial f = sig("2.5*x1^(3/2) - x2^-1 + x1^0.25/4");
    EXPECT_EQ(f.coefficient(vecq({Rational(3, 2), 0})), Rational(5, 2));
    EXPECT_EQ(f.coefficient(vecq({0, -1})), -1);
    EXPECT_EQ(f.coefficient(vecq({Rational(1, 4), 0})), Rational(1, 4));
    const auto sys = io::parse_input(R"({"vars": ["x1", "x2"], "terms": [{"c": "1", "e": ["3/2", "0"]}, {"c": "-0.5", "e": ["0", "1"]}]})");
    ASSERT_EQ(sys.signomials.size(), 1u);
    EXPECT_EQ(sys.signomials[0].coefficient(vecq({Rational(3, 2), 0})), 1);
    EXPECT_EQ(sys.signomials[0].coefficient(vec({0, 1})), Rational(-1, 2));
}

TEST(Parse, ErrorsCarryLineAndColumn) {
    try {
        io::parse_expressions("x1 + 1\nx1 + * x2\n");
        FAIL() << "expected a parse error";
    } catch (const io::ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_EQ(e.column(), 6u);
    }
    EXPECT_THROW(io::parse_signomial("x1^"), io::ParseError);
    EXPECT_THROW(io::parse_signomial("x1 / x2"), io::ParseError);
    EXPECT_THROW(io::parse_input("{\"vars\": [\"x1\"]"), io::ParseError);
    EXPECT_THROW(io::parse_input(R"({"signomials": [{"vars": ["x1"], "terms": []}, {"vars": ["x2"], "terms": []}]})"),
                 DomainError);
}

TEST(Parse, VariableOrder) {
    const auto sys = io::parse_expressions("x10 + x2 - x1");
    EXPECT_EQ(sys.variables, (std::vector<std::string>{"x1", "x2", "x10"}));
    const auto declared = io::parse_expressions("y - x", {"y", "x"});
    EXPECT_EQ(declared.variables, (std::vector<std::string>{"y", "x"}));
    EXPECT_EQ(declared.signomials[0].coefficient(vec({1, 0})), 1);
    const auto system = io::parse_expressions("x1 - 1; x2 - 1  # two signomials");
    ASSERT_EQ(system.signomials.size(), 2u);
    EXPECT_EQ(system.signomials[0].dimension(), 2u);
    EXPECT_EQ(io::parse_expressions("# a; b\nx1 - 1").signomials.size(), 1u);
}

TEST(Json, RoundTrip) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + trial % 3;
        const Signomial f = random_signomial(rng, n);
        const auto vars = io::default_variables(n);
        const auto from_json = io::parse_input(io::to_json(f, vars).dump());
        ASSERT_EQ(from_json.signomials.size(), 1u);
        EXPECT_EQ(from_json.signomials[0], f);
        EXPECT_EQ(io::parse_signomial(io::to_expression(f, vars), vars), f) << io::to_expression(f, vars);
    }
}

TEST(Json, ConeAndVerdictSchemas) {
    const Cone c = ray_cone(2, {vec({-1, 0}), vec({1, 1})});
    const auto j = io::to_json(c);
    EXPECT_EQ(j["rays"], io::json::parse(R"([["-1","0"],["1","1"]])"));
    EXPECT_TRUE(j.contains("lineality") && j.contains("ineqs") && j.contains("eqs"));
    const auto u = io::to_json(ConeUnion::canonical(2, {c}));
    EXPECT_EQ(u["cones"].size(), 1u);
    const auto v = io::to_json(decide_negativity(sig("x1^2 - x2^2")));
    EXPECT_EQ(v["verdict"], "cert-negative");
    EXPECT_EQ(v["witness"], (io::json{"1", "2"}));
    EXPECT_EQ(v["value"], "-3");
    const auto p = io::to_json(decide_negativity(sig("1 + x1")));
    EXPECT_EQ(p["verdict"], "cert-nonnegative");
    EXPECT_EQ(p["reason"], "all-positive-coefficients");
}

TEST(Csv, HeaderAndRows) {
    EXPECT_EQ(io::to_csv({{0.5, -1}, {2, 0.25}}, 2), "y1,y2\n0.5,-1\n2,0.25\n");
    EXPECT_EQ(io::to_csv({}, 3), "y1,y2,y3\n");
    EXPECT_EQ(io::format_double(0.1), "0.1");
}

TEST(Svg, TriangleMarkers) {
    const std::string svg = io::emit_svg_2d(io::newton_scene(sig("x1^2 - x1 + 1 - x2^2")));
    EXPECT_EQ(count(group(svg, "negative"), "<circle"), 2u);
    EXPECT_EQ(count(group(svg, "positive"), "<circle"), 2u);
    EXPECT_EQ(count(group(svg, "polytope"), "<polygon"), 1u);
    EXPECT_EQ(svg, io::emit_svg_2d(io::newton_scene(sig("x1^2 - x1 + 1 - x2^2"))));
}

TEST(Svg, SectorAndEmptyScenes) {
    const ConeUnion sector = ConeUnion::canonical(2, {ray_cone(2, {vec({-1, 0}), vec({1, 1})})});
    const std::string s = io::emit_svg_2d(io::cone_scene(sector));
    EXPECT_EQ(count(group(s, "cones"), "<polygon"), 1u);
    // clipped to the 5-box: (0,0), (5,5), (-5,5), (-5,0)
    EXPECT_NE(s.find("points=\"200.00,200.00 380.00,20.00 20.00,20.00 20.00,200.00\""), std::string::npos) << s;
    const std::string empty = io::emit_svg_2d(io::scatter_scene(2, {}));
    EXPECT_TRUE(group(empty, "scatter").empty());
    EXPECT_EQ(count(empty, "<line"), 2u);  // the axes
    EXPECT_THROW(io::emit_svg_2d(io::scatter_scene(3, {})), DomainError);
}

TEST(Workspace, ContentAddressedCache) {
    io::Workspace ws(io::parse_expressions("x1 - x2 + 1; 1 + x1 - x2; x1x2 - 1"));
    const auto Ns = ws.newtons();
    EXPECT_EQ(Ns.size(), 3u);
    EXPECT_EQ(ws.cached(), 2u);
    EXPECT_EQ(io::content_hash(ws.signomials()[0]), io::content_hash(ws.signomials()[1]));
    EXPECT_NE(io::content_hash(ws.signomials()[0]), io::content_hash(ws.signomials()[2]));
    EXPECT_EQ(io::content_hash(ws.signomials()[0]).size(), 16u);
}
