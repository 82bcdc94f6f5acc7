#ifndef TROPONEG_IO_SVG_HPP
#define TROPONEG_IO_SVG_HPP

// Planar figures: Newton polytopes with signed support markers (filled blue
// for negative coefficients, hollow red for positive), shaded cones clipped
// to a box, and scatter clouds. Output is a pure function of the scene.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "troponeg/cone_union.hpp"
#include "troponeg/polytope.hpp"
#include "troponeg/signomial.hpp"

namespace troponeg::io {

struct SvgScene {
    std::size_t dimension = 2;
    std::string title;
    std::optional<Polytope> polytope;
    std::vector<RationalVector> negative_points;
    std::vector<RationalVector> positive_points;
    std::vector<Cone> cones;
    std::vector<std::vector<double>> scatter;
    double box = 5;  // half-width of the window for cones and scatter
};

inline SvgScene newton_scene(const Signomial& f) {
    SvgScene s;
    s.dimension = f.dimension();
    s.title = "Newton polytope";
    const SignedSupport ss = signed_support(f);
    s.negative_points = ss.negative;
    s.positive_points = ss.positive;
    s.polytope = convex_hull(f.support());
    return s;
}

inline SvgScene cone_scene(const ConeUnion& U, double box = 5) {
    SvgScene s;
    s.dimension = U.ambient_dimension();
    s.title = "cones";
    s.cones = U.cones();
    s.box = box;
    return s;
}

inline SvgScene scatter_scene(std::size_t n, std::vector<std::vector<double>> points, double box = 5) {
    SvgScene s;
    s.dimension = n;
    s.title = "log image sample";
    s.scatter = std::move(points);
    s.box = box;
    return s;
}

namespace detail {

using Point2 = std::array<double, 2>;

/// Keeps the part of the polygon with a.x >= 0.
inline std::vector<Point2> clip_halfplane(const std::vector<Point2>& poly, const Point2& a) {
    std::vector<Point2> out;
    const auto side = [&](const Point2& p) { return a[0] * p[0] + a[1] * p[1]; };
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point2& p = poly[i];
        const Point2& q = poly[(i + 1) % poly.size()];
        const double sp = side(p), sq = side(q);
        if (sp >= 0) out.push_back(p);
        if ((sp > 0 && sq < 0) || (sp < 0 && sq > 0)) {
            const double t = sp / (sp - sq);
            out.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
        }
    }
    return out;
}

inline std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    std::string s = buf;
    return s == "-0.00" ? "0.00" : s;
}

class Canvas {
public:
    Canvas(double xmin, double xmax, double ymin, double ymax) : xmin_(xmin), xmax_(xmax), ymin_(ymin), ymax_(ymax) {}

    std::string x(double wx) const { return num(margin + (wx - xmin_) / (xmax_ - xmin_) * inner); }
    std::string y(double wy) const { return num(margin + (ymax_ - wy) / (ymax_ - ymin_) * inner); }
    std::string pt(const Point2& p) const { return x(p[0]) + "," + y(p[1]); }

    static constexpr double size = 400, margin = 20, inner = size - 2 * margin;
    double xmin_, xmax_, ymin_, ymax_;
};

inline Point2 as_point(std::span<const Rational> v) { return {to_double(v[0]), to_double(v[1])}; }

}  // namespace detail

inline std::string emit_svg_2d(const SvgScene& scene) {
    using detail::Point2;
    if (scene.dimension != 2)
        throw DomainError("SVG output needs two variables; use --fmt csv for dimension " + std::to_string(scene.dimension));
    // World window: the box for cones and clouds, the padded bounding box of
    // the polytope and markers otherwise.
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool have = false;
    const auto include = [&](double a, double b) {
        if (!have) {
            xmin = xmax = a;
            ymin = ymax = b;
            have = true;
        }
        xmin = std::min(xmin, a);
        xmax = std::max(xmax, a);
        ymin = std::min(ymin, b);
        ymax = std::max(ymax, b);
    };
    std::vector<RationalVector> marks = scene.negative_points;
    marks.insert(marks.end(), scene.positive_points.begin(), scene.positive_points.end());
    if (scene.polytope)
        for (const auto& v : scene.polytope->vertices()) marks.push_back(v);
    for (const auto& m : marks) include(to_double(m[0]), to_double(m[1]));
    if (have) {
        const double pad = std::max({1.0, 0.1 * (xmax - xmin), 0.1 * (ymax - ymin)});
        xmin -= pad, xmax += pad, ymin -= pad, ymax += pad;
    }
    if (!scene.cones.empty() || !scene.scatter.empty() || !have) {
        include(-scene.box, -scene.box);
        include(scene.box, scene.box);
    }
    const detail::Canvas cv(xmin, xmax, ymin, ymax);

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n";
    if (!scene.title.empty()) os << "  <title>" << scene.title << "</title>\n";
    os << "  <rect x=\"0\" y=\"0\" width=\"400\" height=\"400\" fill=\"white\"/>\n";
    os << "  <g stroke=\"#999999\" stroke-width=\"1\">\n";
    if (xmin <= 0 && 0 <= xmax) os << "    <line x1=\"" << cv.x(0) << "\" y1=\"" << cv.y(ymin) << "\" x2=\"" << cv.x(0) << "\" y2=\"" << cv.y(ymax) << "\"/>\n";
    if (ymin <= 0 && 0 <= ymax) os << "    <line x1=\"" << cv.x(xmin) << "\" y1=\"" << cv.y(0) << "\" x2=\"" << cv.x(xmax) << "\" y2=\"" << cv.y(0) << "\"/>\n";
    os << "  </g>\n";

    if (!scene.cones.empty()) {
        const double B = scene.box;
        const std::vector<Point2> square{{-B, -B}, {B, -B}, {B, B}, {-B, B}};
        os << "  <g class=\"cones\" fill=\"#4a78c2\" fill-opacity=\"0.3\" stroke=\"#1f4fb4\" stroke-width=\"2\">\n";
        for (const auto& C : scene.cones) {
            if (C.dimension() == 2) {
                std::vector<Point2> poly = square;
                for (const auto& a : C.inequalities()) poly = detail::clip_halfplane(poly, detail::as_point(a));
                if (poly.size() < 3) continue;
                os << "    <polygon points=\"";
                for (std::size_t i = 0; i < poly.size(); ++i) os << (i ? " " : "") << cv.pt(poly[i]);
                os << "\"/>\n";
            } else if (C.dimension() == 1) {
                std::vector<Point2> dirs;
                for (const auto& r : C.rays()) dirs.push_back(detail::as_point(r));
                for (const auto& l : C.lineality()) {
                    dirs.push_back(detail::as_point(l));
                    dirs.push_back({-to_double(l[0]), -to_double(l[1])});
                }
                for (const auto& d : dirs) {
                    const double s = B / std::max(std::abs(d[0]), std::abs(d[1]));
                    os << "    <line x1=\"" << cv.x(0) << "\" y1=\"" << cv.y(0) << "\" x2=\"" << cv.x(s * d[0])
                       << "\" y2=\"" << cv.y(s * d[1]) << "\"/>\n";
                }
            } else {
                os << "    <circle cx=\"" << cv.x(0) << "\" cy=\"" << cv.y(0) << "\" r=\"4\"/>\n";
            }
        }
        os << "  </g>\n";
    }

    if (scene.polytope) {
        std::vector<Point2> vs;
        for (const auto& v : scene.polytope->vertices()) vs.push_back(detail::as_point(v));
        os << "  <g class=\"polytope\" fill=\"#eeeeee\" stroke=\"black\" stroke-width=\"1.5\">\n";
        if (scene.polytope->dimension() == 2) {
            // Vertices in counterclockwise order around the centroid.
            Point2 c{0, 0};
            for (const auto& p : vs) c = {c[0] + p[0] / vs.size(), c[1] + p[1] / vs.size()};
            std::sort(vs.begin(), vs.end(), [&](const Point2& a, const Point2& b) {
                return std::atan2(a[1] - c[1], a[0] - c[0]) < std::atan2(b[1] - c[1], b[0] - c[0]);
            });
            os << "    <polygon points=\"";
            for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? " " : "") << cv.pt(vs[i]);
            os << "\"/>\n";
        } else if (vs.size() == 2) {
            os << "    <line x1=\"" << cv.x(vs[0][0]) << "\" y1=\"" << cv.y(vs[0][1]) << "\" x2=\"" << cv.x(vs[1][0])
               << "\" y2=\"" << cv.y(vs[1][1]) << "\"/>\n";
        }
        os << "  </g>\n";
    }

    if (!scene.scatter.empty()) {
        os << "  <g class=\"scatter\" fill=\"#1f4fb4\" fill-opacity=\"0.6\">\n";
        for (const auto& p : scene.scatter) os << "    <circle cx=\"" << cv.x(p[0]) << "\" cy=\"" << cv.y(p[1]) << "\" r=\"1.2\"/>\n";
        os << "  </g>\n";
    }

    if (!scene.negative_points.empty()) {
        os << "  <g class=\"negative\" fill=\"#1f4fb4\" stroke=\"#1f4fb4\">\n";
        for (const auto& p : scene.negative_points) os << "    <circle cx=\"" << cv.x(to_double(p[0])) << "\" cy=\"" << cv.y(to_double(p[1])) << "\" r=\"5\"/>\n";
        os << "  </g>\n";
    }
    if (!scene.positive_points.empty()) {
        os << "  <g class=\"positive\" fill=\"white\" stroke=\"#c0392b\" stroke-width=\"2\">\n";
        for (const auto& p : scene.positive_points) os << "    <circle cx=\"" << cv.x(to_double(p[0])) << "\" cy=\"" << cv.y(to_double(p[1])) << "\" r=\"5\"/>\n";
        os << "  </g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace troponeg::io

#endif  // TROPONEG_IO_SVG_HPP
