#include "orbithull/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "orbithull/errors.hpp"

namespace orbithull {

namespace {

using P2 = std::array<double, 2>;

P2 project(const std::vector<double>& c) {
    switch (c.size()) {
        case 0: return {0.0, 0.0};
        case 1: return {c[0], 0.0};
        case 2: return {c[0], c[1]};
        default: {
            const double r3 = std::sqrt(3.0) / 2.0;
            return {r3 * (c[0] - c[1]), c[2] - 0.5 * (c[0] + c[1])};
        }
    }
}

double cross(const P2& o, const P2& a, const P2& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

/// Monotone chain.
std::vector<P2> convex_hull(std::vector<P2> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<P2> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
        h[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

}  // namespace

std::string hull_svg(const OrbitHull& h) {
    const TorusLattice& t = h.torus();
    if (t.rank() > 3) throw PreconditionError("SVG output needs dim t <= 3, got " + std::to_string(t.rank()));

    std::vector<P2> verts;
    for (auto i : h.q_vertices()) verts.push_back(project(t.intrinsic(h.points()[i])));
    std::vector<P2> dirs;
    for (const auto& r : h.recession().rays) {
        P2 d = project(t.intrinsic(to_double(r)));
        double len = std::hypot(d[0], d[1]);
        if (len > 0) dirs.push_back({d[0] / len, d[1] / len});
    }

    double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
    for (const auto& p : verts) {
        lo_x = std::min(lo_x, p[0]);
        hi_x = std::max(hi_x, p[0]);
        lo_y = std::min(lo_y, p[1]);
        hi_y = std::max(hi_y, p[1]);
    }
    const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1.0});
    const double arrow = 0.4 * span;
    lo_x -= arrow;
    hi_x += arrow;
    lo_y -= arrow;
    hi_y += arrow;
    const double size = 400.0;
    const double scale = size / std::max(hi_x - lo_x, hi_y - lo_y);
    auto sx = [&](double x) { return (x - lo_x) * scale; };
    auto sy = [&](double y) { return size - (y - lo_y) * scale; };

    std::ostringstream os;
    os.precision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\">\n";
    os << "<defs><marker id=\"head\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" refY=\"3\" orient=\"auto\">"
          "<path d=\"M0,0 L6,3 L0,6 z\" fill=\"#555\"/></marker></defs>\n";
    std::vector<P2> hull = convex_hull(verts);
    if (hull.size() >= 2) {
        os << "<polygon fill=\"#cfe0f5\" stroke=\"#24507a\" stroke-width=\"2\" points=\"";
        for (const auto& p : hull) os << sx(p[0]) << "," << sy(p[1]) << " ";
        os << "\"/>\n";
    }
    for (const auto& p : verts) {
        for (const auto& d : dirs) {
            os << "<line x1=\"" << sx(p[0]) << "\" y1=\"" << sy(p[1]) << "\" x2=\"" << sx(p[0] + arrow * d[0])
               << "\" y2=\"" << sy(p[1] + arrow * d[1]) << "\" stroke=\"#555\" marker-end=\"url(#head)\"/>\n";
        }
    }
    for (const auto& p : verts) {
        os << "<circle cx=\"" << sx(p[0]) << "\" cy=\"" << sy(p[1]) << "\" r=\"4\" fill=\"#24507a\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace orbithull
