#include "coop2mac/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace coop2mac {

namespace {

double cross(const RatePair& o, const RatePair& a, const RatePair& b) {
    return (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1);
}

// Monotone-chain convex hull, counterclockwise, collinear points dropped.
std::vector<RatePair> convex_hull(std::vector<RatePair> pts) {
    std::sort(pts.begin(), pts.end(), [](const RatePair& a, const RatePair& b) {
        return a.r1 < b.r1 || (a.r1 == b.r1 && a.r2 < b.r2);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const RatePair& a, const RatePair& b) {
                              return std::abs(a.r1 - b.r1) <= kGeomTol &&
                                     std::abs(a.r2 - b.r2) <= kGeomTol;
                          }),
              pts.end());
    const std::size_t n = pts.size();
    if (n <= 2) return pts;

    double scale = 1.0;
    for (const auto& p : pts) scale = std::max({scale, std::abs(p.r1), std::abs(p.r2)});
    const double eps = kGeomTol * scale;

    std::vector<RatePair> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {  // lower chain
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= eps) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper chain
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= eps) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

}  // namespace

RateRegion RateRegion::from_candidate_vertices(std::vector<RatePair> candidates) {
    for (auto& p : candidates) {
        p.r1 = std::max(p.r1, 0.0);
        p.r2 = std::max(p.r2, 0.0);
    }
    candidates.push_back({0.0, 0.0});
    std::vector<RatePair> hull = convex_hull(std::move(candidates));

    // Rotate so the cycle starts at the origin (lexicographically smallest).
    auto it = std::min_element(hull.begin(), hull.end(), [](const RatePair& a, const RatePair& b) {
        return a.r1 < b.r1 || (a.r1 == b.r1 && a.r2 < b.r2);
    });
    std::rotate(hull.begin(), it, hull.end());

    RateRegion region;
    region.vertices_ = std::move(hull);

    double maxx = 0.0, maxy = 0.0;
    for (const auto& v : region.vertices_) {
        maxx = std::max(maxx, v.r1);
        maxy = std::max(maxy, v.r2);
    }

    const std::size_t n = region.vertices_.size();
    bool have_a1 = false, have_a2 = false;
    for (std::size_t i = 0; i < n && n >= 2; ++i) {
        const RatePair& u = region.vertices_[i];
        const RatePair& w = region.vertices_[(i + 1) % n];
        const double dx = w.r1 - u.r1;
        const double dy = w.r2 - u.r2;
        const double len = std::hypot(dx, dy);
        if (len <= kGeomTol) continue;
        double a1 = dy / len, a2 = -dx / len;  // outward normal of the CCW cycle
        if (a1 < -kGeomTol || a2 < -kGeomTol) continue;
        a1 = std::max(a1, 0.0);
        a2 = std::max(a2, 0.0);
        const double s = a1 + a2;
        if (s <= kGeomTol) continue;
        a1 /= s;
        a2 /= s;
        region.halfspaces_.push_back({a1, a2, std::max(0.0, a1 * u.r1 + a2 * u.r2)});
        have_a1 = have_a1 || a1 > kGeomTol;
        have_a2 = have_a2 || a2 > kGeomTol;
    }
    if (!have_a1) region.halfspaces_.push_back({1.0, 0.0, maxx});
    if (!have_a2) region.halfspaces_.push_back({0.0, 1.0, maxy});
    return region;
}

RateRegion RateRegion::from_halfspaces(std::vector<HalfSpace> halfspaces) {
    if (halfspaces.empty()) {
        throw std::invalid_argument("from_halfspaces: empty constraint list");
    }
    bool bounds_r1 = false, bounds_r2 = false;
    for (const auto& h : halfspaces) {
        if (h.a1 < 0.0 || h.a2 < 0.0 || (h.a1 == 0.0 && h.a2 == 0.0)) {
            throw std::invalid_argument("from_halfspaces: weights must be >= 0 and not both zero");
        }
        if (h.c < 0.0 || !std::isfinite(h.c)) {
            throw std::invalid_argument("from_halfspaces: bound must be finite and >= 0");
        }
        bounds_r1 = bounds_r1 || h.a1 > 0.0;
        bounds_r2 = bounds_r2 || h.a2 > 0.0;
    }
    if (!bounds_r1) throw UnboundedRegion("r1 unbounded");
    if (!bounds_r2) throw UnboundedRegion("r2 unbounded");

    // Pairwise constraint intersections, axes included, filtered by feasibility.
    std::vector<HalfSpace> all = halfspaces;
    all.push_back({-1.0, 0.0, 0.0});
    all.push_back({0.0, -1.0, 0.0});

    auto feasible = [&](const RatePair& p) {
        if (p.r1 < -kGeomTol || p.r2 < -kGeomTol) return false;
        for (const auto& h : halfspaces) {
            const double s = std::max({1.0, std::abs(h.c)});
            if (h.a1 * p.r1 + h.a2 * p.r2 > h.c + kGeomTol * s) return false;
        }
        return true;
    };

    std::vector<RatePair> candidates;
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            const double det = all[i].a1 * all[j].a2 - all[i].a2 * all[j].a1;
            const double mag = std::hypot(all[i].a1, all[i].a2) * std::hypot(all[j].a1, all[j].a2);
            if (std::abs(det) <= 1e-12 * mag) continue;
            RatePair p;
            p.r1 = (all[i].c * all[j].a2 - all[j].c * all[i].a2) / det;
            p.r2 = (all[i].a1 * all[j].c - all[j].a1 * all[i].c) / det;
            if (feasible(p)) candidates.push_back(p);
        }
    }
    return from_candidate_vertices(std::move(candidates));
}

RateRegion RateRegion::from_points(std::span<const RatePair> points) {
    std::vector<RatePair> candidates;
    candidates.reserve(4 * points.size() + 1);
    for (const auto& p : points) {
        if (!std::isfinite(p.r1) || !std::isfinite(p.r2) || p.r1 < -kGeomTol || p.r2 < -kGeomTol) {
            throw std::invalid_argument("from_points: points must be finite and nonnegative");
        }
        const double x = std::max(p.r1, 0.0);
        const double y = std::max(p.r2, 0.0);
        candidates.push_back({x, y});
        candidates.push_back({x, 0.0});
        candidates.push_back({0.0, y});
    }
    return from_candidate_vertices(std::move(candidates));
}

RateRegion::Support RateRegion::support(double mu) const {
    Support best;
    bool first = true;
    for (const auto& v : vertices_) {
        const double val = mu * v.r1 + (1.0 - mu) * v.r2;
        if (first || val > best.value + kGeomTol) {
            best.value = val;
            best.at = v;
            first = false;
        } else if (val >= best.value - kGeomTol && v.r1 < best.at.r1) {
            // ties resolved toward the lowest-r1 vertex
            best.value = std::max(best.value, val);
            best.at = v;
        }
    }
    return best;
}

bool RateRegion::contains(const RatePair& p, double tol) const {
    if (p.r1 < -tol || p.r2 < -tol) return false;
    for (const auto& h : halfspaces_) {
        if (h.a1 * p.r1 + h.a2 * p.r2 > h.c + tol) return false;
    }
    return true;
}

double RateRegion::max_r1() const {
    double m = 0.0;
    for (const auto& v : vertices_) m = std::max(m, v.r1);
    return m;
}

double RateRegion::max_r2() const {
    double m = 0.0;
    for (const auto& v : vertices_) m = std::max(m, v.r2);
    return m;
}

std::vector<RatePair> RateRegion::pareto_vertices() const {
    std::vector<RatePair> out;
    for (const auto& v : vertices_) {
        bool dominated = false;
        for (const auto& u : vertices_) {
            if (&u == &v) continue;
            if (u.r1 >= v.r1 - 1e-12 && u.r2 >= v.r2 - 1e-12 &&
                (u.r1 > v.r1 + 1e-12 || u.r2 > v.r2 + 1e-12)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) out.push_back(v);
    }
    return out;
}

RateRegion convex_union(std::span<const RateRegion> regions, std::span<const RatePair> points) {
    if (regions.empty() && points.empty()) {
        throw std::invalid_argument("convex_union: empty input");
    }
    std::vector<RatePair> pts;
    for (const auto& r : regions) {
        pts.insert(pts.end(), r.vertices().begin(), r.vertices().end());
    }
    pts.insert(pts.end(), points.begin(), points.end());
    return RateRegion::from_points(pts);
}

double region_gap(const RateRegion& inner, const RateRegion& outer) {
    for (const auto& v : inner.vertices()) {
        if (!outer.contains(v, kGeomTol)) {
            throw NotNested("region_gap: inner vertex outside outer region");
        }
    }
    std::vector<double> dirs = {0.0, 1.0};
    for (const auto& h : inner.halfspaces()) dirs.push_back(h.a1 / (h.a1 + h.a2));
    for (const auto& h : outer.halfspaces()) dirs.push_back(h.a1 / (h.a1 + h.a2));
    double gap = 0.0;
    for (double mu : dirs) {
        gap = std::max(gap, outer.support(mu).value - inner.support(mu).value);
    }
    return gap;
}

bool check_shift_gap_literal(const RateRegion& inner, const RateRegion& outer, double b) {
    for (const auto& v : inner.pareto_vertices()) {
        const RatePair shifted{v.r1 + b, v.r2 + b};
        bool exits = false;
        for (const auto& h : outer.halfspaces()) {
            if (h.a1 * shifted.r1 + h.a2 * shifted.r2 > h.c + kGeomTol) {
                exits = true;
                break;
            }
        }
        if (!exits) return false;
    }
    return true;
}

}  // namespace coop2mac
