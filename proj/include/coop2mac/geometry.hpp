#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "coop2mac/model.hpp"

namespace coop2mac {

// a1*R1 + a2*R2 <= c with a1, a2 >= 0, (a1, a2) != (0, 0), c >= 0 bits.
struct HalfSpace {
    double a1 = 0.0;
    double a2 = 0.0;
    double c = 0.0;
};

struct UnboundedRegion : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotNested : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr double kGeomTol = 1e-9;

// A bounded, convex, down-closed subset of the nonnegative rate quadrant.
// Canonical form: vertices in counterclockwise order starting at the origin,
// halfspaces normalized to a1 + a2 = 1 and restricted to the facets of the
// upper-right boundary.
class RateRegion {
  public:
    // Canonicalizes the intersection of the given halfspaces with the
    // nonnegative quadrant. Throws UnboundedRegion if either rate is unbounded.
    static RateRegion from_halfspaces(std::vector<HalfSpace> halfspaces);

    // Convex hull of the down-sets of the given points (degenerate inputs such
    // as a single point or an axis segment are valid regions).
    static RateRegion from_points(std::span<const RatePair> points);

    const std::vector<HalfSpace>& halfspaces() const { return halfspaces_; }
    const std::vector<RatePair>& vertices() const { return vertices_; }

    struct Support {
        double value = 0.0;
        RatePair at{};
    };

    // max over the region of mu*r1 + (1-mu)*r2; attained at a vertex
    // (lowest-r1 vertex on ties).
    Support support(double mu) const;

    bool contains(const RatePair& p, double tol = kGeomTol) const;

    double max_r1() const;
    double max_r2() const;

    // Vertices with no componentwise-larger vertex (the upper-right boundary).
    std::vector<RatePair> pareto_vertices() const;

  private:
    RateRegion() = default;
    static RateRegion from_candidate_vertices(std::vector<RatePair> candidates);

    std::vector<HalfSpace> halfspaces_;
    std::vector<RatePair> vertices_;
};

// Convex closure of the union of the regions and of the down-sets of the
// points (time-sharing).
RateRegion convex_union(std::span<const RateRegion> regions,
                        std::span<const RatePair> points = {});

// Least b such that outer is contained in inner shifted by (+b, +b) and
// down-closed; computed exactly over the facet normals of both regions.
// Throws NotNested if some inner vertex violates an outer constraint by more
// than kGeomTol.
double region_gap(const RateRegion& inner, const RateRegion& outer);

// Literal diagonal-shift check: true iff every Pareto vertex v of inner has
// v + (b, b) strictly outside outer.
bool check_shift_gap_literal(const RateRegion& inner, const RateRegion& outer, double b);

}  // namespace coop2mac
