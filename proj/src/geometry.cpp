#include "polyifs/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace polyifs {

namespace {

constexpr double kPi = 3.14159265358979323846;

double cross(const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double dot2(double ax, double ay, double bx, double by) { return ax * bx + ay * by; }

// normalize angle to [0, 2*pi)
double wrap2pi(double a) {
    a = std::fmod(a, 2 * kPi);
    if (a < 0) a += 2 * kPi;
    return a;
}

}  // namespace

double dist(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

bool almost_equal(const Point& a, const Point& b, double tol) { return dist(a, b) <= tol; }

Similarity::Similarity(Complex a, Complex b) : a_(a), b_(b) {
    double q = std::abs(a);
    if (!(q > 0.0 && q < 1.0) || !std::isfinite(q) || !std::isfinite(std::abs(b)))
        throw Error("NotContracting", "similarity ratio must lie in (0,1)");
}

Similarity Similarity::from_ratio_rotation_fixed(double ratio, double rotation, Point fixed) {
    Complex a = std::polar(ratio, rotation);
    Complex b = fixed.z() * (1.0 - a);
    return Similarity(a, b);
}

void BoundingBox::expand(const Point& p) {
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
}

double BoundingBox::gap(const BoundingBox& o) const {
    double dx = std::max({min_x - o.max_x, o.min_x - max_x, 0.0});
    double dy = std::max({min_y - o.max_y, o.min_y - max_y, 0.0});
    return std::hypot(dx, dy);
}

double signed_area(const Polygon& poly) {
    double s = 0;
    int n = poly.size();
    for (int i = 0; i < n; ++i) {
        const Point& a = poly.vertex(i);
        const Point& b = poly.vertex_mod(i + 1);
        s += a.x * b.y - b.x * a.y;
    }
    return 0.5 * s;
}

double polygon_diameter(const Polygon& poly) {
    double d = 0;
    int n = poly.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) d = std::max(d, dist(poly.vertex(i), poly.vertex(j)));
    return d;
}

BoundingBox polygon_bbox(const Polygon& poly) {
    BoundingBox bb{poly.vertex(0).x, poly.vertex(0).y, poly.vertex(0).x, poly.vertex(0).y};
    for (const Point& p : poly.vertices) bb.expand(p);
    return bb;
}

Point polygon_centroid(const Polygon& poly) {
    double a = 0, cx = 0, cy = 0;
    int n = poly.size();
    for (int i = 0; i < n; ++i) {
        const Point& p = poly.vertex(i);
        const Point& q = poly.vertex_mod(i + 1);
        double w = p.x * q.y - q.x * p.y;
        a += w;
        cx += (p.x + q.x) * w;
        cy += (p.y + q.y) * w;
    }
    a *= 0.5;
    return {cx / (6 * a), cy / (6 * a)};
}

double point_segment_distance(const Point& p, const Point& a, const Point& b) {
    double abx = b.x - a.x, aby = b.y - a.y;
    double len2 = abx * abx + aby * aby;
    if (len2 == 0) return dist(p, a);
    double t = dot2(p.x - a.x, p.y - a.y, abx, aby) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(p.x - (a.x + t * abx), p.y - (a.y + t * aby));
}

namespace {

bool segments_properly_cross(const Point& a, const Point& b, const Point& c, const Point& d,
                             double tol) {
    // transversal crossing with clearance > tol from all four endpoints
    double d1 = cross(c, d, a), d2 = cross(c, d, b), d3 = cross(a, b, c), d4 = cross(a, b, d);
    if (!((d1 > 0) != (d2 > 0) && (d3 > 0) != (d4 > 0))) return false;
    // intersection point
    double denom = (b.x - a.x) * (d.y - c.y) - (b.y - a.y) * (d.x - c.x);
    if (denom == 0) return false;
    double t = ((c.x - a.x) * (d.y - c.y) - (c.y - a.y) * (d.x - c.x)) / denom;
    Point p{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
    return dist(p, a) > tol && dist(p, b) > tol && dist(p, c) > tol && dist(p, d) > tol;
}

// length of the overlap of two collinear-within-tol segments; 0 if not collinear
double collinear_overlap_length(const Point& a, const Point& b, const Point& c, const Point& d,
                                double tol) {
    if (point_segment_distance(c, a, b) > tol && point_segment_distance(d, a, b) > tol &&
        point_segment_distance(a, c, d) > tol && point_segment_distance(b, c, d) > tol)
        return 0.0;
    double ux = b.x - a.x, uy = b.y - a.y;
    double len = std::hypot(ux, uy);
    if (len == 0) return 0.0;
    ux /= len;
    uy /= len;
    // both segments must lie on line(a,b)
    if (std::abs(cross(a, b, c)) / len > tol || std::abs(cross(a, b, d)) / len > tol) return 0.0;
    double t1 = 0, t2 = len;
    double s1 = dot2(c.x - a.x, c.y - a.y, ux, uy);
    double s2 = dot2(d.x - a.x, d.y - a.y, ux, uy);
    if (s1 > s2) std::swap(s1, s2);
    double lo = std::max(t1, s1), hi = std::min(t2, s2);
    return std::max(0.0, hi - lo);
}

}  // namespace

double segment_segment_distance(const Point& a1, const Point& b1, const Point& a2,
                                const Point& b2) {
    if (segments_properly_cross(a1, b1, a2, b2, 0.0)) return 0.0;
    double d = point_segment_distance(a1, a2, b2);
    d = std::min(d, point_segment_distance(b1, a2, b2));
    d = std::min(d, point_segment_distance(a2, a1, b1));
    d = std::min(d, point_segment_distance(b2, a1, b1));
    return d;
}

double point_polygon_boundary_distance(const Point& p, const Polygon& poly) {
    double d = std::numeric_limits<double>::infinity();
    int n = poly.size();
    for (int i = 0; i < n; ++i)
        d = std::min(d, point_segment_distance(p, poly.vertex(i), poly.vertex_mod(i + 1)));
    return d;
}

namespace {

bool point_inside_crossing(const Point& p, const Polygon& poly) {
    bool in = false;
    int n = poly.size();
    for (int i = 0; i < n; ++i) {
        const Point& a = poly.vertex(i);
        const Point& b = poly.vertex_mod(i + 1);
        if ((a.y > p.y) != (b.y > p.y)) {
            double xi = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (xi > p.x) in = !in;
        }
    }
    return in;
}

}  // namespace

bool point_strictly_inside(const Point& p, const Polygon& poly, double tol) {
    if (point_polygon_boundary_distance(p, poly) <= tol) return false;
    return point_inside_crossing(p, poly);
}

bool point_in_polygon(const Point& p, const Polygon& poly, double tol) {
    if (point_polygon_boundary_distance(p, poly) <= tol) return true;
    return point_inside_crossing(p, poly);
}

double point_polygon_distance(const Point& p, const Polygon& poly) {
    double bd = point_polygon_boundary_distance(p, poly);
    if (point_inside_crossing(p, poly)) return 0.0;
    return bd;
}

double polygon_polygon_distance(const Polygon& a, const Polygon& b) {
    // overlap / containment
    if (point_inside_crossing(a.vertex(0), b) || point_inside_crossing(b.vertex(0), a)) return 0.0;
    double d = std::numeric_limits<double>::infinity();
    int na = a.size(), nb = b.size();
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j)
            d = std::min(d, segment_segment_distance(a.vertex(i), a.vertex_mod(i + 1), b.vertex(j),
                                                     b.vertex_mod(j + 1)));
    return d;
}

namespace {

bool polygon_is_convex(const Polygon& poly) {
    int n = poly.size();
    for (int i = 0; i < n; ++i) {
        const Point& p = poly.vertex(i);
        const Point& q = poly.vertex_mod(i + 1);
        const Point& r = poly.vertex_mod(i + 2);
        double cross = (q.x - p.x) * (r.y - q.y) - (q.y - p.y) * (r.x - q.x);
        if (cross < -1e-12) return false;
    }
    return true;
}

// adaptive bisection on the 1-Lipschitz distance; returns (value, exhausted)
double max_dist_bisect(const Point& a, const Point& b, const Polygon& region,
                       double current_max, long& budget) {
    double da = point_polygon_distance(a, region);
    double db = point_polygon_distance(b, region);
    double len = dist(a, b);
    double bound = std::max(da, db) + len / 2;
    if (bound <= current_max + 1e-12 || len < 1e-12) return std::max(da, db);
    if (--budget <= 0) return bound;  // conservative upper bound on exhaustion
    // a strictly interior segment has distance 0 throughout
    if (da == 0 && db == 0) {
        double clearance = std::numeric_limits<double>::infinity();
        for (int i = 0; i < region.size(); ++i)
            clearance = std::min(clearance,
                                 segment_segment_distance(a, b, region.vertex(i),
                                                          region.vertex_mod(i + 1)));
        if (clearance > 0) return 0.0;
    }
    Point mid{(a.x + b.x) / 2, (a.y + b.y) / 2};
    double m = std::max({current_max, da, db});
    m = std::max(m, max_dist_bisect(a, mid, region, m, budget));
    m = std::max(m, max_dist_bisect(mid, b, region, m, budget));
    return m;
}

}  // namespace

double max_distance_to_polygon(const Point& a, const Point& b, const Polygon& region,
                               double current_max) {
    // distance to a convex region is convex along the segment: max at an endpoint
    if (polygon_is_convex(region)) {
        return std::max({current_max, point_polygon_distance(a, region),
                         point_polygon_distance(b, region)});
    }
    long budget = 100000;
    return max_dist_bisect(a, b, region, current_max, budget);
}

bool polygon_is_simple(const Polygon& poly, double tol) {
    int n = poly.size();
    if (n < 3) return false;
    for (int i = 0; i < n; ++i) {
        if (dist(poly.vertex(i), poly.vertex_mod(i + 1)) <= tol) return false;  // zero edge
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            const Point& a = poly.vertex(i);
            const Point& b = poly.vertex_mod(i + 1);
            const Point& c = poly.vertex(j);
            const Point& d = poly.vertex_mod(j + 1);
            if (adjacent) {
                if (collinear_overlap_length(a, b, c, d, tol) > tol) return false;  // spike
                continue;
            }
            if (segment_segment_distance(a, b, c, d) <= tol) return false;
        }
    }
    return true;
}

void require_valid_polygon(const Polygon& poly, double tol) {
    if (poly.size() < 3) throw Error("InvalidPolygon", "fewer than 3 vertices");
    for (const Point& p : poly.vertices)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw Error("InvalidPolygon", "non-finite coordinate");
    if (polygon_diameter(poly) <= tol) throw Error("InvalidPolygon", "zero diameter");
    if (!polygon_is_simple(poly, tol)) throw Error("InvalidPolygon", "self-intersecting");
    if (signed_area(poly) <= 0) throw Error("InvalidPolygon", "vertices must be CCW");
}

Polygon map_polygon(const Similarity& s, const Polygon& poly) {
    Polygon out;
    out.vertices.reserve(poly.vertices.size());
    for (const Point& p : poly.vertices) out.vertices.push_back(s.apply(p));
    return out;
}

double angle_at_vertex(const Polygon& poly, int v) {
    if (v < 0 || v >= poly.size()) throw Error("IndexOutOfRange", "vertex index");
    const Point& p = poly.vertex(v);
    const Point& prev = poly.vertex_mod(v - 1);
    const Point& next = poly.vertex_mod(v + 1);
    double ux = next.x - p.x, uy = next.y - p.y;
    double wx = prev.x - p.x, wy = prev.y - p.y;
    double a = std::atan2(ux * wy - uy * wx, ux * wx + uy * wy);
    if (a <= 0) a += 2 * kPi;
    return a;
}

Similarity similarity_from_two_points(const Point& src1, const Point& src2, const Point& dst1,
                                      const Point& dst2, double tol) {
    Complex s1 = src1.z(), s2 = src2.z(), d1 = dst1.z(), d2 = dst2.z();
    if (std::abs(s2 - s1) <= tol) throw Error("DegenerateSource", "source points coincide");
    Complex a = (d2 - d1) / (s2 - s1);
    if (std::abs(a) >= 1.0) throw Error("NotContracting", "image distance >= source distance");
    if (std::abs(a) <= tol) throw Error("NotContracting", "degenerate image");
    Complex b = d1 - a * s1;
    return Similarity(a, b);
}

ContactResult polygon_pair_contact(const Polygon& p1, const Polygon& p2, double tol) {
    ContactResult r;

    // region overlap via strictly-interior vertices
    for (const Point& v : p1.vertices)
        if (point_strictly_inside(v, p2, tol)) {
            r.kind = ContactResult::Kind::Violation;
            r.description = "vertex of first polygon strictly inside second";
            return r;
        }
    for (const Point& v : p2.vertices)
        if (point_strictly_inside(v, p1, tol)) {
            r.kind = ContactResult::Kind::Violation;
            r.description = "vertex of second polygon strictly inside first";
            return r;
        }

    int n1 = p1.size(), n2 = p2.size();
    std::vector<Point> touches;
    for (int i = 0; i < n1; ++i) {
        const Point& a = p1.vertex(i);
        const Point& b = p1.vertex_mod(i + 1);
        for (int j = 0; j < n2; ++j) {
            const Point& c = p2.vertex(j);
            const Point& d = p2.vertex_mod(j + 1);
            if (segments_properly_cross(a, b, c, d, tol)) {
                r.kind = ContactResult::Kind::Violation;
                r.description = "edges cross transversally";
                return r;
            }
            if (collinear_overlap_length(a, b, c, d, tol) > tol) {
                r.kind = ContactResult::Kind::Violation;
                r.description = "shared edge segment";
                return r;
            }
            if (segment_segment_distance(a, b, c, d) <= tol) {
                // touching configuration; the touch point is the closest endpoint pairing
                Point best;
                double bd = std::numeric_limits<double>::infinity();
                auto consider = [&](const Point& p, const Point& qa, const Point& qb) {
                    double dd = point_segment_distance(p, qa, qb);
                    if (dd < bd) {
                        bd = dd;
                        best = p;
                    }
                };
                consider(a, c, d);
                consider(b, c, d);
                consider(c, a, b);
                consider(d, a, b);
                touches.push_back(best);
            }
        }
    }

    if (touches.empty()) {
        r.kind = ContactResult::Kind::Disjoint;
        r.margin = polygon_polygon_distance(p1, p2);
        return r;
    }

    // cluster touch points; distinct contacts in valid systems are far apart
    double cluster_eps = std::max(10 * tol, 1e-12);
    std::vector<Point> clusters;
    for (const Point& t : touches) {
        bool merged = false;
        for (const Point& c : clusters)
            if (dist(t, c) <= cluster_eps) {
                merged = true;
                break;
            }
        if (!merged) clusters.push_back(t);
    }

    if (clusters.size() > 1) {
        r.kind = ContactResult::Kind::Violation;
        r.description = "two or more contact points";
        return r;
    }

    Point p = clusters.front();
    bool v1 = false, v2 = false;
    for (const Point& v : p1.vertices) v1 = v1 || almost_equal(v, p, cluster_eps);
    for (const Point& v : p2.vertices) v2 = v2 || almost_equal(v, p, cluster_eps);
    if (!v1 && !v2) {
        r.kind = ContactResult::Kind::Violation;
        r.description = "touch point is a vertex of neither polygon";
        return r;
    }
    r.kind = ContactResult::Kind::SinglePoint;
    r.point = p;
    r.shared_vertex = v1 && v2;
    return r;
}

double min_angle_between_incident_sides(const std::vector<Polygon>& polys, const Point& shared,
                                        double tol) {
    // collect side directions per polygon owning the vertex
    std::vector<std::vector<double>> dirs;
    for (const Polygon& poly : polys) {
        int n = poly.size();
        for (int i = 0; i < n; ++i) {
            if (almost_equal(poly.vertex(i), shared, tol)) {
                std::vector<double> d;
                const Point& prev = poly.vertex_mod(i - 1);
                const Point& next = poly.vertex_mod(i + 1);
                d.push_back(std::atan2(next.y - shared.y, next.x - shared.x));
                d.push_back(std::atan2(prev.y - shared.y, prev.x - shared.x));
                dirs.push_back(std::move(d));
                break;
            }
        }
    }
    if (dirs.size() < 2) throw Error("NotIncident", "vertex shared by fewer than two polygons");
    double best = 2 * kPi;
    for (size_t i = 0; i < dirs.size(); ++i)
        for (size_t j = i + 1; j < dirs.size(); ++j)
            for (double u : dirs[i])
                for (double v : dirs[j]) {
                    double a = std::abs(wrap2pi(u - v));
                    a = std::min(a, 2 * kPi - a);
                    best = std::min(best, a);
                }
    return best;
}

std::pair<double, double> angular_range_from_vertex(const Polygon& poly, const Point& v,
                                                    double tol) {
    int vi = -1;
    for (int i = 0; i < poly.size(); ++i)
        if (almost_equal(poly.vertex(i), v, tol)) {
            vi = i;
            break;
        }
    if (vi < 0) throw Error("NotAVertex", "point is not a vertex of the polygon");

    // Directions to points of the polygon sweep, per edge, through the short
    // interval between endpoint directions.  Accumulate relative to the first
    // incident edge so wrap-around is handled by unrolled angles.
    const Point& next = poly.vertex_mod(vi + 1);
    double base = std::atan2(next.y - v.y, next.x - v.x);
    double lo = 0, hi = 0;
    auto rel = [&](const Point& p) {
        double a = std::atan2(p.y - v.y, p.x - v.x) - base;
        a = std::fmod(a, 2 * kPi);
        if (a > kPi) a -= 2 * kPi;
        if (a < -kPi) a += 2 * kPi;
        return a;
    };
    int n = poly.size();
    // walk edges away from v in vertex order; track unrolled direction
    double prev_rel = 0.0;
    for (int k = 1; k < n; ++k) {
        const Point& p = poly.vertex_mod(vi + k);
        if (almost_equal(p, v, tol)) continue;
        double a = rel(p);
        // unroll relative to previous to keep continuity (< pi jumps per edge)
        double diff = a - std::fmod(prev_rel, 2 * kPi);
        while (diff > kPi) diff -= 2 * kPi;
        while (diff < -kPi) diff += 2 * kPi;
        double unrolled = prev_rel + diff;
        lo = std::min(lo, unrolled);
        hi = std::max(hi, unrolled);
        prev_rel = unrolled;
    }
    if (hi - lo >= 2 * kPi)
        throw Error("DegenerateSector", "polygon surrounds its own vertex");
    return {base + lo, base + hi};
}

}  // namespace polyifs
