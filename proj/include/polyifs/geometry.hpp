#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polyifs {

// Point coincidence / incidence tolerance.
inline constexpr double kTolGeom = 1e-9;
// Certification margin tolerance (separations, strip gaps).
inline constexpr double kTolMargin = 1e-7;

using Complex = std::complex<double>;

struct Error : std::runtime_error {
    std::string code;
    Error(std::string c, const std::string& msg)
        : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

struct Point {
    double x = 0.0;
    double y = 0.0;

    Complex z() const { return {x, y}; }
    static Point from(Complex c) { return {c.real(), c.imag()}; }
};

double dist(const Point& a, const Point& b);
bool almost_equal(const Point& a, const Point& b, double tol = kTolGeom);

// Orientation-preserving contracting similarity z -> a*z + b with |a| in (0,1).
class Similarity {
  public:
    Similarity() : a_(0.5, 0.0), b_(0.0, 0.0) {}
    Similarity(Complex a, Complex b);

    static Similarity from_ratio_rotation_fixed(double ratio, double rotation, Point fixed);

    Complex a() const { return a_; }
    Complex b() const { return b_; }
    double ratio() const { return std::abs(a_); }
    double rotation() const { return std::arg(a_); }  // principal branch (-pi, pi]
    Point fixed_point() const { return Point::from(b_ / (1.0 - a_)); }

    Point apply(const Point& p) const { return Point::from(a_ * p.z() + b_); }
    Complex apply(Complex z) const { return a_ * z + b_; }

    Similarity compose(const Similarity& other) const {  // this after other... see note
        // (this ∘ other)(z) = a_*(a_o*z + b_o) + b_
        return Similarity(a_ * other.a_, a_ * other.b_ + b_);
    }
    Similarity inverse_as_map() const {  // expanding; returned object skips the ratio check
        Similarity s;
        s.a_ = 1.0 / a_;
        s.b_ = -b_ / a_;
        return s;
    }
    Point apply_inverse(const Point& p) const { return Point::from((p.z() - b_) / a_); }

  private:
    Complex a_, b_;
};

struct Polygon {
    std::vector<Point> vertices;  // CCW

    int size() const { return static_cast<int>(vertices.size()); }
    const Point& vertex(int i) const { return vertices[static_cast<size_t>(i)]; }
    // wrapped access
    const Point& vertex_mod(int i) const {
        int n = size();
        return vertices[static_cast<size_t>(((i % n) + n) % n)];
    }
};

struct BoundingBox {
    double min_x = 0, min_y = 0, max_x = 0, max_y = 0;
    // 0 if boxes overlap or touch
    double gap(const BoundingBox& o) const;
    void expand(const Point& p);
};

double signed_area(const Polygon& poly);
double polygon_diameter(const Polygon& poly);
BoundingBox polygon_bbox(const Polygon& poly);
Point polygon_centroid(const Polygon& poly);
bool polygon_is_simple(const Polygon& poly, double tol = kTolGeom);
// simple + CCW + n >= 3 + diameter > 0; throws Error("InvalidPolygon") otherwise
void require_valid_polygon(const Polygon& poly, double tol = kTolGeom);

Polygon map_polygon(const Similarity& s, const Polygon& poly);

// distance from p to segment [a, b]
double point_segment_distance(const Point& p, const Point& a, const Point& b);
// distance between segments [a1,b1] and [a2,b2]
double segment_segment_distance(const Point& a1, const Point& b1, const Point& a2, const Point& b2);
// distance from p to the boundary of poly
double point_polygon_boundary_distance(const Point& p, const Polygon& poly);
// true if p is strictly inside (distance to boundary > tol)
bool point_strictly_inside(const Point& p, const Polygon& poly, double tol = kTolGeom);
// true if p is inside or within tol of the boundary
bool point_in_polygon(const Point& p, const Polygon& poly, double tol = kTolGeom);
// distance from p to the closed region bounded by poly (0 if inside)
double point_polygon_distance(const Point& p, const Polygon& poly);
// max over segment [a,b] of the distance to the region, by adaptive
// subdivision (the distance function is 1-Lipschitz)
double max_distance_to_polygon(const Point& a, const Point& b, const Polygon& region,
                               double current_max = 0);
// min distance between the closed regions (0 if they touch or overlap)
double polygon_polygon_distance(const Polygon& a, const Polygon& b);

struct ContactResult {
    enum class Kind { Disjoint, SinglePoint, Violation };
    Kind kind = Kind::Disjoint;
    double margin = 0.0;       // Disjoint: exact separation
    Point point;               // SinglePoint: the contact point
    bool shared_vertex = false;  // SinglePoint: vertex of both polygons
    std::string description;   // Violation
};

// Classifies the intersection of two valid polygons per the D2 contact relation.
ContactResult polygon_pair_contact(const Polygon& p1, const Polygon& p2, double tol = kTolGeom);

// Interior angle at vertex v of a CCW simple polygon, in (0, 2*pi).
double angle_at_vertex(const Polygon& poly, int v);

// Direct similarity with src1->dst1, src2->dst2.
// Throws Error("DegenerateSource") / Error("NotContracting").
Similarity similarity_from_two_points(const Point& src1, const Point& src2,
                                      const Point& dst1, const Point& dst2,
                                      double tol = kTolGeom);

// Min unsigned angle between sides of distinct polygons incident to `shared`.
// Throws Error("NotIncident") if fewer than two polygons own the vertex.
double min_angle_between_incident_sides(const std::vector<Polygon>& polys, const Point& shared,
                                        double tol = kTolGeom);

// Angular interval [lo, hi] (hi - lo < 2*pi) of directions from vertex `v` of
// `poly` to all points of `poly`.  Throws if `v` is not a vertex.
std::pair<double, double> angular_range_from_vertex(const Polygon& poly, const Point& v,
                                                    double tol = kTolGeom);

}  // namespace polyifs
