#include <doctest.h>

#include <cmath>

#include "polyifs/geometry.hpp"

using namespace polyifs;

namespace {
Polygon unit_square() {
    Polygon p;
    p.vertices = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    return p;
}
}  // namespace

TEST_CASE("similarity basics") {
    Similarity s = Similarity::from_ratio_rotation_fixed(0.5, M_PI / 2, {1, 1});
    CHECK(s.ratio() == doctest::Approx(0.5));
    CHECK(s.rotation() == doctest::Approx(M_PI / 2));
    CHECK(almost_equal(s.fixed_point(), {1, 1}));
    CHECK(almost_equal(s.apply(Point{2, 1}), {1, 1.5}));

    Similarity t = Similarity::from_ratio_rotation_fixed(0.25, 0.3, {0, 0});
    Similarity st = s.compose(t);
    Point p{0.7, -0.2};
    CHECK(almost_equal(st.apply(p), s.apply(t.apply(p))));
    CHECK(almost_equal(s.apply_inverse(s.apply(p)), p));
    CHECK(almost_equal(s.inverse_as_map().apply(s.apply(p)), p));
}

TEST_CASE("similarity rejects non-contracting ratios") {
    CHECK_THROWS_AS(Similarity(Complex(1.5, 0), Complex(0, 0)), Error);
    CHECK_THROWS_AS(Similarity(Complex(0, 0), Complex(0, 0)), Error);
}

TEST_CASE("polygon validity and measures") {
    Polygon sq = unit_square();
    CHECK(signed_area(sq) == doctest::Approx(1.0));
    CHECK(polygon_diameter(sq) == doctest::Approx(std::sqrt(2.0)));
    CHECK(polygon_is_simple(sq));
    CHECK_NOTHROW(require_valid_polygon(sq));

    Polygon cw = sq;
    std::reverse(cw.vertices.begin(), cw.vertices.end());
    CHECK_THROWS_AS(require_valid_polygon(cw), Error);

    Polygon bow;
    bow.vertices = {{0, 0}, {1, 1}, {1, 0}, {0, 1}};
    CHECK_FALSE(polygon_is_simple(bow));
}

TEST_CASE("point and segment distances") {
    Polygon sq = unit_square();
    CHECK(point_polygon_distance({0.5, 0.5}, sq) == doctest::Approx(0.0));
    CHECK(point_polygon_distance({2.0, 0.5}, sq) == doctest::Approx(1.0));
    CHECK(point_polygon_boundary_distance({0.5, 0.5}, sq) == doctest::Approx(0.5));
    CHECK(point_strictly_inside({0.5, 0.5}, sq));
    CHECK_FALSE(point_strictly_inside({1.0, 0.5}, sq));
    CHECK(point_in_polygon({1.0, 0.5}, sq));
    CHECK(segment_segment_distance({0, 0}, {1, 0}, {0, 1}, {1, 1}) == doctest::Approx(1.0));
    CHECK(segment_segment_distance({0, 0}, {1, 1}, {1, 0}, {0, 1}) == doctest::Approx(0.0));
}

TEST_CASE("max_distance_to_polygon over a segment") {
    Polygon sq = unit_square();
    // segment from (2,0) to (0,2): farthest point from the square is the midpoint (1,1)? no,
    // (1,1) is a corner of the square (distance 0); endpoints are at distance 1.
    CHECK(max_distance_to_polygon({2, 0}, {0, 2}, sq) == doctest::Approx(1.0));
    // interior segment: distance 0 everywhere
    CHECK(max_distance_to_polygon({0.2, 0.2}, {0.8, 0.8}, sq) == doctest::Approx(0.0));
    // vertical segment right of the square, max at the top endpoint
    CHECK(max_distance_to_polygon({3, 1}, {3, 3}, sq) ==
          doctest::Approx(std::sqrt(4 + 4)).epsilon(1e-6));
}

TEST_CASE("polygon pair contact classification") {
    Polygon a = unit_square();
    Polygon b = unit_square();
    for (auto& v : b.vertices) v.x += 2.0;
    ContactResult r = polygon_pair_contact(a, b);
    CHECK(r.kind == ContactResult::Kind::Disjoint);
    CHECK(r.margin == doctest::Approx(1.0));

    for (auto& v : b.vertices) v.x -= 1.0;  // share the edge x=1 -> violation
    r = polygon_pair_contact(a, b);
    CHECK(r.kind == ContactResult::Kind::Violation);

    Polygon c = unit_square();
    for (auto& v : c.vertices) {
        v.x += 1.0;
        v.y += 1.0;
    }
    r = polygon_pair_contact(a, c);
    CHECK(r.kind == ContactResult::Kind::SinglePoint);
    CHECK(almost_equal(r.point, {1, 1}));
    CHECK(r.shared_vertex);
}

TEST_CASE("angle and sector utilities") {
    Polygon sq = unit_square();
    CHECK(angle_at_vertex(sq, 0) == doctest::Approx(M_PI / 2));
    auto [lo, hi] = angular_range_from_vertex(sq, {0, 0});
    CHECK(hi - lo == doctest::Approx(M_PI / 2));

    Polygon other = unit_square();
    for (auto& v : other.vertices) {
        v.x += 1.0;
        v.y += 1.0;
    }
    double ang = min_angle_between_incident_sides({sq, other}, {1, 1});
    CHECK(ang == doctest::Approx(M_PI / 2));
}

TEST_CASE("similarity from two points") {
    Similarity s = similarity_from_two_points({0, 0}, {1, 0}, {0, 0}, {0, 0.5});
    CHECK(s.ratio() == doctest::Approx(0.5));
    CHECK(s.rotation() == doctest::Approx(M_PI / 2));
    CHECK_THROWS_AS(similarity_from_two_points({0, 0}, {0, 0}, {1, 1}, {2, 2}), Error);
    CHECK_THROWS_AS(similarity_from_two_points({0, 0}, {1, 0}, {0, 0}, {2, 0}), Error);
}
