#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "polyifs/attractor.hpp"
#include "polyifs/fixtures.hpp"

using namespace polyifs;

TEST_CASE("iterate shrinks the error bound geometrically") {
    PolygonalSystem sys = fixtures::vicsek();
    AttractorCloud c1 = iterate(sys, {sys.invariant_center()}, 1);
    AttractorCloud c3 = iterate(sys, {sys.invariant_center()}, 3);
    CHECK(c1.points.size() == 5);
    CHECK(c3.points.size() == 125);
    CHECK(c3.error_bound == doctest::Approx(c1.error_bound / 9));
    for (const auto& p : c3.points) CHECK(point_polygon_distance(p, sys.base()) < 1e-12);
    CHECK_THROWS_AS(iterate(sys, {sys.invariant_center()}, 12, 1000), Error);
}

TEST_CASE("eval_address solves periodic addresses exactly") {
    PolygonalSystem sys = fixtures::vicsek();
    Address corner;  // (1)* fixes A_1 = (0,0)
    corner.period = MultiIndex({0});
    EvalResult r = eval_address(sys, corner);
    CHECK(r.error_bound == 0);
    CHECK(almost_equal(r.point, {0, 0}));

    Address mixed;  // 1.(5)* -> S_1(center) = (1/6, 1/6)
    mixed.preperiod = MultiIndex({0});
    mixed.period = MultiIndex({4});
    r = eval_address(sys, mixed);
    CHECK(r.error_bound == 0);
    CHECK(almost_equal(r.point, {1.0 / 6, 1.0 / 6}));

    Address finite;  // truncation only: error bound positive
    finite.preperiod = MultiIndex({0, 1, 2});
    r = eval_address(sys, finite);
    CHECK(r.error_bound > 0);
    CHECK(r.error_bound < 0.1);
}

TEST_CASE("eval_address respects the shift relation") {
    PolygonalSystem sys = fixtures::two_cycle_square();
    Address a;
    a.period = MultiIndex({0, 2});  // (1.3)*
    Point pa = eval_address(sys, a).point;
    Point ps = eval_address(sys, a.shifted()).point;
    CHECK(almost_equal(sys.map(0).apply(ps), pa));
}

TEST_CASE("vertex addresses of vicsek are the corner fixed points") {
    PolygonalSystem sys = fixtures::vicsek();
    for (int v = 0; v < 4; ++v) {
        Address a = vertex_address(sys, v);
        CHECK(a.purely_periodic());
        CHECK(a.period.length() == 1);
        CHECK(a.period.word[0] == v);
        CHECK(almost_equal(eval_address(sys, a).point, sys.base().vertex(v)));
    }
}

TEST_CASE("vertex address with a 2-cycle") {
    PolygonalSystem sys = fixtures::two_cycle_square();
    Address a = vertex_address(sys, 0);  // (0,0) swaps with (1,1) under maps 1,3
    CHECK(almost_equal(eval_address(sys, a).point, {0, 0}));
    CHECK(a.canonical() == a);
    Address b = vertex_address(sys, 2);
    CHECK(almost_equal(eval_address(sys, b).point, {1, 1}));
}

TEST_CASE("critical contacts of vicsek") {
    auto ccs = critical_contacts(fixtures::vicsek());
    CHECK(ccs.size() == 4);
    for (const auto& cc : ccs) {
        CHECK(cc.j == 4);  // every contact involves the center piece
        Address full_i, full_j;
        full_i.preperiod = MultiIndex({cc.i});
        full_i.preperiod = full_i.preperiod.concat(cc.addr_in_i.preperiod);
        full_i.period = cc.addr_in_i.period;
        full_j.preperiod = MultiIndex({cc.j});
        full_j.preperiod = full_j.preperiod.concat(cc.addr_in_j.preperiod);
        full_j.period = cc.addr_in_j.period;
        CHECK(almost_equal(eval_address(fixtures::vicsek(), full_i).point, cc.point));
        CHECK(almost_equal(eval_address(fixtures::vicsek(), full_j).point, cc.point));
    }
}

TEST_CASE("geometric and symbolic piece graphs agree on vicsek") {
    PolygonalSystem sys = fixtures::vicsek();
    for (int level = 1; level <= 3; ++level) {
        PieceGraph g = piece_graph_geometric(sys, level);
        PieceGraph s = piece_graph_symbolic(sys, level);
        CHECK(g.piece_count == s.piece_count);
        CHECK(g.edges.size() == s.edges.size());
        CHECK(g.is_tree());
        CHECK(s.is_tree());
    }
    // edge recursion e(n) = 5 e(n-1) + 4: 4, 24, 124, 624
    CHECK(piece_graph_symbolic(sys, 4).edges.size() == 624);
}

TEST_CASE("piece graph detects the sierpinski cycle") {
    PieceGraph g = piece_graph_geometric(fixtures::sierpinski(), 1);
    CHECK_FALSE(g.is_tree());
    CHECK(g.cycle_witness().find("cycle") != std::string::npos);
}

TEST_CASE("piece graph detects disconnection") {
    PieceGraph g = piece_graph_geometric(fixtures::disjoint_pair(), 1);
    CHECK_FALSE(g.is_tree());
    CHECK(g.cycle_witness().find("disconnected") != std::string::npos);
}

TEST_CASE("intersection condition certified on vicsek") {
    auto verdicts = check_intersection_condition(fixtures::vicsek(), 4);
    CHECK(verdicts.size() == 10);
    for (const auto& v : verdicts) {
        CHECK(v.kind == IntersectionVerdict::Kind::CertifiedEqual);
        CHECK(v.margin > 0);
    }
}

TEST_CASE("intersection condition refuted on the hidden overlap pair") {
    auto verdicts = check_intersection_condition(fixtures::hidden_overlap_pair(), 4);
    REQUIRE(verdicts.size() == 1);
    CHECK(verdicts[0].kind == IntersectionVerdict::Kind::CertifiedViolation);
}

TEST_CASE("dendrite check outcomes") {
    DendriteResult v = dendrite_check(fixtures::vicsek(), 4);
    CHECK(v.kind == DendriteResult::Kind::CertifiedDendrite);
    CHECK(v.level == 4);

    DendriteResult s = dendrite_check(fixtures::sierpinski(), 4);
    CHECK(s.kind == DendriteResult::Kind::RefutedTree);
    CHECK(s.level == 1);
    CHECK_FALSE(s.reason.empty());

    DendriteResult h = dendrite_check(fixtures::hidden_overlap_pair(), 4);
    CHECK(h.kind == DendriteResult::Kind::RefutedTree);
}

TEST_CASE("sector certificates at vicsek contacts") {
    auto certs = sector_vertex_certificates(fixtures::vicsek());
    CHECK(certs.size() == 4);
    for (const auto& c : certs) {
        CHECK(c.separated);
        // corner and center sectors are radially opposite quarter-planes:
        // both gaps are pi/2
        CHECK(c.margin == doctest::Approx(M_PI / 2));
    }
}

TEST_CASE("chain between vicsek pieces") {
    auto chain = chain_between(fixtures::vicsek(), 0, 2);
    REQUIRE(chain.size() == 3);
    CHECK(chain[0] == 0);
    CHECK(chain[1] == 4);
    CHECK(chain[2] == 2);
}

TEST_CASE("approximate arc endpoints and depth-1 shape") {
    PolygonalSystem sys = fixtures::vicsek();
    Address a, b;
    a.period = MultiIndex({0});
    b.period = MultiIndex({1});
    auto arc = approximate_arc(sys, a, b, 1);
    REQUIRE(arc.size() == 4);
    CHECK(almost_equal(arc[0], {0, 0}));
    CHECK(almost_equal(arc[1], {1.0 / 3, 1.0 / 3}));
    CHECK(almost_equal(arc[2], {2.0 / 3, 1.0 / 3}));
    CHECK(almost_equal(arc[3], {1, 0}));

    auto deeper = approximate_arc(sys, a, b, 3);
    CHECK(deeper.size() > arc.size());
    CHECK(almost_equal(deeper.front(), {0, 0}));
    CHECK(almost_equal(deeper.back(), {1, 0}));
}

TEST_CASE("ramification orders") {
    CHECK(ramification_order(fixtures::vicsek(), {1.0 / 3, 1.0 / 3}, 3) == 2);
    CHECK(ramification_order(fixtures::vicsek(), {0, 0}, 3) == 1);
    // all four plus_contact maps fix the origin, so deeper levels multiply the
    // incident pieces; the level-1 count is the geometric branch number
    CHECK(ramification_order(fixtures::plus_contact(), {0, 0}, 1) == 4);
    CHECK_THROWS_AS(ramification_order(fixtures::vicsek(), {0.4, 0.4}, 3), Error);
}

TEST_CASE("postcritical set of vicsek is finite") {
    PostCriticalSet pc = postcritical_set(fixtures::vicsek());
    CHECK(pc.finite);
    CHECK(pc.critical.size() == 4);
    // shift closure of the contact addresses: the four contact points plus the
    // four corner fixed points (the center fixed point is not postcritical:
    // 5.(1)* shifts to (1)*, never to (5)*)
    CHECK(pc.vertex_set.size() == 8);
    bool has_corner = false, has_contact = false;
    for (const auto& p : pc.vertex_set) {
        if (almost_equal(p, {0, 0})) has_corner = true;
        if (almost_equal(p, {1.0 / 3, 1.0 / 3})) has_contact = true;
    }
    CHECK(has_corner);
    CHECK(has_contact);
}
