#include <doctest.h>

#include <cmath>

#include "polyifs/cyclic.hpp"
#include "polyifs/fixtures.hpp"

using namespace polyifs;

TEST_CASE("vicsek cyclic vertices are the four corners, order 1") {
    auto cvs = find_cyclic_vertices(fixtures::vicsek());
    REQUIRE(cvs.size() == 4);
    for (int v = 0; v < 4; ++v) {
        CHECK(cvs[v].vertex_index == v);
        CHECK(cvs[v].order == 1);
        CHECK(cvs[v].witness.word == std::vector<int>{v});
        CHECK(cvs[v].ratio == doctest::Approx(1.0 / 3));
        CHECK(cvs[v].rotation == doctest::Approx(0.0));
        CHECK(cvs[v].lambda == doctest::Approx(0.0));
    }
}

TEST_CASE("two-cycle square has order-2 cyclic corners") {
    auto cvs = find_cyclic_vertices(fixtures::two_cycle_square());
    bool saw0 = false, saw2 = false;
    for (const auto& cv : cvs) {
        if (cv.vertex_index == 0) {
            saw0 = true;
            CHECK(cv.order == 2);
            CHECK(cv.witness.str() == "1.3");
            CHECK(cv.ratio == doctest::Approx(1.0 / 9));
            CHECK(std::abs(cv.rotation) < 1e-12);  // two half-turns compose to identity
        }
        if (cv.vertex_index == 2) {
            saw2 = true;
            CHECK(cv.order == 2);
        }
    }
    CHECK(saw0);
    CHECK(saw2);
}

TEST_CASE("vertex parameter windings") {
    CyclicVertex cv;
    cv.ratio = 1.0 / 3;
    cv.rotation = 0.5;
    CHECK(vertex_parameter(cv, 0) == doctest::Approx(0.5 / std::log(1.0 / 3)));
    CHECK(vertex_parameter(cv, 1) ==
          doctest::Approx((0.5 + 2 * M_PI) / std::log(1.0 / 3)));
}

TEST_CASE("refinement exponent is the lcm of the orders") {
    CHECK(refinement_exponent({1, 1, 1}) == 1);
    CHECK(refinement_exponent({2, 3}) == 6);
    CHECK(refinement_exponent({2, 4, 3}) == 12);
}

TEST_CASE("order-one refinement of the two-cycle square") {
    CHECK(order_one_refinement(fixtures::vicsek()) == 1);
    CHECK(order_one_refinement(fixtures::two_cycle_square()) == 2);
}

TEST_CASE("subordinate map of vicsek covers every piece vertex") {
    SubordinateMap sm = subordinate_map(fixtures::vicsek(), 6);
    CHECK(sm.unsubordinated.empty());
    CHECK(sm.cyclic.size() == 4);
    // the inner contact (1/3,1/3) is reached by route 1 from A_3 and route 5 from A_1
    bool found = false;
    for (const auto& e : sm.entries) {
        if (!almost_equal(e.vertex, {1.0 / 3, 1.0 / 3})) continue;
        found = true;
        CHECK(e.pairs.size() >= 2);
        bool via1 = false, via5 = false;
        for (const auto& p : e.pairs) {
            if (p.route.str() == "1" && sm.cyclic[static_cast<size_t>(p.cyclic_index)]
                                                .vertex_index == 2)
                via1 = true;
            if (p.route.str() == "5" && sm.cyclic[static_cast<size_t>(p.cyclic_index)]
                                                .vertex_index == 0)
                via5 = true;
        }
        CHECK(via1);
        CHECK(via5);
    }
    CHECK(found);
}

TEST_CASE("parameter matching holds on vicsek") {
    MatchingReport mr = check_parameter_matching(fixtures::vicsek());
    CHECK(mr.matched);
    CHECK(mr.lambda == doctest::Approx(0.0));
    CHECK(mr.spread == doctest::Approx(0.0));
    CHECK(mr.groups.size() == 16);  // every distinct piece vertex is multiply routed
    for (const auto& g : mr.groups) CHECK(g.matched);
    CHECK(mr.unsubordinated.empty());
}

TEST_CASE("invariant arc from a vicsek corner") {
    PolygonalSystem sys = fixtures::vicsek();
    auto cvs = find_cyclic_vertices(sys);
    InvariantArc arc = invariant_arc(sys, cvs[0], 3);  // from A_1 = (0,0)
    CHECK(almost_equal(arc.endpoint, {1, 1}));         // B = A_3, the opposite corner
    CHECK(arc.word.word == std::vector<int>{0});
    REQUIRE(arc.polyline.size() >= 2);
    CHECK(almost_equal(arc.polyline.front(), {0, 0}));
    CHECK(almost_equal(arc.polyline.back(), {1, 1}));
    // invariance: S_word maps the polyline into (a prefix of) the arc
    for (const auto& p : arc.polyline) {
        Point q = sys.map(0).apply(p);
        double best = 1e9;
        for (size_t i = 0; i + 1 < arc.polyline.size(); ++i)
            best = std::min(best, point_segment_distance(q, arc.polyline[i],
                                                         arc.polyline[i + 1]));
        CHECK(best < 0.04);  // within the depth-3 approximation error
    }
}
