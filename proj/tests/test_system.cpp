#include <doctest.h>

#include <cmath>

#include "polyifs/fixtures.hpp"
#include "polyifs/system.hpp"

using namespace polyifs;

TEST_CASE("vicsek validates as contractible") {
    PolygonalSystem sys = fixtures::vicsek();
    ValidationReport r = validate(sys);
    CHECK(r.d1.pass);
    CHECK(r.d2.pass);
    CHECK(r.d3.pass);
    CHECK(r.d4.pass);
    CHECK(r.classification == Classification::Contractible);
    CHECK(sys.q_min() == doctest::Approx(1.0 / 3));
    CHECK(sys.q_max() == doctest::Approx(1.0 / 3));
}

TEST_CASE("overlapping center fails D2 and names the pair") {
    ValidationReport r = validate(fixtures::vicsek_overlapping_center());
    CHECK_FALSE(r.d2.pass);
    // the oversized center map is index 5 (1-based); some corner pair must be named
    CHECK(r.d2.witness.find('5') != std::string::npos);
}

TEST_CASE("sierpinski fails D4 with a cycle witness") {
    ValidationReport r = validate(fixtures::sierpinski());
    CHECK(r.d1.pass);
    CHECK(r.d2.pass);
    CHECK(r.d3.pass);
    CHECK_FALSE(r.d4.pass);
    CHECK_FALSE(r.d4.witness.empty());
}

TEST_CASE("disjoint pair fails D4 by disconnection") {
    ValidationReport r = validate(fixtures::disjoint_pair());
    CHECK_FALSE(r.d4.pass);
}

TEST_CASE("hidden overlap pair is generalized, not contractible") {
    ValidationReport r = validate(fixtures::hidden_overlap_pair());
    CHECK_FALSE(r.d1.pass);  // half-turn piece leaves the base polygon
    CHECK(r.classification != Classification::Contractible);
}

TEST_CASE("contact graph of vicsek is a tree with 4 contacts") {
    ContactGraph cg = contact_graph(fixtures::vicsek());
    CHECK(cg.piece_count == 5);
    CHECK(cg.contacts.size() == 4);
    CHECK(cg.is_connected());
    CHECK(cg.is_tree());
    for (const auto& c : cg.contacts) {
        CHECK(c.pieces.size() == 2);
        CHECK(c.shared_vertex);
    }
}

TEST_CASE("contact graph of sierpinski has a 3-cycle") {
    ContactGraph cg = contact_graph(fixtures::sierpinski());
    CHECK(cg.is_connected());
    CHECK_FALSE(cg.is_tree());
    CHECK_FALSE(cg.cycle_witness().empty());
}

TEST_CASE("contact graph throws on D2 violation") {
    CHECK_THROWS_AS(contact_graph(fixtures::vicsek_overlapping_center()), Error);
}

TEST_CASE("compose follows multiindex order") {
    PolygonalSystem sys = fixtures::vicsek();
    MultiIndex w({1, 4});  // S_2 ∘ S_5 (1-based 2.5)
    Similarity c = sys.compose(w);
    Point p{0.25, 0.75};
    CHECK(almost_equal(c.apply(p), sys.map(1).apply(sys.map(4).apply(p))));
}

TEST_CASE("refinement counts and ratios") {
    PolygonalSystem sys = fixtures::vicsek();
    PolygonalSystem r2 = refine(sys, 2);
    CHECK(r2.map_count() == 25);
    CHECK(r2.q_max() == doctest::Approx(1.0 / 9));
    CHECK_THROWS_AS(refine(sys, 12, 1000), Error);
    CHECK(enumerate_words(5, 2).size() == 25);
    CHECK(enumerate_words(5, 2).front().str() == "1.1");
    CHECK(enumerate_words(5, 2).back().str() == "5.5");
}

TEST_CASE("normalization rescales to unit diameter") {
    double scale = 0;
    PolygonalSystem n = fixtures::sierpinski().normalized(&scale);
    CHECK(n.base_diameter() == doctest::Approx(1.0));
    CHECK(scale == doctest::Approx(1.0));  // sierpinski base already has diameter 1
    Polygon big_sq;
    big_sq.vertices = {{0, 0}, {2, 0}, {2, 2}, {0, 2}};
    PolygonalSystem big(big_sq, {Similarity::from_ratio_rotation_fixed(0.5, 0, {0, 0}),
                                 Similarity::from_ratio_rotation_fixed(0.5, 0, {2, 2})});
    PolygonalSystem nb = big.normalized(&scale);
    CHECK(nb.base_diameter() == doctest::Approx(1.0));
    CHECK(scale == doctest::Approx(1.0 / (2 * std::sqrt(2.0))));
}

TEST_CASE("invariant disc contains the pieces") {
    PolygonalSystem sys = fixtures::hidden_overlap_pair();
    double r = sys.invariant_radius();
    Point c = sys.invariant_center();
    for (int k = 0; k < sys.map_count(); ++k) {
        // S_k(D) ⊂ D  <=>  q_k r + |S_k(c) - c| <= r
        double q = sys.map(k).ratio();
        CHECK(q * r + dist(sys.map(k).apply(c), c) <= r + 1e-9);
    }
}

TEST_CASE("osc witness check on vicsek") {
    OscResult r = osc_witness_check(fixtures::vicsek());
    CHECK(r.pass);
    CHECK_THROWS_AS(osc_witness_check(fixtures::hidden_overlap_pair()), Error);
}
