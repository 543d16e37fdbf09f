#pragma once

#include <string>
#include <vector>

#include "polyifs/multiindex.hpp"
#include "polyifs/system.hpp"

namespace polyifs {

// default λ-comparison tolerance in normalized units
inline constexpr double kTolLambda = 1e-6;

struct CyclicVertex {
    int vertex_index = 0;  // index into the base polygon's vertex list
    Point vertex;
    MultiIndex witness;  // lexicographically least word with S_witness(vertex) = vertex
    int order = 0;       // minimal witness length
    double ratio = 0;    // contraction ratio of the witness map
    double rotation = 0;  // principal rotation of the witness map, in (-pi, pi]
    double lambda = 0;    // rotation / ln(ratio), principal branch (winding 0)
};

// all base vertices admitting a witness of length <= max_order, by vertex index
std::vector<CyclicVertex> find_cyclic_vertices(const PolygonalSystem& system, int max_order = 8,
                                               double tol = kTolGeom);

// λ = (rotation + 2π·winding) / ln(ratio)
double vertex_parameter(const CyclicVertex& cv, int winding = 0);

// lcm of cyclic-vertex orders
int refinement_exponent(const std::vector<int>& orders);

// refinement exponent n with all cyclic vertices of order 1 in refine(system, n),
// verified post hoc on the refined system; throws Error("CapExceeded")
int order_one_refinement(const PolygonalSystem& system, int max_order = 8, long cap = 1000000,
                         double tol = kTolGeom);

struct SubordinatePair {
    MultiIndex route;      // word i with S_i(cyclic vertex) = the piece vertex
    int cyclic_index = 0;  // index into the cyclic-vertex list
};

struct SubordinateEntry {
    Point vertex;  // element of the union of piece vertex sets
    std::vector<SubordinatePair> pairs;
};

struct SubordinateMap {
    std::vector<CyclicVertex> cyclic;
    std::vector<SubordinateEntry> entries;   // one per distinct piece vertex
    std::vector<Point> unsubordinated;       // piece vertices with no route within depth
};

// every (route, cyclic vertex) pair with |route| <= depth reaching each piece vertex
SubordinateMap subordinate_map(const PolygonalSystem& system, int depth, double tol = kTolGeom);

struct MatchingReport {
    struct Assignment {
        MultiIndex route;
        int cyclic_index = 0;
        double lambda = 0;
    };
    struct VertexGroup {
        Point location;
        std::vector<Assignment> assignments;
        double spread = 0;
        bool matched = true;
    };
    std::vector<VertexGroup> groups;  // vertices reached by >= 2 routes
    bool matched = true;
    double lambda = 0;  // common value when matched (from the first group)
    double spread = 0;  // max spread over groups
    std::vector<Point> unsubordinated;
    std::vector<CyclicVertex> cyclic;
};

// groups λ values of the cyclic vertices routed to each shared piece vertex
MatchingReport check_parameter_matching(const PolygonalSystem& system,
                                        double tol_lambda = kTolLambda, int max_order = 8,
                                        int depth = 6, double tol = kTolGeom);

struct InvariantArc {
    Point endpoint;              // the vertex B fixed by the iterated vertex map
    MultiIndex word;             // witness power whose map keeps the arc invariant
    std::vector<Point> polyline; // depth-level approximation of the arc
};

// invariant arc from an order-1 cyclic vertex, via iteration of the exit-vertex
// map on the remaining base vertices; throws Error("PhiUndefined") when the
// depth-level arc misses the witness images, Error("CapExceeded") on iteration cap
InvariantArc invariant_arc(const PolygonalSystem& system, const CyclicVertex& cv, int depth,
                           double tol = kTolGeom);

}  // namespace polyifs
