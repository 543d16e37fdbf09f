#pragma once

#include <functional>
#include <string>
#include <vector>

#include "polyifs/attractor.hpp"
#include "polyifs/cyclic.hpp"
#include "polyifs/system.hpp"

namespace polyifs {

// Vertex displacement table defining the deformation map f on the vertices of
// the base polygon and of all pieces.  Unlisted points are kept fixed.
struct Displacement {
    Point from, to;
};

struct DeformationSpec {
    std::vector<Displacement> displacements;

    // max |to - from|, in input coordinates
    double delta() const;
    // f(p): the listed target, or p itself when unlisted
    Point apply(const Point& p, double tol = kTolGeom) const;
    // throws Error("NotBijective") on duplicate sources with different targets
    // or distinct sources sharing a target; merges exact duplicates
    void add(const Point& from, const Point& to, double tol = kTolGeom);
};

// spec listing f(v) for every vertex of the base polygon and of every piece
DeformationSpec deformation_from_map(const PolygonalSystem& base,
                                     const std::function<Point(const Point&)>& f,
                                     double tol = kTolGeom);

// S'_k solved from two displaced vertices of P_k (the most separated pair) and
// cross-checked on all remaining vertices; the deformed base polygon is f(P).
// Throws Error("InconsistentSpec") / Error("NotBijective").
PolygonalSystem build_deformed_system(const PolygonalSystem& base, const DeformationSpec& spec,
                                      double tol = kTolGeom);

struct DeformationValidation {
    bool order_preserved = false;   // f keeps the cyclic vertex order and f(P) simple
    bool within_budget = false;     // recomputed delta vs the declared budget
    bool equivariant = false;       // f(S_k(v)) = S'_k(f(v)) on all piece vertices
    bool identities_preserved = false;  // shared-vertex identities up to depth 3
    double delta = 0;
    std::string witness;  // first failure, if any
    bool pass() const {
        return order_preserved && within_budget && equivariant && identities_preserved;
    }
};

// budget < 0 means "no declared budget" (the budget clause passes)
DeformationValidation validate_deformation(const PolygonalSystem& base,
                                           const DeformationSpec& spec,
                                           const PolygonalSystem& deformed, double budget = -1,
                                           double tol = kTolGeom);

// All lengths below are in normalized units (diam P = 1).
struct GeometricConstants {
    double rho0 = 0;    // vertex clearance / disjoint-piece distance
    double rho1 = 0;    // inner radius of the certified route cover at vertices
    double rho2 = 0;    // outer radius of the route pieces at vertices
    double alpha0 = 0;  // min angle between piece sides at shared vertices
    double q_min = 0, q_max = 0;
    double scale = 1;  // factor applied to input coordinates by normalization
};

struct DerivedConstants {
    double c_alpha = 0;   // 2.1 (1 + 1/q_min)
    double c_delta = 0;   // 14 + 2 c_alpha
    double c_k = 0;       // 2 c_delta / (1 - q_max)
    double c_lambda = 0;  // 2.1 (1 + 1/q_max) / (log(3+q_max) - log(3 q_max + 1))
    double delta1 = 0;    // 8 delta / (1 + 3 q_max)
    double delta2 = 0;    // (c_k + 1) delta
    double beta = 0;      // worst-case min_k log(q'_k upper bound) / log(q_k)
};

// throws Error("NotContractible"), Error("Unsubordinated")
GeometricConstants geometric_constants(const PolygonalSystem& base, double tol = kTolGeom);

// delta in normalized units; throws Error("AssumptionViolated") unless
// delta < q_min/8 and delta < (1-q_max)/8
DerivedConstants derived_constants(const PolygonalSystem& base, double delta,
                                   double tol = kTolGeom);

struct DeltaMaxReport {
    double bounds[6] = {0, 0, 0, 0, 0, 0};
    int binding_index = 0;  // 1-based index of the minimal bound
    double delta_max = 0;   // min of the six, divided by M when refinement applied
    double unadjusted = 0;  // min of the six before the M division
    int refinement = 1;     // order-one refinement exponent used
    double m_factor = 1;    // 12 + 4.2 (1 + 1/q_min) when refinement > 1, else 1
};

DeltaMaxReport delta_max(const PolygonalSystem& base, double tol = kTolGeom);

struct MapBounds {
    int k = 0;
    double dq = 0, dalpha = 0;
    double margin_ratio_low = 0, margin_ratio_high = 0;  // eq-asin window margins
    double margin_dq = 0;      // 6 delta - dq
    double margin_dalpha = 0;  // c_alpha delta - dalpha
    bool pass() const {
        return margin_ratio_low > 0 && margin_ratio_high > 0 && margin_dq > 0 &&
               margin_dalpha > 0;
    }
};

// delta taken from the spec'd deformation, normalized internally
std::vector<MapBounds> perturbation_bounds_check(const PolygonalSystem& base,
                                                 const PolygonalSystem& deformed, double delta);

struct NeighborhoodVerdict {
    bool pass = false;
    double margin = 0;  // min over k of (1 - q'_k) delta1 - max excess
    int worst_k = 0;
    Point witness;  // deepest excursion point when failing
};

// certifies S'_k(V_delta1(P)) inside V_delta1(P) for all k
NeighborhoodVerdict invariant_neighborhood_check(const PolygonalSystem& base,
                                                 const PolygonalSystem& deformed, double delta,
                                                 double tol = kTolGeom);

struct StripCheckResult {
    bool separated = false;
    double margin = 0;  // min gap between consecutive slabs, radians
    std::string detail;
};

// Separation of the slanted half-strips of the route pieces at the shared
// vertex B (given in input coordinates of `base`), under the matched lambda.
StripCheckResult log_strip_check(const PolygonalSystem& base, const Point& b, double lambda,
                                 const GeometricConstants& gc, const DerivedConstants& dc,
                                 double tol = kTolGeom);

// conjugating map on vertex images: f_hat(S_i(A_v)) = S'_i(f(A_v));
// throws Error("RouteMismatch") when an alternative route disagrees
Point hatf_eval(const PolygonalSystem& base, const PolygonalSystem& deformed,
                const MultiIndex& route, int vertex_index, double tol = kTolGeom);

struct HolderReport {
    bool pass = false;
    double beta = 0;
    double constant = 0;   // 2 |K'| / (rho0 sin(alpha0/2))^beta, normalized
    double worst_ratio = 0;  // max lhs/rhs over sampled pairs
    int samples = 0;
};

HolderReport holder_check(const PolygonalSystem& base, const PolygonalSystem& deformed,
                          int sample_pairs, unsigned long long seed, double tol = kTolGeom);

// sector-separation certificates for a deformed system, from the log-strip
// check at every shared vertex of the base (matched lambda per vertex);
// feeds dendrite_check / check_intersection_condition
VertexCertificates strip_vertex_certificates(const PolygonalSystem& base,
                                             const PolygonalSystem& deformed, double delta,
                                             double tol = kTolGeom);

}  // namespace polyifs
