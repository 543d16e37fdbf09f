#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polyifs/multiindex.hpp"
#include "polyifs/system.hpp"

namespace polyifs {

struct AttractorCloud {
    int depth = 0;
    std::vector<Point> points;
    double error_bound = 0;
};

// depth-n Hutchinson images of the seed set
AttractorCloud iterate(const PolygonalSystem& system, const std::vector<Point>& seed, int depth,
                       long cap = 1000000);

struct EvalResult {
    Point point;
    double error_bound = 0;  // 0 for exact (periodic) evaluation
};

// index map pi: exact fixed-point solve for eventually periodic addresses,
// truncation through the base centroid otherwise
EvalResult eval_address(const PolygonalSystem& system, const Address& addr);

// canonical eventually periodic address of vertex `vertex_index` of V_P,
// built from the D3 parent chain (deterministic minimal parent choice)
Address vertex_address(const PolygonalSystem& system, int vertex_index, double tol = kTolGeom);

struct CriticalContact {
    int i = 0, j = 0;  // owning level-1 pieces, i < j
    Point point;
    int vi = 0, vj = 0;  // S_i(A_vi) = S_j(A_vj) = point
    Address addr_in_i;   // address of A_vi (so the point has address i.addr_in_i)
    Address addr_in_j;
};

// all level-1 shared-vertex contacts with their address data;
// throws Error("NonVertexContact") if a contact is not a common vertex
std::vector<CriticalContact> critical_contacts(const PolygonalSystem& system,
                                               double tol = kTolGeom);

struct PieceContact {
    MultiIndex u, v;  // incomparable
    Point point;
};

struct PieceGraph {
    int level = 0;
    int piece_count = 0;                 // m^level, lexicographic node order
    std::vector<PieceContact> edges;
    std::vector<MultiIndex> words;       // node words, lexicographic

    bool is_tree(double tol = kTolGeom) const;
    std::string cycle_witness(double tol = kTolGeom) const;
};

// from pairwise polygon contacts of the refined pieces (contractible systems)
PieceGraph piece_graph_geometric(const PolygonalSystem& system, int level,
                                 double tol = kTolGeom, long cap = 1000000);
// from level-1 contacts propagated through vertex addresses (any D2 system)
PieceGraph piece_graph_symbolic(const PolygonalSystem& system, int level,
                                double tol = kTolGeom, long cap = 1000000);

struct IntersectionVerdict {
    enum class Kind { CertifiedEqual, CertifiedViolation, Undecided };
    int i = 0, j = 0;
    Kind kind = Kind::Undecided;
    double margin = 0;  // CertifiedEqual: min certified separation; Undecided: worst gap
    std::string detail;
};

// Per-shared-vertex separation certificate for the subpiece pairs converging
// to the vertex.  Computed internally for homothety-local systems; supplied
// by the deformation pipeline (log-strip check) otherwise.
struct VertexCertificate {
    Point location;
    bool separated = false;
    double margin = 0;
    std::string detail;
};
using VertexCertificates = std::vector<VertexCertificate>;

// Sector-gap certificates: at each contact point the angular sectors spanned
// by the owning pieces must be disjoint.  Sound whenever every piece contains
// its attractor part (D1), since subpieces stay inside their level-1 piece.
VertexCertificates sector_vertex_certificates(const PolygonalSystem& system,
                                              double tol = kTolGeom);

// Finite-depth certification of S_i(K) ∩ S_j(K) = P_i ∩ P_j per level-1 pair.
// Requires D2 to hold.  `certs` overrides the internally computed vertex
// certificates when given.
std::vector<IntersectionVerdict> check_intersection_condition(
    const PolygonalSystem& system, int depth, const VertexCertificates* certs = nullptr,
    double tol = kTolGeom);

struct DendriteResult {
    enum class Kind { CertifiedDendrite, Inconclusive, RefutedTree };
    Kind kind = Kind::Inconclusive;
    int level = 0;  // certified depth, or the refuting/inconclusive level
    std::string reason;
    std::vector<IntersectionVerdict> verdicts;
};

std::string to_string(DendriteResult::Kind k);
std::string to_string(IntersectionVerdict::Kind k);

DendriteResult dendrite_check(const PolygonalSystem& system, int depth,
                              const VertexCertificates* certs = nullptr,
                              double tol = kTolGeom);

// unique simple path between level-1 pieces in the contact tree
std::vector<int> chain_between(const PolygonalSystem& system, int i, int j,
                               double tol = kTolGeom);

// polyline through the contact points of the depth-level chain between the
// pieces containing the two addressed points
std::vector<Point> approximate_arc(const PolygonalSystem& system, const Address& a,
                                   const Address& b, int depth, double tol = kTolGeom);

// number of local branches of K at the vertex point v, from the depth-level tree
int ramification_order(const PolygonalSystem& system, const Point& v, int depth,
                       double tol = kTolGeom);

struct PostCriticalSet {
    std::vector<CriticalContact> critical;
    std::vector<Address> addresses;  // shift closure, canonical, sorted
    bool finite = false;
    std::vector<Point> vertex_set;  // pi(P)
};

PostCriticalSet postcritical_set(const PolygonalSystem& system, int depth_cap = 64,
                                 double tol = kTolGeom);

}  // namespace polyifs
