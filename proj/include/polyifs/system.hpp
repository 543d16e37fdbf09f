#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polyifs/geometry.hpp"
#include "polyifs/multiindex.hpp"

namespace polyifs {

enum class Classification { Contractible, Generalized, Invalid };

std::string to_string(Classification c);

struct ConditionVerdict {
    bool pass = false;
    std::string witness;  // nonempty on failure
};

struct ValidationReport {
    ConditionVerdict d1, d2, d3, d4;
    Classification classification = Classification::Invalid;
};

// Base polygon P, maps S_1..S_m, derived pieces P_i = S_i(P).
class PolygonalSystem {
  public:
    PolygonalSystem(Polygon base, std::vector<Similarity> maps);

    const Polygon& base() const { return base_; }
    const std::vector<Similarity>& maps() const { return maps_; }
    const Similarity& map(int i) const { return maps_[static_cast<size_t>(i)]; }
    int map_count() const { return static_cast<int>(maps_.size()); }
    const std::vector<Polygon>& pieces() const { return pieces_; }
    const Polygon& piece(int i) const { return pieces_[static_cast<size_t>(i)]; }

    double q_min() const;
    double q_max() const;
    double base_diameter() const { return diam_; }

    Similarity compose(const MultiIndex& j) const;  // S_{j_1} ∘ ... ∘ S_{j_n}
    Polygon piece_of(const MultiIndex& j) const { return map_polygon(compose(j), base_); }

    // Copy rescaled so diam P = 1; `scale` receives the applied factor.
    PolygonalSystem normalized(double* scale = nullptr) const;

    // invariant disc radius r* around the base centroid with S_k(D) ⊂ D for all k;
    // the attractor lies in D(centroid, r*)
    double invariant_radius() const;
    Point invariant_center() const { return centroid_; }

  private:
    Polygon base_;
    std::vector<Similarity> maps_;
    std::vector<Polygon> pieces_;
    double diam_ = 0;
    Point centroid_;
};

// Level-1 bipartite incidence structure: pieces vs contact points.
struct ContactGraph {
    struct ContactPoint {
        Point location;
        std::vector<int> pieces;  // owning piece indices
        bool shared_vertex = true;
    };
    int piece_count = 0;
    std::vector<ContactPoint> contacts;

    bool is_connected() const;
    bool is_tree() const;  // connected and |edges| = |nodes| - 1
    // a cycle witness (sequence of piece indices) when not a tree, for reports
    std::string cycle_witness() const;
};

// D1-D4 validation per the contractible / generalized system definitions.
ValidationReport validate(const PolygonalSystem& system, double tol = kTolGeom);

// Throws Error("D2Violated") if any pair has a Violation contact.
ContactGraph contact_graph(const PolygonalSystem& system, double tol = kTolGeom);

// n-th refinement: all m^n compositions in lexicographic multiindex order.
// Throws Error("SizeLimit") if m^n exceeds `cap`.
PolygonalSystem refine(const PolygonalSystem& system, int n, long cap = 1000000);

// enumerate I^n in lexicographic order
std::vector<MultiIndex> enumerate_words(int m, int n, long cap = 1000000);

struct OscResult {
    bool pass = false;
    std::string witness;
};

// OSC with witness O = int P: pieces inside P with pairwise disjoint interiors.
// Throws Error("NotContractible") unless the system validates as Contractible.
OscResult osc_witness_check(const PolygonalSystem& system, double tol = kTolGeom);

}  // namespace polyifs
