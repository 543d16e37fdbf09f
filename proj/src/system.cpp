#include "polyifs/system.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace polyifs {

std::string to_string(Classification c) {
    switch (c) {
        case Classification::Contractible: return "Contractible";
        case Classification::Generalized: return "Generalized";
        default: return "Invalid";
    }
}

PolygonalSystem::PolygonalSystem(Polygon base, std::vector<Similarity> maps)
    : base_(std::move(base)), maps_(std::move(maps)) {
    require_valid_polygon(base_);
    if (maps_.size() < 2) throw Error("TooFewMaps", "a polygonal system needs m >= 2 maps");
    pieces_.reserve(maps_.size());
    for (const Similarity& s : maps_) pieces_.push_back(map_polygon(s, base_));
    diam_ = polygon_diameter(base_);
    centroid_ = polygon_centroid(base_);
}

double PolygonalSystem::q_min() const {
    double q = 1.0;
    for (const Similarity& s : maps_) q = std::min(q, s.ratio());
    return q;
}

double PolygonalSystem::q_max() const {
    double q = 0.0;
    for (const Similarity& s : maps_) q = std::max(q, s.ratio());
    return q;
}

Similarity PolygonalSystem::compose(const MultiIndex& j) const {
    if (j.empty()) throw Error("EmptyWord", "cannot compose the empty multiindex as a map");
    Similarity s = maps_[static_cast<size_t>(j.word.front())];
    for (size_t k = 1; k < j.word.size(); ++k)
        s = s.compose(maps_[static_cast<size_t>(j.word[k])]);
    return s;
}

PolygonalSystem PolygonalSystem::normalized(double* scale) const {
    double s = 1.0 / diam_;
    if (scale) *scale = s;
    Polygon nb;
    nb.vertices.reserve(base_.vertices.size());
    for (const Point& p : base_.vertices) nb.vertices.push_back({p.x * s, p.y * s});
    std::vector<Similarity> nm;
    nm.reserve(maps_.size());
    for (const Similarity& m : maps_) {
        // conjugate by z -> s*z: a unchanged, b scaled
        nm.push_back(Similarity(m.a(), m.b() * s));
    }
    return PolygonalSystem(std::move(nb), std::move(nm));
}

double PolygonalSystem::invariant_radius() const {
    double r = 0.0;
    for (const Similarity& s : maps_) {
        double d = dist(s.apply(centroid_), centroid_);
        r = std::max(r, d / (1.0 - s.ratio()));
    }
    // D(centroid, r) must also contain the base polygon's role as seed is not
    // needed; K ⊂ D(c, r) already since T(D) ⊂ D.
    return r;
}

bool ContactGraph::is_connected() const {
    if (piece_count == 0) return false;
    std::vector<std::vector<int>> adj(static_cast<size_t>(piece_count));
    for (const ContactPoint& c : contacts)
        for (size_t a = 0; a < c.pieces.size(); ++a)
            for (size_t b = a + 1; b < c.pieces.size(); ++b) {
                adj[static_cast<size_t>(c.pieces[a])].push_back(c.pieces[b]);
                adj[static_cast<size_t>(c.pieces[b])].push_back(c.pieces[a]);
            }
    std::vector<bool> seen(static_cast<size_t>(piece_count), false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : adj[static_cast<size_t>(u)])
            if (!seen[static_cast<size_t>(v)]) {
                seen[static_cast<size_t>(v)] = true;
                ++count;
                stack.push_back(v);
            }
    }
    return count == piece_count;
}

bool ContactGraph::is_tree() const {
    if (!is_connected()) return false;
    long nodes = piece_count + static_cast<long>(contacts.size());
    long edges = 0;
    for (const ContactPoint& c : contacts) edges += static_cast<long>(c.pieces.size());
    return edges == nodes - 1;
}

std::string ContactGraph::cycle_witness() const {
    // find a cycle in the bipartite graph by DFS with parent tracking
    long nodes = piece_count + static_cast<long>(contacts.size());
    std::vector<std::vector<int>> adj(static_cast<size_t>(nodes));
    for (size_t ci = 0; ci < contacts.size(); ++ci) {
        int cnode = piece_count + static_cast<int>(ci);
        for (int p : contacts[ci].pieces) {
            adj[static_cast<size_t>(p)].push_back(cnode);
            adj[static_cast<size_t>(cnode)].push_back(p);
        }
    }
    std::vector<int> parent(static_cast<size_t>(nodes), -2);
    for (int root = 0; root < static_cast<int>(nodes); ++root) {
        if (parent[static_cast<size_t>(root)] != -2) continue;
        std::vector<int> stack{root};
        parent[static_cast<size_t>(root)] = -1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : adj[static_cast<size_t>(u)]) {
                if (v == parent[static_cast<size_t>(u)]) continue;
                if (parent[static_cast<size_t>(v)] != -2) {
                    // cycle: walk both ends up to the root and report piece nodes
                    std::ostringstream os;
                    os << "cycle through pieces:";
                    std::set<int> ps;
                    for (int w = u; w >= 0; w = parent[static_cast<size_t>(w)])
                        if (w < piece_count) ps.insert(w);
                    for (int w = v; w >= 0; w = parent[static_cast<size_t>(w)])
                        if (w < piece_count) ps.insert(w);
                    for (int p : ps) os << ' ' << (p + 1);
                    return os.str();
                }
                parent[static_cast<size_t>(v)] = u;
                stack.push_back(v);
            }
        }
    }
    return "";
}

namespace {

// P_i ⊂ P: vertices and edge sample points inside-or-on P
bool piece_inside_base(const Polygon& piece, const Polygon& base, double tol,
                       std::string* witness) {
    for (const Point& v : piece.vertices) {
        if (!point_in_polygon(v, base, tol)) {
            if (witness) {
                std::ostringstream os;
                os << "piece vertex (" << v.x << ", " << v.y << ") outside P";
                *witness = os.str();
            }
            return false;
        }
    }
    // edges could sweep outside between inside vertices (nonconvex P)
    int np = piece.size();
    for (int i = 0; i < np; ++i) {
        Point a = piece.vertex(i), b = piece.vertex_mod(i + 1);
        for (int k = 1; k < 8; ++k) {
            double t = k / 8.0;
            Point s{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
            if (!point_in_polygon(s, base, tol)) {
                if (witness) *witness = "piece edge leaves P";
                return false;
            }
        }
    }
    return true;
}

}  // namespace

ValidationReport validate(const PolygonalSystem& system, double tol) {
    ValidationReport rep;
    const int m = system.map_count();

    // D1: every P_i ⊂ P
    rep.d1.pass = true;
    for (int i = 0; i < m && rep.d1.pass; ++i) {
        std::string w;
        if (!piece_inside_base(system.piece(i), system.base(), tol, &w)) {
            rep.d1.pass = false;
            rep.d1.witness = "P_" + std::to_string(i + 1) + ": " + w;
        }
    }

    // D2: pairwise contacts Disjoint or SinglePoint at a shared vertex
    rep.d2.pass = true;
    for (int i = 0; i < m && rep.d2.pass; ++i)
        for (int j = i + 1; j < m && rep.d2.pass; ++j) {
            ContactResult c = polygon_pair_contact(system.piece(i), system.piece(j), tol);
            if (c.kind == ContactResult::Kind::Violation) {
                rep.d2.pass = false;
                rep.d2.witness = "pair (P_" + std::to_string(i + 1) + ", P_" +
                                 std::to_string(j + 1) + "): " + c.description;
            } else if (c.kind == ContactResult::Kind::SinglePoint && !c.shared_vertex) {
                rep.d2.pass = false;
                rep.d2.witness = "pair (P_" + std::to_string(i + 1) + ", P_" +
                                 std::to_string(j + 1) + "): contact point is not a common vertex";
            }
        }

    // D3: every vertex of P equals some S_i(vertex of P)
    rep.d3.pass = true;
    for (const Point& a : system.base().vertices) {
        int matches = 0;
        for (int i = 0; i < m; ++i)
            for (const Point& v : system.base().vertices)
                if (almost_equal(system.map(i).apply(v), a, tol)) ++matches;
        if (matches == 0) {
            rep.d3.pass = false;
            std::ostringstream os;
            os << "vertex (" << a.x << ", " << a.y << ") not covered by any S_i(V_P)";
            rep.d3.witness = os.str();
            break;
        }
    }

    // D4: contact graph connected and acyclic (point-contact tree criterion)
    if (rep.d2.pass) {
        ContactGraph g = contact_graph(system, tol);
        if (!g.is_connected()) {
            rep.d4.pass = false;
            rep.d4.witness = "contact graph disconnected";
        } else if (!g.is_tree()) {
            rep.d4.pass = false;
            rep.d4.witness = g.cycle_witness();
        } else {
            rep.d4.pass = true;
        }
    } else {
        rep.d4.pass = false;
        rep.d4.witness = "not evaluated: D2 failed";
    }

    if (rep.d1.pass && rep.d2.pass && rep.d3.pass && rep.d4.pass)
        rep.classification = Classification::Contractible;
    else if (rep.d2.pass && rep.d3.pass && rep.d4.pass)
        rep.classification = Classification::Generalized;
    else
        rep.classification = Classification::Invalid;
    return rep;
}

ContactGraph contact_graph(const PolygonalSystem& system, double tol) {
    const int m = system.map_count();
    ContactGraph g;
    g.piece_count = m;
    double cluster_eps = std::max(10 * tol, 1e-12);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            ContactResult c = polygon_pair_contact(system.piece(i), system.piece(j), tol);
            if (c.kind == ContactResult::Kind::Violation)
                throw Error("D2Violated", "pair (" + std::to_string(i + 1) + "," +
                                              std::to_string(j + 1) + "): " + c.description);
            if (c.kind != ContactResult::Kind::SinglePoint) continue;
            bool merged = false;
            for (ContactGraph::ContactPoint& cp : g.contacts) {
                if (almost_equal(cp.location, c.point, cluster_eps)) {
                    if (std::find(cp.pieces.begin(), cp.pieces.end(), i) == cp.pieces.end())
                        cp.pieces.push_back(i);
                    if (std::find(cp.pieces.begin(), cp.pieces.end(), j) == cp.pieces.end())
                        cp.pieces.push_back(j);
                    cp.shared_vertex = cp.shared_vertex && c.shared_vertex;
                    merged = true;
                    break;
                }
            }
            if (!merged) {
                ContactGraph::ContactPoint cp;
                cp.location = c.point;
                cp.pieces = {i, j};
                cp.shared_vertex = c.shared_vertex;
                g.contacts.push_back(cp);
            }
        }
    return g;
}

std::vector<MultiIndex> enumerate_words(int m, int n, long cap) {
    double total = std::pow(static_cast<double>(m), n);
    if (total > static_cast<double>(cap))
        throw Error("SizeLimit", "m^n = " + std::to_string(total) + " exceeds cap");
    std::vector<MultiIndex> out;
    out.reserve(static_cast<size_t>(total));
    std::vector<int> w(static_cast<size_t>(n), 0);
    while (true) {
        out.emplace_back(w);
        int k = n - 1;
        while (k >= 0 && w[static_cast<size_t>(k)] == m - 1) {
            w[static_cast<size_t>(k)] = 0;
            --k;
        }
        if (k < 0) break;
        ++w[static_cast<size_t>(k)];
    }
    return out;
}

PolygonalSystem refine(const PolygonalSystem& system, int n, long cap) {
    if (n < 1) throw Error("InvalidArgument", "refinement level must be >= 1");
    if (n == 1) return system;
    std::vector<MultiIndex> words = enumerate_words(system.map_count(), n, cap);
    std::vector<Similarity> maps;
    maps.reserve(words.size());
    for (const MultiIndex& w : words) maps.push_back(system.compose(w));
    return PolygonalSystem(system.base(), std::move(maps));
}

OscResult osc_witness_check(const PolygonalSystem& system, double tol) {
    ValidationReport rep = validate(system, tol);
    if (rep.classification != Classification::Contractible)
        throw Error("NotContractible", "OSC witness check requires a contractible system");
    // D1 + D2 verified above already imply the witness O = int P works
    OscResult r;
    r.pass = true;
    return r;
}

}  // namespace polyifs
