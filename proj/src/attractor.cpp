#include "polyifs/attractor.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>

namespace polyifs {

namespace {

constexpr double kPi = 3.14159265358979323846;

double cluster_eps(double tol) { return std::max(10.0 * tol, 1e-12); }

// (k, v') pairs with S_k(A_{v'}) = A_v, for every vertex v of the base polygon
std::vector<std::vector<std::pair<int, int>>> vertex_parents(const PolygonalSystem& sys,
                                                             double tol) {
    const auto& verts = sys.base().vertices;
    int n = static_cast<int>(verts.size());
    std::vector<std::vector<std::pair<int, int>>> parents(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v)
        for (int k = 0; k < sys.map_count(); ++k)
            for (int vp = 0; vp < n; ++vp)
                if (almost_equal(sys.map(k).apply(verts[static_cast<size_t>(vp)]),
                                 verts[static_cast<size_t>(v)], tol))
                    parents[static_cast<size_t>(v)].push_back({k, vp});
    return parents;
}

// all depth-d words w with A_v in P_w, from the parent relation
std::vector<MultiIndex> words_containing_vertex(
    const std::vector<std::vector<std::pair<int, int>>>& parents, int v, int d) {
    if (d == 0) return {MultiIndex{}};
    std::vector<MultiIndex> out;
    for (auto [k, vp] : parents[static_cast<size_t>(v)]) {
        MultiIndex head;
        head.word.push_back(k);
        for (const auto& tail : words_containing_vertex(parents, vp, d - 1))
            out.push_back(head.concat(tail));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

long ipow_checked(int m, int n, long cap) {
    long r = 1;
    for (int k = 0; k < n; ++k) {
        r *= m;
        if (r > cap) throw Error("SizeLimit", "piece count exceeds cap");
    }
    return r;
}

// bounding region of the subpiece K_w: the piece polygon inflated by
// q_w * rho_sys, where V_{rho_sys}(P) is an invariant neighborhood of the
// whole system (rho_sys = 0 when pieces already contain their attractor parts)
struct Region {
    Polygon poly;
    double inflate = 0;
    double diameter = 0;

    double distance_to(const Region& o) const {
        return std::max(0.0, polygon_polygon_distance(poly, o.poly) - inflate - o.inflate);
    }
    bool contains(const Point& p, double tol) const {
        return point_polygon_distance(p, poly) <= inflate + tol;
    }
};

// smallest certified rho with S_k(V_rho(P)) inside V_rho(P) for all k:
// rho = max_k (max excursion of P_k outside P) / (1 - q_k)
double invariant_inflation(const PolygonalSystem& sys) {
    double rho = 0;
    for (int k = 0; k < sys.map_count(); ++k) {
        const Polygon& pk = sys.piece(k);
        double excess = 0;
        for (int e = 0; e < pk.size(); ++e)
            excess = std::max(excess, max_distance_to_polygon(pk.vertex(e), pk.vertex_mod(e + 1),
                                                              sys.base(), excess));
        rho = std::max(rho, excess / (1 - sys.map(k).ratio()));
    }
    return rho;
}

struct RegionBuilder {
    const PolygonalSystem* sys;
    double rho_sys;

    RegionBuilder(const PolygonalSystem& s, bool pieces_inside)
        : sys(&s), rho_sys(pieces_inside ? 0.0 : invariant_inflation(s)) {}

    Region make(const MultiIndex& w) const {
        Region r;
        Similarity s = sys->compose(w);
        r.poly = map_polygon(s, sys->base());
        r.inflate = s.ratio() * rho_sys;
        r.diameter = s.ratio() * sys->base_diameter() + 2 * r.inflate;
        return r;
    }
};

bool pieces_contain_attractor(const PolygonalSystem& sys, double tol) {
    return validate(sys, tol).d1.pass;
}

// exact attractor points of K_i: fixed points of all compositions starting
// with i, up to a word-length budget
std::vector<Point> exact_points_in_part(const PolygonalSystem& sys, int i, long budget) {
    int m = sys.map_count();
    int len = 1;
    long total = m;
    while (total * m <= budget && len < 12) {
        total *= m;
        ++len;
    }
    std::vector<Point> out;
    MultiIndex head;
    head.word.push_back(i);
    std::deque<MultiIndex> queue = {head};
    while (!queue.empty()) {
        MultiIndex w = queue.front();
        queue.pop_front();
        out.push_back(sys.compose(w).fixed_point());
        if (w.length() < len)
            for (int k = 0; k < m; ++k) queue.push_back(w.concat(k));
    }
    return out;
}

struct BipartiteGraph {
    // nodes: 0..piece_count-1 pieces, then contact-point clusters
    int piece_count = 0;
    std::vector<Point> cluster_points;
    std::vector<std::set<int>> cluster_pieces;  // piece node ids per cluster
    std::map<std::vector<int>, int> word_index;

    long edge_count() const {
        long e = 0;
        for (const auto& c : cluster_pieces) e += static_cast<long>(c.size());
        return e;
    }
};

BipartiteGraph bipartite_from(const PieceGraph& g, double tol) {
    BipartiteGraph b;
    b.piece_count = g.piece_count;
    for (int k = 0; k < static_cast<int>(g.words.size()); ++k)
        b.word_index[g.words[static_cast<size_t>(k)].word] = k;
    double eps = cluster_eps(tol);
    auto cluster_of = [&](const Point& p) {
        for (size_t c = 0; c < b.cluster_points.size(); ++c)
            if (dist(b.cluster_points[c], p) <= eps) return static_cast<int>(c);
        b.cluster_points.push_back(p);
        b.cluster_pieces.emplace_back();
        return static_cast<int>(b.cluster_points.size() - 1);
    };
    for (const auto& e : g.edges) {
        int c = cluster_of(e.point);
        b.cluster_pieces[static_cast<size_t>(c)].insert(b.word_index.at(e.u.word));
        b.cluster_pieces[static_cast<size_t>(c)].insert(b.word_index.at(e.v.word));
    }
    return b;
}

// BFS over the bipartite graph; returns parent array over node ids
// (pieces 0..n-1, clusters n..n+c-1), -2 = unvisited, -1 = root
std::vector<int> bipartite_bfs(const BipartiteGraph& b, int root) {
    int n = b.piece_count;
    int total = n + static_cast<int>(b.cluster_points.size());
    std::vector<int> parent(static_cast<size_t>(total), -2);
    std::vector<std::vector<int>> piece_clusters(static_cast<size_t>(n));
    for (int c = 0; c < static_cast<int>(b.cluster_pieces.size()); ++c)
        for (int p : b.cluster_pieces[static_cast<size_t>(c)])
            piece_clusters[static_cast<size_t>(p)].push_back(n + c);
    std::deque<int> queue = {root};
    parent[static_cast<size_t>(root)] = -1;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        if (u < n) {
            for (int c : piece_clusters[static_cast<size_t>(u)])
                if (parent[static_cast<size_t>(c)] == -2) {
                    parent[static_cast<size_t>(c)] = u;
                    queue.push_back(c);
                }
        } else {
            for (int p : b.cluster_pieces[static_cast<size_t>(u - n)])
                if (parent[static_cast<size_t>(p)] == -2) {
                    parent[static_cast<size_t>(p)] = u;
                    queue.push_back(p);
                }
        }
    }
    return parent;
}

std::string word_label(const PieceGraph& g, int node) {
    return g.words[static_cast<size_t>(node)].str();
}

// depth-level graph: geometric when pieces contain their attractor parts,
// symbolic otherwise
PieceGraph level_graph(const PolygonalSystem& sys, int level, double tol, long cap) {
    if (pieces_contain_attractor(sys, tol)) return piece_graph_geometric(sys, level, tol, cap);
    return piece_graph_symbolic(sys, level, tol, cap);
}

}  // namespace

AttractorCloud iterate(const PolygonalSystem& system, const std::vector<Point>& seed, int depth,
                       long cap) {
    if (depth < 0) throw Error("BadArgument", "depth must be nonnegative");
    if (seed.empty()) throw Error("BadArgument", "empty seed");
    AttractorCloud cloud;
    cloud.depth = depth;
    cloud.points = seed;
    for (int n = 0; n < depth; ++n) {
        if (static_cast<long>(cloud.points.size()) * system.map_count() > cap)
            throw Error("SizeLimit", "cloud size exceeds cap");
        std::vector<Point> next;
        next.reserve(cloud.points.size() * static_cast<size_t>(system.map_count()));
        for (int k = 0; k < system.map_count(); ++k)
            for (const auto& p : cloud.points) next.push_back(system.map(k).apply(p));
        cloud.points = std::move(next);
    }
    double reach = std::max(system.base_diameter(), 2 * system.invariant_radius());
    cloud.error_bound = std::pow(system.q_max(), depth) * reach;
    return cloud;
}

EvalResult eval_address(const PolygonalSystem& system, const Address& addr) {
    EvalResult r;
    if (!addr.period.empty()) {
        Point fix = system.compose(addr.period).fixed_point();
        r.point = addr.preperiod.empty() ? fix : system.compose(addr.preperiod).apply(fix);
        r.error_bound = 0;
        return r;
    }
    Point c = system.invariant_center();
    double reach = std::max(system.base_diameter(), 2 * system.invariant_radius());
    if (addr.preperiod.empty()) {
        r.point = c;
        r.error_bound = reach;
        return r;
    }
    Similarity s = system.compose(addr.preperiod);
    r.point = s.apply(c);
    r.error_bound = s.ratio() * reach;
    return r;
}

Address vertex_address(const PolygonalSystem& system, int vertex_index, double tol) {
    int n = system.base().size();
    if (vertex_index < 0 || vertex_index >= n)
        throw Error("BadArgument", "vertex index out of range");
    auto parents = vertex_parents(system, tol);
    std::vector<int> symbols;
    std::vector<int> seen_at(static_cast<size_t>(n), -1);
    int cur = vertex_index;
    for (int step = 0; step <= n; ++step) {
        if (seen_at[static_cast<size_t>(cur)] >= 0) {
            int p = seen_at[static_cast<size_t>(cur)];
            Address a;
            a.preperiod.word.assign(symbols.begin(), symbols.begin() + p);
            a.period.word.assign(symbols.begin() + p, symbols.end());
            return a.canonical();
        }
        seen_at[static_cast<size_t>(cur)] = step;
        const auto& ps = parents[static_cast<size_t>(cur)];
        if (ps.empty())
            throw Error("D3Violated", "vertex " + std::to_string(cur + 1) +
                                          " is not covered by any map image of a vertex");
        symbols.push_back(ps.front().first);
        cur = ps.front().second;
    }
    throw Error("D3Violated", "vertex address chain did not close");
}

std::vector<CriticalContact> critical_contacts(const PolygonalSystem& system, double tol) {
    ContactGraph cg = contact_graph(system, tol);
    const auto& verts = system.base().vertices;
    std::map<int, Address> addr_cache;
    auto vaddr = [&](int v) {
        auto it = addr_cache.find(v);
        if (it == addr_cache.end())
            it = addr_cache.emplace(v, vertex_address(system, v, tol)).first;
        return it->second;
    };
    std::vector<CriticalContact> out;
    for (const auto& cp : cg.contacts) {
        if (!cp.shared_vertex)
            throw Error("NonVertexContact", "pieces touch at a point that is not a common vertex");
        auto find_vertex = [&](int piece) {
            for (int v = 0; v < static_cast<int>(verts.size()); ++v)
                if (almost_equal(system.map(piece).apply(verts[static_cast<size_t>(v)]),
                                 cp.location, cluster_eps(tol)))
                    return v;
            throw Error("NonVertexContact", "contact point is not a vertex image of piece " +
                                                std::to_string(piece + 1));
        };
        for (size_t a = 0; a < cp.pieces.size(); ++a)
            for (size_t b = a + 1; b < cp.pieces.size(); ++b) {
                CriticalContact cc;
                cc.i = cp.pieces[a];
                cc.j = cp.pieces[b];
                cc.point = cp.location;
                cc.vi = find_vertex(cc.i);
                cc.vj = find_vertex(cc.j);
                cc.addr_in_i = vaddr(cc.vi);
                cc.addr_in_j = vaddr(cc.vj);
                out.push_back(std::move(cc));
            }
    }
    return out;
}

bool PieceGraph::is_tree(double tol) const {
    BipartiteGraph b = bipartite_from(*this, tol);
    long nodes = piece_count + static_cast<long>(b.cluster_points.size());
    if (b.edge_count() != nodes - 1) return false;
    auto parent = bipartite_bfs(b, 0);
    for (int p = 0; p < piece_count; ++p)
        if (parent[static_cast<size_t>(p)] == -2) return false;
    return true;
}

std::string PieceGraph::cycle_witness(double tol) const {
    BipartiteGraph b = bipartite_from(*this, tol);
    auto parent = bipartite_bfs(b, 0);
    for (int p = 0; p < piece_count; ++p)
        if (parent[static_cast<size_t>(p)] == -2)
            return "disconnected: piece " + word_label(*this, p) + " unreachable from piece " +
                   word_label(*this, 0);
    // look for an incidence not used by the BFS forest: it closes a cycle
    int n = piece_count;
    for (int c = 0; c < static_cast<int>(b.cluster_pieces.size()); ++c) {
        for (int p : b.cluster_pieces[static_cast<size_t>(c)]) {
            if (parent[static_cast<size_t>(n + c)] == p ||
                parent[static_cast<size_t>(p)] == n + c)
                continue;
            // walk both ends up to the root, splice at the meeting set
            auto path_up = [&](int node) {
                std::vector<int> path;
                while (node != -1) {
                    path.push_back(node);
                    node = parent[static_cast<size_t>(node)];
                }
                return path;
            };
            auto pa = path_up(p);
            auto pb = path_up(n + c);
            std::set<int> in_pa(pa.begin(), pa.end());
            size_t cut = 0;
            while (cut < pb.size() && !in_pa.count(pb[cut])) ++cut;
            std::string s = "cycle:";
            for (int node : pa) {
                if (node < n) s += " " + word_label(*this, node);
                if (cut < pb.size() && node == pb[cut]) break;
            }
            for (size_t k = cut; k-- > 0;)
                if (pb[k] < n) s += " " + word_label(*this, pb[k]);
            return s;
        }
    }
    return "";
}

PieceGraph piece_graph_geometric(const PolygonalSystem& system, int level, double tol, long cap) {
    if (level < 1) throw Error("BadArgument", "level must be positive");
    ipow_checked(system.map_count(), level, cap);
    PieceGraph g;
    g.level = level;
    g.words = enumerate_words(system.map_count(), level, cap);
    g.piece_count = static_cast<int>(g.words.size());
    std::vector<Polygon> polys;
    std::vector<BoundingBox> boxes;
    polys.reserve(g.words.size());
    for (const auto& w : g.words) {
        polys.push_back(system.piece_of(w));
        boxes.push_back(polygon_bbox(polys.back()));
    }
    for (size_t a = 0; a < polys.size(); ++a)
        for (size_t b = a + 1; b < polys.size(); ++b) {
            if (boxes[a].gap(boxes[b]) > tol) continue;
            ContactResult cr = polygon_pair_contact(polys[a], polys[b], tol);
            if (cr.kind == ContactResult::Kind::Disjoint) continue;
            if (cr.kind == ContactResult::Kind::Violation)
                throw Error("ContactViolation", "pieces " + g.words[a].str() + " and " +
                                                    g.words[b].str() + " overlap: " +
                                                    cr.description);
            g.edges.push_back({g.words[a], g.words[b], cr.point});
        }
    return g;
}

PieceGraph piece_graph_symbolic(const PolygonalSystem& system, int level, double tol, long cap) {
    if (level < 1) throw Error("BadArgument", "level must be positive");
    ipow_checked(system.map_count(), level, cap);
    auto ccs = critical_contacts(system, tol);
    auto parents = vertex_parents(system, tol);
    std::vector<PieceContact> edges;
    for (const auto& cc : ccs) {
        MultiIndex u, v;
        u.word.push_back(cc.i);
        v.word.push_back(cc.j);
        edges.push_back({u, v, cc.point});
    }
    for (int n = 2; n <= level; ++n) {
        std::vector<PieceContact> next;
        for (int i = 0; i < system.map_count(); ++i) {
            MultiIndex head;
            head.word.push_back(i);
            for (const auto& e : edges)
                next.push_back(
                    {head.concat(e.u), head.concat(e.v), system.map(i).apply(e.point)});
        }
        for (const auto& cc : ccs) {
            MultiIndex hi, hj;
            hi.word.push_back(cc.i);
            hj.word.push_back(cc.j);
            for (const auto& wu : words_containing_vertex(parents, cc.vi, n - 1))
                for (const auto& wv : words_containing_vertex(parents, cc.vj, n - 1))
                    next.push_back({hi.concat(wu), hj.concat(wv), cc.point});
        }
        edges = std::move(next);
        if (static_cast<long>(edges.size()) > cap)
            throw Error("SizeLimit", "contact count exceeds cap");
    }
    PieceGraph g;
    g.level = level;
    g.words = enumerate_words(system.map_count(), level, cap);
    g.piece_count = static_cast<int>(g.words.size());
    g.edges = std::move(edges);
    return g;
}

VertexCertificates sector_vertex_certificates(const PolygonalSystem& system, double tol) {
    ContactGraph cg = contact_graph(system, tol);
    VertexCertificates certs;
    for (const auto& cp : cg.contacts) {
        VertexCertificate cert;
        cert.location = cp.location;
        if (!cp.shared_vertex) {
            cert.separated = false;
            cert.detail = "contact point is not a common vertex";
            certs.push_back(std::move(cert));
            continue;
        }
        std::vector<std::pair<double, double>> sectors;
        bool degenerate = false;
        for (int p : cp.pieces) {
            try {
                sectors.push_back(angular_range_from_vertex(system.piece(p), cp.location, tol));
            } catch (const Error& e) {
                cert.separated = false;
                cert.detail = std::string("sector computation failed: ") + e.what();
                degenerate = true;
                break;
            }
        }
        if (degenerate) {
            certs.push_back(std::move(cert));
            continue;
        }
        std::sort(sectors.begin(), sectors.end());
        double min_gap = 2 * kPi;
        for (size_t k = 0; k < sectors.size(); ++k) {
            double hi = sectors[k].second;
            double next_lo = (k + 1 < sectors.size()) ? sectors[k + 1].first
                                                      : sectors[0].first + 2 * kPi;
            min_gap = std::min(min_gap, next_lo - hi);
        }
        cert.margin = min_gap;
        cert.separated = min_gap > kTolMargin;
        if (!cert.separated) cert.detail = "piece sectors overlap or touch at the contact point";
        certs.push_back(std::move(cert));
    }
    return certs;
}

std::vector<IntersectionVerdict> check_intersection_condition(const PolygonalSystem& system,
                                                              int depth,
                                                              const VertexCertificates* certs,
                                                              double tol) {
    ContactGraph cg = contact_graph(system, tol);
    int m = system.map_count();
    bool pieces_inside = pieces_contain_attractor(system, tol);
    RegionBuilder rb(system, pieces_inside);
    VertexCertificates own;
    if (certs == nullptr && pieces_inside) {
        own = sector_vertex_certificates(system, tol);
        certs = &own;
    }
    auto cert_at = [&](const Point& p) -> const VertexCertificate* {
        if (!certs) return nullptr;
        for (const auto& c : *certs)
            if (dist(c.location, p) <= cluster_eps(tol)) return &c;
        return nullptr;
    };
    auto contact_of = [&](int i, int j) -> std::optional<Point> {
        for (const auto& cp : cg.contacts) {
            bool has_i = false, has_j = false;
            for (int p : cp.pieces) {
                has_i |= (p == i);
                has_j |= (p == j);
            }
            if (has_i && has_j) return cp.location;
        }
        return std::nullopt;
    };
    int max_len = std::max(1, depth);

    std::vector<IntersectionVerdict> out;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            IntersectionVerdict v;
            v.i = i;
            v.j = j;
            std::optional<Point> B = contact_of(i, j);

            double min_sep = -1;       // min certified separation over leaves
            double worst_gap = -1;     // largest unresolved proximity
            std::string undecided_why;
            bool has_undecided = false;
            bool converging_seen = false;

            struct Item {
                MultiIndex u, v;
                Region ru, rv;
            };
            std::deque<Item> queue;
            {
                MultiIndex wu, wv;
                wu.word.push_back(i);
                wv.word.push_back(j);
                queue.push_back({wu, wv, rb.make(wu), rb.make(wv)});
            }
            long budget = 200000;
            while (!queue.empty()) {
                if (--budget < 0) {
                    has_undecided = true;
                    undecided_why = "subdivision budget exhausted";
                    break;
                }
                Item it = queue.front();
                queue.pop_front();
                if (B && it.ru.contains(*B, tol) && it.rv.contains(*B, tol)) {
                    converging_seen = true;
                    continue;  // certified at the shared vertex, or undecided below
                }
                double d = it.ru.distance_to(it.rv);
                if (d > kTolMargin) {
                    min_sep = (min_sep < 0) ? d : std::min(min_sep, d);
                    continue;
                }
                bool u_max = it.u.length() >= max_len;
                bool v_max = it.v.length() >= max_len;
                if (u_max && v_max) {
                    has_undecided = true;
                    worst_gap = std::max(worst_gap, kTolMargin - d);
                    undecided_why = "regions " + it.u.str() + " and " + it.v.str() +
                                    " not separated at max depth";
                    continue;
                }
                bool expand_u = !u_max && (v_max || it.ru.diameter >= it.rv.diameter);
                for (int k = 0; k < m; ++k) {
                    Item child = it;
                    if (expand_u) {
                        child.u = it.u.concat(k);
                        child.ru = rb.make(child.u);
                    } else {
                        child.v = it.v.concat(k);
                        child.rv = rb.make(child.v);
                    }
                    queue.push_back(std::move(child));
                }
            }

            double cert_margin = -1;
            if (converging_seen) {
                const VertexCertificate* c = B ? cert_at(*B) : nullptr;
                if (c && c->separated) {
                    cert_margin = c->margin;
                } else {
                    has_undecided = true;
                    undecided_why = c ? ("shared vertex not certified: " + c->detail)
                                      : "no separation certificate at the shared vertex";
                }
            }

            if (has_undecided) {
                // a certified violation overrides: exact attractor points of the
                // two parts coinciding away from the allowed contact point
                auto ei = exact_points_in_part(system, i, 2000);
                auto ej = exact_points_in_part(system, j, 2000);
                bool violated = false;
                Point where;
                for (const auto& a : ei) {
                    for (const auto& b : ej)
                        if (dist(a, b) <= tol &&
                            (!B || dist(a, *B) > 100 * cluster_eps(tol))) {
                            violated = true;
                            where = a;
                            break;
                        }
                    if (violated) break;
                }
                if (violated) {
                    v.kind = IntersectionVerdict::Kind::CertifiedViolation;
                    v.detail = "attractor parts share the point (" + std::to_string(where.x) +
                               ", " + std::to_string(where.y) + ") outside the piece contact";
                } else {
                    v.kind = IntersectionVerdict::Kind::Undecided;
                    v.margin = std::max(worst_gap, 0.0);
                    v.detail = undecided_why;
                }
            } else {
                v.kind = IntersectionVerdict::Kind::CertifiedEqual;
                v.margin = (cert_margin >= 0 && min_sep >= 0) ? std::min(cert_margin, min_sep)
                           : (cert_margin >= 0)               ? cert_margin
                           : (min_sep >= 0)                   ? min_sep
                                                              : 0.0;
            }
            out.push_back(std::move(v));
        }
    return out;
}

std::string to_string(IntersectionVerdict::Kind k) {
    switch (k) {
        case IntersectionVerdict::Kind::CertifiedEqual: return "CertifiedEqual";
        case IntersectionVerdict::Kind::CertifiedViolation: return "CertifiedViolation";
        default: return "Undecided";
    }
}

std::string to_string(DendriteResult::Kind k) {
    switch (k) {
        case DendriteResult::Kind::CertifiedDendrite: return "CertifiedDendrite";
        case DendriteResult::Kind::RefutedTree: return "RefutedTree";
        default: return "Inconclusive";
    }
}

DendriteResult dendrite_check(const PolygonalSystem& system, int depth,
                              const VertexCertificates* certs, double tol) {
    DendriteResult res;
    try {
        contact_graph(system, tol);
    } catch (const Error& e) {
        res.kind = DendriteResult::Kind::Inconclusive;
        res.level = 1;
        res.reason = e.what();
        return res;
    }
    for (int lvl = 1; lvl <= depth; ++lvl) {
        PieceGraph g;
        try {
            g = level_graph(system, lvl, tol, 1000000);
        } catch (const Error& e) {
            res.kind = DendriteResult::Kind::Inconclusive;
            res.level = lvl;
            res.reason = e.what();
            return res;
        }
        if (!g.is_tree(tol)) {
            res.kind = DendriteResult::Kind::RefutedTree;
            res.level = lvl;
            res.reason = g.cycle_witness(tol);
            return res;
        }
    }
    res.verdicts = check_intersection_condition(system, depth, certs, tol);
    for (const auto& v : res.verdicts) {
        if (v.kind == IntersectionVerdict::Kind::CertifiedViolation) {
            res.kind = DendriteResult::Kind::RefutedTree;
            res.level = 1;
            res.reason = "intersection condition violated for pieces " + std::to_string(v.i + 1) +
                         " and " + std::to_string(v.j + 1) + ": " + v.detail;
            return res;
        }
        if (v.kind == IntersectionVerdict::Kind::Undecided) {
            res.kind = DendriteResult::Kind::Inconclusive;
            res.level = depth;
            res.reason = "pieces " + std::to_string(v.i + 1) + " and " + std::to_string(v.j + 1) +
                         ": " + v.detail;
            return res;
        }
    }
    res.kind = DendriteResult::Kind::CertifiedDendrite;
    res.level = depth;
    return res;
}

std::vector<int> chain_between(const PolygonalSystem& system, int i, int j, double tol) {
    int m = system.map_count();
    if (i < 0 || i >= m || j < 0 || j >= m) throw Error("BadArgument", "piece index out of range");
    if (i == j) return {i};
    PieceGraph g = level_graph(system, 1, tol, 1000000);
    if (!g.is_tree(tol)) throw Error("NotATree", g.cycle_witness(tol));
    BipartiteGraph b = bipartite_from(g, tol);
    auto parent = bipartite_bfs(b, i);
    if (parent[static_cast<size_t>(j)] == -2) throw Error("NotConnected", "pieces not connected");
    std::vector<int> path;
    int node = j;
    while (node != -1) {
        if (node < m) path.push_back(node);
        node = parent[static_cast<size_t>(node)];
    }
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<Point> approximate_arc(const PolygonalSystem& system, const Address& a,
                                   const Address& b, int depth, double tol) {
    MultiIndex wa = a.prefix(depth);
    MultiIndex wb = b.prefix(depth);
    Point pa = eval_address(system, a).point;
    Point pb = eval_address(system, b).point;
    if (wa == wb) return {pa, pb};
    PieceGraph g = level_graph(system, depth, tol, 1000000);
    if (!g.is_tree(tol)) throw Error("NotCertified", g.cycle_witness(tol));
    BipartiteGraph bg = bipartite_from(g, tol);
    int na = bg.word_index.at(wa.word);
    int nb = bg.word_index.at(wb.word);
    auto parent = bipartite_bfs(bg, na);
    if (parent[static_cast<size_t>(nb)] == -2)
        throw Error("NotConnected", "addressed pieces not connected at this depth");
    std::vector<Point> pts = {pb};
    int node = nb;
    while (node != -1) {
        if (node >= bg.piece_count)
            pts.push_back(bg.cluster_points[static_cast<size_t>(node - bg.piece_count)]);
        node = parent[static_cast<size_t>(node)];
    }
    pts.push_back(pa);
    std::reverse(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [&](const Point& p, const Point& q) {
                              return dist(p, q) <= cluster_eps(tol);
                          }),
              pts.end());
    if (pts.size() < 2) pts = {pa, pb};
    return pts;
}

int ramification_order(const PolygonalSystem& system, const Point& v, int depth, double tol) {
    PieceGraph g = level_graph(system, depth, tol, 1000000);
    RegionBuilder rb(system, pieces_contain_attractor(system, tol));
    std::vector<int> incident;
    bool is_vertex = false;
    for (int k = 0; k < g.piece_count; ++k) {
        Polygon poly = system.piece_of(g.words[static_cast<size_t>(k)]);
        bool near = false;
        for (const auto& pv : poly.vertices)
            if (almost_equal(pv, v, cluster_eps(tol))) {
                is_vertex = true;
                near = true;
            }
        if (near || rb.make(g.words[static_cast<size_t>(k)]).contains(v, tol))
            incident.push_back(k);
    }
    if (!is_vertex) throw Error("NotAVertex", "point is not a vertex of any depth-level piece");
    // drop contact clusters located at v, count components among incident pieces
    BipartiteGraph b = bipartite_from(g, tol);
    std::vector<bool> blocked(b.cluster_points.size(), false);
    for (size_t c = 0; c < b.cluster_points.size(); ++c)
        if (dist(b.cluster_points[c], v) <= cluster_eps(tol)) blocked[c] = true;
    std::vector<std::vector<int>> piece_clusters(static_cast<size_t>(b.piece_count));
    for (int c = 0; c < static_cast<int>(b.cluster_pieces.size()); ++c)
        if (!blocked[static_cast<size_t>(c)])
            for (int p : b.cluster_pieces[static_cast<size_t>(c)])
                piece_clusters[static_cast<size_t>(p)].push_back(c);
    std::vector<int> comp(static_cast<size_t>(b.piece_count), -1);
    int ncomp = 0;
    for (int start = 0; start < b.piece_count; ++start) {
        if (comp[static_cast<size_t>(start)] >= 0) continue;
        std::deque<int> queue = {start};
        comp[static_cast<size_t>(start)] = ncomp;
        while (!queue.empty()) {
            int p = queue.front();
            queue.pop_front();
            for (int c : piece_clusters[static_cast<size_t>(p)])
                for (int q : b.cluster_pieces[static_cast<size_t>(c)])
                    if (comp[static_cast<size_t>(q)] < 0) {
                        comp[static_cast<size_t>(q)] = ncomp;
                        queue.push_back(q);
                    }
        }
        ++ncomp;
    }
    std::set<int> comps;
    for (int p : incident) comps.insert(comp[static_cast<size_t>(p)]);
    return static_cast<int>(comps.size());
}

PostCriticalSet postcritical_set(const PolygonalSystem& system, int depth_cap, double tol) {
    PostCriticalSet ps;
    ps.critical = critical_contacts(system, tol);
    std::set<Address> closure;
    std::deque<Address> queue;
    auto push = [&](Address a) {
        a = a.canonical();
        if (closure.insert(a).second) queue.push_back(a);
    };
    for (const auto& cc : ps.critical) {
        Address ai = cc.addr_in_i;
        ai.preperiod.word.insert(ai.preperiod.word.begin(), cc.i);
        Address aj = cc.addr_in_j;
        aj.preperiod.word.insert(aj.preperiod.word.begin(), cc.j);
        push(ai);
        push(aj);
    }
    long cap = 256L * std::max(1, depth_cap);
    ps.finite = true;
    while (!queue.empty()) {
        if (static_cast<long>(closure.size()) > cap) {
            ps.finite = false;
            break;
        }
        Address a = queue.front();
        queue.pop_front();
        if (a.preperiod.empty() && a.period.empty()) continue;
        push(a.shifted());
    }
    ps.addresses.assign(closure.begin(), closure.end());
    for (const auto& a : ps.addresses) {
        Point p = eval_address(system, a).point;
        bool dup = false;
        for (const auto& q : ps.vertex_set)
            if (almost_equal(p, q, cluster_eps(tol))) dup = true;
        if (!dup) ps.vertex_set.push_back(p);
    }
    return ps;
}

}  // namespace polyifs
