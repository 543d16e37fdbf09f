#include "polyifs/cyclic.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>

#include "polyifs/attractor.hpp"

namespace polyifs {

namespace {

double cluster_eps(double tol) { return std::max(10.0 * tol, 1e-12); }

// conservative reach test: can a composition starting with w still hit p?
struct ReachFilter {
    const PolygonalSystem* sys;
    bool use_polygons;
    Point inv_center;
    double inv_radius;

    explicit ReachFilter(const PolygonalSystem& s, double tol)
        : sys(&s),
          use_polygons(validate(s, tol).d1.pass),
          inv_center(s.invariant_center()),
          inv_radius(s.invariant_radius()) {}

    double distance(const Similarity& sw, const Point& p) const {
        if (use_polygons) return point_polygon_distance(p, map_polygon(sw, sys->base()));
        return std::max(0.0, dist(p, sw.apply(inv_center)) - sw.ratio() * inv_radius);
    }
};

}  // namespace

std::vector<CyclicVertex> find_cyclic_vertices(const PolygonalSystem& system, int max_order,
                                               double tol) {
    if (max_order < 1) throw Error("BadArgument", "max_order must be positive");
    ReachFilter filter(system, tol);
    std::vector<CyclicVertex> out;
    const auto& verts = system.base().vertices;
    for (int v = 0; v < static_cast<int>(verts.size()); ++v) {
        const Point& a = verts[static_cast<size_t>(v)];
        std::optional<MultiIndex> witness;
        // breadth-first by word length gives the minimal, lexicographically
        // least witness
        std::deque<std::pair<MultiIndex, Similarity>> queue;
        for (int k = 0; k < system.map_count(); ++k) {
            MultiIndex w;
            w.word.push_back(k);
            queue.push_back({w, system.map(k)});
        }
        while (!queue.empty() && !witness) {
            auto [w, sw] = queue.front();
            queue.pop_front();
            if (filter.distance(sw, a) > cluster_eps(tol)) continue;
            if (almost_equal(sw.apply(a), a, cluster_eps(tol))) {
                witness = w;
                break;
            }
            if (w.length() < max_order)
                for (int k = 0; k < system.map_count(); ++k)
                    queue.push_back({w.concat(k), sw.compose(system.map(k))});
        }
        if (!witness) continue;
        CyclicVertex cv;
        cv.vertex_index = v;
        cv.vertex = a;
        cv.witness = *witness;
        cv.order = witness->length();
        Similarity sw = system.compose(*witness);
        cv.ratio = sw.ratio();
        cv.rotation = sw.rotation();
        cv.lambda = vertex_parameter(cv, 0);
        out.push_back(std::move(cv));
    }
    return out;
}

double vertex_parameter(const CyclicVertex& cv, int winding) {
    constexpr double kPi = 3.14159265358979323846;
    return (cv.rotation + 2 * kPi * winding) / std::log(cv.ratio);
}

int refinement_exponent(const std::vector<int>& orders) {
    long n = 1;
    for (int o : orders) {
        if (o < 1) throw Error("BadArgument", "orders must be positive");
        n = std::lcm(n, static_cast<long>(o));
        if (n > 1000000) throw Error("CapExceeded", "refinement exponent too large");
    }
    return static_cast<int>(n);
}

int order_one_refinement(const PolygonalSystem& system, int max_order, long cap, double tol) {
    auto cyc = find_cyclic_vertices(system, max_order, tol);
    std::vector<int> orders;
    for (const auto& cv : cyc) orders.push_back(cv.order);
    int n = refinement_exponent(orders);
    PolygonalSystem refined = refine(system, n, cap);
    auto rcyc = find_cyclic_vertices(refined, 1, tol);
    for (const auto& cv : cyc) {
        bool found = false;
        for (const auto& rcv : rcyc)
            if (rcv.vertex_index == cv.vertex_index && rcv.order == 1) found = true;
        if (!found)
            throw Error("CapExceeded", "vertex " + std::to_string(cv.vertex_index + 1) +
                                           " not order 1 after refinement");
    }
    return n;
}

SubordinateMap subordinate_map(const PolygonalSystem& system, int depth, double tol) {
    SubordinateMap sm;
    sm.cyclic = find_cyclic_vertices(system, 8, tol);
    // distinct vertices of all pieces
    std::vector<Point> targets;
    for (int k = 0; k < system.map_count(); ++k)
        for (const auto& v : system.piece(k).vertices) {
            bool dup = false;
            for (const auto& t : targets)
                if (almost_equal(t, v, cluster_eps(tol))) dup = true;
            if (!dup) targets.push_back(v);
        }
    ReachFilter filter(system, tol);
    for (const auto& b : targets) {
        SubordinateEntry entry;
        entry.vertex = b;
        std::deque<std::pair<MultiIndex, Similarity>> queue;
        for (int k = 0; k < system.map_count(); ++k) {
            MultiIndex w;
            w.word.push_back(k);
            queue.push_back({w, system.map(k)});
        }
        while (!queue.empty()) {
            auto [w, sw] = queue.front();
            queue.pop_front();
            if (w.length() > depth) continue;
            if (filter.distance(sw, b) > cluster_eps(tol)) continue;
            for (int c = 0; c < static_cast<int>(sm.cyclic.size()); ++c)
                if (almost_equal(sw.apply(sm.cyclic[static_cast<size_t>(c)].vertex), b,
                                 cluster_eps(tol)))
                    entry.pairs.push_back({w, c});
            if (w.length() < depth)
                for (int k = 0; k < system.map_count(); ++k)
                    queue.push_back({w.concat(k), sw.compose(system.map(k))});
        }
        if (entry.pairs.empty())
            sm.unsubordinated.push_back(b);
        else
            sm.entries.push_back(std::move(entry));
    }
    return sm;
}

MatchingReport check_parameter_matching(const PolygonalSystem& system, double tol_lambda,
                                        int max_order, int depth, double tol) {
    (void)max_order;
    MatchingReport rep;
    SubordinateMap sm = subordinate_map(system, depth, tol);
    rep.cyclic = sm.cyclic;
    rep.unsubordinated = sm.unsubordinated;
    bool lambda_set = false;
    for (const auto& entry : sm.entries) {
        if (entry.pairs.size() < 2) continue;
        MatchingReport::VertexGroup g;
        g.location = entry.vertex;
        double lo = 0, hi = 0;
        bool first = true;
        for (const auto& p : entry.pairs) {
            double lam = sm.cyclic[static_cast<size_t>(p.cyclic_index)].lambda;
            g.assignments.push_back({p.route, p.cyclic_index, lam});
            if (first) {
                lo = hi = lam;
                first = false;
            } else {
                lo = std::min(lo, lam);
                hi = std::max(hi, lam);
            }
        }
        g.spread = hi - lo;
        // guard against declaring a mismatch inside floating error of λ
        double float_guard = 1e-10 * (1 + std::abs(hi));
        g.matched = g.spread <= std::max(tol_lambda, float_guard);
        if (!lambda_set && g.matched) {
            rep.lambda = lo;
            lambda_set = true;
        }
        rep.spread = std::max(rep.spread, g.spread);
        rep.matched = rep.matched && g.matched;
        rep.groups.push_back(std::move(g));
    }
    return rep;
}

InvariantArc invariant_arc(const PolygonalSystem& system, const CyclicVertex& cv, int depth,
                           double tol) {
    if (cv.order != 1)
        throw Error("BadArgument", "cyclic vertex must have order 1; refine the system first");
    const auto& verts = system.base().vertices;
    int n = static_cast<int>(verts.size());
    const Similarity& sj = system.map(cv.witness.word.front());
    Address a_addr;
    a_addr.period = cv.witness;
    auto k_addr = [&](int k) { return vertex_address(system, k, tol); };
    // exit-vertex map: the first witness-image vertex met by the arc to A_k
    auto phi = [&](int k) {
        auto pts = approximate_arc(system, a_addr, k_addr(k), depth, tol);
        for (size_t idx = 1; idx < pts.size(); ++idx) {
            for (int v = 0; v < n; ++v) {
                Point image = sj.apply(verts[static_cast<size_t>(v)]);
                if (almost_equal(image, cv.vertex, cluster_eps(tol))) continue;
                if (almost_equal(pts[idx], image, cluster_eps(tol))) return v;
            }
        }
        throw Error("PhiUndefined",
                    "arc to vertex " + std::to_string(k + 1) +
                        " misses the witness vertex images at this depth; raise depth");
    };
    int start = (cv.vertex_index == 0) ? 1 : 0;
    if (n < 2) throw Error("BadArgument", "base polygon too small");
    std::vector<int> seq = {start};
    std::set<int> seen = {start};
    int cap = n * n;
    int cur = start;
    while (true) {
        if (static_cast<int>(seq.size()) > cap)
            throw Error("CapExceeded", "vertex map iteration did not close");
        cur = phi(cur);
        if (seen.count(cur)) break;
        seen.insert(cur);
        seq.push_back(cur);
    }
    // the revisited vertex starts the cycle
    size_t cycle_start = 0;
    while (seq[cycle_start] != cur) ++cycle_start;
    std::vector<int> cycle(seq.begin() + static_cast<long>(cycle_start), seq.end());
    int b = *std::min_element(cycle.begin(), cycle.end());
    InvariantArc arc;
    arc.endpoint = verts[static_cast<size_t>(b)];
    for (size_t r = 0; r < cycle.size(); ++r)
        arc.word = arc.word.concat(cv.witness);
    arc.polyline = approximate_arc(system, a_addr, k_addr(b), depth, tol);
    return arc;
}

}  // namespace polyifs
