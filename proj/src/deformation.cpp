#include "polyifs/deformation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>
#include <random>

namespace polyifs {

namespace {

constexpr double kPi = 3.14159265358979323846;

double cluster_eps(double tol) { return std::max(10.0 * tol, 1e-12); }

double wrap_angle(double a) {
    while (a > kPi) a -= 2 * kPi;
    while (a <= -kPi) a += 2 * kPi;
    return a;
}

PolygonalSystem scale_system(const PolygonalSystem& sys, double s) {
    Polygon p = sys.base();
    for (auto& v : p.vertices) {
        v.x *= s;
        v.y *= s;
    }
    std::vector<Similarity> maps;
    for (const auto& m : sys.maps()) maps.emplace_back(m.a(), m.b() * s);
    return PolygonalSystem(std::move(p), std::move(maps));
}

// minimal subordinate routes per distinct piece vertex (no route is a proper
// prefix of another kept route at the same vertex)
struct RouteSet {
    Point vertex;
    std::vector<SubordinatePair> routes;
};

std::vector<RouteSet> minimal_routes(const PolygonalSystem& sys, const SubordinateMap& sm) {
    (void)sys;
    std::vector<RouteSet> out;
    for (const auto& entry : sm.entries) {
        RouteSet rs;
        rs.vertex = entry.vertex;
        for (const auto& p : entry.pairs) {
            bool shadowed = false;
            for (const auto& q : entry.pairs)
                if (q.route.length() < p.route.length() && q.route.is_prefix_of(p.route))
                    shadowed = true;
            if (!shadowed) rs.routes.push_back(p);
        }
        out.push_back(std::move(rs));
    }
    return out;
}

// certified lower bound for dist(B, K minus the covered pieces)
double uncovered_distance(const PolygonalSystem& sys, const Point& b,
                          const std::vector<MultiIndex>& covered) {
    int depth_cap = 4;
    double q = sys.q_max();
    while (std::pow(q, depth_cap) * sys.base_diameter() > 1e-7 && depth_cap < 16) ++depth_cap;
    struct Item {
        double d;
        MultiIndex w;
        bool operator<(const Item& o) const { return d > o.d; }  // min-heap
    };
    std::priority_queue<Item> heap;
    auto piece_dist = [&](const MultiIndex& w) {
        return point_polygon_distance(b, sys.piece_of(w));
    };
    auto is_covered = [&](const MultiIndex& w) {
        for (const auto& c : covered)
            if (c.is_prefix_of(w)) return true;
        return false;
    };
    for (int k = 0; k < sys.map_count(); ++k) {
        MultiIndex w;
        w.word.push_back(k);
        if (!is_covered(w)) heap.push({piece_dist(w), w});
    }
    long budget = 200000;
    while (!heap.empty()) {
        if (--budget < 0) throw Error("SizeLimit", "route-cover search budget exhausted");
        Item it = heap.top();
        heap.pop();
        if (it.w.length() >= depth_cap) return it.d;
        for (int k = 0; k < sys.map_count(); ++k) {
            MultiIndex w = it.w.concat(k);
            if (!is_covered(w)) heap.push({piece_dist(w), w});
        }
    }
    throw Error("DegenerateConstants", "every piece is covered at a vertex; rho1 undefined");
}

}  // namespace

double DeformationSpec::delta() const {
    double d = 0;
    for (const auto& disp : displacements) d = std::max(d, dist(disp.from, disp.to));
    return d;
}

Point DeformationSpec::apply(const Point& p, double tol) const {
    for (const auto& disp : displacements)
        if (almost_equal(disp.from, p, cluster_eps(tol))) return disp.to;
    return p;
}

void DeformationSpec::add(const Point& from, const Point& to, double tol) {
    for (const auto& disp : displacements) {
        if (almost_equal(disp.from, from, cluster_eps(tol))) {
            if (almost_equal(disp.to, to, cluster_eps(tol))) return;  // duplicate entry
            throw Error("NotBijective", "source listed twice with different targets");
        }
        if (almost_equal(disp.to, to, cluster_eps(tol)))
            throw Error("NotBijective", "two sources share a target");
    }
    displacements.push_back({from, to});
}

DeformationSpec deformation_from_map(const PolygonalSystem& base,
                                     const std::function<Point(const Point&)>& f, double tol) {
    DeformationSpec spec;
    for (const auto& v : base.base().vertices) spec.add(v, f(v), tol);
    for (int k = 0; k < base.map_count(); ++k)
        for (const auto& v : base.piece(k).vertices) spec.add(v, f(v), tol);
    return spec;
}

PolygonalSystem build_deformed_system(const PolygonalSystem& base, const DeformationSpec& spec,
                                      double tol) {
    std::vector<Similarity> maps;
    for (int k = 0; k < base.map_count(); ++k) {
        const Polygon& piece = base.piece(k);
        // the most separated displaced vertex pair determines S'_k
        int best_a = 0, best_b = 1;
        double best = -1;
        for (int a = 0; a < piece.size(); ++a)
            for (int b = a + 1; b < piece.size(); ++b) {
                double d = dist(piece.vertex(a), piece.vertex(b));
                if (d > best) {
                    best = d;
                    best_a = a;
                    best_b = b;
                }
            }
        // Def. of the deformation: S'_k(f(A)) = f(S_k(A)) on base vertices A
        Similarity sk = similarity_from_two_points(
            spec.apply(base.base().vertex(best_a), tol),
            spec.apply(base.base().vertex(best_b), tol),
            spec.apply(piece.vertex(best_a), tol), spec.apply(piece.vertex(best_b), tol), tol);
        for (int v = 0; v < piece.size(); ++v) {
            Point want = spec.apply(piece.vertex(v), tol);
            Point got = sk.apply(spec.apply(base.base().vertex(v), tol));
            if (!almost_equal(want, got, std::max(100 * tol, 1e-7 * base.base_diameter())))
                throw Error("InconsistentSpec",
                            "piece " + std::to_string(k + 1) + " vertex " + std::to_string(v + 1) +
                                " is not a similar image of the displaced base polygon");
        }
        maps.push_back(sk);
    }
    Polygon deformed_base;
    for (const auto& v : base.base().vertices)
        deformed_base.vertices.push_back(spec.apply(v, tol));
    return PolygonalSystem(std::move(deformed_base), std::move(maps));
}

DeformationValidation validate_deformation(const PolygonalSystem& base,
                                           const DeformationSpec& spec,
                                           const PolygonalSystem& deformed, double budget,
                                           double tol) {
    DeformationValidation rep;
    rep.delta = spec.delta();

    // (a) cyclic vertex order preserved and the deformed polygon simple
    rep.order_preserved = polygon_is_simple(deformed.base(), tol) &&
                          signed_area(deformed.base()) > 0 &&
                          deformed.base().size() == base.base().size();
    if (rep.order_preserved) {
        for (int v = 0; v < base.base().size(); ++v)
            if (!almost_equal(spec.apply(base.base().vertex(v), tol), deformed.base().vertex(v),
                              cluster_eps(tol)))
                rep.order_preserved = false;
    }
    if (!rep.order_preserved && rep.witness.empty())
        rep.witness = "deformed polygon is not a consistently ordered simple polygon";

    // (b) recomputed delta against the declared budget
    rep.within_budget = budget < 0 || rep.delta <= budget + tol;
    if (!rep.within_budget && rep.witness.empty())
        rep.witness = "delta " + std::to_string(rep.delta) + " exceeds budget " +
                      std::to_string(budget);

    // (c) equivariance on all piece vertices
    rep.equivariant = true;
    for (int k = 0; k < base.map_count() && rep.equivariant; ++k)
        for (int v = 0; v < base.base().size(); ++v) {
            Point lhs = spec.apply(base.piece(k).vertex(v), tol);
            Point rhs = deformed.map(k).apply(spec.apply(base.base().vertex(v), tol));
            if (!almost_equal(lhs, rhs, std::max(100 * tol, 1e-7 * base.base_diameter()))) {
                rep.equivariant = false;
                if (rep.witness.empty())
                    rep.witness = "f(S_" + std::to_string(k + 1) + "(v)) != S'_" +
                                  std::to_string(k + 1) + "(f(v)) at vertex " +
                                  std::to_string(v + 1);
                break;
            }
        }

    // shared-vertex identities up to depth 3
    rep.identities_preserved = true;
    auto words1 = enumerate_words(base.map_count(), 1);
    std::vector<MultiIndex> words;
    for (int d = 1; d <= 3; ++d) {
        auto wd = enumerate_words(base.map_count(), d);
        words.insert(words.end(), wd.begin(), wd.end());
    }
    std::vector<std::pair<MultiIndex, int>> images;
    for (const auto& w : words)
        for (int v = 0; v < base.base().size(); ++v) images.push_back({w, v});
    double eps = cluster_eps(tol);
    for (size_t a = 0; a < images.size() && rep.identities_preserved; ++a)
        for (size_t b = a + 1; b < images.size(); ++b) {
            Point pa = base.compose(images[a].first).apply(base.base().vertex(images[a].second));
            Point pb = base.compose(images[b].first).apply(base.base().vertex(images[b].second));
            if (!almost_equal(pa, pb, eps)) continue;
            Point da =
                deformed.compose(images[a].first).apply(deformed.base().vertex(images[a].second));
            Point db =
                deformed.compose(images[b].first).apply(deformed.base().vertex(images[b].second));
            if (!almost_equal(da, db, std::max(100 * tol, 1e-7 * base.base_diameter()))) {
                rep.identities_preserved = false;
                if (rep.witness.empty())
                    rep.witness = "identity at " + images[a].first.str() + "/" +
                                  images[b].first.str() + " broken by the deformation";
                break;
            }
        }
    return rep;
}

GeometricConstants geometric_constants(const PolygonalSystem& base, double tol) {
    ValidationReport vr = validate(base, tol);
    if (vr.classification != Classification::Contractible)
        throw Error("NotContractible", "geometric constants require a contractible system");
    GeometricConstants gc;
    PolygonalSystem ns = base.normalized(&gc.scale);
    gc.q_min = ns.q_min();
    gc.q_max = ns.q_max();

    // alpha0: minimal angle between piece sides at shared vertices
    ContactGraph cg = contact_graph(ns, tol);
    gc.alpha0 = kPi;
    for (const auto& cp : cg.contacts) {
        std::vector<Polygon> owners;
        for (int p : cp.pieces) owners.push_back(ns.piece(p));
        gc.alpha0 = std::min(gc.alpha0, min_angle_between_incident_sides(owners, cp.location, tol));
    }

    // rho0: vertex clearance (i) and disjoint-pair distance (ii)
    gc.rho0 = ns.base_diameter();
    for (const auto& a : ns.base().vertices)
        for (int k = 0; k < ns.map_count(); ++k) {
            double d = point_polygon_distance(a, ns.piece(k));
            if (d > cluster_eps(tol)) gc.rho0 = std::min(gc.rho0, d);
        }
    for (int i = 0; i < ns.map_count(); ++i)
        for (int j = i + 1; j < ns.map_count(); ++j) {
            double d = polygon_polygon_distance(ns.piece(i), ns.piece(j));
            if (d > cluster_eps(tol)) gc.rho0 = std::min(gc.rho0, d);
        }

    // routes at every piece vertex
    SubordinateMap sm = subordinate_map(ns, 6, tol);
    if (!sm.unsubordinated.empty())
        throw Error("Unsubordinated", "a piece vertex has no route to a cyclic vertex");
    auto rsets = minimal_routes(ns, sm);
    gc.rho1 = ns.base_diameter();
    gc.rho2 = 0;
    for (const auto& rs : rsets) {
        std::vector<MultiIndex> covered;
        for (const auto& r : rs.routes) {
            const auto& cv = sm.cyclic[static_cast<size_t>(r.cyclic_index)];
            covered.push_back(r.route.concat(cv.witness));
            Polygon route_piece = ns.piece_of(r.route);
            for (const auto& v : route_piece.vertices)
                gc.rho2 = std::max(gc.rho2, dist(v, rs.vertex));
        }
        gc.rho1 = std::min(gc.rho1, uncovered_distance(ns, rs.vertex, covered));
    }
    if (!(gc.rho1 > 0) || !(gc.rho1 < gc.rho2))
        throw Error("DegenerateConstants", "rho1/rho2 extraction failed (rho1 must be < rho2)");
    return gc;
}

DerivedConstants derived_constants(const PolygonalSystem& base, double delta, double tol) {
    (void)tol;
    DerivedConstants dc;
    double qmin = base.q_min(), qmax = base.q_max();
    if (delta < 0 || delta >= qmin / 8)
        throw Error("AssumptionViolated", "delta must satisfy delta < q_min/8");
    if (delta >= (1 - qmax) / 8)
        throw Error("AssumptionViolated", "delta must satisfy delta < (1-q_max)/8");
    dc.c_alpha = 2.1 * (1 + 1 / qmin);
    dc.c_delta = 14 + 2 * dc.c_alpha;
    dc.c_k = 2 * dc.c_delta / (1 - qmax);
    dc.c_lambda = 2.1 * (1 + 1 / qmax) / (std::log(3 + qmax) - std::log(3 * qmax + 1));
    dc.delta1 = 8 * delta / (1 + 3 * qmax);
    dc.delta2 = (dc.c_k + 1) * delta;
    dc.beta = 1;
    for (const auto& m : base.maps()) {
        double q = m.ratio();
        double q_hi = (q + 2 * delta) / (1 - 2 * delta);
        dc.beta = std::min(dc.beta, std::log(q_hi) / std::log(q));
    }
    return dc;
}

DeltaMaxReport delta_max(const PolygonalSystem& base, double tol) {
    DeltaMaxReport rep;
    auto cyc = find_cyclic_vertices(base, 8, tol);
    std::vector<int> orders;
    for (const auto& cv : cyc) orders.push_back(cv.order);
    rep.refinement = refinement_exponent(orders);
    const PolygonalSystem* sys = &base;
    std::optional<PolygonalSystem> refined;
    if (rep.refinement > 1) {
        refined.emplace(refine(base, rep.refinement));
        sys = &*refined;
        rep.m_factor = 12 + 4.2 * (1 + 1 / base.q_min());
    }
    GeometricConstants gc = geometric_constants(*sys, tol);
    double c_alpha = 2.1 * (1 + 1 / gc.q_min);
    double c_delta = 14 + 2 * c_alpha;
    double c_k = 2 * c_delta / (1 - gc.q_max);
    double c_lambda =
        2.1 * (1 + 1 / gc.q_max) / (std::log(3 + gc.q_max) - std::log(3 * gc.q_max + 1));
    rep.bounds[0] = gc.q_min / 8;
    rep.bounds[1] = (1 - gc.q_max) / 8;
    rep.bounds[2] = gc.rho0 / (2 * (c_k + 1));
    rep.bounds[3] = gc.rho1 / (4 * (c_k + 1));
    rep.bounds[4] = (1 - gc.rho2) / (4 * (c_k + 1));
    rep.bounds[5] = gc.alpha0 / (2.1 * (c_k + 1) / gc.rho1 +
                                 c_lambda * std::log((1 + 3 * gc.rho2) / (3 * gc.rho1)));
    rep.binding_index = 1;
    rep.unadjusted = rep.bounds[0];
    for (int k = 1; k < 6; ++k)
        if (rep.bounds[k] < rep.unadjusted) {
            rep.unadjusted = rep.bounds[k];
            rep.binding_index = k + 1;
        }
    rep.delta_max = rep.unadjusted / rep.m_factor;
    return rep;
}

std::vector<MapBounds> perturbation_bounds_check(const PolygonalSystem& base,
                                                 const PolygonalSystem& deformed, double delta) {
    double dn = delta / base.base_diameter();
    double c_alpha = 2.1 * (1 + 1 / base.q_min());
    std::vector<MapBounds> out;
    for (int k = 0; k < base.map_count(); ++k) {
        MapBounds mb;
        mb.k = k;
        double q = base.map(k).ratio();
        double qp = deformed.map(k).ratio();
        mb.dq = std::abs(qp - q);
        mb.dalpha = std::abs(wrap_angle(deformed.map(k).rotation() - base.map(k).rotation()));
        mb.margin_ratio_low = qp - (q - 2 * dn) / (1 + 2 * dn);
        mb.margin_ratio_high = (q + 2 * dn) / (1 - 2 * dn) - qp;
        mb.margin_dq = 6 * dn - mb.dq;
        double asin_bound = std::asin(std::min(1.0, 2 * dn)) +
                            std::asin(std::min(1.0, 2 * dn / q));
        mb.margin_dalpha = std::min(asin_bound, c_alpha * dn) - mb.dalpha;
        out.push_back(mb);
    }
    return out;
}

NeighborhoodVerdict invariant_neighborhood_check(const PolygonalSystem& base,
                                                 const PolygonalSystem& deformed, double delta,
                                                 double tol) {
    double dn = delta / base.base_diameter();
    double delta1 = (8 * dn / (1 + 3 * base.q_max())) * base.base_diameter();
    NeighborhoodVerdict verdict;
    verdict.pass = true;
    verdict.margin = base.base_diameter();
    for (int k = 0; k < deformed.map_count(); ++k) {
        double qp = deformed.map(k).ratio();
        double allowed = (1 - qp) * delta1;
        double excess = 0;
        Point worst;
        const Polygon& pk = deformed.piece(k);
        for (int e = 0; e < pk.size(); ++e) {
            const Point& a = pk.vertex(e);
            const Point& b = pk.vertex_mod(e + 1);
            double da = point_polygon_distance(a, base.base());
            if (da > excess) {
                excess = da;
                worst = a;
            }
            double m = max_distance_to_polygon(a, b, base.base(), excess);
            if (m > excess) {
                excess = m;
                // witness kept coarse: midpoint of the offending edge
                worst = {(a.x + b.x) / 2, (a.y + b.y) / 2};
            }
        }
        double margin = allowed - excess;
        if (margin < verdict.margin) {
            verdict.margin = margin;
            verdict.worst_k = k;
            verdict.witness = worst;
        }
        if (excess > allowed + cluster_eps(tol)) verdict.pass = false;
    }
    return verdict;
}

StripCheckResult log_strip_check(const PolygonalSystem& base, const Point& b, double lambda,
                                 const GeometricConstants& gc, const DerivedConstants& dc,
                                 double tol) {
    StripCheckResult res;
    if (gc.rho1 - dc.delta2 <= 0) {
        res.detail = "delta2 reaches rho1; strips undefined";
        return res;
    }
    PolygonalSystem ns = base.normalized(nullptr);
    Point bn{b.x * gc.scale, b.y * gc.scale};
    SubordinateMap sm = subordinate_map(ns, 6, tol);
    const SubordinateEntry* entry = nullptr;
    for (const auto& e : sm.entries)
        if (almost_equal(e.vertex, bn, cluster_eps(tol))) entry = &e;
    if (!entry) throw Error("Unsubordinated", "no routes at the requested vertex");
    SubordinateMap one;
    one.cyclic = sm.cyclic;
    one.entries = {*entry};
    auto rsets = minimal_routes(ns, one);
    const auto& routes = rsets.front().routes;

    double pad = 1.05 * dc.delta2 / gc.rho1;
    double l1 = std::log(gc.rho1 - dc.delta2);
    double l2 = std::log(gc.rho2 + dc.delta2);
    struct Slab {
        double lo, hi;
        std::string label;
    };
    std::vector<Slab> slabs;
    for (const auto& r : routes) {
        auto [tlo, thi] = angular_range_from_vertex(ns.piece_of(r.route), bn, tol);
        Slab s;
        s.lo = tlo - pad - std::max(lambda * l1, lambda * l2);
        s.hi = thi + pad - std::min(lambda * l1, lambda * l2);
        s.label = r.route.str();
        slabs.push_back(std::move(s));
    }
    std::sort(slabs.begin(), slabs.end(), [](const Slab& a, const Slab& b2) {
        return a.lo < b2.lo;
    });
    res.margin = 2 * kPi;
    std::string worst_pair;
    for (size_t k = 0; k < slabs.size(); ++k) {
        const Slab& cur = slabs[k];
        const Slab& next = slabs[(k + 1) % slabs.size()];
        double next_lo = (k + 1 < slabs.size()) ? next.lo : next.lo + 2 * kPi;
        double gap = next_lo - cur.hi;
        if (gap < res.margin) {
            res.margin = gap;
            worst_pair = cur.label + " / " + next.label;
        }
    }
    if (res.margin <= kTolMargin) {
        res.detail = "strips overlap: sectors " + worst_pair;
        return res;
    }
    if (2 * dc.delta2 >= gc.rho0) {
        res.detail = "2 delta2 exceeds rho0";
        return res;
    }
    res.separated = true;
    return res;
}

Point hatf_eval(const PolygonalSystem& base, const PolygonalSystem& deformed,
                const MultiIndex& route, int vertex_index, double tol) {
    if (vertex_index < 0 || vertex_index >= base.base().size())
        throw Error("BadArgument", "vertex index out of range");
    Point z = base.compose(route).apply(base.base().vertex(vertex_index));
    Point result = deformed.compose(route).apply(deformed.base().vertex(vertex_index));
    // alternative routes must agree (well-definedness of the conjugating map)
    int max_len = std::max(route.length(), 3);
    std::deque<MultiIndex> queue;
    for (int k = 0; k < base.map_count(); ++k) {
        MultiIndex w;
        w.word.push_back(k);
        queue.push_back(w);
    }
    double eps = cluster_eps(tol);
    while (!queue.empty()) {
        MultiIndex w = queue.front();
        queue.pop_front();
        if (point_polygon_distance(z, base.piece_of(w)) > eps) continue;
        for (int v = 0; v < base.base().size(); ++v) {
            if (!almost_equal(base.compose(w).apply(base.base().vertex(v)), z, eps)) continue;
            Point alt = deformed.compose(w).apply(deformed.base().vertex(v));
            if (dist(alt, result) > std::max(100 * tol, 1e-7 * base.base_diameter()))
                throw Error("RouteMismatch", "routes " + route.str() + " and " + w.str() +
                                                 " disagree on the conjugated image");
        }
        if (w.length() < max_len)
            for (int k = 0; k < base.map_count(); ++k) queue.push_back(w.concat(k));
    }
    return result;
}

HolderReport holder_check(const PolygonalSystem& base, const PolygonalSystem& deformed,
                          int sample_pairs, unsigned long long seed, double tol) {
    (void)tol;
    HolderReport rep;
    rep.samples = sample_pairs;
    GeometricConstants gc = geometric_constants(base);
    PolygonalSystem nb = scale_system(base, gc.scale);
    PolygonalSystem nd = scale_system(deformed, gc.scale);
    rep.beta = 1;
    for (int k = 0; k < nb.map_count(); ++k) {
        double q = nb.map(k).ratio(), qp = nd.map(k).ratio();
        rep.beta = std::min(rep.beta, std::log(qp) / std::log(q));
    }
    double k_prime = 2 * nd.invariant_radius();
    rep.constant =
        2 * k_prime / std::pow(gc.rho0 * std::sin(gc.alpha0 / 2), rep.beta);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> len_dist(1, 4);
    std::uniform_int_distribution<int> sym_dist(0, nb.map_count() - 1);
    std::uniform_int_distribution<int> vert_dist(0, nb.base().size() - 1);
    auto sample = [&]() {
        MultiIndex w;
        int len = len_dist(rng);
        for (int i = 0; i < len; ++i) w.word.push_back(sym_dist(rng));
        int v = vert_dist(rng);
        Point z = nb.compose(w).apply(nb.base().vertex(v));
        Point zp = nd.compose(w).apply(nd.base().vertex(v));
        return std::make_pair(z, zp);
    };
    rep.pass = true;
    for (int s = 0; s < sample_pairs; ++s) {
        auto [z1, z1p] = sample();
        auto [z2, z2p] = sample();
        double d = dist(z1, z2);
        if (d < 1e-12) continue;
        double lhs = dist(z1p, z2p);
        double rhs = rep.constant * std::pow(d, rep.beta);
        double ratio = lhs / rhs;
        rep.worst_ratio = std::max(rep.worst_ratio, ratio);
        if (ratio > 1 + 1e-9) rep.pass = false;
    }
    return rep;
}

VertexCertificates strip_vertex_certificates(const PolygonalSystem& base,
                                             const PolygonalSystem& deformed, double delta,
                                             double tol) {
    GeometricConstants gc = geometric_constants(base, tol);
    double dn = delta / base.base_diameter();
    DerivedConstants dc = derived_constants(base, dn, tol);
    MatchingReport mr = check_parameter_matching(deformed, kTolLambda, 8, 6, tol);
    ContactGraph cg = contact_graph(base, tol);
    double pair_eps = 0.45 * gc.rho0 / gc.scale;  // contact points are >= rho0 apart
    VertexCertificates certs;
    for (const auto& cp : cg.contacts) {
        VertexCertificate cert;
        // certificate is consumed against the deformed system's contact points
        Point deformed_loc = cp.location;
        const MatchingReport::VertexGroup* group = nullptr;
        double best = pair_eps;
        for (const auto& g : mr.groups) {
            double d = dist(g.location, cp.location);
            if (d < best) {
                best = d;
                group = &g;
            }
        }
        if (group) deformed_loc = group->location;
        cert.location = deformed_loc;
        if (!group) {
            cert.detail = "no matched-parameter group near the contact point";
            certs.push_back(std::move(cert));
            continue;
        }
        if (!group->matched) {
            cert.detail = "parameter matching fails at this vertex (spread " +
                          std::to_string(group->spread) + ")";
            certs.push_back(std::move(cert));
            continue;
        }
        double lambda = group->assignments.front().lambda;
        StripCheckResult sc = log_strip_check(base, cp.location, lambda, gc, dc, tol);
        cert.separated = sc.separated;
        cert.margin = sc.margin;
        cert.detail = sc.detail;
        certs.push_back(std::move(cert));
    }
    return certs;
}

}  // namespace polyifs
