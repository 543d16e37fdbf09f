#include "polyifs/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace polyifs {

namespace {

Point point_from(const Json& j) {
    if (!j.is_array() || j.size() != 2)
        throw Error("InputError", "expected a [x, y] coordinate pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

Json point_json(const Point& p) { return Json::array({p.x, p.y}); }

std::string fmt(double v, int precision = 4) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(precision) << v;
    std::string s = os.str();
    if (s == "-0.0000") s = "0.0000";
    return s;
}

}  // namespace

PolygonalSystem system_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("polygon") || !j.contains("maps"))
        throw Error("InputError", "system file needs 'polygon' and 'maps'");
    Polygon poly;
    for (const auto& v : j.at("polygon")) poly.vertices.push_back(point_from(v));
    std::vector<Similarity> maps;
    for (const auto& m : j.at("maps")) {
        if (m.contains("fixed")) {
            maps.push_back(Similarity::from_ratio_rotation_fixed(
                m.at("ratio").get<double>(), m.value("rotation", 0.0),
                point_from(m.at("fixed"))));
        } else if (m.contains("src") && m.contains("dst")) {
            const auto& src = m.at("src");
            const auto& dst = m.at("dst");
            if (src.size() != 2 || dst.size() != 2)
                throw Error("InputError", "'src' and 'dst' need two points each");
            maps.push_back(similarity_from_two_points(point_from(src[0]), point_from(src[1]),
                                                      point_from(dst[0]), point_from(dst[1])));
        } else {
            throw Error("InputError", "map needs 'fixed'/'ratio'/'rotation' or 'src'/'dst'");
        }
    }
    return PolygonalSystem(std::move(poly), std::move(maps));
}

Json system_to_json(const PolygonalSystem& system) {
    Json j;
    j["version"] = 1;
    j["polygon"] = Json::array();
    for (const auto& v : system.base().vertices) j["polygon"].push_back(point_json(v));
    j["maps"] = Json::array();
    for (const auto& m : system.maps()) {
        Json mj;
        mj["fixed"] = point_json(m.fixed_point());
        mj["ratio"] = m.ratio();
        mj["rotation"] = m.rotation();
        j["maps"].push_back(std::move(mj));
    }
    return j;
}

PolygonalSystem load_system(const std::string& path) {
    return system_from_json(Json::parse(read_text_file(path)));
}

void save_system(const PolygonalSystem& system, const std::string& path) {
    write_text_file(path, system_to_json(system).dump(2) + "\n");
}

DeformationSpec deformation_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("displacements"))
        throw Error("InputError", "deformation file needs 'displacements'");
    DeformationSpec spec;
    for (const auto& d : j.at("displacements"))
        spec.add(point_from(d.at("vertex")), point_from(d.at("to")));
    return spec;
}

Json deformation_to_json(const DeformationSpec& spec) {
    Json j;
    j["displacements"] = Json::array();
    for (const auto& d : spec.displacements) {
        Json dj;
        dj["vertex"] = point_json(d.from);
        dj["to"] = point_json(d.to);
        j["displacements"].push_back(std::move(dj));
    }
    return j;
}

DeformationSpec load_deformation(const std::string& path) {
    return deformation_from_json(Json::parse(read_text_file(path)));
}

Json json_of(const Point& p) { return point_json(p); }

Json json_of(const ValidationReport& r) {
    Json j;
    auto cond = [](const ConditionVerdict& c) {
        Json cj;
        cj["pass"] = c.pass;
        if (!c.witness.empty()) cj["witness"] = c.witness;
        return cj;
    };
    j["d1"] = cond(r.d1);
    j["d2"] = cond(r.d2);
    j["d3"] = cond(r.d3);
    j["d4"] = cond(r.d4);
    j["classification"] = to_string(r.classification);
    return j;
}

Json json_of(const std::vector<CyclicVertex>& cvs) {
    Json j = Json::array();
    for (const auto& cv : cvs) {
        Json c;
        c["vertex_index"] = cv.vertex_index + 1;
        c["vertex"] = point_json(cv.vertex);
        c["witness"] = cv.witness.str();
        c["order"] = cv.order;
        c["ratio"] = cv.ratio;
        c["rotation"] = cv.rotation;
        c["lambda"] = cv.lambda;
        j.push_back(std::move(c));
    }
    return j;
}

Json json_of(const MatchingReport& r) {
    Json j;
    j["matched"] = r.matched;
    j["lambda"] = r.lambda;
    j["spread"] = r.spread;
    j["groups"] = Json::array();
    for (const auto& g : r.groups) {
        Json gj;
        gj["location"] = point_json(g.location);
        gj["matched"] = g.matched;
        gj["spread"] = g.spread;
        gj["assignments"] = Json::array();
        for (const auto& a : g.assignments) {
            Json aj;
            aj["route"] = a.route.str();
            aj["cyclic_index"] = a.cyclic_index;
            aj["lambda"] = a.lambda;
            gj["assignments"].push_back(std::move(aj));
        }
        j["groups"].push_back(std::move(gj));
    }
    j["unsubordinated"] = Json::array();
    for (const auto& p : r.unsubordinated) j["unsubordinated"].push_back(point_json(p));
    return j;
}

Json json_of(const std::vector<IntersectionVerdict>& vs) {
    Json j = Json::array();
    for (const auto& v : vs) {
        Json vj;
        vj["i"] = v.i + 1;
        vj["j"] = v.j + 1;
        vj["kind"] = to_string(v.kind);
        vj["margin"] = v.margin;
        if (!v.detail.empty()) vj["detail"] = v.detail;
        j.push_back(std::move(vj));
    }
    return j;
}

Json json_of(const DendriteResult& r) {
    Json j;
    j["kind"] = to_string(r.kind);
    j["level"] = r.level;
    if (!r.reason.empty()) j["reason"] = r.reason;
    j["verdicts"] = json_of(r.verdicts);
    return j;
}

Json json_of(const GeometricConstants& gc) {
    Json j;
    j["rho0"] = gc.rho0;
    j["rho1"] = gc.rho1;
    j["rho2"] = gc.rho2;
    j["alpha0"] = gc.alpha0;
    j["q_min"] = gc.q_min;
    j["q_max"] = gc.q_max;
    j["scale"] = gc.scale;
    return j;
}

Json json_of(const DerivedConstants& dc) {
    Json j;
    j["c_alpha"] = dc.c_alpha;
    j["c_delta"] = dc.c_delta;
    j["c_k"] = dc.c_k;
    j["c_lambda"] = dc.c_lambda;
    j["c_lambda_variant"] = "q_max";  // formula implemented as printed
    j["delta1"] = dc.delta1;
    j["delta2"] = dc.delta2;
    j["beta"] = dc.beta;
    return j;
}

Json json_of(const DeltaMaxReport& r) {
    Json j;
    j["bounds"] = Json::array();
    for (double b : r.bounds) j["bounds"].push_back(b);
    j["binding_index"] = r.binding_index;
    j["delta_max"] = r.delta_max;
    j["unadjusted"] = r.unadjusted;
    j["refinement"] = r.refinement;
    j["m_factor"] = r.m_factor;
    return j;
}

Json json_of(const DeformationValidation& r) {
    Json j;
    j["order_preserved"] = r.order_preserved;
    j["within_budget"] = r.within_budget;
    j["equivariant"] = r.equivariant;
    j["identities_preserved"] = r.identities_preserved;
    j["delta"] = r.delta;
    j["pass"] = r.pass();
    if (!r.witness.empty()) j["witness"] = r.witness;
    return j;
}

Json json_of(const std::vector<MapBounds>& bs) {
    Json j = Json::array();
    for (const auto& b : bs) {
        Json bj;
        bj["k"] = b.k + 1;
        bj["dq"] = b.dq;
        bj["dalpha"] = b.dalpha;
        bj["margin_ratio_low"] = b.margin_ratio_low;
        bj["margin_ratio_high"] = b.margin_ratio_high;
        bj["margin_dq"] = b.margin_dq;
        bj["margin_dalpha"] = b.margin_dalpha;
        bj["pass"] = b.pass();
        j.push_back(std::move(bj));
    }
    return j;
}

Json json_of(const NeighborhoodVerdict& v) {
    Json j;
    j["pass"] = v.pass;
    j["margin"] = v.margin;
    j["worst_k"] = v.worst_k + 1;
    j["witness"] = point_json(v.witness);
    return j;
}

Json json_of(const HolderReport& r) {
    Json j;
    j["pass"] = r.pass;
    j["beta"] = r.beta;
    j["constant"] = r.constant;
    j["worst_ratio"] = r.worst_ratio;
    j["samples"] = r.samples;
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("InputError", "cannot open " + path + " for writing");
    f << text;
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("InputError", "cannot open " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

std::string render_svg(const PolygonalSystem& system, const RenderOptions& opts) {
    // normalized frame, y flipped for screen convention
    double scale = 1;
    PolygonalSystem ns = system.normalized(&scale);
    BoundingBox box = polygon_bbox(ns.base());
    double r = ns.invariant_radius();
    Point c = ns.invariant_center();
    box.expand({c.x - r, c.y - r});
    box.expand({c.x + r, c.y + r});
    double pad = 0.05 * std::max(box.max_x - box.min_x, box.max_y - box.min_y);
    double w = box.max_x - box.min_x + 2 * pad;
    double h = box.max_y - box.min_y + 2 * pad;
    double px = opts.width / w;
    auto sx = [&](double x) { return (x - box.min_x + pad) * px; };
    auto sy = [&](double y) { return (box.max_y + pad - y) * px; };
    auto path_of = [&](const Polygon& poly) {
        std::ostringstream os;
        for (int i = 0; i < poly.size(); ++i) {
            os << (i ? " L " : "M ") << fmt(sx(poly.vertex(i).x)) << ' '
               << fmt(sy(poly.vertex(i).y));
        }
        os << " Z";
        return os.str();
    };
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width << "\" height=\""
        << fmt(h * px, 0) << "\" viewBox=\"0 0 " << opts.width << ' ' << fmt(h * px, 0)
        << "\">\n";
    svg << "<g id=\"base\"><path d=\"" << path_of(ns.base())
        << "\" fill=\"none\" stroke=\"#222222\" stroke-width=\"1.5\"/></g>\n";
    if (opts.depth > 0) {
        svg << "<g id=\"pieces\" fill=\"none\" stroke=\"#3366cc\" stroke-width=\"0.5\">\n";
        for (const auto& word : enumerate_words(ns.map_count(), opts.depth))
            svg << "<path d=\"" << path_of(ns.piece_of(word)) << "\"><title>" << word.str()
                << "</title></path>\n";
        svg << "</g>\n";
    }
    if (opts.cloud && opts.depth > 0) {
        svg << "<g id=\"cloud\" fill=\"#cc3333\">\n";
        AttractorCloud cloud = iterate(ns, {ns.invariant_center()}, opts.depth);
        for (const auto& p : cloud.points)
            svg << "<circle cx=\"" << fmt(sx(p.x)) << "\" cy=\"" << fmt(sy(p.y))
                << "\" r=\"1\"/>\n";
        svg << "</g>\n";
    }
    if (opts.contacts) {
        try {
            ContactGraph cg = contact_graph(ns);
            svg << "<g id=\"contacts\" fill=\"#009933\">\n";
            for (const auto& cp : cg.contacts)
                svg << "<circle cx=\"" << fmt(sx(cp.location.x)) << "\" cy=\""
                    << fmt(sy(cp.location.y)) << "\" r=\"3\"/>\n";
            svg << "</g>\n";
        } catch (const Error&) {
            // overlapping pieces: no contact layer
        }
    }
    if (opts.overlay) {
        PolygonalSystem od = scale == 0 ? *opts.overlay : [&] {
            Polygon p = opts.overlay->base();
            for (auto& v : p.vertices) {
                v.x *= scale;
                v.y *= scale;
            }
            std::vector<Similarity> maps;
            for (const auto& m : opts.overlay->maps()) maps.emplace_back(m.a(), m.b() * scale);
            return PolygonalSystem(std::move(p), std::move(maps));
        }();
        svg << "<g id=\"overlay\" fill=\"none\" stroke=\"#cc8800\" stroke-width=\"0.8\">\n";
        svg << "<path d=\"" << path_of(od.base()) << "\"/>\n";
        for (int k = 0; k < od.map_count(); ++k)
            svg << "<path d=\"" << path_of(od.piece(k)) << "\"/>\n";
        svg << "</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace polyifs
