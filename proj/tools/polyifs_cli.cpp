#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "polyifs/deformation.hpp"
#include "polyifs/io.hpp"

using namespace polyifs;

namespace {

struct Common {
    std::string input;
    int depth = 4;
    double tol_geom = kTolGeom;
    double tol_margin = kTolMargin;
    std::string json_out;
    std::string svg_out;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("input", c.input, "system JSON file")->required();
    cmd->add_option("--depth", c.depth, "certification / rendering depth");
    cmd->add_option("--tol-geom", c.tol_geom, "point coincidence tolerance");
    cmd->add_option("--tol-margin", c.tol_margin, "certification margin tolerance");
    cmd->add_option("--json", c.json_out, "write the JSON report to this file");
    cmd->add_option("--svg", c.svg_out, "write an SVG rendering to this file");
}

void emit(const Common& c, Json& report, const PolygonalSystem* sys = nullptr) {
    if (!c.json_out.empty()) write_text_file(c.json_out, report.dump(2) + "\n");
    if (!c.svg_out.empty() && sys) {
        RenderOptions opts;
        opts.depth = c.depth;
        write_text_file(c.svg_out, render_svg(*sys, opts));
    }
}

int dendrite_exit(DendriteResult::Kind k) {
    switch (k) {
        case DendriteResult::Kind::CertifiedDendrite: return 0;
        case DendriteResult::Kind::RefutedTree: return 1;
        default: return 2;
    }
}

bool is_vicsek_layout(const PolygonalSystem& sys, double tol) {
    PolygonalSystem ref = [] {
        Polygon p;
        p.vertices = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
        std::vector<Similarity> maps;
        for (Point f : {Point{0, 0}, Point{1, 0}, Point{1, 1}, Point{0, 1}, Point{0.5, 0.5}})
            maps.push_back(Similarity::from_ratio_rotation_fixed(1.0 / 3, 0, f));
        return PolygonalSystem(std::move(p), std::move(maps));
    }();
    if (sys.base().size() != ref.base().size() || sys.map_count() != ref.map_count())
        return false;
    for (int v = 0; v < ref.base().size(); ++v)
        if (!almost_equal(sys.base().vertex(v), ref.base().vertex(v), tol)) return false;
    for (int k = 0; k < ref.map_count(); ++k)
        if (std::abs(sys.map(k).a() - ref.map(k).a()) > tol ||
            std::abs(sys.map(k).b() - ref.map(k).b()) > tol)
            return false;
    return true;
}

DeformationSpec vicsek_twist_spec(const PolygonalSystem& base, double theta) {
    Complex c(0.5, 0.5);
    Complex a5 = std::polar(1.0 / 3, theta);
    Similarity s5(a5, c - a5 * c);
    std::vector<Similarity> maps;
    for (int k = 0; k < 4; ++k) {
        Point fixed = base.base().vertex(k);
        Point opposite = base.base().vertex((k + 2) % 4);
        maps.push_back(similarity_from_two_points(fixed, opposite, fixed, s5.apply(fixed)));
    }
    maps.push_back(s5);
    DeformationSpec spec;
    for (const auto& v : base.base().vertices) spec.add(v, v);
    for (int k = 0; k < base.map_count(); ++k)
        for (int v = 0; v < base.base().size(); ++v)
            spec.add(base.piece(k).vertex(v),
                     maps[static_cast<size_t>(k)].apply(base.base().vertex(v)));
    return spec;
}

DeformationSpec vicsek_mismatch_spec(const PolygonalSystem& base, double eps) {
    Point a1 = base.base().vertex(0), a2 = base.base().vertex(1);
    Point a3 = base.base().vertex(2), a4 = base.base().vertex(3);
    Similarity s1(std::polar(1.0 / 3, eps), a1.z() * (1.0 - std::polar(1.0 / 3, eps)));
    Similarity s3(std::polar(1.0 / 3, -eps), a3.z() * (1.0 - std::polar(1.0 / 3, -eps)));
    Similarity s5 = similarity_from_two_points(a1, a3, s1.apply(a3), s3.apply(a1));
    Similarity s2 = similarity_from_two_points(a2, a4, a2, s5.apply(a2));
    Similarity s4 = similarity_from_two_points(a4, a2, a4, s5.apply(a4));
    std::vector<Similarity> maps = {s1, s2, s3, s4, s5};
    DeformationSpec spec;
    for (const auto& v : base.base().vertices) spec.add(v, v);
    for (int k = 0; k < base.map_count(); ++k)
        for (int v = 0; v < base.base().size(); ++v)
            spec.add(base.piece(k).vertex(v),
                     maps[static_cast<size_t>(k)].apply(base.base().vertex(v)));
    return spec;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"planar polygonal IFS toolkit: validation, dendrite certification, "
                 "deformation bounds"};
    app.require_subcommand(1);

    Common validate_c, constants_c, cyclic_c, matching_c, dendrite_c, deform_c, delta_c,
        hatf_c, render_c, sweep_c;
    double constants_delta = 0;
    int cyclic_max_order = 8;
    double matching_tol_lambda = kTolLambda;
    std::string deform_spec_path, deform_out, hatf_spec_path, render_overlay;
    int hatf_samples = 100;
    unsigned long long hatf_seed = 1, sweep_seed = 1;
    std::string sweep_mode = "twist", sweep_csv;
    int sweep_count = 10;
    double sweep_max_param = 0.02;

    auto* cmd_validate = app.add_subcommand("validate", "check conditions D1-D4");
    add_common(cmd_validate, validate_c);
    auto* cmd_constants = app.add_subcommand("constants", "geometric and derived constants");
    add_common(cmd_constants, constants_c);
    cmd_constants->add_option("--delta", constants_delta, "deformation size (normalized)");
    auto* cmd_cyclic = app.add_subcommand("cyclic", "cyclic vertices, orders and parameters");
    add_common(cmd_cyclic, cyclic_c);
    cmd_cyclic->add_option("--max-order", cyclic_max_order, "witness length cap");
    auto* cmd_matching = app.add_subcommand("matching", "parameter matching condition");
    add_common(cmd_matching, matching_c);
    cmd_matching->add_option("--tol-lambda", matching_tol_lambda, "lambda comparison tolerance");
    auto* cmd_dendrite = app.add_subcommand("dendrite", "finite-depth dendrite certification");
    add_common(cmd_dendrite, dendrite_c);
    auto* cmd_deform = app.add_subcommand("deform", "build and validate a deformation");
    add_common(cmd_deform, deform_c);
    cmd_deform->add_option("--spec", deform_spec_path, "deformation JSON file")->required();
    cmd_deform->add_option("--out", deform_out, "write the deformed system here");
    auto* cmd_delta = app.add_subcommand("delta-max", "admissible deformation bound");
    add_common(cmd_delta, delta_c);
    auto* cmd_hatf = app.add_subcommand("hatf", "conjugating-map consistency and Holder checks");
    add_common(cmd_hatf, hatf_c);
    cmd_hatf->add_option("--spec", hatf_spec_path, "deformation JSON file")->required();
    cmd_hatf->add_option("--samples", hatf_samples, "sampled routes / vertex pairs");
    cmd_hatf->add_option("--seed", hatf_seed, "sampling seed");
    auto* cmd_render = app.add_subcommand("render", "SVG rendering");
    add_common(cmd_render, render_c);
    cmd_render->add_option("--overlay", render_overlay, "deformation JSON overlaid as deformed");
    auto* cmd_sweep = app.add_subcommand("sweep", "deformation parameter sweep (CSV)");
    add_common(cmd_sweep, sweep_c);
    cmd_sweep->add_option("--mode", sweep_mode, "twist | mismatch");
    cmd_sweep->add_option("--count", sweep_count, "number of samples");
    cmd_sweep->add_option("--max-param", sweep_max_param, "parameter range upper end");
    cmd_sweep->add_option("--seed", sweep_seed, "sampling seed");
    cmd_sweep->add_option("--csv", sweep_csv, "CSV output file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_validate->parsed()) {
            PolygonalSystem sys = load_system(validate_c.input);
            ValidationReport vr = validate(sys, validate_c.tol_geom);
            Json report;
            report["command"] = "validate";
            report["validation"] = json_of(vr);
            std::cout << "classification: " << to_string(vr.classification) << "\n";
            emit(validate_c, report, &sys);
            return (vr.d1.pass && vr.d2.pass && vr.d3.pass && vr.d4.pass) ? 0 : 1;
        }
        if (cmd_constants->parsed()) {
            PolygonalSystem sys = load_system(constants_c.input);
            GeometricConstants gc = geometric_constants(sys, constants_c.tol_geom);
            DerivedConstants dc = derived_constants(sys, constants_delta);
            Json report;
            report["command"] = "constants";
            report["geometric"] = json_of(gc);
            report["derived"] = json_of(dc);
            std::cout << "rho0=" << gc.rho0 << " rho1=" << gc.rho1 << " rho2=" << gc.rho2
                      << " alpha0=" << gc.alpha0 << "\n";
            emit(constants_c, report, &sys);
            return 0;
        }
        if (cmd_cyclic->parsed()) {
            PolygonalSystem sys = load_system(cyclic_c.input);
            auto cvs = find_cyclic_vertices(sys, cyclic_max_order, cyclic_c.tol_geom);
            Json report;
            report["command"] = "cyclic";
            report["max_order"] = cyclic_max_order;
            report["cyclic_vertices"] = json_of(cvs);
            std::cout << cvs.size() << " cyclic vertices within order " << cyclic_max_order
                      << "\n";
            emit(cyclic_c, report, &sys);
            return 0;
        }
        if (cmd_matching->parsed()) {
            PolygonalSystem sys = load_system(matching_c.input);
            MatchingReport mr =
                check_parameter_matching(sys, matching_tol_lambda, 8, 6, matching_c.tol_geom);
            Json report;
            report["command"] = "matching";
            report["matching"] = json_of(mr);
            std::cout << (mr.matched ? "Matched" : "Mismatched") << " (spread " << mr.spread
                      << ")\n";
            emit(matching_c, report, &sys);
            if (!mr.unsubordinated.empty()) return 2;
            return mr.matched ? 0 : 1;
        }
        if (cmd_dendrite->parsed()) {
            PolygonalSystem sys = load_system(dendrite_c.input);
            DendriteResult dr = dendrite_check(sys, dendrite_c.depth, nullptr,
                                               dendrite_c.tol_geom);
            Json report;
            report["command"] = "dendrite";
            report["depth"] = dendrite_c.depth;
            report["dendrite"] = json_of(dr);
            std::cout << to_string(dr.kind) << " at level " << dr.level << "\n";
            emit(dendrite_c, report, &sys);
            return dendrite_exit(dr.kind);
        }
        if (cmd_deform->parsed()) {
            PolygonalSystem base = load_system(deform_c.input);
            DeformationSpec spec = load_deformation(deform_spec_path);
            PolygonalSystem deformed = build_deformed_system(base, spec, deform_c.tol_geom);
            DeformationValidation dv =
                validate_deformation(base, spec, deformed, -1, deform_c.tol_geom);
            auto pb = perturbation_bounds_check(base, deformed, spec.delta());
            NeighborhoodVerdict nv =
                invariant_neighborhood_check(base, deformed, spec.delta(), deform_c.tol_geom);
            bool bounds_ok = true;
            for (const auto& b : pb) bounds_ok = bounds_ok && b.pass();
            Json report;
            report["command"] = "deform";
            report["delta"] = spec.delta();
            report["validation"] = json_of(dv);
            report["map_bounds"] = json_of(pb);
            report["invariant_neighborhood"] = json_of(nv);
            if (!deform_out.empty()) save_system(deformed, deform_out);
            std::cout << (dv.pass() && bounds_ok && nv.pass ? "pass" : "fail") << " (delta "
                      << spec.delta() << ")\n";
            emit(deform_c, report, &deformed);
            return (dv.pass() && bounds_ok && nv.pass) ? 0 : 1;
        }
        if (cmd_delta->parsed()) {
            PolygonalSystem sys = load_system(delta_c.input);
            DeltaMaxReport rep = delta_max(sys, delta_c.tol_geom);
            Json report;
            report["command"] = "delta-max";
            report["delta_max"] = json_of(rep);
            std::cout << "delta_max=" << rep.delta_max << " binding=" << rep.binding_index
                      << "\n";
            emit(delta_c, report, &sys);
            return rep.delta_max > 0 ? 0 : 1;
        }
        if (cmd_hatf->parsed()) {
            PolygonalSystem base = load_system(hatf_c.input);
            DeformationSpec spec = load_deformation(hatf_spec_path);
            PolygonalSystem deformed = build_deformed_system(base, spec, hatf_c.tol_geom);
            std::mt19937_64 rng(hatf_seed);
            std::uniform_int_distribution<int> len_dist(1, 4);
            std::uniform_int_distribution<int> sym_dist(0, base.map_count() - 1);
            std::uniform_int_distribution<int> vert_dist(0, base.base().size() - 1);
            bool equivariant = true;
            for (int s = 0; s < hatf_samples && equivariant; ++s) {
                MultiIndex w;
                int len = len_dist(rng);
                for (int i = 0; i < len; ++i) w.word.push_back(sym_dist(rng));
                int v = vert_dist(rng);
                int i0 = sym_dist(rng);
                MultiIndex iw;
                iw.word.push_back(i0);
                iw = iw.concat(w);
                Point lhs = hatf_eval(base, deformed, iw, v, hatf_c.tol_geom);
                Point rhs = deformed.map(i0).apply(hatf_eval(base, deformed, w, v,
                                                             hatf_c.tol_geom));
                if (dist(lhs, rhs) > std::max(100 * hatf_c.tol_geom,
                                              1e-7 * base.base_diameter()))
                    equivariant = false;
            }
            HolderReport hr =
                holder_check(base, deformed, hatf_samples * 10, hatf_seed, hatf_c.tol_geom);
            Json report;
            report["command"] = "hatf";
            report["equivariant"] = equivariant;
            report["holder"] = json_of(hr);
            std::cout << (equivariant && hr.pass ? "pass" : "fail") << "\n";
            emit(hatf_c, report, &deformed);
            return (equivariant && hr.pass) ? 0 : 1;
        }
        if (cmd_render->parsed()) {
            PolygonalSystem sys = load_system(render_c.input);
            RenderOptions opts;
            opts.depth = render_c.depth;
            std::optional<PolygonalSystem> overlay;
            if (!render_overlay.empty()) {
                DeformationSpec spec = load_deformation(render_overlay);
                overlay.emplace(build_deformed_system(sys, spec, render_c.tol_geom));
                opts.overlay = &*overlay;
            }
            std::string out =
                render_c.svg_out.empty() ? render_c.input + ".svg" : render_c.svg_out;
            write_text_file(out, render_svg(sys, opts));
            std::cout << "wrote " << out << "\n";
            return 0;
        }
        if (cmd_sweep->parsed()) {
            PolygonalSystem base = load_system(sweep_c.input);
            if (!is_vicsek_layout(base, 1e-9))
                throw Error("InputError",
                            "sweep modes twist/mismatch need the square corner+center layout");
            DeltaMaxReport dm = delta_max(base, sweep_c.tol_geom);
            std::mt19937_64 rng(sweep_seed);
            std::uniform_real_distribution<double> par(0.0, sweep_max_param);
            std::ostringstream csv;
            csv << "index,param,delta,matched,within_delta_max,verdict\n";
            int certified = 0, errored = 0;
            for (int s = 0; s < sweep_count; ++s) {
                double theta = par(rng);
                std::string verdict;
                double delta = 0;
                bool matched = false, within = false;
                try {
                    DeformationSpec spec = sweep_mode == "mismatch"
                                               ? vicsek_mismatch_spec(base, theta)
                                               : vicsek_twist_spec(base, theta);
                    delta = spec.delta();
                    PolygonalSystem deformed =
                        build_deformed_system(base, spec, sweep_c.tol_geom);
                    MatchingReport mr = check_parameter_matching(deformed, kTolLambda, 8, 6,
                                                                 sweep_c.tol_geom);
                    matched = mr.matched;
                    within = delta / base.base_diameter() < dm.delta_max;
                    VertexCertificates certs;
                    const VertexCertificates* cp = nullptr;
                    if (matched && within) {
                        certs = strip_vertex_certificates(base, deformed, delta,
                                                          sweep_c.tol_geom);
                        cp = &certs;
                    }
                    DendriteResult dr =
                        dendrite_check(deformed, sweep_c.depth, cp, sweep_c.tol_geom);
                    verdict = to_string(dr.kind);
                    if (dr.kind == DendriteResult::Kind::CertifiedDendrite) ++certified;
                } catch (const std::exception& e) {
                    verdict = std::string("error: ") + e.what();
                    ++errored;
                }
                csv << s << ',' << theta << ',' << delta << ',' << (matched ? 1 : 0) << ','
                    << (within ? 1 : 0) << ',' << csv_escape(verdict) << "\n";
            }
            if (!sweep_csv.empty()) write_text_file(sweep_csv, csv.str());
            else std::cout << csv.str();
            std::cout << "certified " << certified << "/" << sweep_count << ", errored "
                      << errored << "\n";
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return (e.code == "InputError" || e.code == "BadArgument") ? 3 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
