#include <doctest.h>

#include <cstdio>
#include <string>

#include "polyifs/fixtures.hpp"
#include "polyifs/io.hpp"

using namespace polyifs;

namespace {

std::string tmp_path(const char* name) {
    return std::string("/tmp/polyifs_io_test_") + name;
}

}  // namespace

TEST_CASE("system json round trip") {
    PolygonalSystem sys = fixtures::two_cycle_square();
    Json j = system_to_json(sys);
    CHECK(j["version"] == 1);
    PolygonalSystem back = system_from_json(j);
    REQUIRE(back.map_count() == sys.map_count());
    for (int k = 0; k < sys.map_count(); ++k) {
        CHECK(std::abs(back.map(k).a() - sys.map(k).a()) < 1e-12);
        CHECK(std::abs(back.map(k).b() - sys.map(k).b()) < 1e-12);
    }
    for (int v = 0; v < sys.base().size(); ++v)
        CHECK(almost_equal(back.base().vertex(v), sys.base().vertex(v), 1e-12));
    // serialization is deterministic
    CHECK(system_to_json(back).dump() == j.dump());
}

TEST_CASE("system json accepts the two-point map form") {
    Json j;
    j["version"] = 1;
    j["polygon"] = Json::array({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    Json m;
    m["src"] = Json::array({{0.0, 0.0}, {1.0, 0.0}});
    m["dst"] = Json::array({{0.0, 0.0}, {0.5, 0.0}});
    Json m2;
    m2["fixed"] = Json::array({1.0, 1.0});
    m2["ratio"] = 0.5;
    m2["rotation"] = 0.0;
    j["maps"] = Json::array({m, m2});
    PolygonalSystem sys = system_from_json(j);
    CHECK(sys.map(0).ratio() == doctest::Approx(0.5));
    CHECK(almost_equal(sys.map(1).fixed_point(), {1, 1}));
}

TEST_CASE("malformed system json raises InputError") {
    Json j;
    j["polygon"] = Json::array({{0, 0}, {1, 0}, {1, 1}});
    try {
        system_from_json(j);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code == "InputError");
    }
}

TEST_CASE("deformation json round trip") {
    DeformationSpec spec = fixtures::twisted_vicsek_spec(0.01);
    Json j = deformation_to_json(spec);
    DeformationSpec back = deformation_from_json(j);
    REQUIRE(back.displacements.size() == spec.displacements.size());
    CHECK(back.delta() == doctest::Approx(spec.delta()));
    CHECK(deformation_to_json(back).dump() == j.dump());
}

TEST_CASE("file round trip") {
    std::string path = tmp_path("system.json");
    PolygonalSystem sys = fixtures::vicsek();
    save_system(sys, path);
    PolygonalSystem back = load_system(path);
    CHECK(back.map_count() == 5);
    CHECK(read_text_file(path).find("polygon") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("report serializers are stable and 1-based") {
    PolygonalSystem sys = fixtures::vicsek();
    Json v = json_of(validate(sys));
    CHECK(v["classification"] == "Contractible");
    CHECK(v["d1"]["pass"] == true);

    Json d = json_of(dendrite_check(sys, 2));
    CHECK(d["kind"] == "CertifiedDendrite");

    Json cv = json_of(find_cyclic_vertices(sys));
    REQUIRE(cv.is_array());
    CHECK(cv[0]["vertex_index"] == 1);  // displayed 1-based
    CHECK(cv[0]["witness"] == "1");

    Json dm = json_of(delta_max(sys));
    CHECK(dm["binding_index"] == 4);
    CHECK(dm["bounds"].size() == 6);

    Json dc = json_of(derived_constants(sys, 1e-4));
    CHECK(dc["c_lambda_variant"] == "q_max");

    // byte-identical across repeated computation
    CHECK(json_of(validate(sys)).dump() == v.dump());
    CHECK(json_of(delta_max(sys)).dump() == dm.dump());
}

TEST_CASE("svg rendering is deterministic and well formed") {
    PolygonalSystem sys = fixtures::vicsek();
    RenderOptions opts;
    opts.depth = 2;
    std::string a = render_svg(sys, opts);
    std::string b = render_svg(sys, opts);
    CHECK(a == b);
    CHECK(a.find("<svg") != std::string::npos);
    CHECK(a.rfind("</svg>") != std::string::npos);
    CHECK(a.find("<title>1.1</title>") != std::string::npos);
}
