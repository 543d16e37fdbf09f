#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "polyifs/attractor.hpp"
#include "polyifs/cyclic.hpp"
#include "polyifs/deformation.hpp"
#include "polyifs/system.hpp"

namespace polyifs {

using Json = nlohmann::ordered_json;

// SystemFile: {"version": 1, "polygon": [[x,y],...], "maps": [...]} where each
// map is {"fixed": [x,y], "ratio": q, "rotation": a} or
// {"src": [[x,y],[x,y]], "dst": [[x,y],[x,y]]}.
PolygonalSystem system_from_json(const Json& j);
Json system_to_json(const PolygonalSystem& system);  // canonical fixed/ratio/rotation form

PolygonalSystem load_system(const std::string& path);
void save_system(const PolygonalSystem& system, const std::string& path);

// DeformationSpec: {"displacements": [{"vertex": [x,y], "to": [x,y]}, ...]}
DeformationSpec deformation_from_json(const Json& j);
Json deformation_to_json(const DeformationSpec& spec);
DeformationSpec load_deformation(const std::string& path);

Json json_of(const Point& p);
Json json_of(const ValidationReport& r);
Json json_of(const std::vector<CyclicVertex>& cvs);
Json json_of(const MatchingReport& r);
Json json_of(const std::vector<IntersectionVerdict>& vs);
Json json_of(const DendriteResult& r);
Json json_of(const GeometricConstants& gc);
Json json_of(const DerivedConstants& dc);
Json json_of(const DeltaMaxReport& r);
Json json_of(const DeformationValidation& r);
Json json_of(const std::vector<MapBounds>& bs);
Json json_of(const NeighborhoodVerdict& v);
Json json_of(const HolderReport& r);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

struct RenderOptions {
    int depth = 4;            // piece refinement level (0 = base polygon only)
    bool cloud = true;        // attractor point cloud
    bool contacts = true;     // level-1 contact points
    int width = 800;
    const PolygonalSystem* overlay = nullptr;  // optional deformed system
};

// deterministic SVG 1.1 document, y-axis flipped for screen convention
std::string render_svg(const PolygonalSystem& system, const RenderOptions& opts);

}  // namespace polyifs
