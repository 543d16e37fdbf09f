#include "polyifs/fixtures.hpp"

#include <cmath>

namespace polyifs::fixtures {

namespace {

Polygon unit_square() {
    Polygon p;
    p.vertices = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    return p;
}

Similarity homothety(double q, Point fix) {
    return Similarity::from_ratio_rotation_fixed(q, 0.0, fix);
}

}  // namespace

PolygonalSystem vicsek() {
    std::vector<Similarity> maps = {
        homothety(1.0 / 3, {0, 0}),
        homothety(1.0 / 3, {1, 0}),
        homothety(1.0 / 3, {1, 1}),
        homothety(1.0 / 3, {0, 1}),
        homothety(1.0 / 3, {0.5, 0.5}),
    };
    return PolygonalSystem(unit_square(), std::move(maps));
}

PolygonalSystem vicsek_overlapping_center() {
    std::vector<Similarity> maps = {
        homothety(1.0 / 3, {0, 0}),
        homothety(1.0 / 3, {1, 0}),
        homothety(1.0 / 3, {1, 1}),
        homothety(1.0 / 3, {0, 1}),
        homothety(1.0 / 2, {0.5, 0.5}),
    };
    return PolygonalSystem(unit_square(), std::move(maps));
}

PolygonalSystem sierpinski() {
    Polygon tri;
    tri.vertices = {{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}};
    std::vector<Similarity> maps = {
        homothety(0.5, {0, 0}),
        homothety(0.5, {1, 0}),
        homothety(0.5, {0.5, std::sqrt(3.0) / 2}),
    };
    return PolygonalSystem(std::move(tri), std::move(maps));
}

PolygonalSystem disjoint_pair() {
    std::vector<Similarity> maps = {
        homothety(0.25, {0, 0}),
        homothety(0.25, {1, 1}),
    };
    return PolygonalSystem(unit_square(), std::move(maps));
}

PolygonalSystem two_cycle_square() {
    // half-turn corner maps: S_1(z) = -z/3 + (1+i)/3, S_3(z) = -z/3 + (1+i)
    std::vector<Similarity> maps = {
        Similarity(Complex(-1.0 / 3, 0), Complex(1.0 / 3, 1.0 / 3)),
        homothety(1.0 / 3, {1, 0}),
        Similarity(Complex(-1.0 / 3, 0), Complex(1, 1)),
        homothety(1.0 / 3, {0, 1}),
        homothety(1.0 / 3, {0.5, 0.5}),
    };
    return PolygonalSystem(unit_square(), std::move(maps));
}

PolygonalSystem hidden_overlap_pair() {
    Polygon tri;
    tri.vertices = {{0, 0.2}, {1, 0.2}, {0.5, 0.5}};
    Complex c(0.5, 0.0);
    std::vector<Similarity> maps = {
        Similarity(Complex(-0.6, 0), c * 1.6),  // fixes c, half turn
        Similarity(Complex(0.5, 0), c * 0.5),   // fixes c, homothety
    };
    return PolygonalSystem(std::move(tri), std::move(maps));
}

PolygonalSystem plus_contact() {
    Polygon diamond;
    diamond.vertices = {{0, 0}, {1, -0.3}, {2, 0}, {1, 0.3}};
    std::vector<Similarity> maps;
    for (int k = 0; k < 4; ++k) {
        double rot = k * (3.14159265358979323846 / 2);
        maps.push_back(Similarity(std::polar(0.3, rot), Complex(0, 0)));
    }
    return PolygonalSystem(std::move(diamond), std::move(maps));
}

namespace {

// displacements for an explicit set of deformed maps over the vicsek base,
// with the base polygon kept pointwise fixed
DeformationSpec spec_from_deformed_maps(const PolygonalSystem& base,
                                        const std::vector<Similarity>& deformed_maps) {
    DeformationSpec spec;
    for (const auto& v : base.base().vertices) spec.add(v, v);
    for (int k = 0; k < base.map_count(); ++k)
        for (int v = 0; v < base.base().size(); ++v)
            spec.add(base.piece(k).vertex(v),
                     deformed_maps[static_cast<size_t>(k)].apply(base.base().vertex(v)));
    return spec;
}

}  // namespace

DeformationSpec twisted_vicsek_spec(double theta) {
    PolygonalSystem base = vicsek();
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
    return spec_from_deformed_maps(base, maps);
}

DeformationSpec mismatched_vicsek_spec(double eps) {
    PolygonalSystem base = vicsek();
    Point a1 = base.base().vertex(0), a2 = base.base().vertex(1);
    Point a3 = base.base().vertex(2), a4 = base.base().vertex(3);
    Similarity s1(std::polar(1.0 / 3, eps), a1.z() * (1.0 - std::polar(1.0 / 3, eps)));
    Similarity s3(std::polar(1.0 / 3, -eps), a3.z() * (1.0 - std::polar(1.0 / 3, -eps)));
    // the center map is pinned by the two rotated corners' contact identities
    Similarity s5 = similarity_from_two_points(a1, a3, s1.apply(a3), s3.apply(a1));
    Similarity s2 = similarity_from_two_points(a2, a4, a2, s5.apply(a2));
    Similarity s4 = similarity_from_two_points(a4, a2, a4, s5.apply(a4));
    return spec_from_deformed_maps(base, {s1, s2, s3, s4, s5});
}

}  // namespace polyifs::fixtures
