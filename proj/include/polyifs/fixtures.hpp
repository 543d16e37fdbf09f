#pragma once

#include "polyifs/deformation.hpp"
#include "polyifs/system.hpp"

namespace polyifs::fixtures {

// Unit square with 4 corner homotheties plus a center homothety, all ratio 1/3.
PolygonalSystem vicsek();

// Vicsek with the center map enlarged to ratio 1/2 (D2 fails: region overlap).
PolygonalSystem vicsek_overlapping_center();

// Equilateral-ish right triangle with 3 corner homotheties ratio 1/2.
// Pieces touch pairwise at edge midpoints: D2 passes, D4 fails with a 3-cycle.
PolygonalSystem sierpinski();

// Two maps with disjoint pieces (D4 fails: disconnected contact graph).
PolygonalSystem disjoint_pair();

// Unit square where corner maps 1 and 3 carry a half-turn, so the vertices
// (0,0) and (1,1) are cyclic of order 2 (witnesses 1.3 and 3.1).
PolygonalSystem two_cycle_square();

// Two maps fixing a common point c below the base polygon: the polygon pieces
// are disjoint while both attractor parts contain c (intersection condition
// certifiably violated).
PolygonalSystem hidden_overlap_pair();

// Four thin diamonds meeting at the origin only (ramification-4 contact).
PolygonalSystem plus_contact();

// Vicsek deformation rotating the center map by theta about the square center;
// corner maps track the contact identities, outer corners stay fixed.  All
// corner maps acquire the same rotation, so parameters stay matched.
DeformationSpec twisted_vicsek_spec(double theta);

// Vicsek deformation rotating corner map 1 by +eps and corner map 3 by -eps
// (about their fixed corners); the center and remaining corners follow the
// contact identities.  Parameters mismatch with spread 2|eps / ln q'|.
DeformationSpec mismatched_vicsek_spec(double eps);

}  // namespace polyifs::fixtures
