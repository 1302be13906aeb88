#pragma once

#include "hfc/gf2.hpp"
#include "hfc/tessellation.hpp"

#include <array>
#include <vector>

namespace hfc::hom {

/// Restricted lattice for one color c: nodes are the faces NOT of color c,
/// links are the c-colored edges. Each link also touches exactly two c-colored
/// faces (one at each endpoint vertex); those form the dual picture.
struct RestrictedLattice {
    int color = -1;
    std::vector<int> node_face;                 // node -> face id (non-c faces)
    std::vector<int> link_edge;                 // link -> edge id (c-colored)
    std::vector<std::array<int, 2>> link_nodes; // node indices
    std::vector<int> site_face;                 // site -> face id (c-colored faces)
    std::vector<std::array<int, 2>> link_sites; // site indices at the link's endpoints

    /// Boundaries of the embedded c-colored faces, as link sets.
    /// Row i is the boundary of site_face[i]: the c-edges with exactly one
    /// endpoint among that face's vertices.
    Gf2Matrix face_boundary;
    /// Link incidence per node; doubles as the dual-face boundary rows.
    Gf2Matrix node_boundary;
};

RestrictedLattice restricted_lattice(const tess::Tessellation& t, int color);

/// dim H1 of the restricted lattice: cycle-space rank minus boundary rank.
int homology_rank(const RestrictedLattice& lat);

/// True if the given c-colored edge set is a cycle not in the span of the
/// embedded face boundaries. Throws NOT_A_CYCLE on odd node degrees or edges
/// of the wrong color.
bool is_nontrivial_cycle(const RestrictedLattice& lat, const std::vector<int>& edges);

struct DistanceDetail {
    int d = 0;                      // overall minimum
    std::array<int, 3> cycle_d{};   // per color, shortest non-trivial cycle
    std::array<int, 3> cocycle_d{}; // per color, shortest non-trivial cocycle
};

/// Shortest non-trivial embedded cycle or cocycle over all three colors.
/// Exhaustive over the Horton candidate set: every BFS-tree fundamental cycle
/// from every root. Throws TRIVIAL_HOMOLOGY at genus 0.
DistanceDetail embedded_distance_detail(const tess::Tessellation& t);
int embedded_distance(const tess::Tessellation& t);

/// 2g independent non-trivial cycles of the given color, chosen shortest-first
/// from the Horton candidate set; deterministic. Returned as edge-id lists.
/// Throws RANK_DEFICIT if the candidates do not span H1.
std::vector<std::vector<int>> cycle_basis(const tess::Tessellation& t, int color);

} // namespace hfc::hom
