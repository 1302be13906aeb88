#pragma once

#include "hfc/presentation.hpp"

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace hfc::tess {

/// {p,3} tessellation of a closed orientable surface with Wythoff 3-coloring.
/// Vertex/edge/face indices ascend by smallest contained flag.
struct Tessellation {
    int p = 0;
    int num_vertices = 0;
    int num_edges = 0;
    int num_faces = 0;

    std::vector<std::array<int, 2>> edge_endpoints;          // vertex pair
    std::vector<std::array<int, 2>> edge_faces;              // incident face pair
    std::vector<std::vector<int>> face_boundary;             // cyclic edge lists
    std::vector<std::vector<int>> face_vertices;             // cyclic vertex lists
    std::vector<std::array<int, 3>> vertex_star;             // 3 incident edges
    std::vector<std::array<int, 3>> vertex_faces;            // 3 incident faces
    std::vector<int> face_color;                             // {0,1,2}, -1 = unset
    std::vector<int> edge_color;                             // {0,1,2}, -1 = unset
    int genus = -1;
    int k = -1;

    // Fine-graining provenance (empty/1 for base codes).
    std::string base_name;
    int level = 1;

    bool colored() const { return !face_color.empty() && !edge_color.empty(); }
    std::array<int, 3> face_color_class_sizes() const;
    std::vector<int> edges_of_color(int c) const;
};

/// Orbit extraction: vertices = beta orbits, edges = alpha orbits, faces = gamma orbits.
Tessellation extract(const pres::PermutationRep& rep, int p);

/// g from Euler characteristic; throws if chi is odd or g would be negative.
std::pair<int, int> compute_genus(int V, int E, int F);

/// Canonical proper face 3-coloring (color 0 = face of flag 0, then forced propagation).
void color_faces(Tessellation& t);

/// edge color = 3 - color(f1) - color(f2).
void color_edges(Tessellation& t);

bool check_hyperbolic(int p, int q);

/// Structured-text interchange format; stable field order.
void write_tessellation(std::ostream& os, const Tessellation& t);
Tessellation read_tessellation(std::istream& is);

} // namespace hfc::tess
