#pragma once

#include "hfc/tessellation.hpp"

#include <array>
#include <complex>
#include <vector>

namespace hfc::fg {

/// Dual triangulation: one vertex per primal face (carrying its color), one
/// triangle per primal vertex. Sides carry seam keys so that multi-edges
/// between the same face pair stay distinguishable.
struct DualTriangulation {
    std::vector<int> vertex_color;              // dual vertex -> color
    std::vector<std::array<int, 3>> tri_corners; // dual vertex ids
    std::vector<std::array<int, 3>> tri_sides;   // side s = corners (s, s+1); shared key per seam
    int num_sides = 0;
};

DualTriangulation dualize(const tess::Tessellation& t);

/// l^2-fold barycentric subdivision. New vertices at integer barycentric
/// coordinates (i,j,m), i+j+m=l, colored (i*c0 + j*c1 + m*c2) mod 3. Seam
/// points are shared via (seam key, offset from the smaller-id corner).
DualTriangulation subdivide(const DualTriangulation& d, int level);

/// Back to a colored tessellation: vertices = triangles, faces = dual
/// vertices. Face boundaries are walked around each dual vertex, so cyclic
/// order is meaningful. p is inherited from the caller for bookkeeping only;
/// fine-grained faces have mixed sizes (p-gons at old face centers, hexagons
/// elsewhere).
tess::Tessellation primalize(const DualTriangulation& d, int p);

/// dualize + subdivide + primalize, with base/level metadata and genus check.
tess::Tessellation finegrain(const tess::Tessellation& base, int level);

/// Poincare disk helpers (plotting support; the pipeline itself is
/// coordinate-free).
using PoincarePoint = std::complex<double>;

double hyperbolic_dist(PoincarePoint z1, PoincarePoint z2);
PoincarePoint hyperbolic_midpoint(PoincarePoint z1, PoincarePoint z2);

} // namespace hfc::fg
