#include "hfc/finegrain.hpp"

#include "hfc/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace hfc::fg {

DualTriangulation dualize(const tess::Tessellation& t) {
    if (!t.colored()) throw error(errc::domain, "dualize needs a colored tessellation");
    DualTriangulation d;
    d.vertex_color = t.face_color;
    d.tri_corners.reserve(t.num_vertices);
    d.tri_sides.reserve(t.num_vertices);
    for (int v = 0; v < t.num_vertices; ++v) {
        const auto& faces = t.vertex_faces[v];
        d.tri_corners.push_back(faces);
        std::array<int, 3> sides{};
        for (int s = 0; s < 3; ++s) {
            int f1 = faces[s], f2 = faces[(s + 1) % 3];
            // the unique edge at v between these two faces: its color is the
            // complement of the two face colors
            int want = 3 - t.face_color[f1] - t.face_color[f2];
            int found = -1;
            for (int e : t.vertex_star[v])
                if (t.edge_color[e] == want) found = e;
            if (found < 0) throw error(errc::domain, "vertex star missing an edge color");
            sides[s] = found;
        }
        d.tri_sides.push_back(sides);
    }
    d.num_sides = t.num_edges;
    return d;
}

DualTriangulation subdivide(const DualTriangulation& d, int level) {
    if (level < 1) throw error(errc::domain, "fine-graining level must be >= 1");
    if (level == 1) return d;
    const int l = level;

    DualTriangulation out;
    std::vector<int> corner_id(d.vertex_color.size(), -1);
    std::map<std::pair<int, int>, int> seam_id; // (seam key, offset from smaller-id corner)

    auto new_vertex = [&](int color) {
        out.vertex_color.push_back(color);
        return (int)out.vertex_color.size() - 1;
    };
    auto place = [&](int id, int color, const char* what) {
        if (id < 0) return new_vertex(color);
        if (out.vertex_color[id] != color)
            throw error(errc::seam_mismatch, std::string("conflicting colors at shared ") + what);
        return id;
    };

    std::map<std::pair<int, int>, int> seam_side_key; // (seam key, segment) -> new side key
    int next_side = 0;
    auto seam_side = [&](int key, int seg) {
        auto [it, fresh] = seam_side_key.try_emplace({key, seg}, next_side);
        if (fresh) ++next_side;
        return it->second;
    };

    for (size_t tri = 0; tri < d.tri_corners.size(); ++tri) {
        auto [A, B, C] = d.tri_corners[tri];
        std::array<int, 3> cc = {d.vertex_color[A], d.vertex_color[B], d.vertex_color[C]};
        auto [eAB, eBC, eCA] = d.tri_sides[tri];

        // grid ids indexed by (i,j); m = l - i - j
        std::vector<std::vector<int>> grid(l + 1, std::vector<int>(l + 1, -1));
        for (int i = 0; i <= l; ++i) {
            for (int j = 0; j + i <= l; ++j) {
                int m = l - i - j;
                int color = (i * cc[0] + j * cc[1] + m * cc[2]) % 3;
                int id;
                if (i == l) {
                    id = corner_id[A] = place(corner_id[A], color, "corner");
                } else if (j == l) {
                    id = corner_id[B] = place(corner_id[B], color, "corner");
                } else if (m == l) {
                    id = corner_id[C] = place(corner_id[C], color, "corner");
                } else if (m == 0) { // side AB, offset j from A
                    int off = A < B ? j : i;
                    int& slot = seam_id.try_emplace({eAB, off}, -1).first->second;
                    id = slot = place(slot, color, "seam point");
                } else if (i == 0) { // side BC, offset m from B
                    int off = B < C ? m : j;
                    int& slot = seam_id.try_emplace({eBC, off}, -1).first->second;
                    id = slot = place(slot, color, "seam point");
                } else if (j == 0) { // side CA, offset i from C
                    int off = C < A ? i : m;
                    int& slot = seam_id.try_emplace({eCA, off}, -1).first->second;
                    id = slot = place(slot, color, "seam point");
                } else {
                    id = new_vertex(color);
                }
                grid[i][j] = id;
            }
        }

        // seam segment key: offset of the segment's lower end, measured from
        // the smaller-id corner
        auto ab_key = [&](int j) { return seam_side(eAB, A < B ? j : l - 1 - j); };
        auto bc_key = [&](int m) { return seam_side(eBC, B < C ? m : l - 1 - m); };
        auto ca_key = [&](int i) { return seam_side(eCA, C < A ? i : l - 1 - i); };

        // interior sides are shared between an up and a down triangle of this
        // base triangle; match them by vertex pair
        std::map<std::pair<int, int>, int> local_side;
        auto side_for = [&](int u, int v, int seam) {
            if (seam >= 0) return seam;
            auto [lo, hi] = std::minmax(u, v);
            auto [it, fresh] = local_side.try_emplace(std::pair{lo, hi}, -1);
            if (it->second < 0) it->second = next_side++;
            (void)fresh;
            return it->second;
        };

        // up triangles: corners (i+1,j,m), (i,j+1,m), (i,j,m+1) for i+j+m = l-1
        for (int i = 0; i + 1 <= l; ++i) {
            for (int j = 0; i + j + 1 <= l; ++j) {
                int m = l - 1 - i - j;
                int p1 = grid[i + 1][j], p2 = grid[i][j + 1], p3 = grid[i][j];
                out.tri_corners.push_back({p1, p2, p3});
                out.tri_sides.push_back({side_for(p1, p2, m == 0 ? ab_key(j) : -1),
                                         side_for(p2, p3, i == 0 ? bc_key(m) : -1),
                                         side_for(p3, p1, j == 0 ? ca_key(i) : -1)});
            }
        }
        // down triangles: corners (i,j+1,m+1), (i+1,j,m+1), (i+1,j+1,m) for
        // i+j+m = l-2; all their sides are interior
        for (int i = 0; i + 2 <= l; ++i) {
            for (int j = 0; i + j + 2 <= l; ++j) {
                int q1 = grid[i][j + 1], q2 = grid[i + 1][j], q3 = grid[i + 1][j + 1];
                out.tri_corners.push_back({q1, q2, q3});
                out.tri_sides.push_back({side_for(q1, q2, -1), side_for(q2, q3, -1),
                                         side_for(q3, q1, -1)});
            }
        }
    }

    out.num_sides = next_side;
    return out;
}

tess::Tessellation primalize(const DualTriangulation& d, int p) {
    // sides -> primal edges, in first-appearance order over (triangle, slot)
    std::map<int, std::array<int, 2>> side_tris; // key -> two triangle ids
    for (size_t tri = 0; tri < d.tri_corners.size(); ++tri)
        for (int s = 0; s < 3; ++s) {
            auto [it, fresh] = side_tris.try_emplace(d.tri_sides[tri][s], std::array<int, 2>{-1, -1});
            auto& pair = it->second;
            (fresh ? pair[0] : pair[1]) = (int)tri;
        }

    tess::Tessellation t;
    t.p = p;
    t.num_vertices = (int)d.tri_corners.size();
    t.num_faces = (int)d.vertex_color.size();

    std::vector<int> edge_of_side(d.num_sides, -1);
    for (size_t tri = 0; tri < d.tri_corners.size(); ++tri) {
        for (int s = 0; s < 3; ++s) {
            int key = d.tri_sides[tri][s];
            if (edge_of_side[key] >= 0) continue;
            auto pair = side_tris.at(key);
            if (pair[1] < 0) throw error(errc::seam_mismatch, "unpaired triangle side");
            edge_of_side[key] = t.num_edges++;
            t.edge_endpoints.push_back({pair[0], pair[1]});
            // faces: the side's two corner dual vertices
            int slot = -1;
            for (int ss = 0; ss < 3; ++ss)
                if (d.tri_sides[tri][ss] == key) slot = ss;
            t.edge_faces.push_back({d.tri_corners[tri][slot], d.tri_corners[tri][(slot + 1) % 3]});
        }
    }

    t.vertex_star.resize(t.num_vertices);
    t.vertex_faces.resize(t.num_vertices);
    for (int tri = 0; tri < t.num_vertices; ++tri) {
        for (int s = 0; s < 3; ++s) {
            t.vertex_star[tri][s] = edge_of_side[d.tri_sides[tri][s]];
            t.vertex_faces[tri][s] = d.tri_corners[tri][s];
        }
    }

    // walk around each dual vertex to order its face boundary
    t.face_boundary.resize(t.num_faces);
    t.face_vertices.resize(t.num_faces);
    std::vector<std::vector<int>> tris_of_face(t.num_faces);
    for (int tri = 0; tri < t.num_vertices; ++tri)
        for (int s = 0; s < 3; ++s) tris_of_face[d.tri_corners[tri][s]].push_back(tri);
    for (int f = 0; f < t.num_faces; ++f) {
        auto& tris = tris_of_face[f];
        if (tris.empty()) throw error(errc::seam_mismatch, "isolated dual vertex");
        int start = *std::min_element(tris.begin(), tris.end());
        // the two sides of `start` containing f
        std::array<int, 2> fsides{-1, -1};
        for (int s = 0; s < 3; ++s) {
            if (d.tri_corners[start][s] == f) {
                fsides = {d.tri_sides[start][s], d.tri_sides[start][(s + 2) % 3]};
            }
        }
        int cur = start;
        int via = std::min(fsides[0], fsides[1]);
        size_t steps = 0;
        do {
            if (++steps > tris.size())
                throw error(errc::seam_mismatch, "face walk did not close properly");
            t.face_vertices[f].push_back(cur);
            t.face_boundary[f].push_back(edge_of_side[via]);
            auto pair = side_tris.at(via);
            int next = pair[0] == cur ? pair[1] : pair[0];
            // find the other f-containing side of `next`
            int out_side = -1;
            for (int s = 0; s < 3; ++s) {
                int corner = d.tri_corners[next][s];
                int side1 = d.tri_sides[next][s], side0 = d.tri_sides[next][(s + 2) % 3];
                if (corner == f)
                    for (int cand : {side0, side1})
                        if (cand != via) out_side = cand;
            }
            if (out_side < 0) throw error(errc::seam_mismatch, "face walk left the face");
            cur = next;
            via = out_side;
        } while (cur != start || via != std::min(fsides[0], fsides[1]));
        if ((int)t.face_boundary[f].size() != (int)tris.size())
            throw error(errc::seam_mismatch, "face walk did not close properly");
    }

    t.face_color = d.vertex_color;
    auto [g, k] = tess::compute_genus(t.num_vertices, t.num_edges, t.num_faces);
    t.genus = g;
    t.k = k;
    tess::color_edges(t);
    return t;
}

tess::Tessellation finegrain(const tess::Tessellation& base, int level) {
    tess::Tessellation out = primalize(subdivide(dualize(base), level), base.p);
    if (out.genus != base.genus)
        throw error(errc::seam_mismatch, "fine-graining changed the genus");
    if (out.num_vertices != level * level * base.num_vertices)
        throw error(errc::seam_mismatch, "fine-graining produced the wrong vertex count");
    out.base_name = base.base_name.empty() ? "anonymous" : base.base_name;
    out.level = level;
    return out;
}

double hyperbolic_dist(PoincarePoint z1, PoincarePoint z2) {
    double num = std::abs(z1 - z2);
    double den = std::abs(1.0 - z1 * std::conj(z2));
    return 2.0 * std::atanh(num / den);
}

PoincarePoint hyperbolic_midpoint(PoincarePoint z1, PoincarePoint z2) {
    // translate z1 to the origin, halve, translate back
    PoincarePoint phi = (z2 - z1) / (1.0 - std::conj(z1) * z2);
    PoincarePoint w = phi / (1.0 + std::sqrt(1.0 - std::norm(phi)));
    return (w + z1) / (1.0 + std::conj(z1) * w);
}

} // namespace hfc::fg
