#include "hfc/tessellation.hpp"

#include "hfc/error.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>

namespace hfc::tess {

std::array<int, 3> Tessellation::face_color_class_sizes() const {
    std::array<int, 3> sizes = {0, 0, 0};
    for (int c : face_color)
        if (c >= 0) ++sizes[c];
    return sizes;
}

std::vector<int> Tessellation::edges_of_color(int c) const {
    std::vector<int> out;
    for (int e = 0; e < num_edges; ++e)
        if (edge_color[e] == c) out.push_back(e);
    return out;
}

namespace {

// Orbit labelling: ids ascend by smallest flag in the orbit.
std::vector<int> label_orbits(int n, const std::vector<int>& perm, int expected_size, const char* what) {
    std::vector<int> label(n, -1);
    int next = 0;
    for (int i = 0; i < n; ++i) {
        if (label[i] >= 0) continue;
        int size = 0;
        int x = i;
        do {
            label[x] = next;
            x = perm[x];
            ++size;
        } while (x != i);
        if (size != expected_size)
            throw error(errc::malformed_orbits, std::string(what) + " orbit of flag " + std::to_string(i) +
                                                    " has size " + std::to_string(size) + ", expected " +
                                                    std::to_string(expected_size));
        ++next;
    }
    return label;
}

} // namespace

Tessellation extract(const pres::PermutationRep& rep, int p) {
    auto report = validate_rep(rep, p);
    if (!report.ok()) {
        std::string msg = "representation fails validation:";
        for (const auto& v : report.violations) msg += " " + v;
        if (!report.transitive) msg += " (not transitive)";
        throw error(errc::malformed_orbits, msg);
    }
    int n = rep.flag_count;
    auto vert_of = label_orbits(n, rep.perm_beta, 3, "beta");
    auto edge_of = label_orbits(n, rep.perm_alpha, 2, "alpha");
    auto face_of = label_orbits(n, rep.perm_gamma, p, "gamma");

    Tessellation t;
    t.p = p;
    t.num_vertices = 1 + *std::max_element(vert_of.begin(), vert_of.end());
    t.num_edges = 1 + *std::max_element(edge_of.begin(), edge_of.end());
    t.num_faces = 1 + *std::max_element(face_of.begin(), face_of.end());
    if (3 * t.num_vertices != 2 * t.num_edges || p * t.num_faces != 2 * t.num_edges)
        throw error(errc::malformed_orbits, "combinatorial identity 3V = 2E = pF violated");

    t.edge_endpoints.assign(t.num_edges, {-1, -1});
    t.edge_faces.assign(t.num_edges, {-1, -1});
    for (int i = 0; i < n; ++i) {
        int e = edge_of[i];
        if (t.edge_endpoints[e][0] >= 0) continue; // already filled from the smaller flag
        int j = rep.perm_alpha[i];
        if (vert_of[i] == vert_of[j])
            throw error(errc::malformed_orbits, "self-loop edge " + std::to_string(e));
        t.edge_endpoints[e] = {vert_of[i], vert_of[j]};
        t.edge_faces[e] = {face_of[i], face_of[j]};
    }

    // Face boundaries: walk the gamma orbit from its smallest flag.
    t.face_boundary.assign(t.num_faces, {});
    t.face_vertices.assign(t.num_faces, {});
    std::vector<int> face_seed(t.num_faces, -1);
    for (int i = 0; i < n; ++i)
        if (face_seed[face_of[i]] < 0) face_seed[face_of[i]] = i;
    for (int f = 0; f < t.num_faces; ++f) {
        int x = face_seed[f];
        do {
            t.face_boundary[f].push_back(edge_of[x]);
            t.face_vertices[f].push_back(vert_of[x]);
            x = rep.perm_gamma[x];
        } while (x != face_seed[f]);
    }

    t.vertex_star.assign(t.num_vertices, {-1, -1, -1});
    t.vertex_faces.assign(t.num_vertices, {-1, -1, -1});
    std::vector<int> vert_seed(t.num_vertices, -1);
    for (int i = 0; i < n; ++i)
        if (vert_seed[vert_of[i]] < 0) vert_seed[vert_of[i]] = i;
    for (int v = 0; v < t.num_vertices; ++v) {
        int x = vert_seed[v];
        for (int s = 0; s < 3; ++s) {
            t.vertex_star[v][s] = edge_of[x];
            t.vertex_faces[v][s] = face_of[x];
            x = rep.perm_beta[x];
        }
    }

    auto [g, k] = compute_genus(t.num_vertices, t.num_edges, t.num_faces);
    t.genus = g;
    t.k = k;
    return t;
}

std::pair<int, int> compute_genus(int V, int E, int F) {
    int chi = V - E + F;
    int twice_g = 2 - chi;
    if (twice_g < 0 || twice_g % 2 != 0)
        throw error(errc::non_orientable_or_inconsistent,
                    "Euler characteristic " + std::to_string(chi) + " is not of the form 2-2g");
    return {twice_g / 2, twice_g};
}

void color_faces(Tessellation& t) {
    if (t.p % 2 != 0)
        throw error(errc::not_three_colorable, "odd p: faces around an odd face cannot alternate two colors");
    t.face_color.assign(t.num_faces, -1);

    // Seeds: face 0 (contains flag 0) gets color 0; its lowest-index neighbor gets color 1.
    t.face_color[0] = 0;
    int neighbor = t.num_faces;
    for (int e : t.face_boundary[0]) {
        int other = t.edge_faces[e][0] == 0 ? t.edge_faces[e][1] : t.edge_faces[e][0];
        if (other != 0) neighbor = std::min(neighbor, other);
    }
    if (neighbor >= t.num_faces)
        throw error(errc::not_three_colorable, "face 0 has no distinct neighbor");
    t.face_color[neighbor] = 1;

    // Forced propagation: the 3 faces around each vertex carry 3 distinct colors.
    std::deque<int> queue;
    for (int v = 0; v < t.num_vertices; ++v) queue.push_back(v);
    int colored = 2;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        const auto& fs = t.vertex_faces[v];
        int unknown = -1, mask = 0, known = 0;
        for (int f : fs) {
            if (t.face_color[f] < 0) {
                unknown = f;
            } else {
                if (mask & (1 << t.face_color[f]))
                    throw error(errc::not_three_colorable,
                                "two faces at vertex " + std::to_string(v) + " share a color");
                mask |= 1 << t.face_color[f];
                ++known;
            }
        }
        if (known == 2 && unknown >= 0) {
            t.face_color[unknown] = (0 + 1 + 2) - (mask == 3 ? 1 : mask == 5 ? 2 : 3);
            // mask 3 = {0,1} -> 2; mask 5 = {0,2} -> 1; mask 6 = {1,2} -> 0
            ++colored;
            for (int u : t.face_vertices[unknown]) queue.push_back(u);
        }
    }
    if (colored != t.num_faces)
        throw error(errc::not_three_colorable, "coloring propagation stalled: the quotient does not "
                                               "admit a vertex-proper 3-coloring");
    // Final adjacency check.
    for (int e = 0; e < t.num_edges; ++e)
        if (t.face_color[t.edge_faces[e][0]] == t.face_color[t.edge_faces[e][1]])
            throw error(errc::not_three_colorable, "adjacent faces share a color at edge " + std::to_string(e));
}

void color_edges(Tessellation& t) {
    if (t.face_color.empty()) throw error(errc::domain, "face colors must be assigned first");
    t.edge_color.assign(t.num_edges, -1);
    for (int e = 0; e < t.num_edges; ++e) {
        int c1 = t.face_color[t.edge_faces[e][0]];
        int c2 = t.face_color[t.edge_faces[e][1]];
        if (c1 == c2)
            throw error(errc::adjacent_same_color, "edge " + std::to_string(e) + " joins two color-" +
                                                       std::to_string(c1) + " faces");
        t.edge_color[e] = 3 - c1 - c2;
    }
    for (int v = 0; v < t.num_vertices; ++v) {
        int mask = 0;
        for (int e : t.vertex_star[v]) mask |= 1 << t.edge_color[e];
        if (mask != 7)
            throw error(errc::adjacent_same_color,
                        "vertex " + std::to_string(v) + " does not see all three edge colors");
    }
}

bool check_hyperbolic(int p, int q) {
    if (p < 3 || q < 3) throw error(errc::domain, "p, q must be >= 3");
    return (p - 2) * (q - 2) > 4;
}

void write_tessellation(std::ostream& os, const Tessellation& t) {
    os << "tessellation p=" << t.p << " V=" << t.num_vertices << " E=" << t.num_edges << " F=" << t.num_faces
       << " g=" << t.genus << " k=" << t.k << "\n";
    if (t.level != 1 || !t.base_name.empty())
        os << "base=" << (t.base_name.empty() ? "?" : t.base_name) << " level=" << t.level << "\n";
    for (int e = 0; e < t.num_edges; ++e) {
        os << "edge " << e << " v " << t.edge_endpoints[e][0] << " " << t.edge_endpoints[e][1] << " f "
           << t.edge_faces[e][0] << " " << t.edge_faces[e][1];
        if (!t.edge_color.empty()) os << " color " << t.edge_color[e];
        os << "\n";
    }
    for (int f = 0; f < t.num_faces; ++f) {
        os << "face " << f;
        if (!t.face_color.empty()) os << " color " << t.face_color[f];
        os << " edges";
        for (int e : t.face_boundary[f]) os << " " << e;
        os << " vertices";
        for (int v : t.face_vertices[f]) os << " " << v;
        os << "\n";
    }
    for (int v = 0; v < t.num_vertices; ++v) {
        os << "vertex " << v << " edges " << t.vertex_star[v][0] << " " << t.vertex_star[v][1] << " "
           << t.vertex_star[v][2] << " faces " << t.vertex_faces[v][0] << " " << t.vertex_faces[v][1] << " "
           << t.vertex_faces[v][2] << "\n";
    }
}

Tessellation read_tessellation(std::istream& is) {
    Tessellation t;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw error(errc::parse_error, "line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string tag;
        ss >> tag;
        if (tag == "tessellation") {
            std::string kv;
            while (ss >> kv) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) fail("bad key=value: " + kv);
                std::string key = kv.substr(0, eq);
                int value = std::stoi(kv.substr(eq + 1));
                if (key == "p") t.p = value;
                else if (key == "V") t.num_vertices = value;
                else if (key == "E") t.num_edges = value;
                else if (key == "F") t.num_faces = value;
                else if (key == "g") t.genus = value;
                else if (key == "k") t.k = value;
                else fail("unknown key " + key);
            }
            t.edge_endpoints.assign(t.num_edges, {-1, -1});
            t.edge_faces.assign(t.num_edges, {-1, -1});
            t.edge_color.assign(t.num_edges, -1);
            t.face_boundary.assign(t.num_faces, {});
            t.face_vertices.assign(t.num_faces, {});
            t.face_color.assign(t.num_faces, -1);
            t.vertex_star.assign(t.num_vertices, {-1, -1, -1});
            t.vertex_faces.assign(t.num_vertices, {-1, -1, -1});
        } else if (tag == "base" || line.rfind("base=", 0) == 0) {
            std::istringstream ls(line);
            std::string kv;
            while (ls >> kv) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) fail("bad key=value: " + kv);
                std::string key = kv.substr(0, eq);
                if (key == "base") t.base_name = kv.substr(eq + 1);
                else if (key == "level") t.level = std::stoi(kv.substr(eq + 1));
                else fail("unknown key " + key);
            }
        } else if (tag == "edge") {
            int e;
            std::string word;
            ss >> e >> word;
            if (word != "v") fail("expected 'v'");
            ss >> t.edge_endpoints[e][0] >> t.edge_endpoints[e][1] >> word;
            if (word != "f") fail("expected 'f'");
            ss >> t.edge_faces[e][0] >> t.edge_faces[e][1];
            if (ss >> word) {
                if (word != "color") fail("expected 'color'");
                ss >> t.edge_color[e];
            }
        } else if (tag == "face") {
            int f;
            std::string word;
            ss >> f >> word;
            if (word == "color") {
                ss >> t.face_color[f] >> word;
            }
            if (word != "edges") fail("expected 'edges'");
            int x;
            std::vector<int>* target = &t.face_boundary[f];
            while (ss >> word) {
                if (word == "vertices") {
                    target = &t.face_vertices[f];
                    continue;
                }
                try {
                    x = std::stoi(word);
                } catch (...) {
                    fail("expected integer, got " + word);
                }
                target->push_back(x);
            }
        } else if (tag == "vertex") {
            int v;
            std::string word;
            ss >> v >> word;
            if (word != "edges") fail("expected 'edges'");
            ss >> t.vertex_star[v][0] >> t.vertex_star[v][1] >> t.vertex_star[v][2] >> word;
            if (word != "faces") fail("expected 'faces'");
            ss >> t.vertex_faces[v][0] >> t.vertex_faces[v][1] >> t.vertex_faces[v][2];
        } else {
            fail("unknown record " + tag);
        }
    }
    if (std::all_of(t.edge_color.begin(), t.edge_color.end(), [](int c) { return c < 0; })) t.edge_color.clear();
    if (std::all_of(t.face_color.begin(), t.face_color.end(), [](int c) { return c < 0; })) t.face_color.clear();
    return t;
}

} // namespace hfc::tess
