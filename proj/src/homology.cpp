#include "hfc/homology.hpp"

#include "hfc/error.hpp"

#include <algorithm>
#include <deque>
#include <tuple>

namespace hfc::hom {

namespace {

struct LinkGraph {
    int n = 0;
    const std::vector<std::array<int, 2>>* links = nullptr;

    std::vector<std::vector<std::pair<int, int>>> adj; // node -> (link, other)

    LinkGraph(int n_, const std::vector<std::array<int, 2>>& links_) : n(n_), links(&links_) {
        adj.resize(n);
        for (int l = 0; l < (int)links_.size(); ++l) {
            adj[links_[l][0]].push_back({l, links_[l][1]});
            adj[links_[l][1]].push_back({l, links_[l][0]});
        }
    }
};

struct BfsTree {
    std::vector<int> dist, pnode, plink;
};

BfsTree bfs(const LinkGraph& g, int root) {
    BfsTree t;
    t.dist.assign(g.n, -1);
    t.pnode.assign(g.n, -1);
    t.plink.assign(g.n, -1);
    std::deque<int> q{root};
    t.dist[root] = 0;
    while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        for (auto [l, y] : g.adj[x]) {
            if (t.dist[y] < 0) {
                t.dist[y] = t.dist[x] + 1;
                t.pnode[y] = x;
                t.plink[y] = l;
                q.push_back(y);
            }
        }
    }
    return t;
}

int lca_of(const BfsTree& t, int x, int y, std::vector<int>& stamp, int run) {
    for (int c = x; c >= 0; c = t.pnode[c]) stamp[c] = run;
    int c = y;
    while (stamp[c] != run) c = t.pnode[c];
    return c;
}

Gf2Vec fundamental_cycle(const BfsTree& t, int num_links, int link, int x, int y, int lca) {
    Gf2Vec bits(num_links);
    for (int c = x; c != lca; c = t.pnode[c]) bits.flip(t.plink[c]);
    for (int c = y; c != lca; c = t.pnode[c]) bits.flip(t.plink[c]);
    bits.flip(link);
    return bits;
}

Gf2Span boundary_span(const Gf2Matrix& rows) {
    Gf2Span span(rows.cols());
    for (int r = 0; r < rows.rows(); ++r) span.add(rows.row(r));
    return span;
}

/// Min-weight cycle whose class lies outside the given boundary span.
/// Scans every BFS-tree fundamental cycle from every root; returns -1 if all
/// candidates are trivial. Deterministic: strict improvements in (root, link)
/// scan order.
int shortest_nontrivial(const LinkGraph& g, const Gf2Span& span, Gf2Vec* out = nullptr) {
    int best = -1;
    std::vector<int> stamp(g.n, -1);
    int run = 0;
    for (int root = 0; root < g.n; ++root) {
        BfsTree t = bfs(g, root);
        for (int l = 0; l < (int)g.links->size(); ++l) {
            auto [x, y] = (*g.links)[l];
            if (t.dist[x] < 0 || t.dist[y] < 0) continue;
            if (t.plink[x] == l || t.plink[y] == l) continue;
            int lca = lca_of(t, x, y, stamp, run++);
            int w = t.dist[x] + t.dist[y] + 1 - 2 * t.dist[lca];
            if (best >= 0 && w >= best) continue;
            Gf2Vec bits = fundamental_cycle(t, (int)g.links->size(), l, x, y, lca);
            if (span.reduce(bits).any()) {
                best = w;
                if (out) *out = fundamental_cycle(t, (int)g.links->size(), l, x, y, lca);
            }
        }
    }
    return best;
}

void require_colored(const tess::Tessellation& t) {
    if (!t.colored()) throw error(errc::domain, "tessellation is not colored");
}

} // namespace

RestrictedLattice restricted_lattice(const tess::Tessellation& t, int color) {
    require_colored(t);
    if (color < 0 || color > 2) throw error(errc::domain, "color out of range");
    RestrictedLattice lat;
    lat.color = color;

    std::vector<int> face_to_node(t.num_faces, -1), face_to_site(t.num_faces, -1);
    for (int f = 0; f < t.num_faces; ++f) {
        if (t.face_color[f] == color) {
            face_to_site[f] = (int)lat.site_face.size();
            lat.site_face.push_back(f);
        } else {
            face_to_node[f] = (int)lat.node_face.size();
            lat.node_face.push_back(f);
        }
    }
    for (int e = 0; e < t.num_edges; ++e) {
        if (t.edge_color[e] != color) continue;
        int l = (int)lat.link_edge.size();
        lat.link_edge.push_back(e);
        lat.link_nodes.push_back({face_to_node[t.edge_faces[e][0]], face_to_node[t.edge_faces[e][1]]});
        std::array<int, 2> sites;
        for (int side = 0; side < 2; ++side) {
            int v = t.edge_endpoints[e][side];
            int cf = -1;
            for (int f : t.vertex_faces[v])
                if (t.face_color[f] == color) cf = f;
            if (cf < 0) throw error(errc::domain, "vertex without a face of each color");
            sites[side] = face_to_site[cf];
        }
        lat.link_sites.push_back(sites);
        (void)l;
    }

    int L = (int)lat.link_edge.size();
    lat.face_boundary = Gf2Matrix((int)lat.site_face.size(), L);
    lat.node_boundary = Gf2Matrix((int)lat.node_face.size(), L);
    for (int l = 0; l < L; ++l) {
        auto [s1, s2] = lat.link_sites[l];
        if (s1 != s2) {
            lat.face_boundary.row(s1).flip(l);
            lat.face_boundary.row(s2).flip(l);
        }
        lat.node_boundary.row(lat.link_nodes[l][0]).flip(l);
        lat.node_boundary.row(lat.link_nodes[l][1]).flip(l);
    }
    return lat;
}

int homology_rank(const RestrictedLattice& lat) {
    LinkGraph g((int)lat.node_face.size(), lat.link_nodes);
    int comps = 0;
    std::vector<char> seen(g.n, 0);
    for (int s = 0; s < g.n; ++s) {
        if (seen[s]) continue;
        ++comps;
        std::deque<int> q{s};
        seen[s] = 1;
        while (!q.empty()) {
            int x = q.front();
            q.pop_front();
            for (auto [l, y] : g.adj[x])
                if (!seen[y]) seen[y] = 1, q.push_back(y);
        }
    }
    int cycle_rank = (int)lat.link_edge.size() - g.n + comps;
    return cycle_rank - lat.face_boundary.rank();
}

bool is_nontrivial_cycle(const RestrictedLattice& lat, const std::vector<int>& edges) {
    std::vector<int> edge_to_link;
    for (int l = 0; l < (int)lat.link_edge.size(); ++l) {
        int e = lat.link_edge[l];
        if (e >= (int)edge_to_link.size()) edge_to_link.resize(e + 1, -1);
        edge_to_link[e] = l;
    }
    Gf2Vec bits((int)lat.link_edge.size());
    for (int e : edges) {
        if (e < 0 || e >= (int)edge_to_link.size() || edge_to_link[e] < 0)
            throw error(errc::not_a_cycle, "edge " + std::to_string(e) + " is not a link of this lattice");
        bits.flip(edge_to_link[e]); // repeated edges cancel mod 2
    }
    std::vector<int> degree(lat.node_face.size(), 0);
    for (int l = 0; l < (int)lat.link_edge.size(); ++l) {
        if (!bits.get(l)) continue;
        ++degree[lat.link_nodes[l][0]];
        ++degree[lat.link_nodes[l][1]];
    }
    for (size_t n = 0; n < degree.size(); ++n)
        if (degree[n] % 2)
            throw error(errc::not_a_cycle, "odd degree at lattice node " + std::to_string(n));
    return boundary_span(lat.face_boundary).reduce(bits).any();
}

DistanceDetail embedded_distance_detail(const tess::Tessellation& t) {
    require_colored(t);
    if (t.genus == 0) throw error(errc::trivial_homology, "genus-0 surface has no non-trivial cycles");
    DistanceDetail out;
    out.d = -1;
    for (int c = 0; c < 3; ++c) {
        RestrictedLattice lat = restricted_lattice(t, c);
        LinkGraph primal((int)lat.node_face.size(), lat.link_nodes);
        LinkGraph dual((int)lat.site_face.size(), lat.link_sites);
        int dc = shortest_nontrivial(primal, boundary_span(lat.face_boundary));
        int dd = shortest_nontrivial(dual, boundary_span(lat.node_boundary));
        if (dc < 0 || dd < 0)
            throw error(errc::rank_deficit, "no non-trivial cycle found for color " + std::to_string(c));
        out.cycle_d[c] = dc;
        out.cocycle_d[c] = dd;
        for (int d : {dc, dd})
            if (out.d < 0 || d < out.d) out.d = d;
    }
    return out;
}

int embedded_distance(const tess::Tessellation& t) { return embedded_distance_detail(t).d; }

std::vector<std::vector<int>> cycle_basis(const tess::Tessellation& t, int color) {
    require_colored(t);
    if (t.genus <= 0) throw error(errc::trivial_homology, "genus-0 surface has trivial homology");
    RestrictedLattice lat = restricted_lattice(t, color);
    LinkGraph g((int)lat.node_face.size(), lat.link_nodes);
    int L = (int)lat.link_edge.size();

    std::vector<BfsTree> trees(g.n);
    std::vector<std::tuple<int, int, int>> cand; // (weight, root, link)
    std::vector<int> stamp(g.n, -1);
    int run = 0;
    for (int root = 0; root < g.n; ++root) {
        trees[root] = bfs(g, root);
        const BfsTree& tr = trees[root];
        for (int l = 0; l < L; ++l) {
            auto [x, y] = lat.link_nodes[l];
            if (tr.dist[x] < 0 || tr.dist[y] < 0) continue;
            if (tr.plink[x] == l || tr.plink[y] == l) continue;
            int lca = lca_of(tr, x, y, stamp, run++);
            cand.emplace_back(tr.dist[x] + tr.dist[y] + 1 - 2 * tr.dist[lca], root, l);
        }
    }
    std::sort(cand.begin(), cand.end());

    Gf2Span span = boundary_span(lat.face_boundary);
    int target = span.rank() + 2 * t.genus;
    std::vector<std::vector<int>> basis;
    for (auto [w, root, l] : cand) {
        if (span.rank() >= target) break;
        const BfsTree& tr = trees[root];
        auto [x, y] = lat.link_nodes[l];
        int lca = lca_of(tr, x, y, stamp, run++);
        Gf2Vec bits = fundamental_cycle(tr, L, l, x, y, lca);
        if (!span.add(bits)) continue;
        std::vector<int> edges;
        for (int i = 0; i < L; ++i)
            if (bits.get(i)) edges.push_back(lat.link_edge[i]);
        basis.push_back(std::move(edges));
        (void)w;
    }
    if ((int)basis.size() != 2 * t.genus)
        throw error(errc::rank_deficit, "cycle candidates span rank " +
                                            std::to_string((int)basis.size()) + ", expected " +
                                            std::to_string(2 * t.genus));
    return basis;
}

} // namespace hfc::hom
