#include "hfc/error.hpp"
#include "hfc/homology.hpp"
#include "test_data.hpp"

#include <doctest.h>

using namespace hfc;

namespace {

// Exhaustive oracle: scan all 2^L link subsets of a restricted-lattice graph,
// keep even-degree subsets outside the boundary span, return the minimum
// weight. Only viable for L <= ~20.
int brute_force_shortest(int nodes, const std::vector<std::array<int, 2>>& links,
                         const hom::Gf2Matrix& boundary) {
    int L = (int)links.size();
    REQUIRE(L <= 20);
    hom::Gf2Span span(L);
    for (int r = 0; r < boundary.rows(); ++r) span.add(boundary.row(r));
    int best = -1;
    for (uint32_t mask = 1; mask < (1u << L); ++mask) {
        int w = __builtin_popcount(mask);
        if (best >= 0 && w >= best) continue;
        std::vector<int> deg(nodes, 0);
        hom::Gf2Vec bits(L);
        for (int l = 0; l < L; ++l)
            if (mask >> l & 1) {
                bits.flip(l);
                ++deg[links[l][0]];
                ++deg[links[l][1]];
            }
        bool cycle = true;
        for (int d : deg) cycle = cycle && d % 2 == 0;
        if (cycle && span.reduce(bits).any()) best = w;
    }
    return best;
}

} // namespace

TEST_CASE("restricted lattice shape on the Bolza code") {
    auto t = code("H16");
    auto lat = hom::restricted_lattice(t, 0);
    CHECK(lat.node_face.size() == 4);
    CHECK(lat.link_edge.size() == 8);
    for (auto [n1, n2] : lat.link_nodes)
        CHECK(t.face_color[lat.node_face[n1]] != t.face_color[lat.node_face[n2]]);
    CHECK(hom::homology_rank(lat) == 2 * t.genus);
}

TEST_CASE("restricted lattice homology rank is 2g for every color") {
    for (const char* name : {"H16", "H32", "H48", "H50", "H72"}) {
        auto t = code(name);
        for (int c = 0; c < 3; ++c)
            CHECK(hom::homology_rank(hom::restricted_lattice(t, c)) == 2 * t.genus);
    }
}

TEST_CASE("embedded distance matches published values") {
    struct Row {
        const char* name;
        int d;
    };
    const Row rows[] = {{"H16", 2},  {"H32", 2},  {"H64", 2},  {"H144", 4}, {"H256", 4},
                        {"H50", 2},  {"H120", 2}, {"H250", 4},
                        {"H48", 2},  {"H72", 2},  {"H96", 2},  {"H168", 2}};
    for (const auto& r : rows) CHECK(hom::embedded_distance(code(r.name)) == r.d);
}

TEST_CASE("embedded distance equals brute-force enumeration on small codes") {
    for (const char* name : {"H16", "H32", "H48"}) {
        auto t = code(name);
        auto detail = hom::embedded_distance_detail(t);
        for (int c = 0; c < 3; ++c) {
            auto lat = hom::restricted_lattice(t, c);
            if (lat.link_edge.size() > 20) continue;
            CHECK(detail.cycle_d[c] ==
                  brute_force_shortest((int)lat.node_face.size(), lat.link_nodes, lat.face_boundary));
            CHECK(detail.cocycle_d[c] ==
                  brute_force_shortest((int)lat.site_face.size(), lat.link_sites, lat.node_boundary));
        }
    }
}

TEST_CASE("cycle basis spans H1 with short non-trivial representatives") {
    for (const char* name : {"H16", "H72"}) {
        auto t = code(name);
        auto basis = hom::cycle_basis(t, 2);
        CHECK((int)basis.size() == 2 * t.genus);
        auto lat = hom::restricted_lattice(t, 2);
        hom::Gf2Span span((int)lat.link_edge.size());
        for (int r = 0; r < lat.face_boundary.rows(); ++r) span.add(lat.face_boundary.row(r));
        int brank = span.rank();
        for (const auto& cyc : basis) {
            CHECK(hom::is_nontrivial_cycle(lat, cyc));
            hom::Gf2Vec bits((int)lat.link_edge.size());
            std::vector<int> edge_to_link(t.num_edges, -1);
            for (int l = 0; l < (int)lat.link_edge.size(); ++l) edge_to_link[lat.link_edge[l]] = l;
            for (int e : cyc) bits.flip(edge_to_link[e]);
            CHECK(span.add(bits));
        }
        CHECK(span.rank() == brank + 2 * t.genus);
    }
}

TEST_CASE("face boundaries are trivial cycles; sums of trivial stay trivial") {
    auto t = code("H16");
    auto lat = hom::restricted_lattice(t, 1);
    // first embedded face boundary as an edge list
    std::vector<int> edges, edges2;
    for (int l = 0; l < (int)lat.link_edge.size(); ++l) {
        if (lat.face_boundary.row(0).get(l)) edges.push_back(lat.link_edge[l]);
        if (lat.face_boundary.row(0).get(l) ^ lat.face_boundary.row(1).get(l))
            edges2.push_back(lat.link_edge[l]);
    }
    CHECK_FALSE(hom::is_nontrivial_cycle(lat, edges));
    CHECK_FALSE(hom::is_nontrivial_cycle(lat, edges2));
    // a single link is never a cycle
    CHECK_THROWS_AS(hom::is_nontrivial_cycle(lat, {lat.link_edge[0]}), error);
}

TEST_CASE("distance is invariant under global color permutation") {
    auto t = code("H32");
    int d0 = hom::embedded_distance(t);
    auto permuted = t;
    for (auto& c : permuted.face_color) c = (c + 1) % 3;
    for (auto& c : permuted.edge_color) c = (c + 1) % 3;
    CHECK(hom::embedded_distance(permuted) == d0);
}

TEST_CASE("genus-0 input raises TRIVIAL_HOMOLOGY") {
    auto rep = pres::todd_coxeter(pres::Presentation(4));
    auto t = tess::extract(rep, 4);
    tess::color_faces(t);
    tess::color_edges(t);
    CHECK_THROWS_AS(hom::embedded_distance(t), error);
}
