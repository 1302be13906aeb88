#include "hfc/error.hpp"
#include "hfc/tessellation.hpp"
#include "test_data.hpp"

#include <doctest.h>

#include <set>
#include <sstream>

using namespace hfc;

TEST_CASE("registry codes reproduce the published parameters") {
    struct Row {
        const char* name;
        int V, E, F, g, k;
    };
    // (V, E, F, g, k) per named code
    const Row rows[] = {
        {"H16", 16, 24, 6, 2, 4},    {"H32", 32, 48, 12, 3, 6},   {"H64", 64, 96, 24, 5, 10},
        {"H144", 144, 216, 54, 10, 20}, {"H256", 256, 384, 96, 17, 34},
        {"H50", 50, 75, 15, 6, 12},  {"H120", 120, 180, 36, 13, 26}, {"H250", 250, 375, 75, 26, 52},
        {"H720", 720, 1080, 216, 73, 146},
        {"H48", 48, 72, 12, 7, 14},  {"H72", 72, 108, 18, 10, 20},  {"H96", 96, 144, 24, 13, 26},
        {"H168", 168, 252, 42, 22, 44},
    };
    for (const auto& r : rows) {
        auto t = code(r.name);
        CHECK(t.num_vertices == r.V);
        CHECK(t.num_edges == r.E);
        CHECK(t.num_faces == r.F);
        CHECK(t.genus == r.g);
        CHECK(t.k == r.k);
    }
}

TEST_CASE("tessellation invariants hold on all registry codes") {
    for (const auto& e : registry()) {
        auto t = pres::build_code(e);
        size_t boundary_sum = 0;
        for (const auto& b : t.face_boundary) {
            CHECK(b.size() == (size_t)t.p);
            boundary_sum += b.size();
        }
        CHECK(boundary_sum == 2 * (size_t)t.num_edges);

        // each color class of edges is a perfect matching on vertices
        for (int c = 0; c < 3; ++c) {
            std::vector<int> cover(t.num_vertices, 0);
            for (int ed : t.edges_of_color(c)) {
                ++cover[t.edge_endpoints[ed][0]];
                ++cover[t.edge_endpoints[ed][1]];
            }
            for (int v = 0; v < t.num_vertices; ++v) CHECK(cover[v] == 1);
        }

        // proper face coloring; distinct colors around each vertex
        for (int ed = 0; ed < t.num_edges; ++ed) {
            auto [f1, f2] = t.edge_faces[ed];
            CHECK(t.face_color[f1] != t.face_color[f2]);
            CHECK(t.edge_color[ed] == 3 - t.face_color[f1] - t.face_color[f2]);
        }
        for (int v = 0; v < t.num_vertices; ++v) {
            std::set<int> fc, ec;
            for (int f : t.vertex_faces[v]) fc.insert(t.face_color[f]);
            for (int ed : t.vertex_star[v]) ec.insert(t.edge_color[ed]);
            CHECK(fc.size() == 3);
            CHECK(ec.size() == 3);
        }
    }
}

TEST_CASE("hyperbolicity condition") {
    CHECK(tess::check_hyperbolic(8, 3));
    CHECK(tess::check_hyperbolic(7, 3));
    CHECK_FALSE(tess::check_hyperbolic(6, 3));
    CHECK_FALSE(tess::check_hyperbolic(4, 4));
    CHECK(tess::check_hyperbolic(5, 4));
}

TEST_CASE("interchange format round trip is byte-stable") {
    auto t = code("H16");
    std::ostringstream s1;
    tess::write_tessellation(s1, t);
    std::istringstream in(s1.str());
    auto t2 = tess::read_tessellation(in);
    std::ostringstream s2;
    tess::write_tessellation(s2, t2);
    CHECK(s1.str() == s2.str());
    CHECK(t2.num_vertices == t.num_vertices);
    CHECK(t2.face_boundary == t.face_boundary);
    CHECK(t2.edge_color == t.edge_color);
    CHECK(t2.genus == t.genus);
}

TEST_CASE("genus computation rejects odd Euler characteristic") {
    CHECK(tess::compute_genus(16, 24, 6) == std::pair<int, int>{2, 4});
    CHECK_THROWS_AS(tess::compute_genus(16, 24, 7), error);
    CHECK_THROWS_AS(tess::compute_genus(100, 24, 6), error); // chi > 2
}
