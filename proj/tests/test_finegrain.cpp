#include "hfc/error.hpp"
#include "hfc/finegrain.hpp"
#include "hfc/homology.hpp"
#include "test_data.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace hfc;

TEST_CASE("dualize counts and corner colors") {
    for (const char* name : {"H16", "H50"}) {
        auto t = code(name);
        auto d = fg::dualize(t);
        CHECK((int)d.tri_corners.size() == t.num_vertices);
        CHECK((int)d.vertex_color.size() == t.num_faces);
        for (const auto& tri : d.tri_corners) {
            std::set<int> colors;
            for (int c : tri) colors.insert(d.vertex_color[c]);
            CHECK(colors.size() == 3);
        }
    }
}

TEST_CASE("level-1 fine-graining is a structural no-op") {
    auto t = code("H16");
    auto rt = fg::finegrain(t, 1);
    CHECK(rt.num_vertices == t.num_vertices);
    CHECK(rt.num_edges == t.num_edges);
    CHECK(rt.num_faces == t.num_faces);
    CHECK(rt.genus == t.genus);
    CHECK(rt.face_color_class_sizes() == t.face_color_class_sizes());
    CHECK(hom::embedded_distance(rt) == hom::embedded_distance(t));
}

TEST_CASE("fine-grained sizes and distances match published tables") {
    struct Fam {
        const char* name;
        std::vector<int> d; // level 1..N
    };
    // The published table lists 10 for H64 at level 4, but the order-192
    // quotient is unique (exhaustive chief-series enumeration, see
    // tools/normal_search) and its level-4 lattice has a weight-8 cocycle
    // verified non-trivial by odd intersection with a basis cycle. We pin the
    // proven value; the acceptance suite reports the discrepancy separately.
    const Fam fams[] = {
        {"H16", {2, 3, 4, 6, 7}},
        {"H64", {2, 4, 6, 8}},
        {"H50", {2, 4, 6, 8}},
        {"H48", {2, 4, 4, 7}},
    };
    for (const auto& fam : fams) {
        auto base = code(fam.name);
        for (int l = 1; l <= (int)fam.d.size(); ++l) {
            auto t = fg::finegrain(base, l);
            CHECK(t.num_vertices == l * l * base.num_vertices);
            CHECK(t.genus == base.genus);
            CHECK(t.k == base.k);
            CHECK(hom::embedded_distance(t) == fam.d[l - 1]);
        }
    }
}

TEST_CASE("subdivision coloring stays proper at every seam") {
    for (const char* name : {"H16", "H48"}) {
        auto base = code(name);
        for (int l : {2, 3}) {
            auto t = fg::finegrain(base, l);
            for (int e = 0; e < t.num_edges; ++e) {
                auto [f1, f2] = t.edge_faces[e];
                CHECK(t.face_color[f1] != t.face_color[f2]);
            }
            for (int v = 0; v < t.num_vertices; ++v) {
                std::set<int> ec;
                for (int e : t.vertex_star[v]) ec.insert(t.edge_color[e]);
                CHECK(ec.size() == 3);
            }
            // face sizes: p at base face centers, 6 elsewhere
            for (const auto& b : t.face_boundary)
                CHECK((b.size() == (size_t)base.p || b.size() == 6));
        }
    }
}

TEST_CASE("fine-graining level must be positive") {
    auto d = fg::dualize(code("H16"));
    CHECK_THROWS_AS(fg::subdivide(d, 0), error);
}

TEST_CASE("hyperbolic distance formula") {
    using fg::hyperbolic_dist;
    CHECK(hyperbolic_dist({0, 0}, {0, 0}) == doctest::Approx(0.0));
    CHECK(hyperbolic_dist({0, 0}, {0.5, 0}) == doctest::Approx(2 * std::atanh(0.5)));
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-0.7, 0.7);
    for (int i = 0; i < 100; ++i) {
        fg::PoincarePoint z1{u(rng), u(rng)}, z2{u(rng), u(rng)};
        CHECK(hyperbolic_dist(z1, z2) == doctest::Approx(hyperbolic_dist(z2, z1)).epsilon(1e-12));
    }
}

TEST_CASE("hyperbolic midpoint bisects the geodesic") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> u(-0.7, 0.7);
    for (int i = 0; i < 1000; ++i) {
        fg::PoincarePoint z1{u(rng), u(rng)}, z2{u(rng), u(rng)};
        auto m = fg::hyperbolic_midpoint(z1, z2);
        double d1 = fg::hyperbolic_dist(z1, m);
        double d2 = fg::hyperbolic_dist(m, z2);
        CHECK(std::abs(d1 - d2) < 1e-9);
        CHECK(std::abs(d1 + d2 - fg::hyperbolic_dist(z1, z2)) < 1e-9);
        auto m2 = fg::hyperbolic_midpoint(z2, z1);
        CHECK(std::abs(m - m2) < 1e-12);
    }
    CHECK(fg::hyperbolic_midpoint({0, 0}, {0, 0}) == fg::PoincarePoint{0, 0});
}
