#include "hfc/error.hpp"
#include "hfc/partition.hpp"
#include "test_data.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

using namespace hfc;

namespace {

part::QubitGraph path_graph(int n) {
    part::QubitGraph g;
    g.n = n;
    for (int i = 0; i + 1 < n; ++i) g.links.push_back({i, i + 1});
    g.adj.resize(n);
    for (auto [u, v] : g.links) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    return g;
}

double rayleigh(const part::QubitGraph& g, const std::vector<double>& v) {
    double s = 0;
    for (auto [u, w] : g.links) s += (v[u] - v[w]) * (v[u] - v[w]);
    return s;
}

} // namespace

TEST_CASE("fiedler vector on tiny graphs") {
    auto g2 = path_graph(2);
    auto v = part::fiedler_vector(g2);
    CHECK(std::abs(std::abs(v[0]) - 1 / std::sqrt(2.0)) < 1e-6);
    CHECK(std::abs(v[0] + v[1]) < 1e-10);
    CHECK(rayleigh(g2, v) == doctest::Approx(2.0)); // lambda_2 of K2

    // 4-cycle: lambda_2 = 2, eigenspace splits opposite pairs
    part::QubitGraph c4;
    c4.n = 4;
    c4.links = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    c4.adj = {{1, 3}, {0, 2}, {1, 3}, {0, 2}};
    auto f = part::fiedler_vector(c4);
    CHECK(rayleigh(c4, f) == doctest::Approx(2.0));
    CHECK(std::abs(std::accumulate(f.begin(), f.end(), 0.0)) < 1e-10);
}

TEST_CASE("fiedler vector rejects disconnected graphs") {
    part::QubitGraph g;
    g.n = 4;
    g.links = {{0, 1}, {2, 3}};
    g.adj = {{1}, {0}, {3}, {2}};
    CHECK_THROWS_AS(part::fiedler_vector(g), error);
}

TEST_CASE("partitions respect capacity and are deterministic") {
    for (const char* name : {"H16", "H64", "H144"}) {
        auto t = code(name);
        auto g = part::QubitGraph::from(t);
        auto p = part::partition_recursive(g, 21);
        std::vector<int> counts(p.num_qpus, 0);
        for (int q : p.assignment) {
            REQUIRE(q >= 0);
            ++counts[q];
        }
        for (int c : counts) {
            CHECK(c <= 21);
            CHECK(c > 0);
        }
        auto p2 = part::partition_recursive(g, 21);
        CHECK(p.assignment == p2.assignment);
    }
}

TEST_CASE("H64 partitions into 4 QPUs with ~1/3 non-local edges") {
    auto t = code("H64");
    auto p = part::partition_recursive(part::QubitGraph::from(t), 21);
    CHECK(p.num_qpus == 4);
    part::classify_edges(t, p);
    CHECK(p.nl_fraction > 0.26);
    CHECK(p.nl_fraction < 0.40);
    CHECK(p.local_edges.size() + p.nonlocal_edges.size() == (size_t)t.num_edges);
}

TEST_CASE("single QPU when everything fits") {
    auto t = code("H16");
    auto p = part::partition_recursive(part::QubitGraph::from(t), 21);
    CHECK(p.num_qpus == 1);
    part::classify_edges(t, p);
    CHECK(p.nonlocal_edges.empty());
    CHECK(p.nl_fraction == 0.0);
}

TEST_CASE("spectral cut beats random balanced cuts") {
    for (const char* name : {"H64", "H96"}) {
        auto t = code(name);
        auto g = part::QubitGraph::from(t);
        auto p = part::partition_recursive(g, 21);
        part::classify_edges(t, p);

        std::vector<int> sizes(p.num_qpus, 0);
        for (int q : p.assignment) ++sizes[q];
        std::mt19937 rngm(123);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<int> shuffled(p.assignment);
            std::shuffle(shuffled.begin(), shuffled.end(), rngm);
            int nl = 0;
            for (auto [u, v] : g.links)
                if (shuffled[u] != shuffled[v]) ++nl;
            double rand_frac = (double)nl / (double)g.links.size();
            CHECK(p.nl_fraction <= rand_frac);
        }
    }
}

TEST_CASE("registry codes at capacity 21 land in the published NL band") {
    for (const char* name : {"H64", "H72", "H96", "H144"}) {
        auto t = code(name);
        auto p = part::partition_recursive(part::QubitGraph::from(t), 21);
        part::classify_edges(t, p);
        CHECK(p.nl_fraction >= 0.20);
        CHECK(p.nl_fraction <= 0.40);
    }
}
