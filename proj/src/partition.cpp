#include "hfc/partition.hpp"

#include "hfc/error.hpp"
#include "hfc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <ostream>

namespace hfc::part {

QubitGraph QubitGraph::from(const tess::Tessellation& t) {
    QubitGraph g;
    g.n = t.num_vertices;
    g.links.assign(t.edge_endpoints.begin(), t.edge_endpoints.end());
    g.adj.resize(g.n);
    for (auto [u, v] : g.links) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    return g;
}

namespace {

bool connected(const QubitGraph& g) {
    if (g.n == 0) return false;
    std::vector<char> seen(g.n, 0);
    std::deque<int> q{0};
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        for (int y : g.adj[x])
            if (!seen[y]) seen[y] = 1, ++count, q.push_back(y);
    }
    return count == g.n;
}

void project_ones_normalize(std::vector<double>& v) {
    double mean = std::accumulate(v.begin(), v.end(), 0.0) / (double)v.size();
    double norm = 0;
    for (double& x : v) {
        x -= mean;
        norm += x * x;
    }
    norm = std::sqrt(norm);
    if (norm > 0)
        for (double& x : v) x /= norm;
}

} // namespace

std::vector<double> fiedler_vector(const QubitGraph& g) {
    if (g.n < 2) throw error(errc::domain, "fiedler_vector needs >= 2 nodes");
    if (!connected(g)) throw error(errc::disconnected, "graph has multiple components");

    int max_deg = 0;
    for (const auto& a : g.adj) max_deg = std::max(max_deg, (int)a.size());
    const double shift = 2.0 * max_deg + 1.0;
    const double tol = 1e-8;
    const int max_iters = 100000;

    auto apply_laplacian = [&](const std::vector<double>& v, std::vector<double>& out) {
        for (int i = 0; i < g.n; ++i) {
            double s = (double)g.adj[i].size() * v[i];
            for (int j : g.adj[i]) s -= v[j];
            out[i] = s;
        }
    };

    std::vector<double> v(g.n), lv(g.n), next(g.n);
    for (int i = 0; i < g.n; ++i) v[i] = rng::u01(rng::hash2(0x9d1e5, i)) - 0.5;
    project_ones_normalize(v);

    for (int iter = 0; iter < max_iters; ++iter) {
        apply_laplacian(v, lv);
        double lambda = std::inner_product(v.begin(), v.end(), lv.begin(), 0.0);
        double res = 0;
        for (int i = 0; i < g.n; ++i) {
            double r = lv[i] - lambda * v[i];
            res += r * r;
        }
        if (std::sqrt(res) < tol) return v;
        // power step on shift*I - L keeps the smallest nonzero eigenpair dominant
        for (int i = 0; i < g.n; ++i) next[i] = shift * v[i] - lv[i];
        project_ones_normalize(next);
        std::swap(v, next);
    }
    throw error(errc::convergence_failure, "power iteration did not reach residual 1e-8");
}

namespace {

QubitGraph induced(const QubitGraph& g, const std::vector<int>& nodes, std::vector<int>& to_local) {
    QubitGraph s;
    s.n = (int)nodes.size();
    to_local.assign(g.n, -1);
    for (int i = 0; i < s.n; ++i) to_local[nodes[i]] = i;
    for (auto [u, v] : g.links) {
        if (to_local[u] >= 0 && to_local[v] >= 0) s.links.push_back({to_local[u], to_local[v]});
    }
    s.adj.resize(s.n);
    for (auto [u, v] : s.links) {
        s.adj[u].push_back(v);
        s.adj[v].push_back(u);
    }
    return s;
}

void split_recursive(const QubitGraph& g, std::vector<int> nodes, int capacity,
                     std::vector<std::vector<int>>& parts) {
    if ((int)nodes.size() <= capacity) {
        parts.push_back(std::move(nodes));
        return;
    }
    std::vector<int> to_local;
    QubitGraph sub = induced(g, nodes, to_local);
    if (!connected(sub)) {
        // peel off components and recurse on each
        std::vector<char> seen(sub.n, 0);
        for (int s = 0; s < sub.n; ++s) {
            if (seen[s]) continue;
            std::vector<int> comp;
            std::deque<int> q{s};
            seen[s] = 1;
            while (!q.empty()) {
                int x = q.front();
                q.pop_front();
                comp.push_back(nodes[x]);
                for (int y : sub.adj[x])
                    if (!seen[y]) seen[y] = 1, q.push_back(y);
            }
            std::sort(comp.begin(), comp.end());
            split_recursive(g, std::move(comp), capacity, parts);
        }
        return;
    }
    std::vector<double> f = fiedler_vector(sub);
    std::vector<int> order((size_t)sub.n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        if (f[x] != f[y]) return f[x] < f[y];
        return nodes[x] < nodes[y]; // median ties: lower qubit ids first
    });
    size_t half = (nodes.size() + 1) / 2;
    std::vector<int> lo, hi;
    for (size_t i = 0; i < order.size(); ++i)
        (i < half ? lo : hi).push_back(nodes[order[i]]);
    std::sort(lo.begin(), lo.end());
    std::sort(hi.begin(), hi.end());
    split_recursive(g, std::move(lo), capacity, parts);
    split_recursive(g, std::move(hi), capacity, parts);
}

} // namespace

Partition partition_recursive(const QubitGraph& g, int capacity) {
    if (capacity < 1) throw error(errc::domain, "capacity must be >= 1");
    std::vector<int> all(g.n);
    std::iota(all.begin(), all.end(), 0);
    std::vector<std::vector<int>> parts;
    split_recursive(g, std::move(all), capacity, parts);
    std::sort(parts.begin(), parts.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });

    Partition p;
    p.capacity = capacity;
    p.num_qpus = (int)parts.size();
    p.assignment.assign(g.n, -1);
    for (int q = 0; q < p.num_qpus; ++q)
        for (int node : parts[q]) p.assignment[node] = q;
    return p;
}

void classify_edges(const tess::Tessellation& t, Partition& p) {
    p.local_edges.clear();
    p.nonlocal_edges.clear();
    for (int e = 0; e < t.num_edges; ++e) {
        auto [u, v] = t.edge_endpoints[e];
        (p.assignment[u] == p.assignment[v] ? p.local_edges : p.nonlocal_edges).push_back(e);
    }
    p.nl_fraction = t.num_edges ? (double)p.nonlocal_edges.size() / (double)t.num_edges : 0.0;
}

void write_partition(std::ostream& os, const Partition& p) {
    for (size_t q = 0; q < p.assignment.size(); ++q)
        os << "qubit " << q << " qpu " << p.assignment[q] << "\n";
    os << "qpus " << p.num_qpus << "\n";
    os << "nl_fraction " << p.nl_fraction << "\n";
}

} // namespace hfc::part
