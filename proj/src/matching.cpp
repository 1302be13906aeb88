#include "hfc/decode.hpp"

#include "hfc/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>
#include <map>
#include <queue>

namespace hfc::dec {

namespace {

uint64_t obs_mask(const std::vector<int>& obs) {
    uint64_t m = 0;
    for (int o : obs) m |= uint64_t(1) << o;
    return m;
}

std::vector<int> mask_obs(uint64_t m) {
    std::vector<int> out;
    for (int o = 0; m; ++o, m >>= 1)
        if (m & 1) out.push_back(o);
    return out;
}

double merge_p(double p1, double p2) { return p1 * (1 - p2) + p2 * (1 - p1); }

} // namespace

MatchingGraph to_matching_graph(const DetectorErrorModel& dem) {
    if (dem.num_observables > 64)
        throw error(errc::domain, "matching decoder supports at most 64 observables");

    MatchingGraph g;
    g.num_detectors = dem.num_detectors;
    g.num_observables = dem.num_observables;
    const int B = dem.num_detectors; // boundary node id

    // endpoint pair -> edge ids, for decomposition lookups and merging
    std::map<std::pair<int, int>, std::vector<int>> by_ends;
    bool clamp_warned = false;
    auto add_edge = [&](int u, int v, double p, uint64_t obs, int meas) {
        if (u > v) std::swap(u, v);
        if (p > 0.5) {
            if (!clamp_warned) {
                std::fprintf(stderr, "to_matching_graph: clamping edge probability %g to 0.5\n",
                             p);
                clamp_warned = true;
            }
            p = 0.5 - 1e-9;
        }
        auto& ids = by_ends[{u, v}];
        for (int id : ids)
            if (obs_mask(g.edges[id].obs) == obs && g.edges[id].meas == meas) {
                g.edges[id].p = merge_p(g.edges[id].p, p);
                g.edges[id].w = std::log((1 - g.edges[id].p) / g.edges[id].p);
                return;
            }
        MgEdge e;
        e.u = u;
        e.v = v;
        e.p = p;
        e.w = std::log((1 - p) / p);
        e.obs = mask_obs(obs);
        e.meas = meas;
        ids.push_back((int)g.edges.size());
        g.edges.push_back(std::move(e));
        if (v == B) g.has_boundary = true;
    };

    std::vector<const Mechanism*> big;
    for (const auto& m : dem.mechanisms) {
        if (m.dets.empty()) continue; // undetectable, nothing to match
        if (m.dets.size() == 1)
            add_edge(m.dets[0], B, m.p, obs_mask(m.obs), m.meas);
        else if (m.dets.size() == 2)
            add_edge(m.dets[0], m.dets[1], m.p, obs_mask(m.obs), m.meas);
        else
            big.push_back(&m);
    }

    // Decompose larger mechanisms into existing edges: cover the detector set
    // by internal pairs and boundary singles so the observable masks XOR to
    // the mechanism's. All parallel edges (different observable masks) are
    // candidates, tried in descending probability.
    auto edges_between = [&](int u, int v, std::vector<int>& out) {
        if (u > v) std::swap(u, v);
        auto it = by_ends.find({u, v});
        if (it == by_ends.end()) return;
        for (int id : it->second)
            if (g.edges[id].meas < 0) out.push_back(id);
    };
    std::vector<int> comp;
    auto cover = [&](auto&& self, std::vector<int> left, uint64_t want) -> bool {
        if (left.empty()) return want == 0;
        int d = left.front();
        std::vector<int> cands;
        for (size_t i = 1; i < left.size(); ++i) edges_between(d, left[i], cands);
        edges_between(d, B, cands);
        std::stable_sort(cands.begin(), cands.end(),
                         [&](int a, int b) { return g.edges[a].p > g.edges[b].p; });
        for (int id : cands) {
            const MgEdge& e = g.edges[id];
            std::vector<int> rest;
            for (int x : left)
                if (x != e.u && x != e.v) rest.push_back(x);
            comp.push_back(id);
            if (self(self, std::move(rest), want ^ obs_mask(e.obs))) return true;
            comp.pop_back();
        }
        return false;
    };
    for (const Mechanism* m : big) {
        comp.clear();
        if (cover(cover, m->dets, obs_mask(m->obs))) {
            for (int id : comp) {
                g.edges[id].p = merge_p(g.edges[id].p, m->p);
                g.edges[id].w = std::log((1 - g.edges[id].p) / g.edges[id].p);
            }
            continue;
        }
        // A flipped or erased check record toggles two consecutive detectors
        // on each side face: a hyperedge whose components need not exist as
        // Pauli mechanisms (in the pure erasure model there are no other
        // mechanisms at all). Split such mechanisms into fresh edges by
        // repeatedly pairing the closest detector ids (consecutive detectors
        // of one face sit a few ids apart, the two faces' groups far apart);
        // the observable mask rides on the first component. A leftover single
        // detector may only attach to an already-present boundary.
        std::vector<int> left = m->dets;
        if (left.size() % 2 && !g.has_boundary) {
            std::string what = "mechanism";
            for (int d : m->dets) what += " D" + std::to_string(d);
            for (int o : m->obs) what += " L" + std::to_string(o);
            throw error(errc::not_graphlike, what + " has no edge decomposition");
        }
        uint64_t obs_left = obs_mask(m->obs);
        while (left.size() > 1) {
            size_t bi = 0;
            for (size_t i = 1; i + 1 < left.size(); ++i)
                if (left[i + 1] - left[i] < left[bi + 1] - left[bi]) bi = i;
            add_edge(left[bi], left[bi + 1], m->p, obs_left, m->meas);
            obs_left = 0;
            left.erase(left.begin() + bi, left.begin() + bi + 2);
        }
        if (!left.empty()) add_edge(left[0], B, m->p, obs_left, m->meas);
    }

    g.adj.assign(g.num_detectors + 1, {});
    for (size_t i = 0; i < g.edges.size(); ++i) {
        g.adj[g.edges[i].u].push_back((int)i);
        g.adj[g.edges[i].v].push_back((int)i);
    }
    return g;
}

// ---------------------------------------------------------------------------
// Exact maximum-weight matching on a dense general graph, O(n^3): primal-dual
// with blossom shrinking. Vertices 1..n, blossoms n+1..n_x; g_[u][v].w == 0
// means no edge. Weights must be even-safe positive integers.

namespace {

struct Blossom {
    struct E {
        int u = 0, v = 0;
        int64_t w = 0;
    };
    static constexpr int64_t INF = std::numeric_limits<int64_t>::max() / 4;
    int n = 0, n_x = 0;
    std::vector<std::vector<E>> g_;
    std::vector<int64_t> lab;
    std::vector<int> match, slack, st, pa, S, vis;
    std::vector<std::vector<int>> flower, flower_from;
    std::deque<int> q;
    int vis_t = 0;

    explicit Blossom(int n_) : n(n_) {
        const int N = n + n / 2 + 2;
        g_.assign(N, std::vector<E>(N));
        for (int u = 0; u < N; ++u)
            for (int v = 0; v < N; ++v) g_[u][v] = {u, v, 0};
        lab.assign(N, 0);
        match.assign(N, 0);
        slack.assign(N, 0);
        st.assign(N, 0);
        pa.assign(N, 0);
        S.assign(N, 0);
        vis.assign(N, 0);
        flower.assign(N, {});
        flower_from.assign(N, std::vector<int>(n + 1, 0));
    }

    void add_edge(int u, int v, int64_t w) { g_[u][v].w = g_[v][u].w = w; }

    int64_t e_delta(const E& e) const { return lab[e.u] + lab[e.v] - g_[e.u][e.v].w * 2; }
    void update_slack(int u, int x) {
        if (!slack[x] || e_delta(g_[u][x]) < e_delta(g_[slack[x]][x])) slack[x] = u;
    }
    void set_slack(int x) {
        slack[x] = 0;
        for (int u = 1; u <= n; ++u)
            if (g_[u][x].w > 0 && st[u] != x && S[st[u]] == 0) update_slack(u, x);
    }
    void q_push(int x) {
        if (x <= n)
            q.push_back(x);
        else
            for (int i : flower[x]) q_push(i);
    }
    void set_st(int x, int b) {
        st[x] = b;
        if (x > n)
            for (int i : flower[x]) set_st(i, b);
    }
    int get_pr(int b, int xr) {
        int pr = (int)(std::find(flower[b].begin(), flower[b].end(), xr) - flower[b].begin());
        if (pr % 2 == 1) {
            std::reverse(flower[b].begin() + 1, flower[b].end());
            return (int)flower[b].size() - pr;
        }
        return pr;
    }
    void set_match(int u, int v) {
        match[u] = g_[u][v].v;
        if (u > n) {
            E e = g_[u][v];
            int xr = flower_from[u][e.u];
            int pr = get_pr(u, xr);
            for (int i = 0; i < pr; ++i) set_match(flower[u][i], flower[u][i ^ 1]);
            set_match(xr, v);
            std::rotate(flower[u].begin(), flower[u].begin() + pr, flower[u].end());
        }
    }
    void augment(int u, int v) {
        for (;;) {
            int xnv = st[match[u]];
            set_match(u, v);
            if (!xnv) return;
            set_match(xnv, st[pa[xnv]]);
            u = st[pa[xnv]], v = xnv;
        }
    }
    int get_lca(int u, int v) {
        for (++vis_t; u || v; std::swap(u, v)) {
            if (u == 0) continue;
            if (vis[u] == vis_t) return u;
            vis[u] = vis_t;
            u = st[match[u]];
            if (u) u = st[pa[u]];
        }
        return 0;
    }
    void add_blossom(int u, int lca, int v) {
        int b = n + 1;
        while (b <= n_x && st[b]) ++b;
        if (b > n_x) ++n_x;
        lab[b] = 0, S[b] = 0;
        match[b] = match[lca];
        flower[b].clear();
        flower[b].push_back(lca);
        for (int x = u, y; x != lca; x = st[pa[y]])
            flower[b].push_back(x), flower[b].push_back(y = st[match[x]]), q_push(y);
        std::reverse(flower[b].begin() + 1, flower[b].end());
        for (int x = v, y; x != lca; x = st[pa[y]])
            flower[b].push_back(x), flower[b].push_back(y = st[match[x]]), q_push(y);
        set_st(b, b);
        for (int x = 1; x <= n_x; ++x) g_[b][x].w = g_[x][b].w = 0;
        for (int x = 1; x <= n; ++x) flower_from[b][x] = 0;
        for (int xs : flower[b]) {
            for (int x = 1; x <= n_x; ++x)
                if (g_[b][x].w == 0 || e_delta(g_[xs][x]) < e_delta(g_[b][x]))
                    g_[b][x] = g_[xs][x], g_[x][b] = g_[x][xs];
            for (int x = 1; x <= n; ++x)
                if (flower_from[xs][x]) flower_from[b][x] = xs;
        }
        set_slack(b);
    }
    void expand_blossom(int b) {
        for (int i : flower[b]) set_st(i, i);
        int xr = flower_from[b][g_[b][pa[b]].u];
        int pr = get_pr(b, xr);
        for (int i = 0; i < pr; i += 2) {
            int xs = flower[b][i], xns = flower[b][i + 1];
            pa[xs] = g_[xns][xs].u;
            S[xs] = 1, S[xns] = 0;
            slack[xs] = 0, set_slack(xns);
            q_push(xns);
        }
        S[xr] = 1, pa[xr] = pa[b];
        for (size_t i = pr + 1; i < flower[b].size(); ++i) {
            int xs = flower[b][i];
            S[xs] = -1, set_slack(xs);
        }
        st[b] = 0;
    }
    bool on_found_edge(const E& e) {
        int u = st[e.u], v = st[e.v];
        if (S[v] == -1) {
            pa[v] = e.u, S[v] = 1;
            int nu = st[match[v]];
            slack[v] = slack[nu] = 0;
            S[nu] = 0, q_push(nu);
        } else if (S[v] == 0) {
            int lca = get_lca(u, v);
            if (!lca) return augment(u, v), augment(v, u), true;
            add_blossom(u, lca, v);
        }
        return false;
    }
    bool matching_round() {
        std::fill(S.begin(), S.begin() + n_x + 1, -1);
        std::fill(slack.begin(), slack.begin() + n_x + 1, 0);
        q.clear();
        for (int x = 1; x <= n_x; ++x)
            if (st[x] == x && !match[x]) pa[x] = 0, S[x] = 0, q_push(x);
        if (q.empty()) return false;
        for (;;) {
            while (!q.empty()) {
                int u = q.front();
                q.pop_front();
                if (S[st[u]] == 1) continue;
                for (int v = 1; v <= n; ++v)
                    if (g_[u][v].w > 0 && st[u] != st[v]) {
                        if (e_delta(g_[u][v]) == 0) {
                            if (on_found_edge(g_[u][v])) return true;
                        } else
                            update_slack(u, st[v]);
                    }
            }
            int64_t d = INF;
            for (int b = n + 1; b <= n_x; ++b)
                if (st[b] == b && S[b] == 1) d = std::min(d, lab[b] / 2);
            for (int x = 1; x <= n_x; ++x)
                if (st[x] == x && slack[x]) {
                    if (S[x] == -1)
                        d = std::min(d, e_delta(g_[slack[x]][x]));
                    else if (S[x] == 0)
                        d = std::min(d, e_delta(g_[slack[x]][x]) / 2);
                }
            for (int u = 1; u <= n; ++u) {
                if (S[st[u]] == 0) {
                    if (lab[u] <= d) return false;
                    lab[u] -= d;
                } else if (S[st[u]] == 1)
                    lab[u] += d;
            }
            for (int b = n + 1; b <= n_x; ++b)
                if (st[b] == b) {
                    if (S[b] == 0)
                        lab[b] += d * 2;
                    else if (S[b] == 1)
                        lab[b] -= d * 2;
                }
            q.clear();
            for (int x = 1; x <= n_x; ++x)
                if (st[x] == x && slack[x] && st[slack[x]] != x &&
                    e_delta(g_[slack[x]][x]) == 0)
                    if (on_found_edge(g_[slack[x]][x])) return true;
            for (int b = n + 1; b <= n_x; ++b)
                if (st[b] == b && S[b] == 1 && lab[b] == 0) expand_blossom(b);
        }
    }
    // returns the number of matched pairs
    int solve() {
        std::fill(match.begin(), match.begin() + n + 1, 0);
        n_x = n;
        for (int u = 0; u <= n; ++u) st[u] = u, flower[u].clear();
        int64_t w_max = 0;
        for (int u = 1; u <= n; ++u)
            for (int v = 1; v <= n; ++v) {
                flower_from[u][v] = (u == v ? u : 0);
                w_max = std::max(w_max, g_[u][v].w);
            }
        for (int u = 1; u <= n; ++u) lab[u] = w_max;
        int pairs = 0;
        while (matching_round()) ++pairs;
        return pairs;
    }
};

} // namespace

std::vector<int> min_weight_perfect_matching(const std::vector<std::vector<int64_t>>& w) {
    const int n = (int)w.size();
    if (n == 0) return {};
    if (n % 2) return {};
    // Maximum-weight matching maximizes weight, not cardinality, so boost
    // every allowed edge by a constant large enough that an extra edge always
    // beats any redistribution; then max weight implies max cardinality.
    int64_t cmax = 0;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (w[u][v] >= 0) cmax = std::max(cmax, w[u][v]);
    const int64_t boost = (cmax + 1) * n;
    Blossom bl(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (w[u][v] >= 0) bl.add_edge(u + 1, v + 1, boost + (cmax - w[u][v]) + 1);
    if (bl.solve() * 2 != n) return {};
    std::vector<int> mate(n);
    for (int u = 0; u < n; ++u) mate[u] = bl.match[u + 1] - 1;
    return mate;
}

// ---------------------------------------------------------------------------

namespace {

struct Path {
    double d = std::numeric_limits<double>::infinity();
    uint64_t obs = 0;
};

// Shortest paths from src over the matching graph; erased edges cost 0.
// Tracks the XOR of edge observable masks along each path.
std::vector<Path> dijkstra(const MatchingGraph& g, int src, const std::vector<uint8_t>* erased) {
    std::vector<Path> out(g.num_detectors + 1);
    std::priority_queue<std::pair<double, int>, std::vector<std::pair<double, int>>,
                        std::greater<>>
        pq;
    out[src].d = 0;
    pq.push({0, src});
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > out[u].d) continue;
        for (int id : g.adj[u]) {
            const MgEdge& e = g.edges[id];
            double w = e.w;
            if (erased && e.meas >= 0 && (*erased)[e.meas]) w = 0;
            int v = e.u == u ? e.v : e.u;
            if (d + w < out[v].d) {
                out[v].d = d + w;
                out[v].obs = out[u].obs ^ obs_mask(e.obs);
                pq.push({d + w, v});
            }
        }
    }
    return out;
}

DecodeResult match_defects(const MatchingGraph& g, const std::vector<int>& defects,
                           const std::vector<std::vector<Path>>& paths) {
    const int m = (int)defects.size();
    const int B = g.num_detectors;
    DecodeResult res;
    res.obs_flip.assign(g.num_observables, 0);
    if (m == 0) return res;
    if (m % 2 && !g.has_boundary)
        throw error(errc::unmatchable, "odd defect count and no boundary");

    const double scale = 1e6;
    auto to_int = [&](double d) -> int64_t {
        return std::isfinite(d) ? llround(d * scale) : -1;
    };
    // Nodes 0..m-1 are defects; with a boundary, m..2m-1 are per-defect
    // boundary copies (copy i reachable only from defect i, copies pair off
    // at zero cost), which lets any subset of defects take the boundary.
    const int nn = g.has_boundary ? 2 * m : m;
    std::vector<std::vector<int64_t>> w(nn, std::vector<int64_t>(nn, -1));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            w[i][j] = w[j][i] = to_int(paths[i][defects[j]].d);
    if (g.has_boundary)
        for (int i = 0; i < m; ++i) {
            w[i][m + i] = w[m + i][i] = to_int(paths[i][B].d);
            for (int j = i + 1; j < m; ++j) w[m + i][m + j] = w[m + j][m + i] = 0;
        }
    auto mate = min_weight_perfect_matching(w);
    if (mate.empty()) throw error(errc::unmatchable, "defects cannot be paired");

    uint64_t flips = 0;
    for (int i = 0; i < m; ++i) {
        if (mate[i] < i) continue; // each pair once; copy-copy pairs are free
        int tgt = mate[i] < m ? defects[mate[i]] : B;
        res.weight += paths[i][tgt].d;
        flips ^= paths[i][tgt].obs;
    }
    for (int o = 0; o < g.num_observables; ++o) res.obs_flip[o] = (flips >> o) & 1;
    return res;
}

} // namespace

DecodeResult decode_mwpm(const MatchingGraph& g, const std::vector<uint8_t>& syndrome,
                         const std::vector<uint8_t>& erased) {
    std::vector<int> defects;
    for (int d = 0; d < g.num_detectors; ++d)
        if (syndrome[d]) defects.push_back(d);
    const std::vector<uint8_t>* ep = erased.empty() ? nullptr : &erased;
    std::vector<std::vector<Path>> paths(defects.size());
    for (size_t i = 0; i < defects.size(); ++i) paths[i] = dijkstra(g, defects[i], ep);
    return match_defects(g, defects, paths);
}

std::vector<uint8_t> decode_batch(const MatchingGraph& g, const sim::SampleBatch& batch) {
    std::vector<uint8_t> out((size_t)batch.shots * g.num_observables, 0);
    std::vector<std::string> errors(batch.shots);
#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < batch.shots; ++s) {
        std::vector<uint8_t> syn(g.num_detectors);
        for (int d = 0; d < g.num_detectors; ++d) syn[d] = batch.det_bit(d, s);
        std::vector<uint8_t> er;
        if (!batch.erasure.empty()) {
            er.resize(batch.num_measurements);
            for (int m = 0; m < batch.num_measurements; ++m) er[m] = batch.erased(m, s);
        }
        try {
            auto res = decode_mwpm(g, syn, er);
            std::memcpy(out.data() + (size_t)s * g.num_observables, res.obs_flip.data(),
                        g.num_observables);
        } catch (const std::exception& e) {
            errors[s] = e.what();
        }
    }
    for (const auto& e : errors)
        if (!e.empty()) throw error(errc::unmatchable, e);
    return out;
}

} // namespace hfc::dec
