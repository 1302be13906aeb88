#include "hfc/analysis.hpp"

#include "hfc/error.hpp"
#include "hfc/finegrain.hpp"
#include "hfc/homology.hpp"
#include "hfc/registry.hpp"
#include "hfc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace hfc::ana {

double per_round_rate(double p_total, int n_rounds) {
    if (n_rounds < 1) throw error(errc::domain, "n_rounds must be >= 1");
    if (p_total < 0 || p_total > 0.5)
        throw error(errc::domain, "p_total outside [0, 0.5]: " + std::to_string(p_total));
    return 0.5 * (1.0 - std::pow(1.0 - 2.0 * p_total, 1.0 / n_rounds));
}

std::pair<double, double> wilson_interval(long hits, long n) {
    if (n <= 0) throw error(errc::domain, "wilson_interval needs n >= 1");
    const double z = 1.959963984540054; // 95%
    double ph = (double)hits / (double)n;
    double z2n = z * z / (double)n;
    double center = (ph + z2n / 2) / (1 + z2n);
    double half = z * std::sqrt(ph * (1 - ph) / (double)n + z2n / (4.0 * n)) / (1 + z2n);
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double any_logical_rate(const sim::SampleBatch& batch, const std::vector<uint8_t>& predictions) {
    if ((int)predictions.size() != batch.shots * batch.num_observables)
        throw error(errc::domain, "predictions not aligned with batch");
    long any = 0;
    for (int s = 0; s < batch.shots; ++s) {
        for (int o = 0; o < batch.num_observables; ++o) {
            if (predictions[(size_t)s * batch.num_observables + o] != batch.obs_bit(o, s)) {
                ++any;
                break;
            }
        }
    }
    return batch.shots ? (double)any / batch.shots : 0.0;
}

// Sample means can stray above the 0.5 fixed point; the per-round conversion
// is only defined up to there, so saturate instead of failing the sweep.
static double safe_eps(double p_total, int rounds) {
    return per_round_rate(std::min(p_total, 0.5), rounds);
}

static uint64_t fnv1a(const std::string& s) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

// Everything that can change a grid point's numbers goes into the key.
static std::string point_key(const SweepConfig& cfg, double p_nl, uint64_t point_seed) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s|%d|%s|%.17g|%.17g|%d|%d|%llu|%d|%c", cfg.code.c_str(),
                  cfg.level, circ::model_name(cfg.model), cfg.p_local, p_nl, cfg.rounds, cfg.shots,
                  (unsigned long long)point_seed, cfg.capacity, cfg.basis);
    char hex[32];
    std::snprintf(hex, sizeof hex, "%016llx", (unsigned long long)fnv1a(buf));
    return hex;
}

static bool load_point(const std::string& path, PointResult& pt) {
    std::ifstream is(path);
    if (!is) return false;
    int nobs = 0;
    is >> pt.p_nl >> pt.shots >> nobs >> pt.any_logical >> pt.any_ci_lo >> pt.any_ci_hi >>
        pt.worst_eps_l;
    pt.obs_fail.resize(nobs);
    pt.ci_lo.resize(nobs);
    pt.ci_hi.resize(nobs);
    for (int o = 0; o < nobs; ++o) is >> pt.obs_fail[o] >> pt.ci_lo[o] >> pt.ci_hi[o];
    return (bool)is;
}

static void store_point(const std::string& path, const PointResult& pt) {
    std::ofstream os(path + ".tmp");
    char buf[128];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << buf;
    };
    put(pt.p_nl);
    os << ' ' << pt.shots << ' ' << pt.obs_fail.size() << ' ';
    put(pt.any_logical);
    os << ' ';
    put(pt.any_ci_lo);
    os << ' ';
    put(pt.any_ci_hi);
    os << ' ';
    put(pt.worst_eps_l);
    os << '\n';
    for (size_t o = 0; o < pt.obs_fail.size(); ++o) {
        put(pt.obs_fail[o]);
        os << ' ';
        put(pt.ci_lo[o]);
        os << ' ';
        put(pt.ci_hi[o]);
        os << '\n';
    }
    os.close();
    std::filesystem::rename(path + ".tmp", path);
}

SweepResult run_sweep(const SweepConfig& cfg) {
    if (cfg.shots < 1) throw error(errc::config, "shots must be >= 1");
    if (cfg.grid.empty()) throw error(errc::config, "empty sweep grid");
    for (size_t i = 1; i < cfg.grid.size(); ++i)
        if (cfg.grid[i] <= cfg.grid[i - 1])
            throw error(errc::config, "sweep grid not strictly increasing");

    auto reg = pres::load_registry(cfg.registry);
    const auto& ent = pres::find_entry(reg, cfg.code);
    auto t = pres::build_code(ent);
    if (cfg.level > 1) t = fg::finegrain(t, cfg.level);

    SweepResult res;
    res.cfg = cfg;
    res.n = t.num_vertices;
    res.k = 2 * t.genus;
    if (cfg.with_distance) res.d_emb = hom::embedded_distance(t);

    auto part = part::partition_recursive(part::QubitGraph::from(t), cfg.capacity);
    part::classify_edges(t, part);
    res.qpus = part.num_qpus;
    res.nl_fraction = part.nl_fraction;

    auto base = circ::build_floquet(t, cfg.rounds, cfg.basis);
    const bool erasure = cfg.model == circ::Model::ERASURE;

    if (!cfg.cache_dir.empty()) std::filesystem::create_directories(cfg.cache_dir);

    for (size_t i = 0; i < cfg.grid.size(); ++i) {
        double p_nl = cfg.grid[i];
        uint64_t point_seed = rng::hash3(cfg.seed, i, 0x53574545);
        std::string cache_path;
        PointResult pt;
        if (!cfg.cache_dir.empty()) {
            cache_path = cfg.cache_dir + "/" + point_key(cfg, p_nl, point_seed) + ".pt";
            if (load_point(cache_path, pt)) {
                res.points.push_back(std::move(pt));
                continue;
            }
        }
        pt = PointResult{};
        pt.p_nl = p_nl;
        pt.shots = cfg.shots;
        try {
            circ::NoiseSpec ns;
            ns.model = cfg.model;
            if (erasure) {
                ns.eps_local = cfg.p_local;
                ns.eps_nl = p_nl;
                ns.p_local = ns.p_nl = 0;
            } else {
                ns.p_local = cfg.p_local;
                ns.p_nl = p_nl;
            }
            auto nc = circ::apply_noise(base, part, ns);
            auto dem = dec::extract_dem(nc);
            auto mg = dec::to_matching_graph(dem);
            auto batch = erasure ? sim::sample_erasure(nc, cfg.shots, point_seed)
                                 : sim::sample_frames(nc, cfg.shots, point_seed);
            auto pred = dec::decode_batch(mg, batch);

            int k = batch.num_observables;
            std::vector<long> fail(k, 0);
            long any = 0;
            for (int s = 0; s < batch.shots; ++s) {
                bool hit = false;
                for (int o = 0; o < k; ++o) {
                    if (pred[(size_t)s * k + o] != batch.obs_bit(o, s)) {
                        ++fail[o];
                        hit = true;
                    }
                }
                any += hit;
            }
            pt.obs_fail.resize(k);
            pt.ci_lo.resize(k);
            pt.ci_hi.resize(k);
            pt.worst_eps_l = 0;
            for (int o = 0; o < k; ++o) {
                pt.obs_fail[o] = (double)fail[o] / cfg.shots;
                std::tie(pt.ci_lo[o], pt.ci_hi[o]) = wilson_interval(fail[o], cfg.shots);
                pt.worst_eps_l = std::max(pt.worst_eps_l, safe_eps(pt.obs_fail[o], cfg.rounds));
            }
            pt.any_logical = (double)any / cfg.shots;
            std::tie(pt.any_ci_lo, pt.any_ci_hi) = wilson_interval(any, cfg.shots);
            if (!cache_path.empty()) store_point(cache_path, pt);
        } catch (const std::exception& ex) {
            pt.error = ex.what();
            if (!cache_path.empty()) {
                // failure marker next to where the point would be cached; not
                // reloaded, so a fixed build retries the point
                std::ofstream os(cache_path + ".fail");
                os << ex.what() << '\n';
            }
        }
        res.points.push_back(std::move(pt));
    }
    return res;
}

std::optional<double> pseudo_threshold(const SweepResult& r, double p_local) {
    std::optional<double> best;
    for (const auto& pt : r.points) {
        if (!pt.error.empty()) continue;
        if (pt.worst_eps_l <= p_local) best = pt.p_nl;
    }
    return best;
}

// Curve value for the crossing comparison: mean per-observable per-round rate.
static double curve_value(const PointResult& pt, int rounds, int shots) {
    double sum = 0;
    for (double f : pt.obs_fail) sum += safe_eps(f, rounds);
    double y = pt.obs_fail.empty() ? 0.0 : sum / pt.obs_fail.size();
    return std::max(y, 0.5 / std::max(1, shots)); // log-interpolation floor
}

Crossing crossing_threshold(const std::vector<SweepResult>& family) {
    if (family.size() < 2) throw error(errc::config, "crossing needs >= 2 codes");
    int k = family[0].k;
    for (const auto& r : family)
        if (r.k != k)
            throw error(errc::config, "INCOMPATIBLE_K: " + r.cfg.code + " has k=" +
                                          std::to_string(r.k) + ", expected " + std::to_string(k));

    // largest and second-largest by qubit count
    const SweepResult* big = &family[0];
    for (const auto& r : family)
        if (r.n > big->n) big = &r;
    const SweepResult* small = nullptr;
    for (const auto& r : family)
        if (&r != big && (!small || r.n > small->n)) small = &r;

    size_t npts = std::min(big->points.size(), small->points.size());
    std::vector<double> x, yb, ys;
    for (size_t i = 0; i < npts; ++i) {
        const auto& pb = big->points[i];
        const auto& ps = small->points[i];
        if (!pb.error.empty() || !ps.error.empty()) continue;
        if (pb.p_nl != ps.p_nl)
            throw error(errc::config, "crossing requires identical sweep grids");
        x.push_back(pb.p_nl);
        yb.push_back(curve_value(pb, big->cfg.rounds, pb.shots));
        ys.push_back(curve_value(ps, small->cfg.rounds, ps.shots));
    }
    if (x.size() < 2) throw error(errc::config, "not enough finished grid points for a crossing");

    Crossing c;
    bool identical = true;
    for (size_t i = 0; i < x.size(); ++i)
        if (std::abs(yb[i] - ys[i]) > 1e-12) identical = false;
    if (identical) {
        c.degenerate = true;
        c.lo = x.front();
        c.hi = x.back();
        c.estimate = x.front();
        return c;
    }

    for (size_t i = 1; i < x.size(); ++i) {
        double d0 = std::log(yb[i - 1]) - std::log(ys[i - 1]);
        double d1 = std::log(yb[i]) - std::log(ys[i]);
        if ((d0 <= 0 && d1 >= 0) || (d0 >= 0 && d1 <= 0)) {
            c.lo = x[i - 1];
            c.hi = x[i];
            // log-linear in the difference of log-rates
            double tfrac = (d1 == d0) ? 0.5 : d0 / (d0 - d1);
            c.estimate = x[i - 1] + tfrac * (x[i] - x[i - 1]);
            return c;
        }
    }
    c.open_above = true;
    c.lo = c.hi = c.estimate = x.back();
    return c;
}

void write_sweep_csv(std::ostream& os, const SweepResult& r, bool header) {
    if (header)
        os << "code,n,k,d_emb,model,p_local,p_NL,nl_fraction,qpus,obs_id,p_total,eps_L,"
              "any_logical,shots,ci_lo,ci_hi\n";
    char buf[512];
    for (const auto& pt : r.points) {
        if (!pt.error.empty()) {
            os << "# " << r.cfg.code << " p_NL=" << pt.p_nl << " FAILED: " << pt.error << '\n';
            continue;
        }
        for (size_t o = 0; o < pt.obs_fail.size(); ++o) {
            std::snprintf(buf, sizeof buf,
                          "%s,%d,%d,%d,%s,%g,%g,%g,%d,%zu,%g,%g,%g,%d,%g,%g\n", r.cfg.code.c_str(),
                          r.n, r.k, r.d_emb, circ::model_name(r.cfg.model), r.cfg.p_local, pt.p_nl,
                          r.nl_fraction, r.qpus, o, pt.obs_fail[o],
                          safe_eps(pt.obs_fail[o], r.cfg.rounds), pt.any_logical, pt.shots,
                          pt.ci_lo[o], pt.ci_hi[o]);
            os << buf;
        }
    }
}

void write_series(std::ostream& os, const SweepResult& r) {
    os << "# " << r.cfg.code << " level=" << r.cfg.level
       << " model=" << circ::model_name(r.cfg.model) << " n=" << r.n << " k=" << r.k << '\n';
    char buf[128];
    for (const auto& pt : r.points) {
        if (!pt.error.empty()) continue;
        std::snprintf(buf, sizeof buf, "%g\t%g\t%g\n", pt.p_nl, pt.worst_eps_l, pt.any_logical);
        os << buf;
    }
}

} // namespace hfc::ana
