#pragma once

#include "hfc/circuit.hpp"
#include "hfc/decode.hpp"
#include "hfc/sim.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hfc::ana {

/// p_total = (1 - (1-2*eps)^n)/2 inverted: the per-round rate that compounds
/// to p_total over n_rounds.
double per_round_rate(double p_total, int n_rounds);

/// 95% Wilson score interval for `hits` successes out of `n`.
std::pair<double, double> wilson_interval(long hits, long n);

/// Fraction of shots where the decoder prediction differs from the actual
/// observable bits on at least one observable.
double any_logical_rate(const sim::SampleBatch& batch, const std::vector<uint8_t>& predictions);

struct SweepConfig {
    std::string registry = "data/registry.txt";
    std::string code;
    int level = 1; // 1 = base tessellation
    circ::Model model = circ::Model::DIST_DEPOL;
    double p_local = 0.0003; // eps_local for the erasure model
    std::vector<double> grid; // p_NL (eps_NL) values, strictly increasing
    int rounds = 12;
    int shots = 3000;
    uint64_t seed = 1;
    int capacity = 21;
    char basis = 'Z';
    bool with_distance = false;  // include d_emb in results (can be slow)
    std::string cache_dir;       // empty = no persistence
};

struct PointResult {
    double p_nl = 0;
    std::vector<double> obs_fail;  // per-observable total failure rate
    std::vector<double> ci_lo, ci_hi;
    double worst_eps_l = 0; // max over observables of the per-round rate
    double any_logical = 0;
    double any_ci_lo = 0, any_ci_hi = 0;
    int shots = 0;
    std::string error; // non-empty = this grid point failed (partial sweep)
};

struct SweepResult {
    SweepConfig cfg;
    int n = 0, k = 0, d_emb = -1, qpus = 0;
    double nl_fraction = 0;
    std::vector<PointResult> points;
};

/// Full pipeline per grid point (construct, fine-grain, partition, circuit,
/// noise, sample, decode, metrics). Deterministic given (cfg, seed). With a
/// cache directory set, finished grid points are persisted keyed by a content
/// hash of everything that affects them and reloaded on rerun.
SweepResult run_sweep(const SweepConfig& cfg);

/// Largest grid point whose worst-case per-round rate stays <= p_local;
/// nullopt when the smallest grid point already exceeds it.
std::optional<double> pseudo_threshold(const SweepResult& r, double p_local);

struct Crossing {
    double lo = 0, hi = 0;  // grid bracket around the crossing
    double estimate = 0;    // log-linear interpolation inside the bracket
    bool open_above = false; // no crossing within the grid
    bool degenerate = false; // curves statistically indistinguishable
};

/// Crossing of the mean per-observable failure-rate curves of the largest and
/// second-largest same-k codes. Throws on mismatched k.
Crossing crossing_threshold(const std::vector<SweepResult>& family);

/// CSV rows (code, n, k, d_emb, model, p_local, p_NL, nl_fraction, qpus,
/// obs_id, p_total, eps_L, any_logical, shots, ci_lo, ci_hi), one row per
/// observable per grid point. `header` controls the column line.
void write_sweep_csv(std::ostream& os, const SweepResult& r, bool header = true);

/// Plot-ready series: "p_nl <tab> worst_eps_l <tab> any_logical" per point,
/// preceded by a "# code" comment.
void write_series(std::ostream& os, const SweepResult& r);

} // namespace hfc::ana
