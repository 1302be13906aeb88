#include "hfc/sim.hpp"

#include "hfc/error.hpp"
#include "hfc/rng.hpp"

#include <algorithm>

namespace hfc::sim {

using circ::Circuit;
using circ::Kind;
using circ::Pauli;

namespace {

bool pauli_x(Pauli p) { return p == Pauli::X || p == Pauli::Y; }
bool pauli_z(Pauli p) { return p == Pauli::Z || p == Pauli::Y; }

bool has_erasure(const Circuit& c) {
    for (const auto& ins : c.instructions)
        if (ins.kind == Kind::Erasable) return true;
    return false;
}

SampleBatch make_batch(const Circuit& c, int shots, uint64_t seed) {
    if (shots < 1) throw error(errc::config, "need at least one shot");
    SampleBatch b;
    b.shots = shots;
    b.words = (shots + 63) / 64;
    b.seed = seed;
    b.num_detectors = c.num_detectors;
    b.num_observables = c.num_observables;
    b.num_measurements = c.num_measurements;
    b.det.assign((size_t)c.num_detectors * b.words, 0);
    b.obs.assign((size_t)c.num_observables * b.words, 0);
    if (has_erasure(c)) b.erasure.assign((size_t)c.num_measurements * b.words, 0);
    return b;
}

void assemble(const Circuit& c, const std::vector<uint64_t>& rec, SampleBatch& b) {
    const int W = b.words;
    const uint64_t tail = (b.shots % 64) ? (~uint64_t(0) >> (64 - b.shots % 64)) : ~uint64_t(0);
#pragma omp parallel for schedule(static)
    for (int d = 0; d < b.num_detectors; ++d)
        for (int w = 0; w < W; ++w) {
            uint64_t v = 0;
            for (int r : c.detectors[d]) v ^= rec[(size_t)r * W + w];
            b.det[(size_t)d * W + w] = v & (w == W - 1 ? tail : ~uint64_t(0));
        }
#pragma omp parallel for schedule(static)
    for (int o = 0; o < b.num_observables; ++o)
        for (int w = 0; w < W; ++w) {
            uint64_t v = 0;
            for (int r : c.observables[o]) v ^= rec[(size_t)r * W + w];
            b.obs[(size_t)o * W + w] = v & (w == W - 1 ? tail : ~uint64_t(0));
        }
}

/// One 64-shot word through the whole circuit. Probability draws are scalar
/// per shot, frame propagation is word-parallel.
void run_word(const Circuit& c, uint64_t seed, int w, int nshots, int W,
              std::vector<uint64_t>& rec, std::vector<uint64_t>& erasure) {
    const int n = c.num_qubits;
    std::vector<uint64_t> fx(n, 0), fz(n, 0);
    const int lo = 64 * w;
    const int hi = std::min(lo + 64, nshots);
    int m = 0;
    for (size_t k = 0; k < c.instructions.size(); ++k) {
        const auto& ins = c.instructions[k];
        switch (ins.kind) {
        case Kind::Reset:
            fx[ins.q1] = 0;
            fz[ins.q1] = 0;
            break;
        case Kind::PairMeasure: {
            uint64_t a = 0;
            if (pauli_x(ins.pauli)) a ^= fz[ins.q1] ^ fz[ins.q2];
            if (pauli_z(ins.pauli)) a ^= fx[ins.q1] ^ fx[ins.q2];
            rec[(size_t)m * W + w] = a;
            const uint64_t r = rng::hash3(seed, (uint64_t)w, (uint64_t)k);
            if (pauli_x(ins.pauli)) fx[ins.q1] ^= r, fx[ins.q2] ^= r;
            if (pauli_z(ins.pauli)) fz[ins.q1] ^= r, fz[ins.q2] ^= r;
            ++m;
            break;
        }
        case Kind::SingleMeasure: {
            rec[(size_t)m * W + w] = ins.pauli == Pauli::Z ? fx[ins.q1] : fz[ins.q1];
            const uint64_t r = rng::hash3(seed, (uint64_t)w, (uint64_t)k);
            if (ins.pauli == Pauli::Z)
                fz[ins.q1] ^= r;
            else
                fx[ins.q1] ^= r;
            ++m;
            break;
        }
        case Kind::Depol1:
            for (int s = lo; s < hi; ++s) {
                const uint64_t h = rng::hash3(seed, (uint64_t)s, (uint64_t)k);
                if (rng::u01(h) >= ins.p) continue;
                const uint64_t bit = uint64_t(1) << (s & 63);
                const int which = (int)(rng::hash4(seed, (uint64_t)s, (uint64_t)k, 1) % 3);
                if (which != 2) fx[ins.q1] ^= bit; // X or Y
                if (which != 0) fz[ins.q1] ^= bit; // Y or Z
            }
            break;
        case Kind::Depol2:
            for (int s = lo; s < hi; ++s) {
                const uint64_t h = rng::hash3(seed, (uint64_t)s, (uint64_t)k);
                if (rng::u01(h) >= ins.p) continue;
                const uint64_t bit = uint64_t(1) << (s & 63);
                const int which = 1 + (int)(rng::hash4(seed, (uint64_t)s, (uint64_t)k, 1) % 15);
                const Pauli p1 = (Pauli)(which >> 2), p2 = (Pauli)(which & 3);
                if (pauli_x(p1)) fx[ins.q1] ^= bit;
                if (pauli_z(p1)) fz[ins.q1] ^= bit;
                if (pauli_x(p2)) fx[ins.q2] ^= bit;
                if (pauli_z(p2)) fz[ins.q2] ^= bit;
            }
            break;
        case Kind::PauliFlip:
            for (int s = lo; s < hi; ++s) {
                const uint64_t h = rng::hash3(seed, (uint64_t)s, (uint64_t)k);
                if (rng::u01(h) >= ins.p) continue;
                const uint64_t bit = uint64_t(1) << (s & 63);
                if (pauli_x(ins.pauli)) fx[ins.q1] ^= bit;
                if (pauli_z(ins.pauli)) fz[ins.q1] ^= bit;
            }
            break;
        case Kind::MeasureFlip:
            for (int s = lo; s < hi; ++s) {
                const uint64_t h = rng::hash3(seed, (uint64_t)s, (uint64_t)k);
                if (rng::u01(h) < ins.p) rec[(size_t)ins.meas * W + w] ^= uint64_t(1) << (s & 63);
            }
            break;
        case Kind::CorrelatedError:
            for (int s = lo; s < hi; ++s) {
                const uint64_t h = rng::hash3(seed, (uint64_t)s, (uint64_t)k);
                if (rng::u01(h) >= ins.p) continue;
                const uint64_t bit = uint64_t(1) << (s & 63);
                if (pauli_x(ins.pauli)) fx[ins.q1] ^= bit;
                if (pauli_z(ins.pauli)) fz[ins.q1] ^= bit;
                if (pauli_x(ins.pauli2)) fx[ins.q2] ^= bit;
                if (pauli_z(ins.pauli2)) fz[ins.q2] ^= bit;
                if (ins.flip) rec[(size_t)ins.meas * W + w] ^= bit;
            }
            break;
        case Kind::Erasable:
            // the record becomes a fair coin, flagged for the decoder; the
            // frame is untouched (the measurement never happened, and the
            // preceding randomization is a no-op for deterministic parities)
            for (int s = lo; s < hi; ++s) {
                const uint64_t h = rng::hash3(seed, (uint64_t)s, (uint64_t)k);
                if (rng::u01(h) >= ins.p) continue;
                const uint64_t bit = uint64_t(1) << (s & 63);
                erasure[(size_t)ins.meas * W + w] |= bit;
                const uint64_t coin = rng::hash4(seed, (uint64_t)s, (uint64_t)k, 1) & 1;
                uint64_t& rw = rec[(size_t)ins.meas * W + w];
                rw = (rw & ~bit) | (coin ? bit : 0);
            }
            break;
        default:
            break; // TICK, DETECTOR, OBS
        }
    }
}

} // namespace

SampleBatch sample_frames(const Circuit& c, int shots, uint64_t seed) {
    SampleBatch b = make_batch(c, shots, seed);
    const int W = b.words;
    std::vector<uint64_t> rec((size_t)c.num_measurements * W, 0);
#pragma omp parallel for schedule(dynamic)
    for (int w = 0; w < W; ++w) run_word(c, seed, w, shots, W, rec, b.erasure);
    assemble(c, rec, b);
    return b;
}

SampleBatch sample_frames_serial(const Circuit& c, int shots, uint64_t seed) {
    SampleBatch b = make_batch(c, shots, seed);
    const int W = b.words;
    const int n = c.num_qubits;
    std::vector<uint8_t> fx(n), fz(n), rec(c.num_measurements);
    for (int s = 0; s < shots; ++s) {
        std::fill(fx.begin(), fx.end(), 0);
        std::fill(fz.begin(), fz.end(), 0);
        std::fill(rec.begin(), rec.end(), 0);
        int m = 0;
        for (size_t k = 0; k < c.instructions.size(); ++k) {
            const auto& ins = c.instructions[k];
            auto word_bit = [&]() {
                return (uint8_t)((rng::hash3(seed, (uint64_t)(s >> 6), (uint64_t)k) >> (s & 63)) & 1);
            };
            auto hit = [&]() {
                return rng::u01(rng::hash3(seed, (uint64_t)s, (uint64_t)k)) < ins.p;
            };
            auto choice = [&](uint64_t mod) {
                return (int)(rng::hash4(seed, (uint64_t)s, (uint64_t)k, 1) % mod);
            };
            auto apply = [&](Pauli p, int q) {
                if (pauli_x(p)) fx[q] ^= 1;
                if (pauli_z(p)) fz[q] ^= 1;
            };
            switch (ins.kind) {
            case Kind::Reset:
                fx[ins.q1] = fz[ins.q1] = 0;
                break;
            case Kind::PairMeasure: {
                uint8_t a = 0;
                if (pauli_x(ins.pauli)) a ^= fz[ins.q1] ^ fz[ins.q2];
                if (pauli_z(ins.pauli)) a ^= fx[ins.q1] ^ fx[ins.q2];
                rec[m] = a;
                const uint8_t r = word_bit();
                if (r) {
                    if (pauli_x(ins.pauli)) fx[ins.q1] ^= 1, fx[ins.q2] ^= 1;
                    if (pauli_z(ins.pauli)) fz[ins.q1] ^= 1, fz[ins.q2] ^= 1;
                }
                ++m;
                break;
            }
            case Kind::SingleMeasure:
                rec[m] = ins.pauli == Pauli::Z ? fx[ins.q1] : fz[ins.q1];
                if (word_bit()) {
                    if (ins.pauli == Pauli::Z)
                        fz[ins.q1] ^= 1;
                    else
                        fx[ins.q1] ^= 1;
                }
                ++m;
                break;
            case Kind::Depol1:
                if (hit()) {
                    const int which = choice(3);
                    apply(which == 0 ? Pauli::X : which == 1 ? Pauli::Y : Pauli::Z, ins.q1);
                }
                break;
            case Kind::Depol2:
                if (hit()) {
                    const int which = 1 + choice(15);
                    apply((Pauli)(which >> 2), ins.q1);
                    apply((Pauli)(which & 3), ins.q2);
                }
                break;
            case Kind::PauliFlip:
                if (hit()) apply(ins.pauli, ins.q1);
                break;
            case Kind::MeasureFlip:
                if (hit()) rec[ins.meas] ^= 1;
                break;
            case Kind::CorrelatedError:
                if (hit()) {
                    apply(ins.pauli, ins.q1);
                    apply(ins.pauli2, ins.q2);
                    if (ins.flip) rec[ins.meas] ^= 1;
                }
                break;
            case Kind::Erasable:
                if (hit()) {
                    if (!b.erasure.empty())
                        b.erasure[(size_t)ins.meas * W + (s >> 6)] |= uint64_t(1) << (s & 63);
                    rec[ins.meas] = (uint8_t)(choice(2) != 0 ? 1 : 0);
                }
                break;
            default:
                break;
            }
        }
        const uint64_t bit = uint64_t(1) << (s & 63);
        for (int d = 0; d < c.num_detectors; ++d) {
            uint8_t v = 0;
            for (int r : c.detectors[d]) v ^= rec[r];
            if (v) b.det[(size_t)d * W + (s >> 6)] |= bit;
        }
        for (int o = 0; o < c.num_observables; ++o) {
            uint8_t v = 0;
            for (int r : c.observables[o]) v ^= rec[r];
            if (v) b.obs[(size_t)o * W + (s >> 6)] |= bit;
        }
    }
    return b;
}

SampleBatch sample_erasure(const Circuit& c, int shots, uint64_t seed) {
    if (!has_erasure(c))
        throw error(errc::config, "circuit carries no ERASABLE annotations");
    return sample_frames(c, shots, seed);
}

} // namespace hfc::sim
