#include "hfc/sim.hpp"

#include "hfc/error.hpp"
#include "hfc/rng.hpp"

#include <bit>
#include <cstring>
#include <string>

namespace hfc::sim {

using circ::Circuit;
using circ::Instruction;
using circ::Kind;
using circ::Pauli;

namespace {

bool pauli_x(Pauli p) { return p == Pauli::X || p == Pauli::Y; }
bool pauli_z(Pauli p) { return p == Pauli::Z || p == Pauli::Y; }

} // namespace

TableauState::TableauState(int num_qubits, int shots, uint64_t seed)
    : n_(num_qubits), nw_((num_qubits + 63) / 64), shots_(shots),
      sw_((shots + 63) / 64), seed_(seed) {
    shot_mask_ = (shots % 64) ? (~uint64_t(0) >> (64 - shots % 64)) : ~uint64_t(0);
    x_.assign((size_t)2 * n_ * nw_, 0);
    z_.assign((size_t)2 * n_ * nw_, 0);
    s_.assign((size_t)2 * n_ * sw_, 0);
    scratch_x_.assign(nw_, 0);
    scratch_z_.assign(nw_, 0);
    scratch_s_.assign(sw_, 0);
    for (int q = 0; q < n_; ++q) {
        row_x(q)[q >> 6] |= uint64_t(1) << (q & 63);          // destabilizer X_q
        row_z(n_ + q)[q >> 6] |= uint64_t(1) << (q & 63);     // stabilizer Z_q
    }
}

bool TableauState::anticommutes(int r, const std::vector<int>& qubits,
                                const std::vector<circ::Pauli>& paulis) const {
    const uint64_t* rx = x_.data() + (size_t)r * nw_;
    const uint64_t* rz = z_.data() + (size_t)r * nw_;
    int acc = 0;
    for (size_t i = 0; i < qubits.size(); ++i) {
        const int q = qubits[i];
        const int xb = (rx[q >> 6] >> (q & 63)) & 1;
        const int zb = (rz[q >> 6] >> (q & 63)) & 1;
        acc ^= (xb & pauli_z(paulis[i])) ^ (zb & pauli_x(paulis[i]));
    }
    return acc;
}

// row h *= row i, with the Aaronson-Gottesman phase function evaluated
// word-wise: per qubit g is +1, -1 or 0 depending on the two Pauli letters,
// and the shot-packed sign picks up (g_total mod 4) / 2.
void TableauState::rowsum(int h, int i) {
    uint64_t* xh = row_x(h);
    uint64_t* zh = row_z(h);
    const uint64_t* xi = row_x(i);
    const uint64_t* zi = row_z(i);
    long g = 0;
    for (int w = 0; w < nw_; ++w) {
        const uint64_t x1 = xi[w], z1 = zi[w], x2 = xh[w], z2 = zh[w];
        const uint64_t plus = (x1 & z1 & z2 & ~x2) | (x1 & ~z1 & x2 & z2) | (~x1 & z1 & x2 & ~z2);
        const uint64_t minus = (x1 & z1 & x2 & ~z2) | (x1 & ~z1 & ~x2 & z2) | (~x1 & z1 & x2 & z2);
        g += std::popcount(plus) - std::popcount(minus);
        xh[w] = x2 ^ x1;
        zh[w] = z2 ^ z1;
    }
    const bool neg = ((g % 4) + 4) % 4 >= 2;
    uint64_t* sh = row_s(h);
    const uint64_t* si = row_s(i);
    for (int w = 0; w < sw_; ++w) sh[w] ^= si[w] ^ (neg ? ~uint64_t(0) : 0);
}

void TableauState::rowsum_scratch(int i) {
    const uint64_t* xi = row_x(i);
    const uint64_t* zi = row_z(i);
    long g = 0;
    for (int w = 0; w < nw_; ++w) {
        const uint64_t x1 = xi[w], z1 = zi[w], x2 = scratch_x_[w], z2 = scratch_z_[w];
        const uint64_t plus = (x1 & z1 & z2 & ~x2) | (x1 & ~z1 & x2 & z2) | (~x1 & z1 & x2 & ~z2);
        const uint64_t minus = (x1 & z1 & x2 & ~z2) | (x1 & ~z1 & ~x2 & z2) | (~x1 & z1 & x2 & z2);
        g += std::popcount(plus) - std::popcount(minus);
        scratch_x_[w] = x2 ^ x1;
        scratch_z_[w] = z2 ^ z1;
    }
    const bool neg = ((g % 4) + 4) % 4 >= 2;
    const uint64_t* si = row_s(i);
    for (int w = 0; w < sw_; ++w) scratch_s_[w] ^= si[w] ^ (neg ? ~uint64_t(0) : 0);
}

std::vector<uint64_t> TableauState::measure(const std::vector<int>& qubits,
                                            const std::vector<circ::Pauli>& paulis) {
    int p = -1;
    for (int r = n_; r < 2 * n_; ++r)
        if (anticommutes(r, qubits, paulis)) {
            p = r;
            break;
        }
    std::vector<uint64_t> out(sw_, 0);
    if (p >= 0) {
        last_random_ = true;
        for (int r = 0; r < 2 * n_; ++r)
            if (r != p && anticommutes(r, qubits, paulis)) rowsum(r, p);
        std::memcpy(row_x(p - n_), row_x(p), nw_ * sizeof(uint64_t));
        std::memcpy(row_z(p - n_), row_z(p), nw_ * sizeof(uint64_t));
        std::memcpy(row_s(p - n_), row_s(p), sw_ * sizeof(uint64_t));
        std::memset(row_x(p), 0, nw_ * sizeof(uint64_t));
        std::memset(row_z(p), 0, nw_ * sizeof(uint64_t));
        for (size_t i = 0; i < qubits.size(); ++i) {
            const int q = qubits[i];
            if (pauli_x(paulis[i])) row_x(p)[q >> 6] |= uint64_t(1) << (q & 63);
            if (pauli_z(paulis[i])) row_z(p)[q >> 6] |= uint64_t(1) << (q & 63);
        }
        if (!reference_mode_) {
            ++coin_ctr_;
            for (int w = 0; w < sw_; ++w)
                out[w] = rng::hash3(seed_, coin_ctr_, (uint64_t)w);
            out[sw_ - 1] &= shot_mask_;
        }
        std::memcpy(row_s(p), out.data(), sw_ * sizeof(uint64_t));
        return out;
    }
    last_random_ = false;
    std::memset(scratch_x_.data(), 0, nw_ * sizeof(uint64_t));
    std::memset(scratch_z_.data(), 0, nw_ * sizeof(uint64_t));
    std::memset(scratch_s_.data(), 0, sw_ * sizeof(uint64_t));
    for (int i = 0; i < n_; ++i)
        if (anticommutes(i, qubits, paulis)) rowsum_scratch(n_ + i);
    for (int w = 0; w < sw_; ++w) out[w] = scratch_s_[w];
    out[sw_ - 1] &= shot_mask_;
    return out;
}

std::vector<uint64_t> TableauState::measure_pair(int q1, int q2, circ::Pauli p) {
    return measure({q1, q2}, {p, p});
}

std::vector<uint64_t> TableauState::measure_one(int q, circ::Pauli basis) {
    return measure({q}, {basis});
}

void TableauState::reset(int q, circ::Pauli basis) {
    auto out = measure_one(q, basis);
    // flip the -1 shots back with any anticommuting Pauli: applying it only
    // flips signs of rows it anticommutes with
    const Pauli corr = basis == Pauli::Z ? Pauli::X : Pauli::Z;
    const std::vector<int> qs{q};
    const std::vector<Pauli> ps{corr};
    for (int r = 0; r < 2 * n_; ++r) {
        if (!anticommutes(r, qs, ps)) continue;
        uint64_t* sr = row_s(r);
        for (int w = 0; w < sw_; ++w) sr[w] ^= out[w];
    }
}

namespace {

/// Run the measurement/reset skeleton of a circuit, handing each measurement's
/// packed outcomes to `sink(meas_index, words)`.
template <class Sink>
void run_skeleton(const Circuit& c, TableauState& st, Sink&& sink) {
    int m = 0;
    for (const auto& ins : c.instructions) {
        switch (ins.kind) {
        case Kind::Reset:
            st.reset(ins.q1, ins.pauli);
            break;
        case Kind::PairMeasure:
            sink(m++, st.measure_pair(ins.q1, ins.q2, ins.pauli));
            break;
        case Kind::SingleMeasure:
            sink(m++, st.measure_one(ins.q1, ins.pauli));
            break;
        default:
            break; // noise, detectors and annotations don't touch the state
        }
    }
}

} // namespace

std::vector<uint8_t> reference_run(const Circuit& c) {
    TableauState st(c.num_qubits, 1, 0);
    st.set_reference_mode(true);
    std::vector<uint8_t> ref(c.num_measurements, 0);
    run_skeleton(c, st, [&](int m, const std::vector<uint64_t>& out) {
        ref[m] = (uint8_t)(out[0] & 1);
    });
    return ref;
}

void verify_determinism(const Circuit& c, int shots, uint64_t seed) {
    TableauState st(c.num_qubits, shots, seed);
    const int sw = st.shot_words();
    std::vector<uint64_t> rec((size_t)c.num_measurements * sw, 0);
    run_skeleton(c, st, [&](int m, const std::vector<uint64_t>& out) {
        std::memcpy(rec.data() + (size_t)m * sw, out.data(), sw * sizeof(uint64_t));
    });
    const uint64_t tail = (shots % 64) ? (~uint64_t(0) >> (64 - shots % 64)) : ~uint64_t(0);
    std::vector<uint64_t> par(sw);
    auto parity = [&](const std::vector<int>& records) {
        std::fill(par.begin(), par.end(), 0);
        for (int r : records)
            for (int w = 0; w < sw; ++w) par[w] ^= rec[(size_t)r * sw + w];
    };
    // Constant-one parities are fine: a plaquette reconstructed as a product
    // of its boundary checks can carry a fixed -1 sign (face size 2 mod 4),
    // and the frame sampler reports flips relative to the noiseless reference,
    // so constants cancel. Only shot-to-shot variation is a defect.
    auto constant = [&]() {
        const uint64_t want = (par[0] & 1) ? ~uint64_t(0) : 0;
        for (int w = 0; w < sw; ++w) {
            const uint64_t mask = (w == sw - 1) ? tail : ~uint64_t(0);
            if ((par[w] & mask) != (want & mask)) return false;
        }
        return true;
    };
    for (size_t d = 0; d < c.detectors.size(); ++d) {
        parity(c.detectors[d]);
        if (!constant())
            throw error(errc::nondeterministic_detector,
                        "detector " + std::to_string(d) +
                            " varies across noiseless stabilizer runs");
    }
    for (size_t i = 0; i < c.observables.size(); ++i) {
        parity(c.observables[i]);
        if (!constant())
            throw error(errc::observable_nondeterministic,
                        "observable " + std::to_string(i) +
                            " varies across noiseless stabilizer runs");
    }
}

} // namespace hfc::sim
