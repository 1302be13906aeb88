#pragma once

#include "hfc/circuit.hpp"

#include <cstdint>
#include <vector>

namespace hfc::sim {

/// Stabilizer tableau over n qubits with shot-packed measurement signs. The
/// row operations a measurement triggers depend only on the x/z structure,
/// never on the outcome, so one structural pass simulates many independent
/// random-outcome runs in parallel: each row carries one sign bit per shot.
class TableauState {
  public:
    /// All shots start in |0...0>.
    TableauState(int num_qubits, int shots, uint64_t seed);

    int num_qubits() const { return n_; }
    int shots() const { return shots_; }
    int shot_words() const { return sw_; }

    /// With reference mode on, random outcomes are fixed to 0 instead of
    /// drawing coins (the frame sampler's reference convention).
    void set_reference_mode(bool on) { reference_mode_ = on; }

    /// Measure a Pauli product (+1 phase); returns packed per-shot outcomes.
    std::vector<uint64_t> measure(const std::vector<int>& qubits,
                                  const std::vector<circ::Pauli>& paulis);
    std::vector<uint64_t> measure_pair(int q1, int q2, circ::Pauli p);
    std::vector<uint64_t> measure_one(int q, circ::Pauli basis);
    bool last_was_random() const { return last_random_; }

    /// Measure in `basis`, then flip the shots that collapsed to -1 back.
    void reset(int q, circ::Pauli basis);

  private:
    uint64_t* row_x(int r) { return x_.data() + (size_t)r * nw_; }
    uint64_t* row_z(int r) { return z_.data() + (size_t)r * nw_; }
    uint64_t* row_s(int r) { return s_.data() + (size_t)r * sw_; }
    bool anticommutes(int r, const std::vector<int>& qubits,
                      const std::vector<circ::Pauli>& paulis) const;
    void rowsum(int h, int i);
    void rowsum_scratch(int i);

    int n_, nw_, shots_, sw_;
    uint64_t shot_mask_;
    uint64_t seed_;
    uint64_t coin_ctr_ = 0;
    bool reference_mode_ = false;
    bool last_random_ = false;
    // rows 0..n-1 destabilizers, n..2n-1 stabilizers, plus a scratch row
    std::vector<uint64_t> x_, z_, s_;
    std::vector<uint64_t> scratch_x_, scratch_z_, scratch_s_;
};

/// Noiseless pass with random outcomes fixed to 0; returns one reference bit
/// per measurement. Noise instructions are ignored.
std::vector<uint8_t> reference_run(const circ::Circuit& c);

/// Detector/observable flips relative to the noiseless reference, bit-packed
/// across shots (shot s lives in bit s%64 of word s/64 of each row).
struct SampleBatch {
    int shots = 0;
    int words = 0; // shot words per row
    uint64_t seed = 0;
    int num_detectors = 0;
    int num_observables = 0;
    int num_measurements = 0;
    std::vector<uint64_t> det;     // num_detectors x words
    std::vector<uint64_t> obs;     // num_observables x words
    std::vector<uint64_t> erasure; // num_measurements x words; empty unless
                                   // the circuit carries ERASABLE annotations

    bool det_bit(int d, int s) const { return (det[(size_t)d * words + (s >> 6)] >> (s & 63)) & 1; }
    bool obs_bit(int o, int s) const { return (obs[(size_t)o * words + (s >> 6)] >> (s & 63)) & 1; }
    bool erased(int m, int s) const {
        return !erasure.empty() && ((erasure[(size_t)m * words + (s >> 6)] >> (s & 63)) & 1);
    }
};

/// Pauli-frame sampler: noise channels toggle per-qubit X/Z flip bits, a
/// measurement's flip is the frame's anticommutation with the measured
/// operator, and the frame is randomized along each measured operator
/// afterwards. Word-parallel across shots and OpenMP-parallel across words;
/// draws are keyed by (seed, shot or shot-word, instruction index), so the
/// result is independent of thread count.
SampleBatch sample_frames(const circ::Circuit& c, int shots, uint64_t seed);

/// One shot at a time with byte-per-qubit frames: the obviously-correct
/// reference the packed sampler is tested against (and benchmarked).
SampleBatch sample_frames_serial(const circ::Circuit& c, int shots, uint64_t seed);

/// sample_frames for a circuit annotated by the erasure model; checks the
/// annotations are present.
SampleBatch sample_erasure(const circ::Circuit& c, int shots, uint64_t seed);

/// Simulate `shots` noiseless random-outcome runs in one structural pass and
/// require every detector and observable parity to be constant across shots
/// (constant -1 is fine, it cancels against the reference). Throws
/// NONDETERMINISTIC_DETECTOR / OBSERVABLE_NONDETERMINISTIC otherwise.
void verify_determinism(const circ::Circuit& c, int shots = 128,
                        uint64_t seed = 0x7ab1ea0d15ULL);

} // namespace hfc::sim
