#pragma once

#include "hfc/circuit.hpp"
#include "hfc/sim.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace hfc::dec {

/// One independent error source: flips `dets` and `obs` with probability p.
/// `meas` links erasure mechanisms to the measurement whose flag zeroes their
/// weight at decode time (-1 otherwise).
struct Mechanism {
    double p = 0;
    std::vector<int> dets; // sorted detector ids
    std::vector<int> obs;  // sorted observable ids
    int meas = -1;
};

struct DetectorErrorModel {
    int num_detectors = 0;
    int num_observables = 0;
    std::vector<Mechanism> mechanisms; // sorted by (dets, obs, meas)
};

/// Propagates every single error component (each Pauli of each depolarizing
/// channel, each flip, each correlated error, each erasable record) through
/// the circuit and collects its exact symptom sets; duplicates are merged as
/// p1(1-p2) + p2(1-p1).
DetectorErrorModel extract_dem(const circ::Circuit& c);

void write_dem(std::ostream& os, const DetectorErrorModel& dem);
DetectorErrorModel read_dem(std::istream& is);

struct MgEdge {
    int u = 0, v = 0;   // detector ids; v == num_detectors is the boundary
    double w = 0;       // ln((1-p)/p)
    double p = 0;
    std::vector<int> obs;
    int meas = -1;      // erasure flag source
};

struct MatchingGraph {
    int num_detectors = 0;
    int num_observables = 0;
    std::vector<MgEdge> edges;
    std::vector<std::vector<int>> adj; // node -> incident edge ids (boundary last)
    bool has_boundary = false;
};

/// Mechanisms with <= 2 detectors become edges (one-detector mechanisms
/// attach to a virtual boundary node); larger ones are decomposed into
/// existing edges whose detector sets XOR to the target and whose observable
/// masks XOR consistently, preferring high-probability partners. Check-record
/// flip hyperedges (measurement errors, erasures) with no such decomposition
/// fall back to fresh component edges from closest-id pairing. Throws
/// NOT_GRAPHLIKE when a leftover single detector has no boundary to attach
/// to.
MatchingGraph to_matching_graph(const DetectorErrorModel& dem);

struct DecodeResult {
    std::vector<uint8_t> obs_flip; // predicted flip per observable
    double weight = 0;             // total matching weight
};

/// Minimum-weight perfect matching of the fired detectors: Dijkstra distances
/// on the graph (erased edges at weight 0), exact blossom matching on the
/// defect-complete graph, prediction = XOR of edge observable masks along the
/// matched paths. `erased` may be empty (nothing erased) or one flag per
/// measurement. Throws UNMATCHABLE when the defect parity cannot be matched.
DecodeResult decode_mwpm(const MatchingGraph& g, const std::vector<uint8_t>& syndrome,
                         const std::vector<uint8_t>& erased = {});

/// Decode every shot of a batch (OpenMP across shots); row-major
/// shots x observables prediction matrix.
std::vector<uint8_t> decode_batch(const MatchingGraph& g, const sim::SampleBatch& batch);

/// Exact minimum-weight perfect matching on a dense graph; weight < 0 marks a
/// forbidden pair. Returns the matched partner of each node, or an empty
/// vector when no perfect matching exists. Used by decode_mwpm and exposed
/// for the oracle tests.
std::vector<int> min_weight_perfect_matching(const std::vector<std::vector<int64_t>>& w);

} // namespace hfc::dec
