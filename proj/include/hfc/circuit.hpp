#pragma once

#include "hfc/partition.hpp"
#include "hfc/tessellation.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace hfc::circ {

enum class Pauli : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);

enum class Kind : uint8_t {
    PairMeasure,     // MPP <PP> q1 q2
    SingleMeasure,   // M <basis> q
    Reset,           // RESET <basis> q
    Depol1,          // DEPOL1 p q
    Depol2,          // DEPOL2 p q1 q2
    PauliFlip,       // FLIP p q <axis>
    MeasureFlip,     // EFLIP p rec[-n]
    CorrelatedError, // CORR p <P>q1 <P>q2 [flip]   (applies after its MPP)
    Erasable,        // ERASABLE p rec[-n]
    Detector,        // DETECTOR rec[-a] ...
    ObservableInclude, // OBS id rec[-a] ...
    Tick,            // TICK
};

struct Instruction {
    Kind kind;
    Pauli pauli = Pauli::I;  // pair pauli (XX/YY/ZZ as X/Y/Z), basis, flip axis, corr pauli on q1
    Pauli pauli2 = Pauli::I; // corr pauli on q2
    bool flip = false;       // corr: also flip the preceding record
    int q1 = -1, q2 = -1;
    int edge = -1;           // tessellation edge for pair measurements
    double p = 0;
    int meas = -1;           // absolute measurement index (EFLIP/ERASABLE target)
    int id = -1;             // observable id
    std::vector<int> records; // absolute measurement indices (DETECTOR/OBS)
};

struct Circuit {
    int num_qubits = 0;
    int num_measurements = 0;
    int num_detectors = 0;
    int num_observables = 0;
    int detector_rounds = 0;
    char basis = 'Z';
    std::vector<Instruction> instructions;

    std::vector<int> meas_edge;             // measurement -> edge id, -1 for data measurements
    std::vector<std::vector<int>> detectors;   // detector -> absolute record set
    std::vector<std::vector<int>> observables; // observable -> absolute record set
};

enum class Model { DIST_DEPOL, ANC_EM3, SDEM3, CORR_EM3, ERASURE };

Model parse_model(const std::string& name);
const char* model_name(Model m);

struct NoiseSpec {
    Model model = Model::DIST_DEPOL;
    double p_local = 0.0003;
    double p_nl = 0.0;
    int bell_wait_cycles = 5;
    double eps_local = 0.0; // erasure model
    double eps_nl = 0.0;
};

/// Repeat-until-success failure probability for loss rate eps.
double p_rus(double eps);

/// Noiseless Floquet schedule: 6*detector_rounds sub-rounds cycling
/// (red XX, green YY, blue ZZ), per-face plaquette detectors, k = 2g
/// observables tracked as X operators on a red homology cycle basis,
/// transversal final
/// measurement in `basis`. Runs a noiseless determinism self-test; throws
/// OBSERVABLE_NONDETERMINISTIC / NONDETERMINISTIC_DETECTOR on failure.
Circuit build_floquet(const tess::Tessellation& t, int detector_rounds, char basis = 'Z');

Circuit apply_dist_depol(const Circuit& c, const part::Partition& part, const NoiseSpec& ns);
Circuit apply_anc_em3(const Circuit& c, const part::Partition& part, const NoiseSpec& ns);
Circuit apply_sdem3(const Circuit& c, const part::Partition& part, const NoiseSpec& ns);
Circuit apply_corr_em3(const Circuit& c, const part::Partition& part, const NoiseSpec& ns);
Circuit apply_erasure(const Circuit& c, const part::Partition& part, const NoiseSpec& ns);

/// Dispatch on ns.model.
Circuit apply_noise(const Circuit& c, const part::Partition& part, const NoiseSpec& ns);

/// Text format, bit-exact round trip. Record references are backward-relative.
void write_circuit(std::ostream& os, const Circuit& c);
Circuit read_circuit(std::istream& is);

} // namespace hfc::circ
