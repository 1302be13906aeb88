#include "hfc/decode.hpp"

#include "hfc/error.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace hfc::dec {

using circ::Circuit;
using circ::Kind;
using circ::Pauli;

namespace {

bool pauli_x(Pauli p) { return p == Pauli::X || p == Pauli::Y; }
bool pauli_z(Pauli p) { return p == Pauli::Z || p == Pauli::Y; }

using Sym = std::vector<int>; // sorted symptom ids (detectors, then observables)

void sym_xor(Sym& a, const Sym& b) {
    Sym out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(out));
    a = std::move(out);
}

double merge_p(double p1, double p2) { return p1 * (1 - p2) + p2 * (1 - p1); }

} // namespace

DetectorErrorModel extract_dem(const Circuit& c) {
    const int D = c.num_detectors;

    // record -> symptoms it toggles
    std::vector<Sym> rec2sym(c.num_measurements);
    for (int d = 0; d < D; ++d)
        for (int r : c.detectors[d]) rec2sym[r].push_back(d);
    for (int o = 0; o < c.num_observables; ++o)
        for (int r : c.observables[o]) rec2sym[r].push_back(D + o);
    for (auto& s : rec2sym) std::sort(s.begin(), s.end());

    // measurement index of each instruction
    std::vector<int> meas_of(c.instructions.size(), -1);
    {
        int m = 0;
        for (size_t k = 0; k < c.instructions.size(); ++k) {
            const auto& ins = c.instructions[k];
            if (ins.kind == Kind::PairMeasure || ins.kind == Kind::SingleMeasure)
                meas_of[k] = m++;
        }
    }

    // Walk backward keeping, per qubit, the symptoms an X / Z error at the
    // current position would flip. A Y error flips the XOR of the two.
    std::vector<Sym> Sx(c.num_qubits), Sz(c.num_qubits);
    auto pauli_sym = [&](Pauli p, int q) {
        Sym s;
        if (pauli_x(p)) s = Sx[q];
        if (pauli_z(p)) sym_xor(s, Sz[q]);
        return s;
    };

    std::map<std::pair<std::pair<Sym, Sym>, int>, double> merged;
    bool clamp_warned = false;
    auto add = [&](Sym sym, double p, int meas) {
        if (sym.empty() || p <= 0) return;
        if (p > 0.5) {
            if (!clamp_warned) {
                std::fprintf(stderr,
                             "extract_dem: clamping mechanism probability %g to 0.5\n", p);
                clamp_warned = true;
            }
            p = 0.5 - 1e-9;
        }
        Sym dets, obs;
        for (int s : sym) (s < D ? dets : obs).push_back(s < D ? s : s - D);
        auto key = std::make_pair(std::make_pair(std::move(dets), std::move(obs)), meas);
        auto [it, fresh] = merged.emplace(std::move(key), p);
        if (!fresh) it->second = merge_p(it->second, p);
    };

    for (size_t k = c.instructions.size(); k-- > 0;) {
        const auto& ins = c.instructions[k];
        switch (ins.kind) {
        case Kind::Reset:
            Sx[ins.q1].clear();
            Sz[ins.q1].clear();
            break;
        case Kind::PairMeasure: {
            const Sym& d = rec2sym[meas_of[k]];
            for (int q : {ins.q1, ins.q2}) {
                if (pauli_z(ins.pauli)) sym_xor(Sx[q], d);
                if (pauli_x(ins.pauli)) sym_xor(Sz[q], d);
            }
            break;
        }
        case Kind::SingleMeasure: {
            const Sym& d = rec2sym[meas_of[k]];
            if (pauli_z(ins.pauli))
                sym_xor(Sx[ins.q1], d);
            else
                sym_xor(Sz[ins.q1], d);
            break;
        }
        case Kind::Depol1:
            for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z})
                add(pauli_sym(p, ins.q1), ins.p / 3.0, -1);
            break;
        case Kind::Depol2:
            for (int which = 1; which < 16; ++which) {
                Sym s = pauli_sym((Pauli)(which >> 2), ins.q1);
                sym_xor(s, pauli_sym((Pauli)(which & 3), ins.q2));
                add(std::move(s), ins.p / 15.0, -1);
            }
            break;
        case Kind::PauliFlip:
            add(pauli_sym(ins.pauli, ins.q1), ins.p, -1);
            break;
        case Kind::MeasureFlip:
            add(rec2sym[ins.meas], ins.p, -1);
            break;
        case Kind::CorrelatedError: {
            Sym s = pauli_sym(ins.pauli, ins.q1);
            sym_xor(s, pauli_sym(ins.pauli2, ins.q2));
            if (ins.flip) sym_xor(s, rec2sym[ins.meas]);
            add(std::move(s), ins.p, -1);
            break;
        }
        case Kind::Erasable:
            // an erased record is replaced by a fair coin: flip rate p/2,
            // tagged so the decoder can zero its weight when flagged
            add(rec2sym[ins.meas], ins.p / 2.0, ins.meas);
            break;
        default:
            break;
        }
    }

    DetectorErrorModel dem;
    dem.num_detectors = D;
    dem.num_observables = c.num_observables;
    for (auto& [key, p] : merged)
        dem.mechanisms.push_back({p, key.first.first, key.first.second, key.second});
    return dem;
}

void write_dem(std::ostream& os, const DetectorErrorModel& dem) {
    char buf[40];
    for (const auto& m : dem.mechanisms) {
        std::snprintf(buf, sizeof buf, "%.17g", m.p);
        os << "error(" << buf << ")";
        for (int d : m.dets) os << " D" << d;
        for (int o : m.obs) os << " L" << o;
        if (m.meas >= 0) os << " M" << m.meas;
        os << '\n';
    }
}

DetectorErrorModel read_dem(std::istream& is) {
    DetectorErrorModel dem;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        auto fail = [&](const std::string& why) {
            throw error(errc::parse_error, "dem line " + std::to_string(line_no) + ": " + why);
        };
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (head.rfind("error(", 0) != 0 || head.back() != ')') fail("expected error(<p>)");
        Mechanism m;
        m.p = std::stod(head.substr(6, head.size() - 7));
        std::string tok;
        while (ls >> tok) {
            if (tok.size() < 2) fail("bad token '" + tok + "'");
            int v = std::stoi(tok.substr(1));
            if (tok[0] == 'D')
                m.dets.push_back(v);
            else if (tok[0] == 'L')
                m.obs.push_back(v);
            else if (tok[0] == 'M')
                m.meas = v;
            else
                fail("bad token '" + tok + "'");
        }
        for (int d : m.dets) dem.num_detectors = std::max(dem.num_detectors, d + 1);
        for (int o : m.obs) dem.num_observables = std::max(dem.num_observables, o + 1);
        dem.mechanisms.push_back(std::move(m));
    }
    return dem;
}

} // namespace hfc::dec
