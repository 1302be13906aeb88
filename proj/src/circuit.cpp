#include "hfc/circuit.hpp"

#include "hfc/error.hpp"
#include "hfc/gf2.hpp"
#include "hfc/homology.hpp"
#include "hfc/rng.hpp"
#include "hfc/sim.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace hfc::circ {

using hom::Gf2Vec;

char pauli_char(Pauli p) { return "IXYZ"[(int)p]; }

namespace {

constexpr Pauli kColorPauli[3] = {Pauli::X, Pauli::Y, Pauli::Z};

bool pauli_x(Pauli p) { return p == Pauli::X || p == Pauli::Y; }
bool pauli_z(Pauli p) { return p == Pauli::Z || p == Pauli::Y; }

void check_prob(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw error(errc::config, std::string(what) + " outside [0,1]");
}

/// Noiseless frame replay over a few random-coin shots: every detector and
/// observable must XOR to zero relative to the reference in every shot.
void determinism_self_test(const Circuit& c) {
    const int shots = 128;
    const uint64_t seed = 0x5e1f7e57ULL;
    std::vector<char> flip(c.num_measurements);
    for (int shot = 0; shot < shots; ++shot) {
        Gf2Vec fx(c.num_qubits), fz(c.num_qubits);
        int m = 0, instr_no = 0, det_no = 0;
        for (const auto& ins : c.instructions) {
            ++instr_no;
            switch (ins.kind) {
            case Kind::Reset:
                if (fx.get(ins.q1)) fx.flip(ins.q1);
                if (fz.get(ins.q1)) fz.flip(ins.q1);
                break;
            case Kind::PairMeasure: {
                bool f1 = pauli_x(ins.pauli) ? fz.get(ins.q1) : false;
                bool f2 = pauli_x(ins.pauli) ? fz.get(ins.q2) : false;
                bool g1 = pauli_z(ins.pauli) ? fx.get(ins.q1) : false;
                bool g2 = pauli_z(ins.pauli) ? fx.get(ins.q2) : false;
                flip[m] = (char)(f1 ^ f2 ^ g1 ^ g2);
                if (rng::hash3(seed, (uint64_t)shot, (uint64_t)instr_no) & 1) {
                    if (pauli_x(ins.pauli)) fx.flip(ins.q1), fx.flip(ins.q2);
                    if (pauli_z(ins.pauli)) fz.flip(ins.q1), fz.flip(ins.q2);
                }
                ++m;
                break;
            }
            case Kind::SingleMeasure:
                flip[m] = (char)(ins.pauli == Pauli::Z ? fx.get(ins.q1) : fz.get(ins.q1));
                ++m;
                break;
            case Kind::Detector: {
                int par = 0;
                for (int r : ins.records) par ^= flip[r];
                if (par)
                    throw error(errc::nondeterministic_detector,
                                "detector " + std::to_string(det_no) + " fired in a noiseless shot");
                ++det_no;
                break;
            }
            default:
                break;
            }
        }
        for (int i = 0; i < c.num_observables; ++i) {
            int par = 0;
            for (int r : c.observables[i]) par ^= flip[r];
            if (par)
                throw error(errc::observable_nondeterministic,
                            "observable " + std::to_string(i) + " varies across noiseless shots");
        }
    }
}

} // namespace

double p_rus(double eps) {
    check_prob(eps, "erasure rate");
    double s = (1.0 - eps) * (1.0 - eps);
    return (2.0 - 2.0 * s) / (2.0 - s);
}

Model parse_model(const std::string& name) {
    if (name == "dist-depol") return Model::DIST_DEPOL;
    if (name == "anc-em3") return Model::ANC_EM3;
    if (name == "sdem3") return Model::SDEM3;
    if (name == "corr-em3") return Model::CORR_EM3;
    if (name == "erasure") return Model::ERASURE;
    throw error(errc::config, "unknown noise model '" + name + "'");
}

const char* model_name(Model m) {
    switch (m) {
    case Model::DIST_DEPOL: return "dist-depol";
    case Model::ANC_EM3: return "anc-em3";
    case Model::SDEM3: return "sdem3";
    case Model::CORR_EM3: return "corr-em3";
    case Model::ERASURE: return "erasure";
    }
    return "?";
}

Circuit build_floquet(const tess::Tessellation& t, int detector_rounds, char basis) {
    if (!t.colored()) throw error(errc::domain, "tessellation is not colored");
    if (detector_rounds < 1) throw error(errc::domain, "need at least one detector round");
    if (basis != 'Z' && basis != 'X') throw error(errc::config, "basis must be X or Z");

    Circuit c;
    const int n = t.num_vertices;
    c.num_qubits = n;
    c.detector_rounds = detector_rounds;
    c.basis = basis;

    std::array<std::vector<int>, 3> edges_by_color;
    for (int col = 0; col < 3; ++col) edges_by_color[col] = t.edges_of_color(col);

    // Observable representatives must commute with every check measured while
    // they are still pending: a Pauli frame can be multiplied by the measured
    // operator after each measurement, so a record set whose suffix products
    // anticommute with a check is nondeterministic. Each observable tracks an
    // X-type operator on a red homology-basis cycle: a product of red checks,
    // so it commutes with the first sub-round for free, and its vertex set
    // pairs evenly with every green and blue plaquette (the two faces beside
    // a red edge both contain both endpoints), which keeps every later
    // boundary solvable. In the X basis that operator is already fixed by the
    // X resets; in the Z basis its initial value is random, so the
    // observable additionally absorbs the cycle's own first-sub-round records:
    // their product IS the tracked operator, and the combination is fixed.
    struct Obs {
        Gf2Vec x, z;
        std::vector<int> cycle; // red seed cycle (edge ids)
        std::set<int> recs;     // records with odd multiplicity so far
        std::vector<int> fresh; // delta to emit after the current sub-round
    };
    std::vector<Obs> obs;
    if (t.genus > 0) {
        for (auto& cycle : hom::cycle_basis(t, 0)) {
            Obs o{Gf2Vec(n), Gf2Vec(n), std::move(cycle), {}, {}};
            for (int e : o.cycle)
                for (int v : t.edge_endpoints[e]) o.x.flip(v);
            obs.push_back(std::move(o));
        }
    }
    c.num_observables = (int)obs.size();
    c.observables.resize(obs.size());

    auto toggle_rec = [](Obs& o, int r) {
        o.fresh.push_back(r);
        if (!o.recs.insert(r).second) o.recs.erase(r);
    };
    auto emit_obs_fresh = [&]() {
        for (size_t i = 0; i < obs.size(); ++i) {
            auto& fresh = obs[i].fresh;
            if (fresh.empty()) continue;
            std::sort(fresh.begin(), fresh.end());
            std::vector<int> odd;
            for (size_t a = 0; a < fresh.size();) {
                size_t b = a;
                while (b < fresh.size() && fresh[b] == fresh[a]) ++b;
                if ((b - a) % 2) odd.push_back(fresh[a]);
                a = b;
            }
            fresh.clear();
            if (odd.empty()) continue;
            Instruction ins;
            ins.kind = Kind::ObservableInclude;
            ins.id = (int)i;
            ins.records = std::move(odd);
            c.instructions.push_back(std::move(ins));
        }
    };

    // Face operators (products of the boundary edge checks): the face's color
    // Pauli on its vertices. A completed plaquette evaluation lets us multiply
    // one into an observable at any later point; its record-set suffixes
    // always commute with every check, so this never breaks determinism.
    const int F = t.num_faces;
    std::vector<Gf2Vec> sx(F, Gf2Vec(n)), sz(F, Gf2Vec(n));
    for (int f = 0; f < F; ++f)
        for (int e : t.face_boundary[f]) {
            const Pauli Pe = kColorPauli[t.edge_color[e]];
            for (int v : t.edge_endpoints[e]) {
                if (pauli_x(Pe)) sx[f].flip(v);
                if (pauli_z(Pe)) sz[f].flip(v);
            }
        }
    std::array<std::vector<int>, 3> faces_by_color;
    std::vector<int> face_pos(F);
    for (int f = 0; f < F; ++f) {
        face_pos[f] = (int)faces_by_color[t.face_color[f]].size();
        faces_by_color[t.face_color[f]].push_back(f);
    }
    // v's face of each color, as position within that color class
    std::vector<std::array<int, 3>> vface(n);
    for (int v = 0; v < n; ++v)
        for (int f : t.vertex_faces[v]) vface[v][t.face_color[f]] = face_pos[f];

    // Update moves available at the boundary between sub-rounds: a certificate
    // column (next-color edge pair, no action), a just-measured check, or a
    // completed face evaluation. The row space stacks the anticommuting-set
    // constraint for the next color on top of one parity row per current-color
    // face, which keeps the following boundary solvable in turn.
    struct Move {
        enum { Cert, Check, Eval } kind;
        int idx;
    };
    struct Boundary {
        std::vector<Move> moves;
        std::vector<std::pair<Gf2Vec, Gf2Vec>> pivots; // (reduced column, combo)
        int rows = 0;
    };
    std::vector<std::vector<int>> last_eval(F);
    std::vector<int> last_rec(t.num_edges, -1);
    Boundary boundary_cache[2][3];
    bool boundary_built[2][3] = {};
    auto get_boundary = [&](int col, bool steady) -> Boundary& {
        Boundary& b = boundary_cache[steady][col];
        if (boundary_built[steady][col]) return b;
        boundary_built[steady][col] = true;
        const int cn = (col + 1) % 3, cnn = (col + 2) % 3;
        b.rows = n + (int)faces_by_color[col].size();
        for (int e : edges_by_color[cn]) b.moves.push_back({Move::Cert, e});
        for (int e : edges_by_color[col]) b.moves.push_back({Move::Check, e});
        for (int f = 0; f < F; ++f)
            if (t.face_color[f] != cn && (steady || !last_eval[f].empty()))
                b.moves.push_back({Move::Eval, f});
        const int ncols = (int)b.moves.size();
        for (int j = 0; j < ncols; ++j) {
            const Move& mv = b.moves[j];
            Gf2Vec v(b.rows);
            if (mv.kind == Move::Cert) {
                for (int q : t.edge_endpoints[mv.idx]) v.flip(q);
            } else if (mv.kind == Move::Check) {
                for (int q : t.edge_endpoints[mv.idx]) {
                    v.flip(q);
                    v.flip(n + vface[q][col]);
                }
            } else { // Eval
                for (int q : t.face_vertices[mv.idx]) {
                    v.flip(q);
                    if (t.face_color[mv.idx] != cnn) v.flip(n + vface[q][col]);
                }
            }
            Gf2Vec combo(ncols);
            combo.flip(j);
            for (auto& [pv, pc] : b.pivots) {
                if (!v.get(pv.lowest_set())) continue;
                v ^= pv;
                combo ^= pc;
            }
            if (v.any()) b.pivots.emplace_back(std::move(v), std::move(combo));
        }
        return b;
    };

    // Detector schedule per face: every pair of consecutive plaquette
    // evaluations is compared (a disjoint pairing would leave error windows
    // starting at even evaluation indices invisible, i.e. undetectable
    // logical mechanisms). Faces matching the memory basis (blue for Z, red
    // for X) are additionally deterministic right after the resets, so their
    // first evaluation is a standalone initialization detector, and they get
    // a closing detector comparing their last evaluation against the final
    // transversal data measurements.
    std::vector<int> eval_count(t.num_faces, 0);

    const int basis_color = basis == 'Z' ? 2 : 0; // face color deterministic after resets
    auto has_init = [&](int f) { return t.face_color[f] == basis_color; };
    auto has_closing = [&](int f) { return t.face_color[f] == basis_color; };

    auto emit_detector = [&](std::vector<int> records) {
        std::sort(records.begin(), records.end());
        Instruction ins;
        ins.kind = Kind::Detector;
        ins.records = records;
        c.detectors.push_back(std::move(records));
        c.instructions.push_back(std::move(ins));
        ++c.num_detectors;
    };

    for (int q = 0; q < n; ++q) {
        Instruction ins;
        ins.kind = Kind::Reset;
        ins.pauli = basis == 'Z' ? Pauli::Z : Pauli::X;
        ins.q1 = q;
        c.instructions.push_back(ins);
    }

    const int T = 6 * detector_rounds;
    for (int s = 0; s < T; ++s) {
        Instruction tick;
        tick.kind = Kind::Tick;
        c.instructions.push_back(tick);

        const int col = s % 3;
        const Pauli P = kColorPauli[col];
        for (int e : edges_by_color[col]) {
            auto [q1, q2] = t.edge_endpoints[e];
            Instruction ins;
            ins.kind = Kind::PairMeasure;
            ins.pauli = P;
            ins.q1 = q1;
            ins.q2 = q2;
            ins.edge = e;
            c.instructions.push_back(ins);
            const int m = c.num_measurements++;
            c.meas_edge.push_back(e);
            last_rec[e] = m;
        }

        // Z memory: pin each tracked operator to its own first measurement
        if (s == 0 && basis == 'Z')
            for (auto& o : obs)
                for (int e : o.cycle) toggle_rec(o, last_rec[e]);

        // Update each observable so it commutes with the next sub-round: its
        // anticommuting vertex set, adjusted by this boundary's moves, must
        // become a union of next-color edges, while the parity rows keep the
        // following boundary solvable.
        if (s + 1 < T && !obs.empty()) {
            Boundary& b = get_boundary(col, s >= 3);
            const Pauli Pn = kColorPauli[(col + 1) % 3];
            const Pauli Pnn = kColorPauli[(col + 2) % 3];
            for (size_t i = 0; i < obs.size(); ++i) {
                Obs& o = obs[i];
                Gf2Vec rhs(b.rows);
                for (int v = 0; v < n; ++v) {
                    const bool anti_n = (pauli_x(Pn) && o.z.get(v)) ^
                                        (pauli_z(Pn) && o.x.get(v));
                    const bool anti_nn = (pauli_x(Pnn) && o.z.get(v)) ^
                                         (pauli_z(Pnn) && o.x.get(v));
                    if (anti_n) rhs.flip(v);
                    if (anti_nn) rhs.flip(n + vface[v][col]);
                }
                Gf2Vec combo((int)b.moves.size());
                for (const auto& [pv, pc] : b.pivots) {
                    if (!rhs.get(pv.lowest_set())) continue;
                    rhs ^= pv;
                    combo ^= pc;
                }
                if (rhs.any())
                    throw error(errc::observable_nondeterministic,
                                "observable " + std::to_string(i) +
                                    " has no commuting update after sub-round " +
                                    std::to_string(s));
                for (size_t j = 0; j < b.moves.size(); ++j) {
                    if (!combo.get((int)j)) continue;
                    const Move& mv = b.moves[j];
                    if (mv.kind == Move::Cert) {
                        continue;
                    } else if (mv.kind == Move::Check) {
                        for (int q : t.edge_endpoints[mv.idx]) {
                            if (pauli_x(P)) o.x.flip(q);
                            if (pauli_z(P)) o.z.flip(q);
                        }
                        toggle_rec(o, last_rec[mv.idx]);
                    } else { // Eval
                        o.x ^= sx[mv.idx];
                        o.z ^= sz[mv.idx];
                        for (int r : last_eval[mv.idx]) toggle_rec(o, r);
                    }
                }
            }
        }
        emit_obs_fresh();

        // A face of color fc has boundary colors fc+1 and fc+2, measured in
        // adjacent sub-rounds ending on color fc+2: that sub-round completes a
        // plaquette evaluation. Red and blue faces evaluate 2R times, green
        // faces 2R-1 (their first boundary color is not yet measured at s=0).
        for (int f = 0; f < t.num_faces; ++f) {
            const int trigger = (t.face_color[f] + 2) % 3;
            if (col != trigger) continue;
            std::vector<int> eval;
            eval.reserve(t.face_boundary[f].size());
            bool complete = true;
            for (int e : t.face_boundary[f]) {
                if (last_rec[e] < 0) complete = false;
                eval.push_back(last_rec[e]);
            }
            if (!complete) continue;
            const int k = eval_count[f]++;
            if (k == 0) {
                if (has_init(f)) emit_detector(eval);
            } else {
                std::vector<int> records = last_eval[f];
                records.insert(records.end(), eval.begin(), eval.end());
                emit_detector(std::move(records));
            }
            last_eval[f] = std::move(eval);
        }
    }

    // transversal data measurement
    Instruction tick;
    tick.kind = Kind::Tick;
    c.instructions.push_back(tick);
    std::vector<int> final_rec(n);
    for (int q = 0; q < n; ++q) {
        Instruction ins;
        ins.kind = Kind::SingleMeasure;
        ins.pauli = basis == 'Z' ? Pauli::Z : Pauli::X;
        ins.q1 = q;
        c.instructions.push_back(ins);
        final_rec[q] = c.num_measurements++;
        c.meas_edge.push_back(-1);
    }

    for (int f = 0; f < t.num_faces; ++f) {
        if (!has_closing(f) || last_eval[f].empty()) continue;
        std::vector<int> records = last_eval[f];
        for (int v : t.face_vertices[f]) records.push_back(final_rec[v]);
        emit_detector(std::move(records));
    }

    // Observable closure: cancel the component incompatible with the final
    // basis by multiplying in face operators (their latest evaluations are
    // still valid) and checks of the last sub-round, then absorb the final
    // data measurements over the remaining support.
    if (!obs.empty()) {
        const Pauli Pb = basis == 'Z' ? Pauli::Z : Pauli::X;
        Boundary close;
        close.rows = n;
        for (int e : edges_by_color[2])
            if (pauli_x(Pb)) close.moves.push_back({Move::Check, e});
        for (int f = 0; f < F; ++f)
            if (t.face_color[f] != basis_color) close.moves.push_back({Move::Eval, f});
        for (size_t j = 0; j < close.moves.size(); ++j) {
            const Move& mv = close.moves[j];
            Gf2Vec v(n);
            if (mv.kind == Move::Check)
                for (int q : t.edge_endpoints[mv.idx]) v.flip(q);
            else
                for (int q : t.face_vertices[mv.idx]) v.flip(q);
            Gf2Vec combo((int)close.moves.size());
            combo.flip((int)j);
            for (auto& [pv, pc] : close.pivots) {
                if (!v.get(pv.lowest_set())) continue;
                v ^= pv;
                combo ^= pc;
            }
            if (v.any()) close.pivots.emplace_back(std::move(v), std::move(combo));
        }
        for (size_t i = 0; i < obs.size(); ++i) {
            Obs& o = obs[i];
            Gf2Vec target = basis == 'Z' ? o.x : o.z;
            Gf2Vec combo((int)close.moves.size());
            for (auto& [pv, pc] : close.pivots) {
                if (!target.get(pv.lowest_set())) continue;
                target ^= pv;
                combo ^= pc;
            }
            if (target.any())
                throw error(errc::observable_nondeterministic,
                            "observable " + std::to_string(i) +
                                " cannot be reduced onto the final measurement basis");
            for (size_t j = 0; j < close.moves.size(); ++j) {
                if (!combo.get((int)j)) continue;
                const Move& mv = close.moves[j];
                if (mv.kind == Move::Check) {
                    for (int q : t.edge_endpoints[mv.idx]) o.z.flip(q);
                    toggle_rec(o, last_rec[mv.idx]);
                } else {
                    o.x ^= sx[mv.idx];
                    o.z ^= sz[mv.idx];
                    for (int r : last_eval[mv.idx]) toggle_rec(o, r);
                }
            }
            const Gf2Vec& support = basis == 'Z' ? o.z : o.x;
            for (int q = 0; q < n; ++q)
                if (support.get(q)) toggle_rec(o, final_rec[q]);
        }
        emit_obs_fresh();
    }
    for (size_t i = 0; i < obs.size(); ++i)
        c.observables[i].assign(obs[i].recs.begin(), obs[i].recs.end());

    // Two independent self-tests: the frame replay checks determinism under
    // the sampler's measurement-frame model, the stabilizer run checks it
    // against actual collapse randomness.
    determinism_self_test(c);
    sim::verify_determinism(c);
    return c;
}

namespace {

struct NoiseWriter {
    const part::Partition* part;
    Circuit out;

    bool nonlocal(const Instruction& mpp) const {
        return part->assignment[mpp.q1] != part->assignment[mpp.q2];
    }
    void depol1(int q, double p) {
        Instruction ins;
        ins.kind = Kind::Depol1;
        ins.q1 = q;
        ins.p = p;
        out.instructions.push_back(ins);
    }
    void depol2(int q1, int q2, double p) {
        Instruction ins;
        ins.kind = Kind::Depol2;
        ins.q1 = q1;
        ins.q2 = q2;
        ins.p = p;
        out.instructions.push_back(ins);
    }
    void bell_wait(const Instruction& mpp, const NoiseSpec& ns) {
        if (!nonlocal(mpp)) return;
        for (int cyc = 0; cyc < ns.bell_wait_cycles; ++cyc)
            for (int q : {mpp.q1, mpp.q2}) depol1(q, ns.p_local);
    }
};

Circuit rewrite(const Circuit& c, const part::Partition& part, const NoiseSpec& ns) {
    check_prob(ns.p_local, "p_local");
    check_prob(ns.p_nl, "p_NL");
    check_prob(ns.eps_local, "eps_local");
    check_prob(ns.eps_nl, "eps_NL");
    if ((int)part.assignment.size() != c.num_qubits)
        throw error(errc::config, "partition size does not match circuit qubit count");

    NoiseWriter w;
    w.part = &part;
    w.out = c;
    w.out.instructions.clear();

    int m = 0;
    for (const auto& ins : c.instructions) {
        const bool is_mpp = ins.kind == Kind::PairMeasure;
        const double p_phys =
            is_mpp ? (w.nonlocal(ins) ? ns.p_nl : ns.p_local) : ns.p_local;

        if (is_mpp) {
            switch (ns.model) {
            case Model::DIST_DEPOL:
            case Model::ANC_EM3:
                w.bell_wait(ins, ns);
                w.depol2(ins.q1, ins.q2, p_phys);
                break;
            case Model::SDEM3:
                w.bell_wait(ins, ns);
                w.depol2(ins.q1, ins.q2, 15.0 * p_phys / 16.0);
                break;
            case Model::CORR_EM3:
            case Model::ERASURE:
                break;
            }
        }
        if (ins.kind == Kind::SingleMeasure && ns.model == Model::SDEM3) {
            Instruction flip;
            flip.kind = Kind::PauliFlip;
            flip.q1 = ins.q1;
            flip.p = ns.p_local / 2.0;
            flip.pauli = ins.pauli == Pauli::Z ? Pauli::X : Pauli::Z;
            w.out.instructions.push_back(flip);
        }

        w.out.instructions.push_back(ins);

        if (ins.kind == Kind::Reset && ns.model == Model::SDEM3) {
            Instruction flip;
            flip.kind = Kind::PauliFlip;
            flip.q1 = ins.q1;
            flip.p = ns.p_local / 2.0;
            flip.pauli = ins.pauli == Pauli::Z ? Pauli::X : Pauli::Z;
            w.out.instructions.push_back(flip);
        }
        if (is_mpp) {
            switch (ns.model) {
            case Model::ANC_EM3:
            case Model::SDEM3: {
                Instruction ef;
                ef.kind = Kind::MeasureFlip;
                ef.p = p_phys / 2.0;
                ef.meas = m;
                w.out.instructions.push_back(ef);
                break;
            }
            case Model::CORR_EM3:
                for (int p1 = 0; p1 < 4; ++p1)
                    for (int p2 = 0; p2 < 4; ++p2)
                        for (int fl = 0; fl < 2; ++fl) {
                            if (p1 == 0 && p2 == 0 && fl == 0) continue;
                            Instruction ce;
                            ce.kind = Kind::CorrelatedError;
                            ce.pauli = (Pauli)p1;
                            ce.pauli2 = (Pauli)p2;
                            ce.flip = fl != 0;
                            ce.q1 = ins.q1;
                            ce.q2 = ins.q2;
                            ce.meas = m;
                            ce.p = p_phys / 32.0;
                            w.out.instructions.push_back(ce);
                        }
                break;
            case Model::ERASURE: {
                Instruction er;
                er.kind = Kind::Erasable;
                er.p = p_rus(w.nonlocal(ins) ? ns.eps_nl : ns.eps_local);
                er.meas = m;
                w.out.instructions.push_back(er);
                break;
            }
            case Model::DIST_DEPOL:
                break;
            }
        }
        if (ins.kind == Kind::PairMeasure || ins.kind == Kind::SingleMeasure) ++m;
    }
    return w.out;
}

void require_model(const NoiseSpec& ns, Model m) {
    if (ns.model != m)
        throw error(errc::config, std::string("noise spec is not ") + model_name(m));
}

} // namespace

Circuit apply_dist_depol(const Circuit& c, const part::Partition& part, const NoiseSpec& ns) {
    require_model(ns, Model::DIST_DEPOL);
    return rewrite(c, part, ns);
}
Circuit apply_anc_em3(const Circuit& c, const part::Partition& part, const NoiseSpec& ns) {
    require_model(ns, Model::ANC_EM3);
    return rewrite(c, part, ns);
}
Circuit apply_sdem3(const Circuit& c, const part::Partition& part, const NoiseSpec& ns) {
    require_model(ns, Model::SDEM3);
    return rewrite(c, part, ns);
}
Circuit apply_corr_em3(const Circuit& c, const part::Partition& part, const NoiseSpec& ns) {
    require_model(ns, Model::CORR_EM3);
    return rewrite(c, part, ns);
}
Circuit apply_erasure(const Circuit& c, const part::Partition& part, const NoiseSpec& ns) {
    require_model(ns, Model::ERASURE);
    return rewrite(c, part, ns);
}
Circuit apply_noise(const Circuit& c, const part::Partition& part, const NoiseSpec& ns) {
    return rewrite(c, part, ns);
}

namespace {

std::string fmt_prob(double p) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", p);
    return buf;
}

} // namespace

void write_circuit(std::ostream& os, const Circuit& c) {
    int m = 0;
    auto rec = [&](int r) { return " rec[" + std::to_string(r - m) + "]"; };
    for (const auto& ins : c.instructions) {
        switch (ins.kind) {
        case Kind::PairMeasure:
            os << "MPP " << pauli_char(ins.pauli) << pauli_char(ins.pauli) << ' ' << ins.q1
               << ' ' << ins.q2 << '\n';
            ++m;
            break;
        case Kind::SingleMeasure:
            os << "M " << pauli_char(ins.pauli) << ' ' << ins.q1 << '\n';
            ++m;
            break;
        case Kind::Reset:
            os << "RESET " << pauli_char(ins.pauli) << ' ' << ins.q1 << '\n';
            break;
        case Kind::Depol1:
            os << "DEPOL1 " << fmt_prob(ins.p) << ' ' << ins.q1 << '\n';
            break;
        case Kind::Depol2:
            os << "DEPOL2 " << fmt_prob(ins.p) << ' ' << ins.q1 << ' ' << ins.q2 << '\n';
            break;
        case Kind::PauliFlip:
            os << "FLIP " << fmt_prob(ins.p) << ' ' << ins.q1 << ' ' << pauli_char(ins.pauli)
               << '\n';
            break;
        case Kind::MeasureFlip:
            os << "EFLIP " << fmt_prob(ins.p) << rec(ins.meas) << '\n';
            break;
        case Kind::CorrelatedError:
            os << "CORR " << fmt_prob(ins.p) << ' ' << pauli_char(ins.pauli) << ' '
               << pauli_char(ins.pauli2);
            if (ins.flip) os << " flip";
            os << '\n';
            break;
        case Kind::Erasable:
            os << "ERASABLE " << fmt_prob(ins.p) << rec(ins.meas) << '\n';
            break;
        case Kind::Detector: {
            os << "DETECTOR";
            for (int r : ins.records) os << rec(r);
            os << '\n';
            break;
        }
        case Kind::ObservableInclude: {
            os << "OBS " << ins.id;
            for (int r : ins.records) os << rec(r);
            os << '\n';
            break;
        }
        case Kind::Tick:
            os << "TICK\n";
            break;
        }
    }
}

Circuit read_circuit(std::istream& is) {
    Circuit c;
    std::string line;
    int line_no = 0;
    int max_qubit = -1;
    const Instruction* last_mpp = nullptr;
    size_t last_mpp_idx = 0;
    int last_mpp_meas = -1;

    auto fail = [&](const std::string& why) {
        throw error(errc::parse_error, "circuit line " + std::to_string(line_no) + ": " + why);
    };
    auto parse_pauli = [&](const std::string& tok) {
        if (tok.size() != 1) fail("bad pauli '" + tok + "'");
        switch (tok[0]) {
        case 'I': return Pauli::I;
        case 'X': return Pauli::X;
        case 'Y': return Pauli::Y;
        case 'Z': return Pauli::Z;
        }
        fail("bad pauli '" + tok + "'");
        return Pauli::I;
    };
    auto parse_rec = [&](const std::string& tok) {
        if (tok.rfind("rec[", 0) != 0 || tok.back() != ']') fail("bad record ref '" + tok + "'");
        int off = std::stoi(tok.substr(4, tok.size() - 5));
        if (off >= 0) fail("record refs must be negative");
        int r = c.num_measurements + off;
        if (r < 0) fail("record ref before first measurement");
        return r;
    };

    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string op;
        ls >> op;
        Instruction ins;
        if (op == "MPP") {
            std::string pp;
            ls >> pp >> ins.q1 >> ins.q2;
            if (pp.size() != 2 || pp[0] != pp[1]) fail("pair pauli must be XX, YY or ZZ");
            ins.kind = Kind::PairMeasure;
            ins.pauli = parse_pauli(pp.substr(0, 1));
            last_mpp_meas = c.num_measurements;
            c.meas_edge.push_back(-1);
            ++c.num_measurements;
        } else if (op == "M") {
            std::string b;
            ls >> b >> ins.q1;
            ins.kind = Kind::SingleMeasure;
            ins.pauli = parse_pauli(b);
            c.meas_edge.push_back(-1);
            ++c.num_measurements;
        } else if (op == "RESET") {
            std::string b;
            ls >> b >> ins.q1;
            ins.kind = Kind::Reset;
            ins.pauli = parse_pauli(b);
        } else if (op == "DEPOL1") {
            ins.kind = Kind::Depol1;
            ls >> ins.p >> ins.q1;
        } else if (op == "DEPOL2") {
            ins.kind = Kind::Depol2;
            ls >> ins.p >> ins.q1 >> ins.q2;
        } else if (op == "FLIP") {
            std::string ax;
            ins.kind = Kind::PauliFlip;
            ls >> ins.p >> ins.q1 >> ax;
            ins.pauli = parse_pauli(ax);
        } else if (op == "EFLIP") {
            std::string r;
            ins.kind = Kind::MeasureFlip;
            ls >> ins.p >> r;
            ins.meas = parse_rec(r);
        } else if (op == "CORR") {
            std::string p1, p2, fl;
            ins.kind = Kind::CorrelatedError;
            ls >> ins.p >> p1 >> p2;
            ins.pauli = parse_pauli(p1);
            ins.pauli2 = parse_pauli(p2);
            if (ls >> fl) {
                if (fl != "flip") fail("trailing token '" + fl + "'");
                ins.flip = true;
            }
            if (last_mpp_meas < 0) fail("CORR with no preceding MPP");
            ins.q1 = c.instructions[last_mpp_idx].q1;
            ins.q2 = c.instructions[last_mpp_idx].q2;
            ins.meas = last_mpp_meas;
        } else if (op == "ERASABLE") {
            std::string r;
            ins.kind = Kind::Erasable;
            ls >> ins.p >> r;
            ins.meas = parse_rec(r);
        } else if (op == "DETECTOR") {
            ins.kind = Kind::Detector;
            std::string r;
            while (ls >> r) ins.records.push_back(parse_rec(r));
            if (ins.records.empty()) fail("empty detector");
            c.detectors.push_back(ins.records);
            ++c.num_detectors;
        } else if (op == "OBS") {
            ins.kind = Kind::ObservableInclude;
            ls >> ins.id;
            std::string r;
            while (ls >> r) ins.records.push_back(parse_rec(r));
            if (ins.records.empty()) fail("empty observable include");
            if (ins.id < 0) fail("negative observable id");
            if (ins.id >= c.num_observables) {
                c.num_observables = ins.id + 1;
                c.observables.resize(c.num_observables);
            }
            // aggregate with XOR multiplicity: an include listed twice cancels
            for (int r : ins.records) {
                auto& agg = c.observables[ins.id];
                auto it = std::lower_bound(agg.begin(), agg.end(), r);
                if (it != agg.end() && *it == r)
                    agg.erase(it);
                else
                    agg.insert(it, r);
            }
        } else if (op == "TICK") {
            ins.kind = Kind::Tick;
        } else {
            fail("unknown instruction '" + op + "'");
        }
        if (ls.fail() && op != "TICK" && op != "DETECTOR" && op != "OBS" && op != "CORR")
            fail("malformed arguments");
        max_qubit = std::max({max_qubit, ins.q1, ins.q2});
        if (ins.kind == Kind::PairMeasure) last_mpp_idx = c.instructions.size();
        c.instructions.push_back(std::move(ins));
    }
    (void)last_mpp;
    c.num_qubits = max_qubit + 1;
    return c;
}

} // namespace hfc::circ
