// Test-only helpers: a brute-force statevector simulator used as an
// independent oracle for the tableau engine and the encoder synthesis, plus
// small random generators for property tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qeclab/circuit.hpp"
#include "qeclab/pauli.hpp"
#include "qeclab/rng.hpp"

namespace qeclab::testing {

using Amp = std::complex<double>;

struct StateVector {
    int n = 0;
    std::vector<Amp> amps;

    static StateVector zero_state(int n) {
        StateVector s;
        s.n = n;
        s.amps.assign(std::size_t{1} << n, Amp{0, 0});
        s.amps[0] = 1;
        return s;
    }

    static StateVector basis(int n, std::uint64_t bits) {
        StateVector s;
        s.n = n;
        s.amps.assign(std::size_t{1} << n, Amp{0, 0});
        s.amps[bits] = 1;
        return s;
    }
};

// qubit q <-> bit q of the amplitude index
inline void apply_1q(StateVector& s, int q, const Amp m[2][2]) {
    std::uint64_t step = 1ull << q;
    for (std::uint64_t i = 0; i < s.amps.size(); ++i) {
        if (i & step) continue;
        Amp a = s.amps[i], b = s.amps[i | step];
        s.amps[i] = m[0][0] * a + m[0][1] * b;
        s.amps[i | step] = m[1][0] * a + m[1][1] * b;
    }
}

inline void apply_controlled_1q(StateVector& s, int c, int t, const Amp m[2][2]) {
    std::uint64_t cm = 1ull << c, tm = 1ull << t;
    for (std::uint64_t i = 0; i < s.amps.size(); ++i) {
        if (!(i & cm) || (i & tm)) continue;
        Amp a = s.amps[i], b = s.amps[i | tm];
        s.amps[i] = m[0][0] * a + m[0][1] * b;
        s.amps[i | tm] = m[1][0] * a + m[1][1] * b;
    }
}

inline void apply_unitary_gate(StateVector& s, const Gate& g) {
    static const Amp inv_sqrt2 = 1.0 / std::sqrt(2.0);
    static const Amp H[2][2] = {{inv_sqrt2, inv_sqrt2}, {inv_sqrt2, -inv_sqrt2}};
    static const Amp S[2][2] = {{1, 0}, {0, Amp{0, 1}}};
    static const Amp Sdg[2][2] = {{1, 0}, {0, Amp{0, -1}}};
    static const Amp X[2][2] = {{0, 1}, {1, 0}};
    static const Amp Y[2][2] = {{0, Amp{0, -1}}, {Amp{0, 1}, 0}};
    static const Amp Z[2][2] = {{1, 0}, {0, -1}};
    switch (g.kind) {
        case GateKind::H: apply_1q(s, g.q0, H); break;
        case GateKind::S: apply_1q(s, g.q0, S); break;
        case GateKind::Sdg: apply_1q(s, g.q0, Sdg); break;
        case GateKind::X: apply_1q(s, g.q0, X); break;
        case GateKind::Y: apply_1q(s, g.q0, Y); break;
        case GateKind::Z: apply_1q(s, g.q0, Z); break;
        case GateKind::CX: apply_controlled_1q(s, g.q0, g.q1, X); break;
        case GateKind::CY: apply_controlled_1q(s, g.q0, g.q1, Y); break;
        case GateKind::CZ: apply_controlled_1q(s, g.q0, g.q1, Z); break;
        case GateKind::Swap:
            for (std::uint64_t i = 0; i < s.amps.size(); ++i) {
                std::uint64_t a = (i >> g.q0) & 1, b = (i >> g.q1) & 1;
                if (a == b) continue;
                std::uint64_t j = i ^ (1ull << g.q0) ^ (1ull << g.q1);
                if (i < j) std::swap(s.amps[i], s.amps[j]);
            }
            break;
        default: throw std::invalid_argument("not a unitary gate");
    }
}

inline void apply_pauli_to_state(StateVector& s, const PauliOperator& p) {
    for (int q = 0; q < p.n; ++q) {
        Gate g{GateKind::X, q, -1, -1, false};
        switch (p.at(q)) {
            case Pauli::I: continue;
            case Pauli::X: g.kind = GateKind::X; break;
            case Pauli::Y: g.kind = GateKind::Y; break;
            case Pauli::Z: g.kind = GateKind::Z; break;
        }
        apply_unitary_gate(s, g);
    }
    Amp phase{1, 0};
    for (int i = 0; i < p.phase_exp; ++i) phase *= Amp{0, 1};
    for (auto& a : s.amps) a *= phase;
}

/// <psi| P |psi> for a Pauli P; +-1 for eigenstates, ~0 otherwise.
inline double pauli_expectation(const StateVector& s, const PauliOperator& p) {
    StateVector t = s;
    apply_pauli_to_state(t, p);
    Amp acc{0, 0};
    for (std::size_t i = 0; i < s.amps.size(); ++i) acc += std::conj(s.amps[i]) * t.amps[i];
    if (std::abs(acc.imag()) > 1e-9) throw std::runtime_error("non-real Pauli expectation");
    return acc.real();
}

/// Exact joint distribution of the classical record of a circuit (with
/// injected faults) on |0...0>, obtained by branching every measurement.
/// Record keys are the classical bits in cbit order.
inline std::map<std::vector<std::uint8_t>, double> exact_record_distribution(
    const CliffordCircuit& circ, const std::vector<FaultEvent>& faults) {
    std::vector<std::vector<const FaultEvent*>> fault_at(circ.ops.size());
    for (const auto& f : faults) fault_at[f.site].push_back(&f);

    std::map<std::vector<std::uint8_t>, double> dist;

    struct Frame {
        StateVector state;
        std::vector<std::uint8_t> record;
        double prob;
    };

    auto project = [](StateVector& s, int q, int outcome, GateKind basis) {
        // returns branch probability and projects + renormalizes
        StateVector work = s;
        if (basis == GateKind::MeasureX) {
            static const Amp inv_sqrt2 = 1.0 / std::sqrt(2.0);
            static const Amp H[2][2] = {{inv_sqrt2, inv_sqrt2}, {inv_sqrt2, -inv_sqrt2}};
            apply_1q(work, q, H);
        }
        double prob = 0;
        std::uint64_t m = 1ull << q;
        for (std::uint64_t i = 0; i < work.amps.size(); ++i)
            if (((i & m) != 0) == (outcome == 1)) prob += std::norm(work.amps[i]);
        if (prob < 1e-12) return 0.0;
        for (std::uint64_t i = 0; i < work.amps.size(); ++i)
            if (((i & m) != 0) != (outcome == 1)) work.amps[i] = 0;
        double scale = 1.0 / std::sqrt(prob);
        for (auto& a : work.amps) a *= scale;
        if (basis == GateKind::MeasureX) {
            static const Amp inv_sqrt2 = 1.0 / std::sqrt(2.0);
            static const Amp H[2][2] = {{inv_sqrt2, inv_sqrt2}, {inv_sqrt2, -inv_sqrt2}};
            apply_1q(work, q, H);
        }
        s = std::move(work);
        return prob;
    };

    // depth-first over measurement branches
    std::vector<std::pair<Frame, std::size_t>> stack;
    stack.push_back({{StateVector::zero_state(circ.n_qubits), {}, 1.0}, 0});
    while (!stack.empty()) {
        auto [frame, start] = std::move(stack.back());
        stack.pop_back();
        bool branched = false;
        for (std::size_t i = start; i < circ.ops.size() && !branched; ++i) {
            const Gate& g = circ.ops[i];
            auto post_faults = [&](Frame& fr, int* meas_bit) {
                for (const FaultEvent* f : fault_at[i]) {
                    switch (f->kind) {
                        case FaultEvent::Kind::PauliError:
                            for (auto [q, p] : f->paulis)
                                apply_pauli_to_state(fr.state, PauliOperator::single(circ.n_qubits, p, q));
                            break;
                        case FaultEvent::Kind::MeasurementFlip: *meas_bit ^= 1; break;
                        case FaultEvent::Kind::PreparationFlip:
                            apply_pauli_to_state(
                                fr.state,
                                PauliOperator::single(
                                    circ.n_qubits,
                                    g.kind == GateKind::PrepZero ? Pauli::X : Pauli::Z, g.q0));
                            break;
                    }
                }
            };

            if (is_unitary(g.kind)) {
                apply_unitary_gate(frame.state, g);
                int dummy = 0;
                post_faults(frame, &dummy);
                continue;
            }

            GateKind basis = (g.kind == GateKind::MeasureZ || g.kind == GateKind::PrepZero)
                                 ? GateKind::MeasureZ
                                 : GateKind::MeasureX;
            for (int outcome : {0, 1}) {
                Frame next = frame;
                double prob = project(next.state, g.q0, outcome, basis);
                if (prob <= 0) continue;
                next.prob *= prob;
                int bit = outcome;
                if (g.kind == GateKind::PrepZero && outcome)
                    apply_pauli_to_state(next.state, PauliOperator::single(circ.n_qubits, Pauli::X, g.q0));
                if ((g.kind == GateKind::PrepPlus || g.kind == GateKind::ResetPlus) && outcome)
                    apply_pauli_to_state(next.state, PauliOperator::single(circ.n_qubits, Pauli::Z, g.q0));
                post_faults(next, &bit);
                if (is_measurement(g.kind) && g.cbit >= 0) {
                    if (static_cast<int>(next.record.size()) <= g.cbit) next.record.resize(g.cbit + 1, 0);
                    next.record[g.cbit] = static_cast<std::uint8_t>(bit);
                }
                stack.push_back({std::move(next), i + 1});
            }
            branched = true;
        }
        if (!branched) dist[frame.record] += frame.prob;
    }
    return dist;
}

inline PauliOperator random_pauli(int n, SplitMix64& rng, bool random_phase = true) {
    std::uint64_t mask = n == 64 ? ~0ull : ((1ull << n) - 1);
    return PauliOperator(n, rng.next() & mask, rng.next() & mask,
                         random_phase ? static_cast<int>(rng.below(4)) : 0);
}

}  // namespace qeclab::testing
