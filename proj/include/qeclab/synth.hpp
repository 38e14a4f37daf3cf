#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qeclab/circuit.hpp"
#include "qeclab/code.hpp"
#include "qeclab/standard_form.hpp"
#include "qeclab/tableau.hpp"

namespace qeclab {

struct SynthesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline GateKind controlled_gate(Pauli p) {
    switch (p) {
        case Pauli::X: return GateKind::CX;
        case Pauli::Y: return GateKind::CY;
        case Pauli::Z: return GateKind::CZ;
        default: throw std::logic_error("no controlled gate for identity");
    }
}

/// SWAP layer moving the content of wire c to wire perm[c].
inline void emit_permutation(CliffordCircuit& circ, const std::vector<int>& perm) {
    int n = static_cast<int>(perm.size());
    std::vector<int> cur(n), pos(n);
    for (int i = 0; i < n; ++i) cur[i] = pos[i] = i;
    for (int c = 0; c < n; ++c) {
        int w_now = pos[c], w_target = perm[c];
        if (w_now == w_target) continue;
        circ.append(GateKind::Swap, w_now, w_target);
        int other = cur[w_target];
        cur[w_now] = other;
        cur[w_target] = c;
        pos[c] = w_target;
        pos[other] = w_now;
    }
}

}  // namespace detail

/// Unitary encoder from the standard form. Input layout: wires 0..n-k-1 in
/// |0>, wires n-k..n-1 carrying the information state (standard-form labels);
/// the final SWAP layer relabels to the original qubit order.
///
/// For each information qubit: controlled-Xbar onto the rest of its derived
/// logical X operator. Then for i = 1..r: H on wire i-1, an S when M_i carries Y on its
/// pivot (encoding (I+Y)|0>), S/Z/SZ on the pivot for a standard phase of
/// i/-1/-i, and the controlled-M_i factors in ascending qubit order.
///
/// The synthesized circuit is checked on a tableau: every standard generator
/// (relabelled back) must stabilize the output with +1 sign, otherwise a
/// SynthesisError is raised naming the offender.
inline CliffordCircuit build_encoder(const StandardForm& sf, int k) {
    if (k != sf.k) throw std::invalid_argument("build_encoder: k does not match standard form");
    const int n = sf.n, m = n - k;

    CliffordCircuit circ;
    circ.n_qubits = n;
    circ.n_data = n;

    // controlled-Xbar block, in standard-form labels
    for (int j = 0; j < k; ++j) {
        PauliOperator xb(n, 0, 0, 0);
        for (int i = 0; i < sf.l; ++i)
            if (sf.e(i, j)) xb.x_bits |= 1ull << (sf.r + i);
        for (int i = 0; i < sf.r; ++i)
            if (sf.c(i, j)) xb.z_bits |= 1ull << i;
        int ctl = m + j;
        for (int q = 0; q < n; ++q)
            if (xb.at(q) != Pauli::I) circ.append(detail::controlled_gate(xb.at(q)), ctl, q);
    }

    for (int i = 0; i < sf.r; ++i) {
        const PauliOperator& mi = sf.std_generators[i];
        circ.append(GateKind::H, i);
        if (mi.at(i) == Pauli::Y) circ.append(GateKind::S, i);
        switch (mi.phase_exp) {
            case 1: circ.append(GateKind::S, i); break;
            case 2: circ.append(GateKind::Z, i); break;
            case 3: circ.append(GateKind::S, i); circ.append(GateKind::Z, i); break;
            default: break;
        }
        for (int q = 0; q < n; ++q) {
            if (q == i || mi.at(q) == Pauli::I) continue;
            circ.append(detail::controlled_gate(mi.at(q)), i, q);
        }
    }

    detail::emit_permutation(circ, sf.qubit_permutation);

    // stabilization check: |0...0> seed must be a +1 eigenstate of the group
    SplitMix64 rng(0);
    RunResult res = run(circ, {}, rng);
    for (int i = 0; i < m; ++i) {
        PauliOperator g = sf.to_original(sf.std_generators[i]);
        if (res.state.measure_observable(g) != +1)
            throw SynthesisError("encoded state is not a +1 eigenstate of " + format_pauli(g) +
                                 "; adjust generator phases in the code definition");
    }
    return circ;
}

/// Every schedule row must be a permutation of its generator's factors.
inline void validate_schedule(const StabilizerCode& code, const DetectorSchedule& sched) {
    if (sched.rows.size() != code.generators.size())
        throw std::invalid_argument("schedule must have one row per generator");
    for (std::size_t i = 0; i < sched.rows.size(); ++i) {
        PauliOperator prod = PauliOperator::identity(code.n);
        for (auto [p, q] : sched.rows[i]) {
            if (p == Pauli::I || q < 0 || q >= code.n || prod.at(q) != Pauli::I)
                throw std::invalid_argument("schedule row " + std::to_string(i) +
                                            " has a bad or repeated factor at qubit " +
                                            std::to_string(q));
            prod.set(q, p);
        }
        if (!prod.bits_equal(code.generators[i].unsigned_op()))
            throw std::invalid_argument("schedule row " + std::to_string(i) +
                                        " is not a permutation of generator " + std::to_string(i));
    }
}

/// Bare-ancilla syndrome extraction: one ancilla (wire n), and per stabilizer
/// in generator order: ResetPlus, the scheduled controlled factors
/// (control = ancilla), MeasureX into syndrome bit i. Every detector gate is a
/// noise site.
inline CliffordCircuit build_detector(const StabilizerCode& code, const DetectorSchedule& sched) {
    validate_schedule(code, sched);

    CliffordCircuit circ;
    circ.n_qubits = code.n + 1;
    circ.n_data = code.n;
    const int anc = code.n;
    for (std::size_t i = 0; i < sched.rows.size(); ++i) {
        circ.append(GateKind::ResetPlus, anc, -1, -1, /*noise=*/true);
        for (auto [p, q] : sched.rows[i])
            circ.append(detail::controlled_gate(p), anc, q, -1, /*noise=*/true);
        circ.append(GateKind::MeasureX, anc, -1, static_cast<int>(i), /*noise=*/true);
    }
    return circ;
}

/// Schedule listing each generator's factors in ascending qubit order (the
/// order the shipped tables print them in).
inline DetectorSchedule ascending_schedule(const StabilizerCode& code) {
    DetectorSchedule s;
    for (const auto& g : code.generators) {
        std::vector<std::pair<Pauli, int>> row;
        for (int q = 0; q < code.n; ++q)
            if (g.at(q) != Pauli::I) row.emplace_back(g.at(q), q);
        s.rows.push_back(std::move(row));
    }
    return s;
}

}  // namespace qeclab
