#pragma once

#include <stdexcept>
#include <vector>

#include "qeclab/circuit.hpp"
#include "qeclab/rng.hpp"
#include "qeclab/tableau.hpp"

namespace qeclab {

enum class NoiseKind { StandardDepolarizing, Anisotropic };

struct NoiseModel {
    NoiseKind kind = NoiseKind::StandardDepolarizing;
    double p_s = 0, p_t = 0, p_meas = 0, p_prep = 0;

    /// All four probabilities equal to p (the configuration used throughout).
    static NoiseModel uniform(NoiseKind kind, double p) { return NoiseModel{kind, p, p, p, p}; }

    void check() const {
        for (double p : {p_s, p_t, p_meas, p_prep})
            if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("noise probability outside [0,1]");
    }
};

namespace detail {

/// The 15 non-identity two-qubit Pauli pairs, indexed 0..14.
inline std::pair<Pauli, Pauli> two_qubit_pauli(int idx) {
    int v = idx + 1;  // 1..15, base-4 digits (first qubit, second qubit)
    return {static_cast<Pauli>(v >> 2), static_cast<Pauli>(v & 3)};
}

inline Pauli gate_pauli(GateKind k) {
    switch (k) {
        case GateKind::CX: return Pauli::X;
        case GateKind::CY: return Pauli::Y;
        case GateKind::CZ: return Pauli::Z;
        default: return Pauli::I;
    }
}

}  // namespace detail

/// Samples one fault configuration for a circuit.
///
/// Standard depolarizing: with p_t a two-qubit gate is followed by one of the
/// 15 non-identity Pauli pairs, uniformly; with p_s a single-qubit gate is
/// followed by a uniform X/Y/Z; measurements flip with p_meas, preparations
/// and resets with p_prep.
///
/// Anisotropic: with p_t a controlled-P gate is followed by the gate-aligned
/// pair (Z on the control, P on the target); independently each of the two
/// involved qubits then takes a uniform X/Y/Z with p_s. Measurement and
/// preparation clauses as above.
inline std::vector<FaultEvent> sample_faults(const CliffordCircuit& circ, const NoiseModel& noise,
                                             SplitMix64& rng) {
    std::vector<FaultEvent> out;
    for (std::size_t i = 0; i < circ.ops.size(); ++i) {
        const Gate& g = circ.ops[i];
        if (!g.noise_site) continue;
        int site = static_cast<int>(i);
        if (is_measurement(g.kind)) {
            if (noise.p_meas > 0 && rng.uniform() < noise.p_meas)
                out.push_back(FaultEvent::measurement_flip(site));
        } else if (is_preparation(g.kind)) {
            if (noise.p_prep > 0 && rng.uniform() < noise.p_prep)
                out.push_back(FaultEvent::preparation_flip(site));
        } else if (is_two_qubit(g.kind)) {
            if (noise.kind == NoiseKind::StandardDepolarizing) {
                if (noise.p_t > 0 && rng.uniform() < noise.p_t) {
                    auto [p0, p1] = detail::two_qubit_pauli(rng.below(15));
                    std::vector<std::pair<int, Pauli>> ps;
                    if (p0 != Pauli::I) ps.emplace_back(g.q0, p0);
                    if (p1 != Pauli::I) ps.emplace_back(g.q1, p1);
                    out.push_back(FaultEvent::pauli_error(site, std::move(ps)));
                }
            } else {
                Pauli aligned = detail::gate_pauli(g.kind);
                if (aligned != Pauli::I && noise.p_t > 0 && rng.uniform() < noise.p_t)
                    out.push_back(FaultEvent::pauli_error(site, {{g.q0, Pauli::Z}, {g.q1, aligned}}));
                for (int q : {g.q0, g.q1})
                    if (noise.p_s > 0 && rng.uniform() < noise.p_s)
                        out.push_back(FaultEvent::pauli_error(
                            site, {{q, static_cast<Pauli>(1 + rng.below(3))}}));
            }
        } else {
            if (noise.p_s > 0 && rng.uniform() < noise.p_s)
                out.push_back(FaultEvent::pauli_error(
                    site, {{g.q0, static_cast<Pauli>(1 + rng.below(3))}}));
        }
    }
    return out;
}

}  // namespace qeclab
