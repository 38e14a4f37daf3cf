#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qeclab/pauli.hpp"

namespace qeclab {

enum class GateKind {
    H,
    S,
    Sdg,
    X,
    Y,
    Z,
    CX,
    CY,
    CZ,
    Swap,
    PrepZero,
    PrepPlus,
    MeasureZ,
    MeasureX,
    ResetPlus,
};

inline const char* gate_name(GateKind k) {
    switch (k) {
        case GateKind::H: return "H";
        case GateKind::S: return "S";
        case GateKind::Sdg: return "SDG";
        case GateKind::X: return "X";
        case GateKind::Y: return "Y";
        case GateKind::Z: return "Z";
        case GateKind::CX: return "CX";
        case GateKind::CY: return "CY";
        case GateKind::CZ: return "CZ";
        case GateKind::Swap: return "SWAP";
        case GateKind::PrepZero: return "P0";
        case GateKind::PrepPlus: return "P+";
        case GateKind::MeasureZ: return "MZ";
        case GateKind::MeasureX: return "MX";
        case GateKind::ResetPlus: return "R+";
    }
    return "?";
}

inline bool is_two_qubit(GateKind k) {
    return k == GateKind::CX || k == GateKind::CY || k == GateKind::CZ || k == GateKind::Swap;
}

inline bool is_unitary(GateKind k) {
    switch (k) {
        case GateKind::PrepZero:
        case GateKind::PrepPlus:
        case GateKind::MeasureZ:
        case GateKind::MeasureX:
        case GateKind::ResetPlus: return false;
        default: return true;
    }
}

inline bool is_measurement(GateKind k) { return k == GateKind::MeasureZ || k == GateKind::MeasureX; }

inline bool is_preparation(GateKind k) {
    return k == GateKind::PrepZero || k == GateKind::PrepPlus || k == GateKind::ResetPlus;
}

/// One gate record. Controlled gates store (control=q0, target=q1);
/// measurements write into classical bit `cbit`. noise_site marks locations
/// where a noise model may attach faults.
struct Gate {
    GateKind kind;
    int q0 = -1;
    int q1 = -1;
    int cbit = -1;
    bool noise_site = false;
};

/// Ordered gate list over n_qubits wires. The first n_data wires are data
/// qubits; any extra wires are ancillas (labelled `a` in dumps).
struct CliffordCircuit {
    int n_qubits = 0;
    int n_data = 0;
    int n_classical = 0;
    std::vector<Gate> ops;

    void check_gate(const Gate& g) const {
        if (g.q0 < 0 || g.q0 >= n_qubits || (is_two_qubit(g.kind) && (g.q1 < 0 || g.q1 >= n_qubits)))
            throw std::invalid_argument("gate qubit index out of range");
    }

    void append(GateKind kind, int q0, int q1 = -1, int cbit = -1, bool noise = false) {
        Gate g{kind, q0, q1, cbit, noise};
        check_gate(g);
        ops.push_back(g);
        if (cbit >= 0 && cbit + 1 > n_classical) n_classical = cbit + 1;
    }

    /// Line-oriented debug dump, one gate per line, e.g. "CZ a d7".
    std::string dump() const {
        std::string out;
        auto wire = [&](int q) {
            if (q < n_data) return "d" + std::to_string(q);
            if (n_qubits - n_data == 1) return std::string("a");
            return "a" + std::to_string(q - n_data);
        };
        for (const auto& g : ops) {
            out += gate_name(g.kind);
            out += ' ';
            out += wire(g.q0);
            if (is_two_qubit(g.kind)) {
                out += ' ';
                out += wire(g.q1);
            }
            if (g.cbit >= 0) {
                out += " -> s";
                out += std::to_string(g.cbit);
            }
            out += '\n';
        }
        return out;
    }
};

/// Per-stabilizer ordered (Pauli, qubit) factor list driving the detector;
/// rows[i] must be a permutation of generator i's support.
struct DetectorSchedule {
    std::vector<std::vector<std::pair<Pauli, int>>> rows;

    bool operator==(const DetectorSchedule&) const = default;
};

inline GateKind inverse_gate(GateKind k) {
    if (k == GateKind::S) return GateKind::Sdg;
    if (k == GateKind::Sdg) return GateKind::S;
    return k;  // remaining unitaries are self-inverse
}

/// Gates reversed and inverted; throws if the circuit is not purely unitary.
inline CliffordCircuit adjoint(const CliffordCircuit& c) {
    CliffordCircuit out;
    out.n_qubits = c.n_qubits;
    out.n_data = c.n_data;
    out.ops.reserve(c.ops.size());
    for (auto it = c.ops.rbegin(); it != c.ops.rend(); ++it) {
        if (!is_unitary(it->kind))
            throw std::invalid_argument(std::string("adjoint: non-unitary gate ") +
                                        gate_name(it->kind));
        Gate g = *it;
        g.kind = inverse_gate(g.kind);
        out.ops.push_back(g);
    }
    return out;
}

}  // namespace qeclab
