#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qeclab/circuit.hpp"
#include "qeclab/pauli.hpp"
#include "qeclab/rng.hpp"

namespace qeclab {

/// Stabilizer state of n qubits tracked as n stabilizer rows plus n
/// destabilizer rows (the standard scheme: destabilizer i anticommutes with
/// stabilizer i and commutes with every other row, which makes deterministic
/// measurement outcomes an O(n^2) reconstruction instead of a linear solve).
struct StabilizerTableau {
    int n = 0;
    std::vector<PauliOperator> destab;
    std::vector<PauliOperator> stab;

    static StabilizerTableau zero_state(int n) {
        StabilizerTableau t;
        t.n = n;
        t.destab.reserve(n);
        t.stab.reserve(n);
        for (int q = 0; q < n; ++q) {
            t.destab.push_back(PauliOperator::single(n, Pauli::X, q));
            t.stab.push_back(PauliOperator::single(n, Pauli::Z, q));
        }
        return t;
    }

    // ---- Clifford gates; each conjugates all 2n rows.

    void h(int q) {
        for_rows([&](PauliOperator& p) {
            std::uint64_t m = 1ull << q;
            std::uint64_t xb = p.x_bits & m, zb = p.z_bits & m;
            if (xb && zb) p.phase_exp ^= 2;  // Y -> -Y
            p.x_bits = (p.x_bits & ~m) | (zb ? m : 0);
            p.z_bits = (p.z_bits & ~m) | (xb ? m : 0);
        });
    }

    void s(int q) {
        for_rows([&](PauliOperator& p) {
            std::uint64_t m = 1ull << q;
            if ((p.x_bits & m) && (p.z_bits & m)) p.phase_exp ^= 2;  // Y -> -X
            p.z_bits ^= p.x_bits & m;
        });
    }

    void sdg(int q) {
        for_rows([&](PauliOperator& p) {
            std::uint64_t m = 1ull << q;
            p.z_bits ^= p.x_bits & m;
            if ((p.x_bits & m) && (p.z_bits & m)) p.phase_exp ^= 2;  // X -> -Y
        });
    }

    void cx(int c, int t) {
        for_rows([&](PauliOperator& p) {
            std::uint64_t mc = 1ull << c, mt = 1ull << t;
            bool xc = p.x_bits & mc, zc = p.z_bits & mc;
            bool xt = p.x_bits & mt, zt = p.z_bits & mt;
            if (xc && zt && (xt == zc)) p.phase_exp ^= 2;
            if (xc) p.x_bits ^= mt;
            if (zt) p.z_bits ^= mc;
        });
    }

    void cz(int c, int t) { h(t); cx(c, t); h(t); }
    void cy(int c, int t) { sdg(t); cx(c, t); s(t); }

    void swap_qubits(int a, int b) {
        for_rows([&](PauliOperator& p) {
            std::uint64_t ma = 1ull << a, mb = 1ull << b;
            bool xa = p.x_bits & ma, xb = p.x_bits & mb;
            bool za = p.z_bits & ma, zb = p.z_bits & mb;
            p.x_bits = (p.x_bits & ~(ma | mb)) | (xb ? ma : 0) | (xa ? mb : 0);
            p.z_bits = (p.z_bits & ~(ma | mb)) | (zb ? ma : 0) | (za ? mb : 0);
        });
    }

    /// Apply a Pauli operator to the state: rows anticommuting with it flip sign.
    void apply_pauli(const PauliOperator& p) {
        for_rows([&](PauliOperator& row) {
            if (symplectic_product(row, p)) row.phase_exp ^= 2;
        });
    }

    void apply_pauli(Pauli p, int q) {
        if (p != Pauli::I) apply_pauli(PauliOperator::single(n, p, q));
    }

    /// Measure a Hermitian Pauli observable; collapses the state. A random
    /// outcome draws one bit from rng.
    int measure_pauli(const PauliOperator& obs, SplitMix64& rng) {
        int a = -1;
        for (int i = 0; i < n; ++i)
            if (symplectic_product(stab[i], obs)) { a = i; break; }
        if (a >= 0) {
            PauliOperator anchor = stab[a];
            for (int i = 0; i < n; ++i) {
                if (i != a && symplectic_product(stab[i], obs)) stab[i] = stab[i] * anchor;
                if (symplectic_product(destab[i], obs)) destab[i] = destab[i] * anchor;
            }
            destab[a] = anchor;
            int m = rng.coin() ? 1 : 0;
            stab[a] = obs;
            stab[a].phase_exp = (obs.phase_exp + 2 * m) & 3;
            return m;
        }
        // deterministic: +/-obs is in the stabilizer group; reconstruct its sign
        PauliOperator acc = PauliOperator::identity(n);
        for (int i = 0; i < n; ++i)
            if (symplectic_product(destab[i], obs)) acc = acc * stab[i];
        return ((acc.phase_exp - obs.phase_exp) & 3) == 2 ? 1 : 0;
    }

    /// +1/-1 when p (up to sign) is stabilized, 0 when the outcome is random.
    /// Does not collapse.
    int measure_observable(const PauliOperator& p) const {
        if (p.n != n) throw std::invalid_argument("measure_observable: dimension mismatch");
        for (int i = 0; i < n; ++i)
            if (symplectic_product(stab[i], p)) return 0;
        PauliOperator acc = PauliOperator::identity(n);
        for (int i = 0; i < n; ++i)
            if (symplectic_product(destab[i], p)) acc = acc * stab[i];
        return ((acc.phase_exp - p.phase_exp) & 3) == 2 ? -1 : +1;
    }

  private:
    template <typename F>
    void for_rows(F&& f) {
        for (auto& p : destab) f(p);
        for (auto& p : stab) f(p);
    }
};

/// A fault attached to one circuit location: a Pauli applied after the gate,
/// a flipped classical measurement record, or a flipped preparation.
struct FaultEvent {
    enum class Kind { PauliError, MeasurementFlip, PreparationFlip };
    int site = 0;  // index into circuit.ops; must be a noise_site gate
    Kind kind = Kind::PauliError;
    std::vector<std::pair<int, Pauli>> paulis;  // for PauliError

    static FaultEvent pauli_error(int site, std::vector<std::pair<int, Pauli>> ps) {
        return FaultEvent{site, Kind::PauliError, std::move(ps)};
    }
    static FaultEvent measurement_flip(int site) {
        return FaultEvent{site, Kind::MeasurementFlip, {}};
    }
    static FaultEvent preparation_flip(int site) {
        return FaultEvent{site, Kind::PreparationFlip, {}};
    }
};

/// Executes circuits against a tableau, applying injected faults and recording
/// classical bits. One simulator instance is single-owner mutable state.
class Simulator {
  public:
    explicit Simulator(int n_qubits) : state_(StabilizerTableau::zero_state(n_qubits)) {}

    StabilizerTableau& state() { return state_; }
    const StabilizerTableau& state() const { return state_; }
    std::vector<std::uint8_t>& classical_bits() { return bits_; }

    void run_circuit(const CliffordCircuit& c, const std::vector<FaultEvent>& faults,
                     SplitMix64& rng) {
        if (c.n_qubits > state_.n) throw std::invalid_argument("circuit wider than simulator");
        if (static_cast<int>(bits_.size()) < c.n_classical) bits_.resize(c.n_classical, 0);

        // faults indexed by site, preserving injection order
        fault_at_.clear();
        fault_at_.resize(c.ops.size());
        for (const auto& f : faults) {
            if (f.site < 0 || f.site >= static_cast<int>(c.ops.size()) || !c.ops[f.site].noise_site)
                throw std::logic_error("fault references a non-noise site");
            fault_at_[f.site].push_back(&f);
        }

        for (std::size_t i = 0; i < c.ops.size(); ++i) {
            const Gate& g = c.ops[i];
            int meas_bit = -1;
            switch (g.kind) {
                case GateKind::H: state_.h(g.q0); break;
                case GateKind::S: state_.s(g.q0); break;
                case GateKind::Sdg: state_.sdg(g.q0); break;
                case GateKind::X: state_.apply_pauli(Pauli::X, g.q0); break;
                case GateKind::Y: state_.apply_pauli(Pauli::Y, g.q0); break;
                case GateKind::Z: state_.apply_pauli(Pauli::Z, g.q0); break;
                case GateKind::CX: state_.cx(g.q0, g.q1); break;
                case GateKind::CY: state_.cy(g.q0, g.q1); break;
                case GateKind::CZ: state_.cz(g.q0, g.q1); break;
                case GateKind::Swap: state_.swap_qubits(g.q0, g.q1); break;
                case GateKind::PrepZero:
                    if (state_.measure_pauli(PauliOperator::single(state_.n, Pauli::Z, g.q0), rng))
                        state_.apply_pauli(Pauli::X, g.q0);
                    break;
                case GateKind::PrepPlus:
                case GateKind::ResetPlus:
                    if (state_.measure_pauli(PauliOperator::single(state_.n, Pauli::X, g.q0), rng))
                        state_.apply_pauli(Pauli::Z, g.q0);
                    break;
                case GateKind::MeasureZ:
                    meas_bit = state_.measure_pauli(PauliOperator::single(state_.n, Pauli::Z, g.q0), rng);
                    break;
                case GateKind::MeasureX:
                    meas_bit = state_.measure_pauli(PauliOperator::single(state_.n, Pauli::X, g.q0), rng);
                    break;
            }
            for (const FaultEvent* f : fault_at_[i]) {
                switch (f->kind) {
                    case FaultEvent::Kind::PauliError:
                        for (auto [q, p] : f->paulis) state_.apply_pauli(p, q);
                        break;
                    case FaultEvent::Kind::MeasurementFlip:
                        if (!is_measurement(g.kind))
                            throw std::logic_error("measurement flip on a non-measurement gate");
                        meas_bit ^= 1;
                        break;
                    case FaultEvent::Kind::PreparationFlip:
                        if (!is_preparation(g.kind))
                            throw std::logic_error("preparation flip on a non-preparation gate");
                        // |0> -> |1>, |+> -> |->
                        state_.apply_pauli(g.kind == GateKind::PrepZero ? Pauli::X : Pauli::Z, g.q0);
                        break;
                }
            }
            if (meas_bit >= 0 && g.cbit >= 0) bits_[g.cbit] = static_cast<std::uint8_t>(meas_bit);
        }
    }

  private:
    StabilizerTableau state_;
    std::vector<std::uint8_t> bits_;
    std::vector<std::vector<const FaultEvent*>> fault_at_;
};

struct RunResult {
    StabilizerTableau state;
    std::vector<std::uint8_t> bits;
};

/// Fresh |0^n> register, execute the circuit with the given faults.
inline RunResult run(const CliffordCircuit& c, const std::vector<FaultEvent>& faults,
                     SplitMix64& rng) {
    Simulator sim(c.n_qubits);
    sim.run_circuit(c, faults, rng);
    return RunResult{std::move(sim.state()), std::move(sim.classical_bits())};
}

}  // namespace qeclab
