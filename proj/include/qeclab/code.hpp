#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qeclab/pauli.hpp"

namespace qeclab {

/// Stabilizer code definition. Generator order is load-bearing: syndrome bit i
/// comes from generators[i], and the shipped code files list generators in the
/// order that defines their published syndrome tables.
struct StabilizerCode {
    int n = 0;
    int k = 0;
    std::vector<PauliOperator> generators;
    std::vector<PauliOperator> logical_x;
    std::vector<PauliOperator> logical_z;
    std::string name;
};

/// Syndrome bits packed with bit i = generator i; to_string prints generator 0
/// leftmost, matching the printed tables.
struct Syndrome {
    std::uint64_t bits = 0;
    int width = 0;

    bool operator==(const Syndrome&) const = default;
    auto operator<=>(const Syndrome&) const = default;

    std::string to_string() const {
        std::string s(width, '0');
        for (int i = 0; i < width; ++i)
            if (bits >> i & 1) s[i] = '1';
        return s;
    }
    static Syndrome from_string(std::string_view s) {
        Syndrome out{0, static_cast<int>(s.size())};
        for (int i = 0; i < out.width; ++i) {
            if (s[i] == '1') out.bits |= 1ull << i;
            else if (s[i] != '0') throw std::invalid_argument("syndrome string must be 0/1");
        }
        return out;
    }
};

inline Syndrome syndrome_of(const StabilizerCode& code, const PauliOperator& e) {
    if (e.n != code.n) throw std::invalid_argument("syndrome_of: dimension mismatch");
    Syndrome s{0, static_cast<int>(code.generators.size())};
    for (std::size_t i = 0; i < code.generators.size(); ++i)
        s.bits |= static_cast<std::uint64_t>(symplectic_product(code.generators[i], e)) << i;
    return s;
}

/// Row-reduced basis of the generator group over GF(2), with phase-tracked
/// combination operators so that membership can be decided with or without
/// the sign. Build once, query many times.
class GroupBasis {
  public:
    GroupBasis() = default;
    explicit GroupBasis(const std::vector<PauliOperator>& gens, int n) : n_(n) {
        for (const auto& g : gens) add_row(g);
    }

    int rank() const { return static_cast<int>(rows_.size()); }

    /// True iff the (x|z) vector of p lies in the generator row space; when
    /// up_to_phase is false the reconstructed phase must also match.
    bool contains(const PauliOperator& p, bool up_to_phase = true) const {
        PauliOperator acc = PauliOperator::identity(n_);
        Vec v = vec_of(p);
        for (const auto& row : rows_) {
            if (get_bit(v, row.pivot)) {
                v.x ^= row.v.x;
                v.z ^= row.v.z;
                acc = acc * row.combo;
            }
        }
        if (v.x || v.z) return false;
        return up_to_phase || acc.phase_exp == p.phase_exp;
    }

    /// The group element with the same bits as p, if any (phases as generated).
    std::optional<PauliOperator> reconstruct(const PauliOperator& p) const {
        PauliOperator acc = PauliOperator::identity(n_);
        Vec v = vec_of(p);
        for (const auto& row : rows_) {
            if (get_bit(v, row.pivot)) {
                v.x ^= row.v.x;
                v.z ^= row.v.z;
                acc = acc * row.combo;
            }
        }
        if (v.x || v.z) return std::nullopt;
        return acc;
    }

  private:
    struct Vec {
        std::uint64_t x = 0, z = 0;
    };
    struct Row {
        int pivot;
        Vec v;
        PauliOperator combo;
    };

    static Vec vec_of(const PauliOperator& p) { return Vec{p.x_bits, p.z_bits}; }
    bool get_bit(const Vec& v, int c) const { return c < n_ ? (v.x >> c & 1) : (v.z >> (c - n_) & 1); }

    void add_row(const PauliOperator& g) {
        Vec v = vec_of(g);
        PauliOperator acc = g;
        for (const auto& row : rows_) {
            if (get_bit(v, row.pivot)) {
                v.x ^= row.v.x;
                v.z ^= row.v.z;
                acc = acc * row.combo;
            }
        }
        if (v.x == 0 && v.z == 0) return;  // dependent
        int pivot = 0;
        for (int c = 0; c < 2 * n_; ++c)
            if (get_bit(v, c)) { pivot = c; break; }
        for (auto& row : rows_) {
            if (get_bit(row.v, pivot)) {
                row.v.x ^= v.x;
                row.v.z ^= v.z;
                row.combo = row.combo * acc;
            }
        }
        rows_.push_back(Row{pivot, v, acc});
    }

    int n_ = 0;
    std::vector<Row> rows_;
};

inline bool contains(const StabilizerCode& code, const PauliOperator& p, bool up_to_phase = true) {
    return GroupBasis(code.generators, code.n).contains(p, up_to_phase);
}

enum class LogicalClass { Stabilizer, Logical, ErrorDetecting };

inline LogicalClass logical_class(const StabilizerCode& code, const PauliOperator& p) {
    if (syndrome_of(code, p).bits != 0) return LogicalClass::ErrorDetecting;
    if (contains(code, p, /*up_to_phase=*/true)) return LogicalClass::Stabilizer;
    return LogicalClass::Logical;
}

struct ValidationCheck {
    std::string name;
    bool passed;
    std::string witness;  // empty when passed
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool ok() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

/// Checks the stabilizer-group axioms (commuting, independent, -I free) and
/// the logical-operator contract; failures carry a witness description.
inline ValidationReport validate(const StabilizerCode& code) {
    ValidationReport rep;
    auto add = [&](std::string name, bool ok, std::string witness = "") {
        rep.checks.push_back({std::move(name), ok, ok ? "" : std::move(witness)});
    };

    {
        bool ok = static_cast<int>(code.generators.size()) == code.n - code.k &&
                  static_cast<int>(code.logical_x.size()) == static_cast<int>(code.logical_z.size());
        add("generator count is n-k", ok,
            "got " + std::to_string(code.generators.size()) + " generators for n-k=" +
                std::to_string(code.n - code.k));
        if (!ok) return rep;
    }

    {
        bool ok = true;
        std::string w;
        for (const auto& g : code.generators) {
            if (g.phase_exp & 1) {
                ok = false;
                w = format_pauli(g) + " squares to -I";
                break;
            }
        }
        add("generators are Hermitian (phase in {+1,-1})", ok, w);
    }

    {
        bool ok = true;
        std::string w;
        for (std::size_t i = 0; i < code.generators.size() && ok; ++i)
            for (std::size_t j = i + 1; j < code.generators.size(); ++j)
                if (symplectic_product(code.generators[i], code.generators[j])) {
                    ok = false;
                    w = "(" + format_pauli(code.generators[i]) + ", " +
                        format_pauli(code.generators[j]) + ") anticommute";
                    break;
                }
        add("generators pairwise commute", ok, w);
    }

    {
        // Phase-tracked elimination: a generator that reduces to zero bits
        // against earlier rows witnesses dependence, and if the reconstructed
        // phase differs by -1 the group contains -I.
        bool indep = true, no_minus_i = true;
        std::string w_dep, w_minus;
        std::vector<PauliOperator> seen;
        for (const auto& g : code.generators) {
            GroupBasis b(seen, code.n);
            if (auto rec = b.reconstruct(g)) {
                indep = false;
                if (w_dep.empty()) w_dep = format_pauli(g) + " is a product of earlier generators";
                if (multiply(*rec, g).phase_exp == 2 && w_minus.empty()) {
                    no_minus_i = false;
                    w_minus = format_pauli(g) + " times its generated reconstruction equals -I";
                }
            }
            seen.push_back(g);
        }
        add("generators independent over GF(2)", indep, w_dep);
        add("-I not in S", no_minus_i, w_minus);
    }

    {
        bool ok = true;
        std::string w;
        for (std::size_t j = 0; j < code.logical_x.size() && ok; ++j) {
            for (const auto& g : code.generators) {
                if (symplectic_product(g, code.logical_x[j]) ||
                    symplectic_product(g, code.logical_z[j])) {
                    ok = false;
                    w = "logical pair " + std::to_string(j) + " anticommutes with " + format_pauli(g);
                    break;
                }
            }
        }
        add("logicals commute with all generators", ok, w);
    }

    {
        bool ok = true;
        std::string w;
        for (std::size_t i = 0; i < code.logical_x.size() && ok; ++i)
            for (std::size_t j = 0; j < code.logical_z.size(); ++j) {
                int want = (i == j) ? 1 : 0;
                if (symplectic_product(code.logical_x[i], code.logical_z[j]) != want) {
                    ok = false;
                    w = "Xbar_" + std::to_string(i) + " vs Zbar_" + std::to_string(j);
                    break;
                }
            }
        add("Xbar_j/Zbar_j anticommute pairwise", ok, w);
    }

    return rep;
}

struct DistanceVerdict {
    std::optional<int> distance;  // empty: greater than w_max
    int w_max;
};

/// Brute-force minimum weight over N(S)\S, enumerated by increasing weight.
inline DistanceVerdict min_distance(const StabilizerCode& code, int w_max) {
    GroupBasis basis(code.generators, code.n);
    std::vector<int> support;
    PauliOperator e(code.n, 0, 0, 0);

    auto is_logical = [&](const PauliOperator& p) {
        for (const auto& g : code.generators)
            if (symplectic_product(g, p)) return false;
        return !basis.contains(p, /*up_to_phase=*/true);
    };

    // enumerate all weight-w Paulis: choose support, then letters
    for (int w = 1; w <= w_max && w <= code.n; ++w) {
        std::vector<int> qubits(w);
        for (int i = 0; i < w; ++i) qubits[i] = i;
        while (true) {
            int combos = 1;
            for (int i = 0; i < w; ++i) combos *= 3;
            for (int c = 0; c < combos; ++c) {
                PauliOperator p = PauliOperator::identity(code.n);
                int t = c;
                for (int i = 0; i < w; ++i) {
                    p.set(qubits[i], static_cast<Pauli>(1 + t % 3));
                    t /= 3;
                }
                if (is_logical(p)) return {w, w_max};
            }
            // next combination
            int i = w - 1;
            while (i >= 0 && qubits[i] == code.n - w + i) --i;
            if (i < 0) break;
            ++qubits[i];
            for (int j = i + 1; j < w; ++j) qubits[j] = qubits[j - 1] + 1;
        }
    }
    return {std::nullopt, w_max};
}

}  // namespace qeclab
