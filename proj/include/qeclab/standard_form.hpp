#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qeclab/code.hpp"
#include "qeclab/pauli.hpp"

namespace qeclab {

/// Check matrix [H^x | H^z] with a mod-4 phase column; rows are the generator
/// (x|z) vectors and the phase column carries each generator's phase_exp.
struct ExtendedCheckMatrix {
    int n = 0;
    int k = 0;
    std::vector<PauliOperator> rows;  // bits + phase per generator

    static ExtendedCheckMatrix from_code(const StabilizerCode& code) {
        return ExtendedCheckMatrix{code.n, code.k, code.generators};
    }
};

/// Row-reduced, column-permuted check matrix in the block shape
///
///   [ I_r  A  A' | B  0  C ]
///   [  0   0  0  | D  I  E ]
///
/// std_generators live in standard-form qubit labels; qubit_permutation maps a
/// standard-form column back to the original qubit carrying it.
struct StandardForm {
    int n = 0;
    int k = 0;
    int r = 0;
    int l = 0;
    std::vector<int> qubit_permutation;        // std column -> original qubit
    std::vector<PauliOperator> std_generators; // M_1..M_{n-k}, std labels

    std::vector<int> std_phases() const {
        std::vector<int> out;
        out.reserve(std_generators.size());
        for (const auto& m : std_generators) out.push_back(m.phase_exp);
        return out;
    }

    int a(int i, int j) const { return xbit(i, r + j); }
    int a_prime(int i, int j) const { return xbit(i, r + l + j); }
    int b(int i, int j) const { return zbit(i, j); }
    int c(int i, int j) const { return zbit(i, r + l + j); }
    int d(int i, int j) const { return zbit(r + i, j); }
    int e(int i, int j) const { return zbit(r + i, r + l + j); }

    int xbit(int row, int col) const { return std_generators[row].x_bits >> col & 1; }
    int zbit(int row, int col) const { return std_generators[row].z_bits >> col & 1; }

    /// Relabel a std-label operator back to original qubits.
    PauliOperator to_original(const PauliOperator& p) const {
        PauliOperator out(n, 0, 0, p.phase_exp);
        for (int c = 0; c < n; ++c) {
            out.x_bits |= static_cast<std::uint64_t>(p.x_bits >> c & 1) << qubit_permutation[c];
            out.z_bits |= static_cast<std::uint64_t>(p.z_bits >> c & 1) << qubit_permutation[c];
        }
        return out;
    }

    /// The identity/zero block structure drawn above, violated only by bugs.
    bool shape_ok() const {
        int m = n - k;
        for (int i = 0; i < r; ++i) {
            for (int col = 0; col < r; ++col)
                if (xbit(i, col) != (i == col)) return false;
            for (int col = r; col < r + l; ++col)
                if (zbit(i, col)) return false;
        }
        for (int i = r; i < m; ++i) {
            if (std_generators[i].x_bits) return false;
            for (int col = r; col < r + l; ++col)
                if (zbit(i, col) != (col - r == i - r)) return false;
        }
        return true;
    }
};

/// Gaussian elimination to the standard block shape. Row additions multiply the
/// underlying Pauli rows (phase column updates mod 4 for free); column swaps
/// relabel qubits and are recorded in qubit_permutation. Pivots take the
/// leftmost unused column and the topmost candidate row.
inline StandardForm standard_form(const ExtendedCheckMatrix& mat) {
    const int n = mat.n, k = mat.k, m = n - k;
    if (static_cast<int>(mat.rows.size()) != m)
        throw std::invalid_argument("check matrix must have n-k rows");

    std::vector<PauliOperator> rows = mat.rows;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;

    auto xbit = [&](int row, int col) { return rows[row].x_bits >> perm[col] & 1; };
    auto zbit = [&](int row, int col) { return rows[row].z_bits >> perm[col] & 1; };

    // X block -> [I_r A A']
    int r = 0;
    for (int col = 0; col < n && r < m; ++col) {
        int piv = -1;
        for (int i = r; i < m; ++i)
            if (xbit(i, col)) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(perm[r], perm[col]);
        std::swap(rows[r], rows[piv]);
        for (int i = 0; i < m; ++i)
            if (i != r && xbit(i, r)) rows[i] = rows[i] * rows[r];
        ++r;
    }
    const int l = m - r;

    // Z block of the x-free rows -> [D I_l E]
    int done = 0;
    for (int col = r; col < n && done < l; ++col) {
        int piv = -1;
        for (int i = r + done; i < m; ++i)
            if (zbit(i, col)) { piv = i; break; }
        if (piv < 0) continue;
        int tgt = r + done;
        std::swap(perm[tgt], perm[col]);
        std::swap(rows[tgt], rows[piv]);
        for (int i = r; i < m; ++i)
            if (i != tgt && zbit(i, tgt)) rows[i] = rows[i] * rows[tgt];
        ++done;
    }
    if (done < l) throw std::invalid_argument("dependent generators: check matrix is rank deficient");

    // zero the upper rows' Z bits over the l columns (the upper zero block)
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < l; ++j)
            if (zbit(i, r + j)) rows[i] = rows[i] * rows[r + j];

    StandardForm sf;
    sf.n = n;
    sf.k = k;
    sf.r = r;
    sf.l = l;
    sf.qubit_permutation = perm;
    sf.std_generators.reserve(m);
    for (const auto& row : rows) {
        PauliOperator q(n, 0, 0, row.phase_exp);
        for (int c = 0; c < n; ++c) {
            q.x_bits |= static_cast<std::uint64_t>(row.x_bits >> perm[c] & 1) << c;
            q.z_bits |= static_cast<std::uint64_t>(row.z_bits >> perm[c] & 1) << c;
        }
        sf.std_generators.push_back(q);
    }
    return sf;
}

/// Logical operators read off the standard form, mapped back to original
/// qubit labels:
///   Xbar = [0 E^T I | C^T 0 0],  Zbar = [0 0 0 | A'^T 0 I].
inline std::pair<std::vector<PauliOperator>, std::vector<PauliOperator>> derive_logicals(
    const StandardForm& sf) {
    std::vector<PauliOperator> xbars, zbars;
    for (int j = 0; j < sf.k; ++j) {
        PauliOperator xb(sf.n, 0, 0, 0);
        for (int i = 0; i < sf.l; ++i)
            if (sf.e(i, j)) xb.x_bits |= 1ull << (sf.r + i);
        xb.x_bits |= 1ull << (sf.r + sf.l + j);
        for (int i = 0; i < sf.r; ++i)
            if (sf.c(i, j)) xb.z_bits |= 1ull << i;
        xbars.push_back(sf.to_original(xb));

        PauliOperator zb(sf.n, 0, 0, 0);
        for (int i = 0; i < sf.r; ++i)
            if (sf.a_prime(i, j)) zb.z_bits |= 1ull << i;
        zb.z_bits |= 1ull << (sf.r + sf.l + j);
        zbars.push_back(sf.to_original(zb));
    }
    return {std::move(xbars), std::move(zbars)};
}

}  // namespace qeclab
