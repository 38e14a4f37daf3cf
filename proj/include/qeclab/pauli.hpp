#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qeclab {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

inline Pauli pauli_from_char(char c) {
    switch (c) {
        case 'I': return Pauli::I;
        case 'X': return Pauli::X;
        case 'Y': return Pauli::Y;
        case 'Z': return Pauli::Z;
        default: throw std::invalid_argument(std::string("not a Pauli letter: '") + c + "'");
    }
}

/// Phase-tracked n-qubit Pauli operator, n <= 64.
///
/// Stored as X/Z bit vectors plus a power of i in front of the Hermitian
/// letter string: operator = i^phase_exp * (sigma_0 x sigma_1 x ... x sigma_{n-1}),
/// sigma_q in {I,X,Y,Z} with x/z bits (0,0),(1,0),(1,1),(0,1). Under this
/// convention Y = i*XZ holds per letter and products update phase_exp mod 4.
struct PauliOperator {
    int n = 0;
    std::uint64_t x_bits = 0;
    std::uint64_t z_bits = 0;
    std::uint8_t phase_exp = 0;  // mod 4

    PauliOperator() = default;
    PauliOperator(int n_, std::uint64_t x, std::uint64_t z, int phase = 0)
        : n(n_), x_bits(x), z_bits(z), phase_exp(static_cast<std::uint8_t>(phase & 3)) {
        if (n_ < 0 || n_ > 64) throw std::invalid_argument("qubit count must be in [0, 64]");
    }

    static PauliOperator identity(int n) { return PauliOperator(n, 0, 0, 0); }

    /// Single-letter operator P_q on an n-qubit register.
    static PauliOperator single(int n, Pauli p, int q) {
        PauliOperator out(n, 0, 0, 0);
        out.set(q, p);
        return out;
    }

    Pauli at(int q) const {
        int xb = (x_bits >> q) & 1, zb = (z_bits >> q) & 1;
        return static_cast<Pauli>(xb ? (zb ? 2 : 1) : (zb ? 3 : 0));
    }

    void set(int q, Pauli p) {
        if (q < 0 || q >= n) throw std::out_of_range("qubit index out of range");
        std::uint64_t m = 1ull << q;
        x_bits &= ~m;
        z_bits &= ~m;
        if (p == Pauli::X || p == Pauli::Y) x_bits |= m;
        if (p == Pauli::Z || p == Pauli::Y) z_bits |= m;
    }

    bool is_identity_bits() const { return x_bits == 0 && z_bits == 0; }

    bool bits_equal(const PauliOperator& o) const {
        return n == o.n && x_bits == o.x_bits && z_bits == o.z_bits;
    }

    bool operator==(const PauliOperator& o) const {
        return bits_equal(o) && phase_exp == o.phase_exp;
    }

    /// Same operator with the phase dropped (letters only).
    PauliOperator unsigned_op() const { return PauliOperator(n, x_bits, z_bits, 0); }
};

/// 0 if a and b commute, 1 if they anticommute. Phases are irrelevant.
inline int symplectic_product(const PauliOperator& a, const PauliOperator& b) {
    if (a.n != b.n) throw std::invalid_argument("symplectic_product: dimension mismatch");
    return (std::popcount(a.x_bits & b.z_bits) + std::popcount(a.z_bits & b.x_bits)) & 1;
}

/// Operator product a*b with exact phase tracking.
///
/// Per qubit, cyclic letter pairs (X,Y),(Y,Z),(Z,X) contribute +i and the
/// reversed pairs -i; the contributions are counted with two bit masks.
inline PauliOperator multiply(const PauliOperator& a, const PauliOperator& b) {
    if (a.n != b.n) throw std::invalid_argument("multiply: dimension mismatch");
    std::uint64_t x1 = a.x_bits, z1 = a.z_bits, x2 = b.x_bits, z2 = b.z_bits;
    std::uint64_t plus = (x1 & ~z1 & x2 & z2)   // X*Y = iZ
                       | (x1 & z1 & ~x2 & z2)   // Y*Z = iX
                       | (~x1 & z1 & x2 & ~z2); // Z*X = iY
    std::uint64_t minus = (x1 & z1 & x2 & ~z2)  // Y*X = -iZ
                        | (~x1 & z1 & x2 & z2)  // Z*Y = -iX
                        | (x1 & ~z1 & ~x2 & z2);// X*Z = -iY
    int phase = a.phase_exp + b.phase_exp + std::popcount(plus) - std::popcount(minus);
    return PauliOperator(a.n, x1 ^ x2, z1 ^ z2, phase & 3);
}

inline PauliOperator operator*(const PauliOperator& a, const PauliOperator& b) {
    return multiply(a, b);
}

/// Number of qubits acted on non-trivially.
inline int weight(const PauliOperator& a) { return std::popcount(a.x_bits | a.z_bits); }

/// Renders "ZXZIZIII" style strings; phases 1,2,3 get "+i", "-", "-i" prefixes.
inline std::string format_pauli(const PauliOperator& p) {
    static const char* prefix[4] = {"", "+i", "-", "-i"};
    std::string out = prefix[p.phase_exp];
    out.reserve(out.size() + p.n);
    for (int q = 0; q < p.n; ++q) out += pauli_char(p.at(q));
    return out;
}

/// Parses an optional sign prefix ("+", "-", "+i", "-i") followed by exactly
/// n letters from {I,X,Y,Z}. Round-trips with format_pauli.
inline PauliOperator parse_pauli(std::string_view text, int n) {
    int phase = 0;
    if (text.starts_with("+i")) { phase = 1; text.remove_prefix(2); }
    else if (text.starts_with("-i")) { phase = 3; text.remove_prefix(2); }
    else if (text.starts_with("-")) { phase = 2; text.remove_prefix(1); }
    else if (text.starts_with("+")) { text.remove_prefix(1); }
    if (static_cast<int>(text.size()) != n) {
        throw std::invalid_argument("pauli string has length " + std::to_string(text.size()) +
                                    ", expected " + std::to_string(n));
    }
    PauliOperator out(n, 0, 0, phase);
    for (int q = 0; q < n; ++q) out.set(q, pauli_from_char(text[q]));
    return out;
}

/// "Z1 X3 X4" style rendering (identity positions omitted; bare identity -> "I").
inline std::string format_pauli_compact(const PauliOperator& p) {
    static const char* prefix[4] = {"", "+i", "-", "-i"};
    std::string out = prefix[p.phase_exp];
    bool any = false;
    for (int q = 0; q < p.n; ++q) {
        if (p.at(q) == Pauli::I) continue;
        if (any) out += ' ';
        out += pauli_char(p.at(q));
        out += std::to_string(q);
        any = true;
    }
    if (!any) out += 'I';
    return out;
}

}  // namespace qeclab
