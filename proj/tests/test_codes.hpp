// Shared code fixtures for tests.
#pragma once

#include <vector>

#include "qeclab/circuit.hpp"
#include "qeclab/code.hpp"
#include "qeclab/synth.hpp"

namespace qeclab::testing {

/// The [[8,1,3]] code, generators in syndrome-bit order.
inline StabilizerCode eight_one_three() {
    StabilizerCode code;
    code.name = "bare-813";
    code.n = 8;
    code.k = 1;
    for (const char* s : {"ZXZIZIII", "YIYZZIII", "ZZIIXIZI", "IXIZIXXI", "IIIZIZZX", "ZIIXIIZZ",
                          "IZXXZIXX"})
        code.generators.push_back(parse_pauli(s, 8));
    code.logical_x = {parse_pauli("ZZXIIZII", 8)};
    code.logical_z = {parse_pauli("ZIZIIZZI", 8)};
    return code;
}

/// Reordered measurement sequence (rows 5-7 permuted).
inline DetectorSchedule ft_schedule(const StabilizerCode& code) {
    DetectorSchedule s = ascending_schedule(code);
    s.rows[4] = {{Pauli::Z, 5}, {Pauli::Z, 3}, {Pauli::Z, 6}, {Pauli::X, 7}};
    s.rows[5] = {{Pauli::Z, 7}, {Pauli::X, 3}, {Pauli::Z, 0}, {Pauli::Z, 6}};
    s.rows[6] = {{Pauli::Z, 1}, {Pauli::X, 3}, {Pauli::Z, 4},
                 {Pauli::X, 2}, {Pauli::X, 6}, {Pauli::X, 7}};
    return s;
}

}  // namespace qeclab::testing
