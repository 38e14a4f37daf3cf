#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qeclab/code.hpp"
#include "qeclab/circuit.hpp"
#include "qeclab/standard_form.hpp"
#include "qeclab/synth.hpp"

namespace qeclab {

/// Data error left behind by a P (x) X ancilla fault after the j-th scheduled
/// gate of one stabilizer measurement: P lands on the j-th data qubit and the
/// ancilla X conjugates through the remaining controlled factors.
///
/// `error` is the literally deposited operator, P_{qj} * S_{q(j+1)} * ... *
/// S_{qw}; `reduced` is the lighter of {error, error * g_i} (ties keep the
/// deposited form), which is what the printed tables list.
struct PropagatedError {
    int stabilizer = 0;  // generator index
    int position = 0;    // j, 1-based: fault after the j-th scheduled gate
    Pauli fault = Pauli::I;
    PauliOperator error;
    PauliOperator reduced;
};

inline std::vector<PropagatedError> propagated_errors(const StabilizerCode& code,
                                                      const DetectorSchedule& sched) {
    std::vector<PropagatedError> out;
    for (std::size_t si = 0; si < sched.rows.size(); ++si) {
        const auto& row = sched.rows[si];
        const int w = static_cast<int>(row.size());
        for (int j = 1; j <= w; ++j) {
            PauliOperator tail = PauliOperator::identity(code.n);
            for (int t = j; t < w; ++t)
                tail = tail * PauliOperator::single(code.n, row[t].first, row[t].second);
            for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
                PauliOperator raw =
                    (PauliOperator::single(code.n, p, row[j - 1].second) * tail).unsigned_op();
                PauliOperator alt = (raw * code.generators[si]).unsigned_op();
                PauliOperator red = weight(raw) <= weight(alt) ? raw : alt;
                out.push_back({static_cast<int>(si), j, p, raw, red});
            }
        }
    }
    return out;
}

enum class Provenance { SingleQubit, Propagated, CollisionResolved };

inline const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::SingleQubit: return "single-qubit";
        case Provenance::Propagated: return "propagated";
        case Provenance::CollisionResolved: return "collision-resolved";
    }
    return "?";
}

/// Lookup decoder: syndrome -> correction. Only syndromes named by the
/// single-qubit and propagated error sets are present; anything else decodes
/// to identity with known=false.
struct SyndromeTable {
    struct Entry {
        PauliOperator correction;
        Provenance provenance;
    };
    int width = 0;
    std::map<std::uint64_t, Entry> entries;

    const Entry* find(Syndrome s) const {
        auto it = entries.find(s.bits);
        return it == entries.end() ? nullptr : &it->second;
    }
};

struct FtViolation {
    PauliOperator a;
    PauliOperator b;
    PauliOperator product;
    Syndrome syndrome;
    std::string a_origin;
    std::string b_origin;
};

struct FtReport {
    bool fault_tolerant = true;
    std::vector<FtViolation> violations;
};

struct FtViolationError : std::runtime_error {
    FtViolationError(std::string msg, FtReport rep)
        : std::runtime_error(std::move(msg)), report(std::move(rep)) {}
    FtReport report;
};

namespace detail {

struct LabelledError {
    PauliOperator op;
    std::string origin;
};

inline std::vector<LabelledError> error_universe(const StabilizerCode& code,
                                                 const DetectorSchedule& sched) {
    std::vector<LabelledError> out;
    for (int q = 0; q < code.n; ++q)
        for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
            PauliOperator e = PauliOperator::single(code.n, p, q);
            out.push_back({e, format_pauli_compact(e)});
        }
    for (const auto& pe : propagated_errors(code, sched)) {
        out.push_back({pe.reduced, "stabilizer " + std::to_string(pe.stabilizer + 1) + " fault " +
                                       std::string(1, pauli_char(pe.fault)) + " after gate " +
                                       std::to_string(pe.position) + " ~ " +
                                       format_pauli_compact(pe.reduced)});
    }
    return out;
}

}  // namespace detail

/// FT verdict: every same-syndrome pair drawn from the single-qubit and
/// propagated error sets must multiply into the stabilizer group (a shared
/// syndrome is then harmless, the decoder's choice differs by a stabilizer).
inline FtReport check_fault_tolerance(const StabilizerCode& code, const DetectorSchedule& sched) {
    GroupBasis basis(code.generators, code.n);
    auto universe = detail::error_universe(code, sched);

    FtReport rep;
    std::map<std::uint64_t, const detail::LabelledError*> first_seen;
    for (const auto& le : universe) {
        Syndrome s = syndrome_of(code, le.op);
        if (s.bits == 0) {
            if (!basis.contains(le.op, /*up_to_phase=*/true)) {
                rep.fault_tolerant = false;
                rep.violations.push_back({PauliOperator::identity(code.n), le.op, le.op, s,
                                          "identity", le.origin});
            }
            continue;
        }
        auto [it, inserted] = first_seen.try_emplace(s.bits, &le);
        if (!inserted) {
            const auto& prev = *it->second;
            if (prev.op.bits_equal(le.op)) continue;
            PauliOperator prod = (prev.op * le.op).unsigned_op();
            if (!basis.contains(prod, /*up_to_phase=*/true)) {
                rep.fault_tolerant = false;
                rep.violations.push_back({prev.op, le.op, prod, s, prev.origin, le.origin});
            }
        }
    }
    return rep;
}

enum class CollisionPolicy { Strict, Tolerate };

/// Builds the decoder table: zero syndrome -> identity, then the 3n
/// single-qubit errors, then the propagated errors. A key collision whose
/// error product is a stabilizer keeps the first entry (tagged
/// collision-resolved); a logical product is a fault-tolerance violation and
/// throws under the Strict policy.
inline SyndromeTable build_lookup_table(const StabilizerCode& code, const DetectorSchedule& sched,
                                        CollisionPolicy policy = CollisionPolicy::Strict) {
    GroupBasis basis(code.generators, code.n);
    SyndromeTable table;
    table.width = static_cast<int>(code.generators.size());
    FtReport rep;

    auto insert = [&](const PauliOperator& e, Provenance prov) {
        Syndrome s = syndrome_of(code, e);
        auto it = table.entries.find(s.bits);
        if (it == table.entries.end()) {
            table.entries.emplace(s.bits, SyndromeTable::Entry{e.unsigned_op(), prov});
            return;
        }
        if (it->second.correction.bits_equal(e)) return;
        PauliOperator prod = (it->second.correction * e).unsigned_op();
        if (basis.contains(prod, /*up_to_phase=*/true)) {
            it->second.provenance = Provenance::CollisionResolved;
        } else {
            rep.fault_tolerant = false;
            rep.violations.push_back({it->second.correction, e, prod, s,
                                      format_pauli_compact(it->second.correction),
                                      format_pauli_compact(e)});
        }
    };

    insert(PauliOperator::identity(code.n), Provenance::SingleQubit);
    for (int q = 0; q < code.n; ++q)
        for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z})
            insert(PauliOperator::single(code.n, p, q), Provenance::SingleQubit);
    for (const auto& pe : propagated_errors(code, sched)) insert(pe.reduced, Provenance::Propagated);

    if (!rep.fault_tolerant && policy == CollisionPolicy::Strict) {
        std::string msg = "schedule is not fault tolerant:";
        for (const auto& v : rep.violations)
            msg += "\n  syndrome " + v.syndrome.to_string() + ": " + format_pauli_compact(v.a) +
                   " vs " + format_pauli_compact(v.b) + " (product " + format_pauli_compact(v.product) +
                   " is logical)";
        throw FtViolationError(msg, std::move(rep));
    }
    return table;
}

/// Decode one syndrome. Unknown syndromes return the identity with
/// known=false; the table deliberately has no nearest-neighbour completion.
inline std::pair<PauliOperator, bool> correct(Syndrome s, const SyndromeTable& table, int n) {
    if (s.width != table.width) throw std::invalid_argument("syndrome width mismatch");
    if (const auto* e = table.find(s)) return {e->correction, true};
    return {PauliOperator::identity(n), false};
}

/// Depth-first search over per-stabilizer gate orderings for fault-tolerant
/// schedules. Candidates at each level are the permutations of the ascending
/// factor order in lexicographic order, so the unpermuted schedule is probed
/// first; a prefix is abandoned as soon as its error set stops being
/// distinguishable. Returns up to `budget` schedules in discovery order.
inline std::vector<DetectorSchedule> search_schedules(const StabilizerCode& code,
                                                      std::size_t budget) {
    std::vector<DetectorSchedule> found;
    if (budget == 0) return found;

    std::vector<PauliOperator> lx = code.logical_x, lz = code.logical_z;
    if (code.k > 0 && (lx.empty() || lz.empty())) {
        auto sf = standard_form(ExtendedCheckMatrix::from_code(code));
        std::tie(lx, lz) = derive_logicals(sf);
    }

    // signature of an error: syndrome plus logical class; two same-syndrome
    // errors are jointly decodable iff their logical classes agree
    auto signature_class = [&](const PauliOperator& e) {
        std::uint64_t cls = 0;
        for (std::size_t i = 0; i < lx.size(); ++i)
            cls |= static_cast<std::uint64_t>(symplectic_product(e, lx[i])) << (2 * i);
        for (std::size_t i = 0; i < lz.size(); ++i)
            cls |= static_cast<std::uint64_t>(symplectic_product(e, lz[i])) << (2 * i + 1);
        return cls + 1;  // nonzero so that "absent" can be 0
    };

    const int m = static_cast<int>(code.generators.size());
    DetectorSchedule base = ascending_schedule(code);

    // all candidate rows per stabilizer with their signature lists, lex order
    struct Candidate {
        std::vector<std::pair<Pauli, int>> row;
        std::vector<std::pair<std::uint64_t, std::uint64_t>> sigs;  // (syndrome, class)
    };
    std::vector<std::vector<Candidate>> cands(m);
    for (int si = 0; si < m; ++si) {
        std::vector<int> idx(base.rows[si].size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
        DetectorSchedule probe;
        probe.rows.resize(1);
        do {
            Candidate c;
            for (int i : idx) c.row.push_back(base.rows[si][i]);
            // reuse propagated_errors on a single-row pseudo schedule
            StabilizerCode one;
            one.n = code.n;
            one.k = code.n - 1;
            one.generators = {code.generators[si]};
            probe.rows[0] = c.row;
            for (const auto& pe : propagated_errors(one, probe))
                if (weight(pe.reduced) >= 2)
                    c.sigs.emplace_back(syndrome_of(code, pe.reduced).bits,
                                        signature_class(pe.reduced));
            cands[si].push_back(std::move(c));
        } while (std::next_permutation(idx.begin(), idx.end()));
    }

    std::map<std::uint64_t, std::uint64_t> acc;
    acc[0] = signature_class(PauliOperator::identity(code.n));
    for (int q = 0; q < code.n; ++q)
        for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
            PauliOperator e = PauliOperator::single(code.n, p, q);
            auto [it, inserted] = acc.try_emplace(syndrome_of(code, e).bits, signature_class(e));
            if (!inserted && it->second != signature_class(e))
                return found;  // single-qubit errors already collide; no schedule can help
        }

    std::vector<const Candidate*> chosen(m, nullptr);
    std::vector<std::uint64_t> undo_keys;

    auto dfs = [&](auto&& self, int si) -> bool {
        if (si == m) {
            DetectorSchedule s;
            for (const auto* c : chosen) s.rows.push_back(c->row);
            found.push_back(std::move(s));
            return found.size() >= budget;
        }
        for (const auto& cand : cands[si]) {
            std::size_t undo_mark = undo_keys.size();
            bool ok = true;
            for (auto [syn, cls] : cand.sigs) {
                auto it = acc.find(syn);
                if (it == acc.end()) {
                    acc.emplace(syn, cls);
                    undo_keys.push_back(syn);
                } else if (it->second != cls) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                chosen[si] = &cand;
                if (self(self, si + 1)) return true;
            }
            while (undo_keys.size() > undo_mark) {
                acc.erase(undo_keys.back());
                undo_keys.pop_back();
            }
        }
        return false;
    };
    dfs(dfs, 0);
    return found;
}

}  // namespace qeclab
