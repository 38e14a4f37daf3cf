#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qeclab/code.hpp"
#include "qeclab/ft.hpp"
#include "qeclab/noise.hpp"
#include "qeclab/rng.hpp"
#include "qeclab/standard_form.hpp"
#include "qeclab/synth.hpp"
#include "qeclab/tableau.hpp"

namespace qeclab {

enum class Method { Practical, Modified };

inline const char* method_name(Method m) { return m == Method::Practical ? "practical" : "modified"; }

enum class Classification { Fidelity, LogicalError, OutOfCodespace };

struct TrialResult {
    Classification classification = Classification::Fidelity;
    int rounds_used = 0;
    std::vector<Syndrome> syndrome_history;
    bool decoder_known = true;  // false if any used syndrome was absent from the table
};

/// One prepared error-correction experiment: circuits synthesized once, then
/// shared read-only by any number of trials. The information qubit is fixed
/// to |0>, so the encoded start state is logical |0>.
struct TrialConfig {
    StabilizerCode code;
    DetectorSchedule schedule;
    Method method = Method::Practical;
    NoiseModel noise;
    int max_detector_rounds = 3;

    CliffordCircuit encoder;
    CliffordCircuit decoder_adjoint;
    CliffordCircuit detector;
    SyndromeTable table;
    bool schedule_ft = true;

    TrialConfig(StabilizerCode code_, DetectorSchedule sched, Method method_, NoiseModel noise_,
                int max_rounds = 3)
        : code(std::move(code_)),
          schedule(std::move(sched)),
          method(method_),
          noise(noise_),
          max_detector_rounds(max_rounds) {
        if (max_detector_rounds < 2) throw std::invalid_argument("max_detector_rounds must be >= 2");
        noise.check();
        auto sf = standard_form(ExtendedCheckMatrix::from_code(code));
        encoder = build_encoder(sf, code.k);
        decoder_adjoint = adjoint(encoder);
        detector = build_detector(code, schedule);
        schedule_ft = check_fault_tolerance(code, schedule).fault_tolerant;
        table = build_lookup_table(code, schedule,
                                   schedule_ft ? CollisionPolicy::Strict : CollisionPolicy::Tolerate);
    }
};

namespace detail {

inline Syndrome read_syndrome(const std::vector<std::uint8_t>& bits, int width) {
    Syndrome s{0, width};
    for (int i = 0; i < width; ++i)
        if (bits[i]) s.bits |= 1ull << i;
    return s;
}

}  // namespace detail

/// Runs one trial with caller-provided per-round detector faults
/// (faults_for_round(r) for r = 1,2,...). The pipeline: ideal encoder, two
/// noisy detector rounds (a third when they disagree, capped at
/// max_detector_rounds with the last syndrome used), ideal table correction,
/// for the modified method one extra noise-free detect+correct pass, ideal
/// adjoint encoder, and a Z measurement of every data qubit.
inline TrialResult run_trial_with_faults(
    const TrialConfig& cfg, const std::function<std::vector<FaultEvent>(int)>& faults_for_round,
    SplitMix64& rng) {
    const int n = cfg.code.n;
    const int width = static_cast<int>(cfg.code.generators.size());
    TrialResult result;

    Simulator sim(n + 1);
    sim.run_circuit(cfg.encoder, {}, rng);

    sim.run_circuit(cfg.detector, faults_for_round(1), rng);
    Syndrome prev = detail::read_syndrome(sim.classical_bits(), width);
    result.syndrome_history.push_back(prev);
    sim.run_circuit(cfg.detector, faults_for_round(2), rng);
    Syndrome cur = detail::read_syndrome(sim.classical_bits(), width);
    result.syndrome_history.push_back(cur);
    int rounds = 2;
    while (cur != prev && rounds < cfg.max_detector_rounds) {
        prev = cur;
        sim.run_circuit(cfg.detector, faults_for_round(rounds + 1), rng);
        cur = detail::read_syndrome(sim.classical_bits(), width);
        result.syndrome_history.push_back(cur);
        ++rounds;
    }
    result.rounds_used = rounds;

    auto widen = [n](const PauliOperator& p) {
        return PauliOperator(n + 1, p.x_bits, p.z_bits, p.phase_exp);
    };
    auto [correction, known] = correct(cur, cfg.table, n);
    result.decoder_known = known;
    sim.state().apply_pauli(widen(correction));

    if (cfg.method == Method::Modified) {
        sim.run_circuit(cfg.detector, {}, rng);
        Syndrome proj = detail::read_syndrome(sim.classical_bits(), width);
        auto [c2, known2] = correct(proj, cfg.table, n);
        result.decoder_known = result.decoder_known && known2;
        sim.state().apply_pauli(widen(c2));
    }

    sim.run_circuit(cfg.decoder_adjoint, {}, rng);

    bool ancilla_zero = true;
    int info = 0;
    for (int q = 0; q < n; ++q) {
        int bit = sim.state().measure_pauli(PauliOperator::single(n + 1, Pauli::Z, q), rng);
        if (q < n - cfg.code.k && bit) ancilla_zero = false;
        if (q >= n - cfg.code.k) info |= bit;
    }
    if (!ancilla_zero)
        result.classification = Classification::OutOfCodespace;
    else
        result.classification = info ? Classification::LogicalError : Classification::Fidelity;
    return result;
}

/// Production trial: detector-round faults sampled from cfg.noise.
inline TrialResult run_trial(const TrialConfig& cfg, SplitMix64& rng) {
    return run_trial_with_faults(
        cfg, [&](int) { return sample_faults(cfg.detector, cfg.noise, rng); }, rng);
}

/// One Monte Carlo point: per-metric mean/min/max over m batches of N trials.
struct ErrorRatePoint {
    double p = 0;
    long long shots = 0;  // per batch
    int batches = 0;
    double logical_mean = 0, logical_min = 0, logical_max = 0;
    double total_mean = 0, total_min = 0, total_max = 0;
    double fidelity_mean = 0;
};

/// Runs m independent batches of N trials at physical rate p (all four noise
/// probabilities set to p). Each trial draws its RNG stream from
/// (seed, bits of p, batch, trial), so results are independent of thread
/// count and batch scheduling; batch counts merge exactly.
inline ErrorRatePoint estimate_rates(const TrialConfig& cfg, double p, long long shots, int batches,
                                     std::uint64_t seed, int threads = 0) {
    if (shots < 1 || batches < 1) throw std::invalid_argument("shots and batches must be >= 1");
    NoiseModel noise = NoiseModel::uniform(cfg.noise.kind, p);
    TrialConfig local = cfg;
    local.noise = noise;

    std::uint64_t p_key;
    static_assert(sizeof(double) == sizeof(std::uint64_t));
    std::memcpy(&p_key, &p, sizeof p_key);

    struct Counts {
        long long fidelity = 0, logical = 0, out = 0;
    };
    std::vector<Counts> per_batch(batches);

    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min<int>(threads, batches));

    auto work = [&](int worker) {
        for (int b = worker; b < batches; b += threads) {
            Counts c;
            for (long long t = 0; t < shots; ++t) {
                SplitMix64 rng(mix_seed(seed, p_key, static_cast<std::uint64_t>(b),
                                        static_cast<std::uint64_t>(t)));
                switch (run_trial(local, rng).classification) {
                    case Classification::Fidelity: ++c.fidelity; break;
                    case Classification::LogicalError: ++c.logical; break;
                    case Classification::OutOfCodespace: ++c.out; break;
                }
            }
            per_batch[b] = c;
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }

    ErrorRatePoint pt;
    pt.p = p;
    pt.shots = shots;
    pt.batches = batches;
    pt.logical_min = pt.total_min = 1.0;
    pt.logical_max = pt.total_max = 0.0;
    double sum_log = 0, sum_tot = 0, sum_fid = 0;
    for (const auto& c : per_batch) {
        double logical = static_cast<double>(c.logical) / static_cast<double>(shots);
        double fid = static_cast<double>(c.fidelity) / static_cast<double>(shots);
        double total = 1.0 - fid;
        sum_log += logical;
        sum_tot += total;
        sum_fid += fid;
        pt.logical_min = std::min(pt.logical_min, logical);
        pt.logical_max = std::max(pt.logical_max, logical);
        pt.total_min = std::min(pt.total_min, total);
        pt.total_max = std::max(pt.total_max, total);
    }
    pt.logical_mean = sum_log / batches;
    pt.total_mean = sum_tot / batches;
    pt.fidelity_mean = sum_fid / batches;
    return pt;
}

/// Default per-batch shot rule: at least ~100 expected raw fault events.
inline long long default_shots(double p, long long lo = 10000, long long hi = 1000000) {
    if (p <= 0) return lo;
    double want = 100.0 / p;
    if (want < static_cast<double>(lo)) return lo;
    if (want > static_cast<double>(hi)) return hi;
    return static_cast<long long>(want);
}

}  // namespace qeclab
