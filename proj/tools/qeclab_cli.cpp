// qeclab command-line front end: code validation, syndrome tables,
// fault-tolerance checks, schedule search, Monte Carlo runs, threshold fits.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qeclab/code.hpp"
#include "qeclab/experiment.hpp"
#include "qeclab/fit.hpp"
#include "qeclab/ft.hpp"
#include "qeclab/io.hpp"
#include "qeclab/standard_form.hpp"
#include "qeclab/synth.hpp"

using namespace qeclab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 2;
constexpr int kExitParseError = 3;
constexpr int kExitFitError = 4;

NoiseKind parse_noise(const std::string& s) {
    if (s == "std-dep") return NoiseKind::StandardDepolarizing;
    if (s == "anisotropic") return NoiseKind::Anisotropic;
    throw CLI::ValidationError("--noise must be std-dep or anisotropic");
}

Method parse_method(const std::string& s) {
    if (s == "practical") return Method::Practical;
    if (s == "modified") return Method::Modified;
    throw CLI::ValidationError("--method must be practical or modified");
}

DetectorSchedule need_schedule(const CodeDefinitionFile& file, const std::string& name) {
    auto sched = file.schedule(name);
    if (!sched) throw std::runtime_error("code file has no schedule named '" + name + "'");
    return *sched;
}

int cmd_validate(const std::string& path) {
    CodeDefinitionFile file = load_code_definition(path);
    StabilizerCode code = file.to_code();
    ValidationReport rep = validate(code);
    for (const auto& c : rep.checks) {
        std::cout << (c.passed ? "  ok    " : "  FAIL  ") << c.name;
        if (!c.passed) std::cout << "  [" << c.witness << "]";
        std::cout << "\n";
    }
    if (!rep.ok()) {
        std::cout << "validation failed\n";
        return kExitCheckFailed;
    }
    for (const auto& [nm, rows] : file.schedules) {
        try {
            validate_schedule(code, *file.schedule(nm));
            std::cout << "  ok    schedule '" << nm << "' permutes the generators\n";
        } catch (const std::exception& e) {
            std::cout << "  FAIL  schedule '" << nm << "'  [" << e.what() << "]\n";
            return kExitCheckFailed;
        }
    }
    auto sf = standard_form(ExtendedCheckMatrix::from_code(code));
    std::cout << "name: " << code.name << "  [[" << code.n << "," << code.k << "]]\n";
    std::cout << "standard form: r = " << sf.r << ", l = " << sf.l << "\n";
    DistanceVerdict d = min_distance(code, 3);
    if (d.distance)
        std::cout << "distance: " << *d.distance << "\n";
    else
        std::cout << "distance: greater than " << d.w_max << "\n";
    return kExitOk;
}

int compare_golden(const StabilizerCode& code, const SyndromeTable& table,
                   const std::string& golden_dir) {
    GroupBasis basis(code.generators, code.n);
    int mismatches = 0;
    auto check_entry = [&](const std::string& err_text, const std::string& want_syn) {
        PauliOperator e = parse_pauli_compact(err_text, code.n);
        std::string got = syndrome_of(code, e).to_string();
        if (got != want_syn) {
            std::cout << "MISMATCH " << err_text << ": computed " << got << ", golden " << want_syn
                      << "\n";
            ++mismatches;
            return;
        }
        auto [corr, known] = correct(Syndrome::from_string(want_syn), table, code.n);
        if (!known || !basis.contains((corr * e).unsigned_op(), true)) {
            std::cout << "MISMATCH " << err_text << ": table correction does not cancel it\n";
            ++mismatches;
        }
    };

    {
        std::ifstream in(golden_dir + "/table3.json");
        if (!in) throw std::runtime_error("cannot open " + golden_dir + "/table3.json");
        nlohmann::json j = nlohmann::json::parse(in);
        for (auto& [err, syn] : j.at("single_qubit").items())
            check_entry(err, syn.get<std::string>());
    }
    {
        std::ifstream in(golden_dir + "/table4.json");
        if (!in) throw std::runtime_error("cannot open " + golden_dir + "/table4.json");
        nlohmann::json j = nlohmann::json::parse(in);
        for (auto& block : j.at("blocks"))
            for (auto& [err, syn] : block.at("entries").items())
                check_entry(err, syn.get<std::string>());
    }
    if (mismatches) {
        std::cout << mismatches << " golden mismatches\n";
        return kExitCheckFailed;
    }
    std::cout << "golden tables match\n";
    return kExitOk;
}

int cmd_tables(const std::string& path, const std::string& sched_name, const std::string& out_path,
               const std::string& golden_dir) {
    CodeDefinitionFile file = load_code_definition(path);
    StabilizerCode code = file.to_code();
    DetectorSchedule sched = need_schedule(file, sched_name);

    SyndromeTable table;
    try {
        table = build_lookup_table(code, sched, CollisionPolicy::Strict);
    } catch (const FtViolationError& e) {
        std::cout << e.what() << "\n";
        return kExitCheckFailed;
    }

    nlohmann::json j = syndrome_table_json(code, sched, table);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        out << j.dump(2) << "\n";
        std::cout << "wrote " << table.entries.size() << " syndrome entries to " << out_path << "\n";
    } else {
        std::cout << j.dump(2) << "\n";
    }
    if (!golden_dir.empty()) return compare_golden(code, table, golden_dir);
    return kExitOk;
}

int cmd_ft_check(const std::string& path, const std::string& sched_name) {
    CodeDefinitionFile file = load_code_definition(path);
    StabilizerCode code = file.to_code();
    FtReport rep = check_fault_tolerance(code, need_schedule(file, sched_name));
    if (rep.fault_tolerant) {
        std::cout << "schedule '" << sched_name << "' is fault tolerant\n";
        return kExitOk;
    }
    std::cout << "schedule '" << sched_name << "' is NOT fault tolerant; violations:\n";
    for (const auto& v : rep.violations) {
        std::cout << "  syndrome " << v.syndrome.to_string() << ": " << format_pauli_compact(v.a)
                  << " [" << v.a_origin << "] vs " << format_pauli_compact(v.b) << " [" << v.b_origin
                  << "], product " << format_pauli_compact(v.product) << " is logical\n";
    }
    return kExitCheckFailed;
}

int cmd_reorder_search(const std::string& path, std::size_t budget) {
    CodeDefinitionFile file = load_code_definition(path);
    StabilizerCode code = file.to_code();
    auto schedules = search_schedules(code, budget);
    std::cout << "found " << schedules.size() << " fault-tolerant schedules (budget " << budget
              << ")\n";
    for (std::size_t i = 0; i < schedules.size(); ++i) {
        std::cout << "schedule: ft-" << i << "\n";
        for (const auto& row : schedules[i].rows) {
            std::cout << " ";
            for (auto [p, q] : row) std::cout << " " << pauli_char(p) << q;
            std::cout << "\n";
        }
    }
    return schedules.empty() ? kExitCheckFailed : kExitOk;
}

int cmd_run(const std::string& path, const std::string& sched_name, const std::string& noise_s,
            const std::string& method_s, std::vector<double> ps, long long shots, int batches,
            int max_rounds, std::uint64_t seed, int threads, const std::string& out_path) {
    CodeDefinitionFile file = load_code_definition(path);
    StabilizerCode code = file.to_code();
    NoiseKind noise = parse_noise(noise_s);
    Method method = parse_method(method_s);

    TrialConfig cfg(code, need_schedule(file, sched_name), method, NoiseModel::uniform(noise, 0.0),
                    max_rounds);
    if (!cfg.schedule_ft)
        std::cerr << "warning: schedule '" << sched_name
                  << "' is not fault tolerant; colliding syndromes keep their first entry\n";

    std::ostringstream csv;
    csv << csv_header() << "\n";
    for (double p : ps) {
        long long n_shots = shots > 0 ? shots : default_shots(p);
        ErrorRatePoint pt = estimate_rates(cfg, p, n_shots, batches, seed, threads);
        csv << csv_row(pt, noise, method) << "\n";
        std::cerr << "p=" << p << " logical=" << pt.logical_mean << " total=" << pt.total_mean
                  << " (" << n_shots << " shots x " << batches << ")\n";
    }
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        out << csv.str();
        std::cout << "wrote " << out_path << "\n";
    } else {
        std::cout << csv.str();
    }
    return kExitOk;
}

constexpr double kChi2RejectThreshold = 50.0;

int cmd_fit(const std::string& csv_path, const std::string& metric, int degree, bool series) {
    std::ifstream in(csv_path);
    if (!in) throw std::runtime_error("cannot open " + csv_path);
    auto rows = parse_results_csv(in);

    std::vector<FitPoint> pts;
    std::vector<std::tuple<double, double, double, double>> series_rows;
    for (const auto& r : rows) {
        if (r.p <= 0) continue;
        double mean = metric == "logical" ? r.logical_mean : r.total_mean;
        double lo = metric == "logical" ? r.logical_min : r.total_min;
        double hi = metric == "logical" ? r.logical_max : r.total_max;
        // batch-spread variance estimate for the mean of m batches
        double spread = (hi - lo) / 2.0;
        double var = std::max(spread * spread / std::max(1, r.batches), 1e-18);
        pts.push_back({r.p, mean, std::sqrt(var)});
        series_rows.emplace_back(r.p, mean, lo, hi);
    }

    FitResult fit;
    try {
        fit = fit_polynomial_weighted(pts, degree);
    } catch (const std::exception& e) {
        std::cout << "fit failed: " << e.what() << "\n";
        return kExitFitError;
    }

    std::cout << "metric: " << metric << ", model: ";
    for (int i = 0; i < degree - 1; ++i) std::cout << (i ? " + " : "") << "a" << i << "*p^" << (i + 2);
    std::cout << "\n";
    for (std::size_t i = 0; i < fit.coefficients.size(); ++i)
        std::cout << "a" << i << " = " << fit.coefficients[i] << "\n";
    double chi2_red = fit.n_points > degree - 1
                          ? fit.chi2 / static_cast<double>(fit.n_points - (degree - 1))
                          : 0.0;
    std::cout << "leading order: " << fit.leading_order() << "\n";
    std::cout << "reduced chi2: " << chi2_red << "\n";

    auto p_star = reported_pseudo_threshold(fit, kChi2RejectThreshold);
    if (p_star) {
        std::cout << "pseudo-threshold: " << *p_star << "\n";
    } else if (pseudo_threshold(fit)) {
        std::cout << "pseudo-threshold: none (model misfit, reduced chi2 " << chi2_red << " > "
                  << kChi2RejectThreshold << "; rates keep a sub-quadratic component)\n";
    } else {
        std::cout << "pseudo-threshold: none\n";
    }

    if (series) {
        std::cout << "p,rate_over_p2,min_over_p2,max_over_p2\n";
        for (const auto& lp : leading_order_series(series_rows))
            std::cout << format_double(lp.p) << ',' << format_double(lp.value) << ','
                      << format_double(lp.lo) << ',' << format_double(lp.hi) << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stabilizer-code error-correction laboratory"};
    app.require_subcommand(1);

    std::string codefile, sched_name = "ft", out_path, golden_dir, noise_s = "std-dep",
                method_s = "practical", metric = "logical", csv_path;
    std::vector<double> ps;
    long long shots = 0;
    int batches = 10, max_rounds = 3, degree = 3, threads = 0;
    std::size_t budget = 8;
    std::uint64_t seed = 1;
    bool series = false;

    auto* validate_cmd = app.add_subcommand("validate", "check a code definition file");
    validate_cmd->add_option("codefile", codefile)->required();

    auto* tables_cmd = app.add_subcommand("tables", "emit syndrome lookup tables as JSON");
    tables_cmd->add_option("codefile", codefile)->required();
    tables_cmd->add_option("--schedule", sched_name);
    tables_cmd->add_option("--out", out_path);
    tables_cmd->add_option("--golden", golden_dir, "directory with table3.json/table4.json");

    auto* ft_cmd = app.add_subcommand("ft-check", "fault-tolerance verdict for a schedule");
    ft_cmd->add_option("codefile", codefile)->required();
    ft_cmd->add_option("--schedule", sched_name);

    auto* search_cmd = app.add_subcommand("reorder-search", "search for fault-tolerant schedules");
    search_cmd->add_option("codefile", codefile)->required();
    search_cmd->add_option("--budget", budget);

    auto* run_cmd = app.add_subcommand("run", "Monte Carlo error-rate estimation");
    run_cmd->add_option("codefile", codefile)->required();
    run_cmd->add_option("--schedule", sched_name);
    run_cmd->add_option("--noise", noise_s, "std-dep | anisotropic");
    run_cmd->add_option("--method", method_s, "practical | modified");
    run_cmd->add_option("--p", ps, "physical error rates")->required();
    run_cmd->add_option("--shots", shots, "trials per batch (0 = auto, ~100/p)");
    run_cmd->add_option("--batches", batches);
    run_cmd->add_option("--max-rounds", max_rounds);
    run_cmd->add_option("--seed", seed);
    run_cmd->add_option("--threads", threads, "0 = hardware concurrency");
    run_cmd->add_option("--out", out_path);

    auto* fit_cmd = app.add_subcommand("fit", "fit rates and locate the pseudo-threshold");
    fit_cmd->add_option("results", csv_path)->required();
    fit_cmd->add_option("--metric", metric, "logical | total");
    fit_cmd->add_option("--degree", degree);
    fit_cmd->add_flag("--series", series, "also print the rate/p^2 series");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate_cmd->parsed()) return cmd_validate(codefile);
        if (tables_cmd->parsed()) return cmd_tables(codefile, sched_name, out_path, golden_dir);
        if (ft_cmd->parsed()) return cmd_ft_check(codefile, sched_name);
        if (search_cmd->parsed()) return cmd_reorder_search(codefile, budget);
        if (run_cmd->parsed())
            return cmd_run(codefile, sched_name, noise_s, method_s, ps, shots, batches, max_rounds,
                           seed, threads, out_path);
        if (fit_cmd->parsed()) return cmd_fit(csv_path, metric, degree, series);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParseError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}
