#pragma once

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qeclab/circuit.hpp"
#include "qeclab/code.hpp"
#include "qeclab/experiment.hpp"
#include "qeclab/ft.hpp"

namespace qeclab {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_number(line) {}
    int line_number;
};

/// Plain-text code definition: name/n/k, one signed Pauli string per
/// stabilizer (file order = syndrome bit order), optional logicals, and named
/// measurement schedules given as indented rows of "P<q>" tokens.
struct CodeDefinitionFile {
    std::string name;
    int n = 0;
    int k = 0;
    std::vector<std::string> stabilizers;
    std::vector<std::string> logical_x;
    std::vector<std::string> logical_z;
    std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> schedules;

    StabilizerCode to_code() const {
        StabilizerCode code;
        code.name = name;
        code.n = n;
        code.k = k;
        for (const auto& s : stabilizers) code.generators.push_back(parse_pauli(s, n));
        for (const auto& s : logical_x) code.logical_x.push_back(parse_pauli(s, n));
        for (const auto& s : logical_z) code.logical_z.push_back(parse_pauli(s, n));
        return code;
    }

    std::optional<DetectorSchedule> schedule(const std::string& sched_name) const {
        for (const auto& [nm, rows] : schedules) {
            if (nm != sched_name) continue;
            DetectorSchedule out;
            for (const auto& row : rows) {
                std::vector<std::pair<Pauli, int>> r;
                for (const auto& tok : row) {
                    if (tok.size() < 2) throw std::invalid_argument("bad schedule token " + tok);
                    r.emplace_back(pauli_from_char(tok[0]), std::stoi(tok.substr(1)));
                }
                out.rows.push_back(std::move(r));
            }
            return out;
        }
        return std::nullopt;
    }

    std::string format() const {
        std::ostringstream out;
        out << "name: " << name << "\n";
        out << "n: " << n << "\n";
        out << "k: " << k << "\n\n";
        for (const auto& s : stabilizers) out << "stabilizer: " << s << "\n";
        if (!logical_x.empty() || !logical_z.empty()) out << "\n";
        for (const auto& s : logical_x) out << "logical_x: " << s << "\n";
        for (const auto& s : logical_z) out << "logical_z: " << s << "\n";
        for (const auto& [nm, rows] : schedules) {
            out << "\nschedule: " << nm << "\n";
            for (const auto& row : rows) {
                out << " ";
                for (const auto& tok : row) out << " " << tok;
                out << "\n";
            }
        }
        return out.str();
    }
};

namespace detail {

inline std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

}  // namespace detail

inline CodeDefinitionFile parse_code_definition(std::istream& in) {
    CodeDefinitionFile file;
    std::string raw;
    int lineno = 0;
    bool have_n = false, have_k = false;
    std::vector<std::vector<std::string>>* open_schedule = nullptr;

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (auto pos = line.find('#'); pos != std::string::npos) line = line.substr(0, pos);
        bool indented = !line.empty() && (line[0] == ' ' || line[0] == '\t');
        std::string text = detail::strip(line);
        if (text.empty()) continue;

        if (indented) {
            if (!open_schedule) throw ParseError("indented row outside a schedule", lineno);
            open_schedule->push_back(detail::split_ws(text));
            continue;
        }

        auto colon = text.find(':');
        if (colon == std::string::npos) throw ParseError("expected 'key: value'", lineno);
        std::string key = detail::strip(text.substr(0, colon));
        std::string value = detail::strip(text.substr(colon + 1));
        open_schedule = nullptr;

        try {
            if (key == "name") {
                file.name = value;
            } else if (key == "n") {
                file.n = std::stoi(value);
                have_n = true;
            } else if (key == "k") {
                file.k = std::stoi(value);
                have_k = true;
            } else if (key == "stabilizer" || key == "logical_x" || key == "logical_z") {
                if (!have_n) throw std::invalid_argument("n: must precede Pauli strings");
                parse_pauli(value, file.n);
                if (key == "stabilizer") file.stabilizers.push_back(value);
                else if (key == "logical_x") file.logical_x.push_back(value);
                else file.logical_z.push_back(value);
            } else if (key == "schedule") {
                if (value.empty()) throw std::invalid_argument("schedule needs a name");
                file.schedules.emplace_back(value, std::vector<std::vector<std::string>>{});
                open_schedule = &file.schedules.back().second;
            } else {
                throw std::invalid_argument("unknown key '" + key + "'");
            }
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(e.what(), lineno);
        }
    }
    if (!have_n || !have_k) throw ParseError("missing n: or k: declaration", lineno);
    return file;
}

inline CodeDefinitionFile load_code_definition(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_code_definition(in);
}

/// "Z1 X3 X4" -> operator; bare "I" is the identity.
inline PauliOperator parse_pauli_compact(const std::string& text, int n) {
    PauliOperator out = PauliOperator::identity(n);
    for (const auto& tok : detail::split_ws(text)) {
        if (tok == "I") continue;
        if (tok.size() < 2 || !std::isdigit(static_cast<unsigned char>(tok[1])))
            throw std::invalid_argument("bad Pauli term '" + tok + "'");
        out.set(std::stoi(tok.substr(1)), pauli_from_char(tok[0]));
    }
    return out;
}

// ---- syndrome table JSON export

inline nlohmann::json syndrome_table_json(const StabilizerCode& code, const DetectorSchedule& sched,
                                          const SyndromeTable& table) {
    nlohmann::json lookup = nlohmann::json::object();
    for (const auto& [bits, entry] : table.entries) {
        Syndrome s{bits, table.width};
        lookup[s.to_string()] = {{"correction", format_pauli(entry.correction)},
                                 {"provenance", provenance_name(entry.provenance)}};
    }

    nlohmann::json singles = nlohmann::json::object();
    for (int q = 0; q < code.n; ++q)
        for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
            PauliOperator e = PauliOperator::single(code.n, p, q);
            singles[format_pauli_compact(e)] = syndrome_of(code, e).to_string();
        }

    nlohmann::json propagated = nlohmann::json::array();
    for (const auto& pe : propagated_errors(code, sched)) {
        propagated.push_back({{"stabilizer", pe.stabilizer},
                              {"position", pe.position},
                              {"fault", std::string(1, pauli_char(pe.fault))},
                              {"error", format_pauli_compact(pe.error)},
                              {"reduced", format_pauli_compact(pe.reduced)},
                              {"syndrome", syndrome_of(code, pe.reduced).to_string()}});
    }

    return {{"code", code.name},
            {"n", code.n},
            {"k", code.k},
            {"lookup", lookup},
            {"single_qubit", singles},
            {"propagated", propagated}};
}

// ---- CSV result rows

inline std::string csv_header() {
    return "p,noise,method,shots,batches,logical_mean,logical_min,logical_max,"
           "total_mean,total_min,total_max,fidelity_mean";
}

inline std::string format_double(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

inline std::string csv_row(const ErrorRatePoint& pt, NoiseKind noise, Method method) {
    std::ostringstream os;
    os << format_double(pt.p) << ','
       << (noise == NoiseKind::StandardDepolarizing ? "std-dep" : "anisotropic") << ','
       << method_name(method) << ',' << pt.shots << ',' << pt.batches << ','
       << format_double(pt.logical_mean) << ',' << format_double(pt.logical_min) << ','
       << format_double(pt.logical_max) << ',' << format_double(pt.total_mean) << ','
       << format_double(pt.total_min) << ',' << format_double(pt.total_max) << ','
       << format_double(pt.fidelity_mean);
    return os.str();
}

struct CsvRow {
    double p;
    std::string noise;
    std::string method;
    long long shots;
    int batches;
    double logical_mean, logical_min, logical_max;
    double total_mean, total_min, total_max;
    double fidelity_mean;
};

inline std::vector<CsvRow> parse_results_csv(std::istream& in) {
    std::vector<CsvRow> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (lineno == 1) {
            if (detail::strip(line) != csv_header()) throw ParseError("unexpected CSV header", 1);
            continue;
        }
        std::vector<std::string> f;
        std::string cur;
        for (char c : line) {
            if (c == ',') {
                f.push_back(cur);
                cur.clear();
            } else
                cur += c;
        }
        f.push_back(cur);
        if (f.size() != 12) throw ParseError("expected 12 CSV fields", lineno);
        try {
            rows.push_back(CsvRow{std::stod(f[0]), f[1], f[2], std::stoll(f[3]), std::stoi(f[4]),
                                  std::stod(f[5]), std::stod(f[6]), std::stod(f[7]), std::stod(f[8]),
                                  std::stod(f[9]), std::stod(f[10]), std::stod(f[11])});
        } catch (const std::exception& e) {
            throw ParseError(e.what(), lineno);
        }
    }
    return rows;
}

}  // namespace qeclab
