// Command-line front end: argument parsing, CSV/JSON serialization of sweep
// rows, and the subcommand driver. Everything is validated before any
// computation starts, and results are buffered so failures produce no
// partial output.
//
// Exit codes: 0 success (including --help), 2 argument/validation or I/O
// error, 3 reference-table reproduction failure, 1 unexpected internal error.

#pragma once

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinwitness/measurement.hpp"
#include "spinwitness/smear.hpp"
#include "spinwitness/spin.hpp"
#include "spinwitness/sweep.hpp"
#include "spinwitness/table_data.hpp"
#include "spinwitness/witnesses.hpp"

namespace spinwitness::cli {

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline bool parse_full_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) return false;
    out = v;
    return true;
}

inline bool parse_full_long(const std::string& s, long& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    errno = 0;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (end != s.c_str() + s.size() || errno == ERANGE) return false;
    out = v;
    return true;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string::size_type start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos == std::string::npos ? pos : pos - start)));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return parts;
}

}  // namespace detail

// Accepted spin forms: "3/2" (fraction), "1.5" or "3" (j as a decimal),
// "2j=3" (doubled value directly). Capped at max_stable_spin() because the
// CLI should not start runs outside the certified range.
inline Spin parse_spin(const std::string& text) {
    const std::string s = detail::trim(text);
    auto bad = [&]() {
        return std::invalid_argument("spin '" + text +
                                     "': expected forms like '3/2', '1.5', or '2j=3'");
    };
    long twice_j = 0;
    if (s.rfind("2j=", 0) == 0) {
        if (!detail::parse_full_long(s.substr(3), twice_j)) throw bad();
    } else if (s.find('/') != std::string::npos) {
        const auto pos = s.find('/');
        long num = 0, den = 0;
        if (!detail::parse_full_long(detail::trim(s.substr(0, pos)), num) ||
            !detail::parse_full_long(detail::trim(s.substr(pos + 1)), den) || den <= 0 ||
            (2 * num) % den != 0)
            throw bad();
        twice_j = 2 * num / den;
    } else {
        double j = 0.0;
        if (!detail::parse_full_double(s, j)) throw bad();
        const double twice = 2.0 * j;
        const double rounded = std::round(twice);
        if (std::abs(twice - rounded) > 1e-9 || rounded < 0.5 || rounded > 1e9) throw bad();
        twice_j = static_cast<long>(rounded);
    }
    const int cap = max_stable_spin().twice_j();
    if (twice_j < 1 || twice_j > cap)
        throw std::invalid_argument("spin '" + text + "': 2j must lie in [1, " +
                                    std::to_string(cap) + "]");
    return Spin(static_cast<int>(twice_j));
}

// Angles are decimal radians or pi-fractions ("pi", "pi/2", "3pi/4",
// "0.5pi"); symbolic forms avoid rounding the exact schedule values.
inline double parse_angle(const std::string& text) {
    std::string s = detail::trim(text);
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    auto bad = [&]() {
        return std::invalid_argument(
            "angle '" + text +
            "': expected decimal radians or a pi-fraction like 'pi', 'pi/2', '3pi/4'");
    };
    const auto pos = s.find("pi");
    if (pos == std::string::npos) {
        double v = 0.0;
        if (!detail::parse_full_double(s, v)) throw bad();
        return v;
    }
    double coef = 1.0;
    const std::string head = detail::trim(s.substr(0, pos));
    if (!head.empty() && !detail::parse_full_double(head, coef)) throw bad();
    double den = 1.0;
    const std::string tail = detail::trim(s.substr(pos + 2));
    if (!tail.empty()) {
        if (tail.front() != '/' ||
            !detail::parse_full_double(detail::trim(tail.substr(1)), den) || den == 0.0)
            throw bad();
    }
    const double v = coef * M_PI / den;
    if (!std::isfinite(v)) throw bad();
    return v;
}

inline AngleSchedule parse_schedule(const std::string& text) {
    const auto parts = detail::split(text, ',');
    if (parts.size() != 3)
        throw std::invalid_argument("schedule '" + text +
                                    "': expected three comma-separated angles");
    return AngleSchedule(parse_angle(parts[0]), parse_angle(parts[1]), parse_angle(parts[2]));
}

inline Coarsening parse_delta(const std::string& text) {
    double v = 0.0;
    if (!detail::parse_full_double(detail::trim(text), v))
        throw std::invalid_argument("delta '" + text + "': expected a nonnegative real");
    return Coarsening(v);
}

inline std::vector<Spin> parse_spin_list(const std::string& text) {
    std::vector<Spin> spins;
    for (const std::string& part : detail::split(text, ',')) spins.push_back(parse_spin(part));
    return spins;
}

inline std::vector<Coarsening> parse_delta_list(const std::string& text) {
    std::vector<Coarsening> deltas;
    for (const std::string& part : detail::split(text, ','))
        deltas.push_back(parse_delta(part));
    return deltas;
}

enum class Format { Csv, Json };

inline Format parse_format(const std::string& text) {
    if (text == "csv") return Format::Csv;
    if (text == "json") return Format::Json;
    throw std::invalid_argument("format '" + text + "': expected 'csv' or 'json'");
}

inline constexpr const char* kCsvHeader =
    "twice_j,delta,a01,a12,a23,k_lgi,k_wlgi,k_nsit_signed,k_nsit_magnitude";

// 12 significant digits with trailing zeros kept, e.g. 0.25 -> "0.250000000000",
// so equal values always serialize to identical bytes.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%#.12g", v);
    return std::string(buf);
}

inline nlohmann::json json_of(const SweepRow& r) {
    return nlohmann::json{{"twice_j", r.twice_j},
                          {"delta", r.delta},
                          {"a01", r.schedule.a01},
                          {"a12", r.schedule.a12},
                          {"a23", r.schedule.a23},
                          {"k_lgi", r.k_lgi},
                          {"k_wlgi", r.k_wlgi},
                          {"k_nsit_signed", r.k_nsit_signed},
                          {"k_nsit_magnitude", r.k_nsit_magnitude}};
}

inline std::string csv_line(const SweepRow& r) {
    std::ostringstream line;
    line << r.twice_j << ',' << format_double(r.delta) << ','
         << format_double(r.schedule.a01) << ',' << format_double(r.schedule.a12) << ','
         << format_double(r.schedule.a23) << ',' << format_double(r.k_lgi) << ','
         << format_double(r.k_wlgi) << ',' << format_double(r.k_nsit_signed) << ','
         << format_double(r.k_nsit_magnitude);
    return line.str();
}

inline void serialize(const std::vector<SweepRow>& rows, Format format, std::ostream& out) {
    if (rows.empty()) throw std::invalid_argument("serialize: rows must be nonempty");
    if (format == Format::Csv) {
        out << kCsvHeader << '\n';
        for (const SweepRow& r : rows) out << csv_line(r) << '\n';
    } else {
        nlohmann::json arr = nlohmann::json::array();
        for (const SweepRow& r : rows) arr.push_back(json_of(r));
        out << arr.dump(2) << '\n';
    }
}

inline SweepRow row_from_json(const nlohmann::json& j) {
    return SweepRow{j.at("twice_j").get<int>(),
                    j.at("delta").get<double>(),
                    AngleSchedule(j.at("a01").get<double>(), j.at("a12").get<double>(),
                                  j.at("a23").get<double>()),
                    j.at("k_lgi").get<double>(),
                    j.at("k_wlgi").get<double>(),
                    j.at("k_nsit_signed").get<double>(),
                    j.at("k_nsit_magnitude").get<double>()};
}

// Inverse of serialize, used to verify the round-trip property.
inline std::vector<SweepRow> parse_rows(const std::string& text, Format format) {
    std::vector<SweepRow> rows;
    if (format == Format::Json) {
        for (const nlohmann::json& j : nlohmann::json::parse(text))
            rows.push_back(row_from_json(j));
        return rows;
    }
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || detail::trim(line) != kCsvHeader)
        throw std::invalid_argument("csv: missing or wrong header line");
    while (std::getline(in, line)) {
        if (detail::trim(line).empty()) continue;
        const auto fields = detail::split(line, ',');
        if (fields.size() != 9)
            throw std::invalid_argument("csv: expected 9 fields, got line '" + line + "'");
        long twice_j = 0;
        if (!detail::parse_full_long(fields[0], twice_j))
            throw std::invalid_argument("csv: bad twice_j in line '" + line + "'");
        double v[8];
        for (int i = 0; i < 8; ++i)
            if (!detail::parse_full_double(fields[i + 1], v[i]))
                throw std::invalid_argument("csv: bad numeric field in line '" + line + "'");
        rows.push_back(SweepRow{static_cast<int>(twice_j), v[0],
                                AngleSchedule(v[1], v[2], v[3]), v[4], v[5], v[6], v[7]});
    }
    return rows;
}

namespace detail {

// Relative --output paths are joined onto SPINWITNESS_OUT_DIR when set.
inline std::filesystem::path resolve_output_path(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("SPINWITNESS_OUT_DIR"); dir != nullptr && *dir)
            p = std::filesystem::path(dir) / p;
    }
    return p;
}

inline int deliver(const std::string& payload, const std::string& output, std::ostream& out,
                   std::ostream& err) {
    if (output.empty()) {
        out << payload;
        return 0;
    }
    const std::filesystem::path p = resolve_output_path(output);
    std::ofstream f(p, std::ios::binary);
    if (f) {
        f << payload;
        f.flush();
    }
    if (!f) {
        err << "error: --output: cannot write '" << p.string() << "'\n";
        return 2;
    }
    return 0;
}

inline const char* witness_label(TableWitness w) {
    return w == TableWitness::KWlgi ? "k_wlgi" : "k_nsit_magnitude";
}

inline void write_table_report(const TableReport& r, std::ostream& out) {
    out << "table " << r.id << "  tolerance " << format_double(r.tolerance) << '\n';
    for (const CellCheck& c : r.cells)
        out << "  twice_j=" << c.cell.twice_j << " delta=" << format_double(c.cell.delta)
            << ' ' << witness_label(c.cell.witness)
            << " expected=" << format_double(c.cell.expected)
            << " actual=" << format_double(c.actual)
            << " deviation=" << format_double(c.deviation) << (c.ok ? "" : "  FAIL") << '\n';
    const CellCheck& w = r.cells.at(r.worst_index);
    out << "  worst cell: twice_j=" << w.cell.twice_j << " delta=" << format_double(w.cell.delta)
        << ' ' << witness_label(w.cell.witness) << " deviation=" << format_double(w.deviation)
        << '\n';
    out << "table " << r.id << ": " << (r.passed ? "PASS" : "FAIL") << '\n';
}

inline Objective parse_objective(const std::string& text) {
    if (text == "k_wlgi") return Objective::KWlgi;
    if (text == "k_nsit_magnitude") return Objective::KNsitMagnitude;
    if (text == "k_lgi") return Objective::KLgi;
    throw std::invalid_argument("objective '" + text +
                                "': expected k_wlgi, k_nsit_magnitude, or k_lgi");
}

}  // namespace detail

// Driver for the subcommands. `args` excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"sequential coarse-grained measurements on a precessing spin-j system:\n"
                 "LGI / WLGI / NSIT witnesses versus spin magnitude and time coarsening"};
    app.require_subcommand(1);

    struct {
        std::string spin;
        std::string spins;
        std::string delta = "0";
        std::string deltas;
        std::string schedule = "pi,pi/2,pi/2";
        std::string format = "csv";
        std::string output;
        std::string id;
        std::string objective = "k_wlgi";
        double tolerance = 1e-3;
        long budget = 200;
        unsigned seed = 0;
        unsigned threads = 0;
    } opt;

    const char* spin_help = "spin magnitude: '3/2', '1.5', or '2j=3'";
    const char* schedule_help = "three mean angles, pi-fractions or radians (default pi,pi/2,pi/2)";
    const char* format_help = "output format";
    const char* output_help = "write to this file instead of stdout "
                              "(relative paths join SPINWITNESS_OUT_DIR when set)";

    CLI::App* eval = app.add_subcommand("eval", "evaluate all witnesses at one point");
    eval->add_option("--spin", opt.spin, spin_help)->required();
    eval->add_option("--delta", opt.delta, "Gaussian time-coarsening width (radians)");
    eval->add_option("--schedule", opt.schedule, schedule_help);
    eval->add_option("--format", opt.format, format_help)->check(CLI::IsMember({"csv", "json"}));
    eval->add_option("--output", opt.output, output_help);

    CLI::App* sweep = app.add_subcommand("sweep", "evaluate a (spin, delta) grid");
    sweep->add_option("--spins", opt.spins, "comma-separated spin list")->required();
    sweep->add_option("--deltas", opt.deltas, "comma-separated delta list")->required();
    sweep->add_option("--schedule", opt.schedule, schedule_help);
    sweep->add_option("--format", opt.format, format_help)->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--output", opt.output, output_help);
    sweep->add_option("--threads", opt.threads, "worker threads (0 = hardware concurrency)");

    CLI::App* table = app.add_subcommand("table", "reproduce a built-in reference grid");
    table->add_option("--id", opt.id, "which grid: I, II, III, IV, or all")
        ->required()
        ->check(CLI::IsMember({"I", "II", "III", "IV", "all"}));
    table->add_option("--tolerance", opt.tolerance, "per-cell tolerance (default 1e-3)");
    table->add_option("--output", opt.output, output_help);

    CLI::App* optimize =
        app.add_subcommand("optimize", "search mean-angle schedules for a maximal witness");
    optimize->add_option("--spin", opt.spin, spin_help)->required();
    optimize->add_option("--delta", opt.delta, "Gaussian time-coarsening width (radians)");
    optimize->add_option("--objective", opt.objective, "witness to maximize")
        ->check(CLI::IsMember({"k_wlgi", "k_nsit_magnitude", "k_lgi"}));
    optimize->add_option("--budget", opt.budget, "evaluation budget (>= 27)");
    optimize->add_option("--seed", opt.seed, "seed recorded for reproducibility");
    optimize->add_option("--output", opt.output, output_help);

    CLI::App* presets = app.add_subcommand("presets", "list the named angle schedules");
    presets->add_option("--output", opt.output, output_help);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp&) {
        const auto subs = app.get_subcommands();
        out << (subs.empty() ? app.help() : subs.front()->help());
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        std::ostringstream payload;

        if (eval->parsed()) {
            const Spin spin = parse_spin(opt.spin);
            const Coarsening delta = parse_delta(opt.delta);
            const AngleSchedule schedule = parse_schedule(opt.schedule);
            const Format format = parse_format(opt.format);

            const WitnessReport rep = evaluate(spin, schedule, delta);
            const SweepRow row{spin.twice_j(),  delta.delta,       schedule,
                               rep.k_lgi,       rep.k_wlgi,        rep.k_nsit_signed,
                               rep.k_nsit_magnitude};
            if (format == Format::Csv) {
                serialize({row}, format, payload);
            } else {
                nlohmann::json j = json_of(row);
                j["lgi_violated"] = rep.lgi_violated;
                j["wlgi_violated"] = rep.wlgi_violated;
                j["nsit_unsatisfied"] = rep.nsit_unsatisfied;
                payload << j.dump(2) << '\n';
            }
            return detail::deliver(payload.str(), opt.output, out, err);
        }

        if (sweep->parsed()) {
            const std::vector<Spin> spins = parse_spin_list(opt.spins);
            const std::vector<Coarsening> deltas = parse_delta_list(opt.deltas);
            const AngleSchedule schedule = parse_schedule(opt.schedule);
            const Format format = parse_format(opt.format);

            serialize(sweep_grid(spins, deltas, schedule, opt.threads), format, payload);
            return detail::deliver(payload.str(), opt.output, out, err);
        }

        if (table->parsed()) {
            if (!(opt.tolerance > 0.0) || !std::isfinite(opt.tolerance)) {
                err << "error: --tolerance: must be a positive real\n";
                return 2;
            }
            std::vector<TableSpec> specs;
            if (opt.id == "all")
                specs = all_tables();
            else
                specs.push_back(table_spec(opt.id));

            bool all_passed = true;
            for (const TableSpec& spec : specs) {
                const TableReport report = reproduce_table(spec, opt.tolerance);
                detail::write_table_report(report, payload);
                all_passed = all_passed && report.passed;
            }
            const int rc = detail::deliver(payload.str(), opt.output, out, err);
            return rc != 0 ? rc : (all_passed ? 0 : 3);
        }

        if (optimize->parsed()) {
            const Spin spin = parse_spin(opt.spin);
            const Coarsening delta = parse_delta(opt.delta);
            const Objective objective = detail::parse_objective(opt.objective);
            if (opt.budget < 27) {
                err << "error: --budget: must be >= 27\n";
                return 2;
            }

            const OptimizeResult res = optimize_schedule(spin, delta, objective, opt.budget,
                                                         opt.seed);
            payload << "objective " << objective_name(objective) << "  twice_j "
                    << spin.twice_j() << "  delta " << format_double(delta.delta)
                    << "  budget " << opt.budget << "  seed " << opt.seed << '\n';
            payload << "best schedule: " << format_double(res.best.a01) << ','
                    << format_double(res.best.a12) << ',' << format_double(res.best.a23)
                    << '\n';
            payload << "best value: " << format_double(res.value) << '\n';
            payload << "evaluations: " << res.evaluations
                    << "  converged: " << (res.converged ? "yes" : "no") << '\n';
            payload << "trace (improvements):\n";
            for (const OptimizeTracePoint& t : res.trace)
                payload << "  eval " << t.evaluation << ": value " << format_double(t.value)
                        << " at " << format_double(t.schedule.a01) << ','
                        << format_double(t.schedule.a12) << ','
                        << format_double(t.schedule.a23) << '\n';
            return detail::deliver(payload.str(), opt.output, out, err);
        }

        if (presets->parsed()) {
            for (const NamedSchedule& p : preset_schedules())
                payload << p.name << ": " << format_double(p.schedule.a01) << ','
                        << format_double(p.schedule.a12) << ','
                        << format_double(p.schedule.a23) << '\n';
            return detail::deliver(payload.str(), opt.output, out, err);
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;  // unreachable: require_subcommand(1) guarantees one branch ran
}

inline int run(int argc, char** argv) {
    std::vector<std::string> args;
    args.reserve(argc > 0 ? static_cast<std::size_t>(argc - 1) : 0);
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(std::move(args), std::cout, std::cerr);
}

}  // namespace spinwitness::cli
