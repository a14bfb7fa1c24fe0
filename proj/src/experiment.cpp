#include "qsim/experiment.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qsim/errors.hpp"
#include "qsim/grover.hpp"
#include "qsim/qft.hpp"
#include "qsim/register.hpp"
#include "qsim/rng.hpp"
#include "qsim/shor.hpp"
#include "qsim/walk.hpp"

namespace qsim::harness {

using ordered_json = nlohmann::ordered_json;

std::string format_real(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

const std::string* ExperimentConfig::find(const std::string& key) const {
    for (const auto& [k, v] : params) {
        if (k == key) return &v;
    }
    return nullptr;
}

std::string ExperimentConfig::require(const std::string& key) const {
    const std::string* value = find(key);
    if (value == nullptr) {
        throw validation_error("missing parameter '" + key + "' for subcommand '" +
                               subcommand + "'");
    }
    return *value;
}

std::uint64_t ExperimentConfig::require_u64(const std::string& key) const {
    const std::string text = require(key);
    std::uint64_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw validation_error("parameter '" + key + "' must be a non-negative integer, got '" +
                               text + "'");
    }
    return value;
}

double ExperimentConfig::require_real(const std::string& key) const {
    const std::string text = require(key);
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (errno != 0 || end != text.c_str() + text.size() || text.empty()) {
        throw validation_error("parameter '" + key + "' must be a real number");
    }
    return value;
}

namespace {

std::string csv_document(const ExperimentConfig& config,
                         const std::vector<std::string>& extra_comments,
                         const std::string& header,
                         const std::vector<std::string>& rows) {
    std::ostringstream out;
    out << "# qsim schema_version=" << kSchemaVersion << " rng=" << kRngName
        << "/" << kRngVersion << "\n";
    out << "# subcommand=" << config.subcommand << "\n";
    for (const auto& [key, value] : config.params) {
        out << "# " << key << "=" << value << "\n";
    }
    out << "# seed=" << config.seed << "\n";
    out << "# format=" << config.format << "\n";
    for (const auto& comment : extra_comments) {
        out << "# " << comment << "\n";
    }
    out << header << "\n";
    for (const auto& row : rows) {
        out << row << "\n";
    }
    return out.str();
}

ordered_json config_json(const ExperimentConfig& config) {
    ordered_json doc;
    doc["subcommand"] = config.subcommand;
    for (const auto& [key, value] : config.params) {
        doc[key] = value;
    }
    doc["seed"] = config.seed;
    doc["format"] = config.format;
    return doc;
}

ordered_json payload_skeleton(const ExperimentConfig& config) {
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["rng"] = std::string(kRngName) + "/" + std::to_string(kRngVersion);
    doc["config"] = config_json(config);
    return doc;
}

std::vector<Amplitude> random_state(std::uint64_t size, CounterRng& rng) {
    std::vector<Amplitude> amps(size);
    double norm = 0.0;
    for (auto& a : amps) {
        a = Amplitude{2.0 * rng.next_double() - 1.0,
                      2.0 * rng.next_double() - 1.0};
        norm += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(norm);
    for (auto& a : amps) a *= scale;
    return amps;
}

double triple_compare_deviation(int n, std::uint64_t states,
                                std::uint64_t seed) {
    double max_dev = 0.0;
    for (std::uint64_t s = 0; s < states; ++s) {
        CounterRng rng(seed, s);
        const auto input = random_state(std::uint64_t{1} << n, rng);
        const auto naive = qft::dft_bruteforce(input);
        const auto fast = qft::fft_classical(input);
        QuantumRegister reg = QuantumRegister::from_amplitudes(input);
        qft::qft_factorized(reg);
        for (std::uint64_t i = 0; i < input.size(); ++i) {
            max_dev = std::max(max_dev,
                               std::abs(naive.spectrum[i] - fast.spectrum[i]));
            max_dev = std::max(max_dev,
                               std::abs(naive.spectrum[i] - reg.amplitude(i)));
        }
    }
    return max_dev;
}

ExperimentOutput run_qft(const ExperimentConfig& config) {
    ExperimentOutput output;
    const std::string mode = config.require("mode");
    if (mode == "table") {
        const int n_min = static_cast<int>(config.require_u64("n-min"));
        const int n_max = static_cast<int>(config.require_u64("n-max"));
        const auto rows = qft::complexity_table(n_min, n_max);
        if (config.format == "json") {
            ordered_json doc = payload_skeleton(config);
            doc["records"] = ordered_json::array();
            for (const auto& row : rows) {
                doc["records"].push_back({{"n", row.n},
                                          {"naive_ops", row.naive_ops},
                                          {"fft_ops", row.fft_ops},
                                          {"qft_gates", row.qft_gates}});
            }
            output.payload = doc.dump(2) + "\n";
        } else {
            std::vector<std::string> lines;
            for (const auto& row : rows) {
                std::ostringstream line;
                line << row.n << ',' << row.naive_ops << ',' << row.fft_ops
                     << ',' << row.qft_gates;
                lines.push_back(line.str());
            }
            output.payload = csv_document(config, {},
                                          "n,naive_ops,fft_ops,qft_gates", lines);
        }
        return output;
    }
    if (mode != "compare") {
        throw validation_error("qft mode must be 'compare' or 'table'");
    }
    const int n = static_cast<int>(config.require_u64("n"));
    if (n < 1 || n > 14) {
        throw resource_limit_error("qft compare capped at n = 14");
    }
    const std::uint64_t states = config.require_u64("states");
    const double max_dev = triple_compare_deviation(n, states, config.seed);
    if (config.format == "json") {
        ordered_json doc = payload_skeleton(config);
        doc["records"] = ordered_json::array(
            {{{"n", n}, {"states", states}, {"max_deviation", max_dev}}});
        output.payload = doc.dump(2) + "\n";
    } else {
        std::ostringstream row;
        row << n << ',' << states << ',' << format_real(max_dev);
        output.payload =
            csv_document(config, {}, "n,states,max_deviation", {row.str()});
    }
    return output;
}

ExperimentOutput run_shor(const ExperimentConfig& config) {
    const std::uint64_t modulus = config.require_u64("modulus");
    const auto retries = static_cast<unsigned>(config.require_u64("retries"));
    const shor::ShorRunRecord record =
        shor::shor_factor(modulus, config.seed, retries);

    ordered_json doc = payload_skeleton(config);
    ordered_json rec;
    rec["M"] = record.modulus;
    rec["a_values_tried"] = record.a_values_tried;
    rec["y_samples"] = record.y_samples;
    rec["r"] = record.period;
    rec["factors"] = {record.factors.first, record.factors.second};
    rec["oracle_calls"] = record.oracle_calls;
    rec["retries"] = record.retries;
    rec["classical_shortcut"] = record.classical_shortcut;
    rec["shortcut_kind"] = record.shortcut_kind;
    doc["record"] = rec;

    ExperimentOutput output;
    output.payload = doc.dump(2) + "\n";
    return output;
}

ExperimentOutput run_grover(const ExperimentConfig& config) {
    const std::size_t n = config.require_u64("n");
    const std::size_t target = config.require_u64("target");
    const std::uint64_t trials = config.require_u64("trials");
    if (trials < 1) throw validation_error("trials must be >= 1");

    const auto schedule = grover::optimal_queries(n);
    const std::string queries_text = config.require("queries");
    std::uint64_t queries = 0;
    if (queries_text == "auto") {
        queries = schedule.q_star;
    } else {
        std::uint64_t value = 0;
        const auto [ptr, ec] = std::from_chars(
            queries_text.data(), queries_text.data() + queries_text.size(), value);
        if (ec != std::errc{} ||
            ptr != queries_text.data() + queries_text.size()) {
            throw validation_error("queries must be an integer or 'auto'");
        }
        queries = value;
    }
    const double angle =
        (2.0 * static_cast<double>(queries) + 1.0) * schedule.theta;
    const double predicted = std::sin(angle) * std::sin(angle);

    std::uint64_t successes = 0;
    std::uint64_t oracle_calls = 0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        CounterRng rng(config.seed, trial);
        const auto result = grover::grover_search(n, target, queries, rng);
        successes += result.success ? 1 : 0;
        oracle_calls += result.oracle_calls;
    }
    const double empirical =
        static_cast<double>(successes) / static_cast<double>(trials);

    ExperimentOutput output;
    if (config.format == "json") {
        ordered_json doc = payload_skeleton(config);
        doc["records"] = ordered_json::array({{{"N", n},
                                               {"Q", queries},
                                               {"predicted_success", predicted},
                                               {"empirical_success", empirical},
                                               {"oracle_calls", oracle_calls}}});
        output.payload = doc.dump(2) + "\n";
    } else {
        std::ostringstream row;
        row << n << ',' << queries << ',' << format_real(predicted) << ','
            << format_real(empirical) << ',' << oracle_calls;
        output.payload = csv_document(
            config, {}, "N,Q,predicted_success,empirical_success,oracle_calls",
            {row.str()});
    }
    return output;
}

walk::Coin parse_coin(const std::string& text) {
    if (text == "hadamard") return walk::Coin::hadamard;
    if (text == "grover") return walk::Coin::grover;
    throw validation_error("coin must be 'hadamard' or 'grover'");
}

std::vector<int> parse_side_list(const std::string& text) {
    std::vector<int> sides;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) continue;
        sides.push_back(std::stoi(item));
    }
    if (sides.empty()) throw validation_error("empty side list");
    return sides;
}

ExperimentOutput run_walk(const ExperimentConfig& config) {
    ExperimentOutput output;
    const std::string mode = config.require("mode");
    const int d = static_cast<int>(config.require_u64("d"));
    const std::uint64_t steps = config.require_u64("steps");

    if (mode == "spread") {
        const int side = static_cast<int>(config.require_u64("side"));
        const walk::Coin coin = parse_coin(config.require("coin"));
        const auto records = walk::quantum_walk_spread(d, side, steps, coin);
        if (config.format == "json") {
            ordered_json doc = payload_skeleton(config);
            doc["records"] = ordered_json::array();
            for (const auto& r : records) {
                doc["records"].push_back(
                    {{"t", r.t}, {"sigma", r.sigma}, {"wrap_risk", r.wrap_risk}});
            }
            output.payload = doc.dump(2) + "\n";
        } else {
            std::vector<std::string> lines;
            std::vector<std::string> comments;
            for (const auto& r : records) {
                lines.push_back(std::to_string(r.t) + "," + format_real(r.sigma));
            }
            for (const auto& r : records) {
                if (r.wrap_risk) {
                    comments.push_back("wrap_risk_from=" + std::to_string(r.t));
                    break;
                }
            }
            output.payload = csv_document(config, comments, "t,sigma", lines);
        }
        return output;
    }

    if (mode == "search") {
        const int side = static_cast<int>(config.require_u64("side"));
        const std::uint64_t marked = config.require_u64("marked");
        const std::string start_text = config.require("start");
        walk::SearchStart start;
        if (start_text == "uniform") {
            start = walk::SearchStart::uniform;
        } else if (start_text == "origin") {
            start = walk::SearchStart::origin;
        } else {
            throw validation_error("start must be 'uniform' or 'origin'");
        }
        const auto lattice = walk::Lattice::create(d, side);
        const auto trace = walk::spatial_search(lattice, marked, steps, start);

        ordered_json summary;
        summary["N"] = lattice.num_sites();
        if (trace.t_peak) {
            summary["T_peak"] = *trace.t_peak;
            summary["p_peak"] = trace.p_peak;
            summary["T_eff"] = static_cast<double>(*trace.t_peak) /
                               std::sqrt(trace.p_peak);
        } else {
            summary["T_peak"] = nullptr;
            summary["p_peak"] = nullptr;
            summary["T_eff"] = nullptr;
        }
        output.aux = summary.dump();

        if (config.format == "json") {
            ordered_json doc = payload_skeleton(config);
            doc["records"] = ordered_json::array();
            for (std::size_t t = 0; t < trace.p_marked.size(); ++t) {
                doc["records"].push_back(
                    {{"t", t}, {"p_marked", trace.p_marked[t]}});
            }
            doc["summary"] = summary;
            output.payload = doc.dump(2) + "\n";
        } else {
            std::vector<std::string> lines;
            for (std::size_t t = 0; t < trace.p_marked.size(); ++t) {
                lines.push_back(std::to_string(t) + "," +
                                format_real(trace.p_marked[t]));
            }
            output.payload = csv_document(config, {}, "t,p_marked", lines);
        }
        return output;
    }

    if (mode != "scaling") {
        throw validation_error("walk mode must be 'spread', 'search' or 'scaling'");
    }
    const auto sides = parse_side_list(config.require("sides"));
    const auto points = walk::scaling_experiment(d, sides, steps);

    std::vector<std::pair<double, double>> fit_points;
    for (const auto& p : points) {
        if (p.found) {
            fit_points.emplace_back(static_cast<double>(p.sites), p.t_eff);
        }
    }
    ordered_json fit_doc;
    const auto kept = apply_burn_in(fit_points);
    if (kept.size() >= 3) {
        const FitResult fit = fit_power_law(kept);
        fit_doc = {{"exponent", fit.exponent},
                   {"log_intercept", fit.log_intercept},
                   {"r_squared", fit.r_squared}};
    } else {
        fit_doc = nullptr;
    }
    output.aux = fit_doc.dump();

    if (config.format == "json") {
        ordered_json doc = payload_skeleton(config);
        doc["records"] = ordered_json::array();
        for (const auto& p : points) {
            if (p.found) {
                doc["records"].push_back({{"N", p.sites},
                                          {"t_peak", p.t_peak},
                                          {"p_peak", p.p_peak},
                                          {"t_eff", p.t_eff}});
            } else {
                doc["records"].push_back({{"N", p.sites},
                                          {"t_peak", nullptr},
                                          {"p_peak", nullptr},
                                          {"t_eff", nullptr}});
            }
        }
        doc["fit"] = fit_doc;
        output.payload = doc.dump(2) + "\n";
    } else {
        std::vector<std::string> lines;
        for (const auto& p : points) {
            std::ostringstream line;
            if (p.found) {
                line << p.sites << ',' << p.t_peak << ','
                     << format_real(p.p_peak) << ',' << format_real(p.t_eff);
            } else {
                line << p.sites << ",nan,nan,nan";
            }
            lines.push_back(line.str());
        }
        output.payload =
            csv_document(config, {}, "N,t_peak,p_peak,t_eff", lines);
    }
    return output;
}

ExperimentOutput run_baseline(const ExperimentConfig& config) {
    ExperimentOutput output;
    const std::string kind = config.require("kind");
    if (kind == "walk") {
        const int d = static_cast<int>(config.require_u64("d"));
        const int side = static_cast<int>(config.require_u64("side"));
        const std::uint64_t steps = config.require_u64("steps");
        const std::uint64_t trials = config.require_u64("trials");
        const auto records =
            walk::classical_walk_spread(d, side, steps, trials, config.seed);
        if (config.format == "json") {
            ordered_json doc = payload_skeleton(config);
            doc["records"] = ordered_json::array();
            for (const auto& r : records) {
                doc["records"].push_back(
                    {{"t", r.t}, {"sigma", r.sigma}, {"wrap_risk", r.wrap_risk}});
            }
            output.payload = doc.dump(2) + "\n";
        } else {
            std::vector<std::string> lines;
            for (const auto& r : records) {
                lines.push_back(std::to_string(r.t) + "," + format_real(r.sigma));
            }
            output.payload = csv_document(config, {}, "t,sigma", lines);
        }
        return output;
    }
    if (kind != "search") {
        throw validation_error("baseline kind must be 'search' or 'walk'");
    }

    const std::size_t n = config.require_u64("n");
    const std::size_t target = config.require_u64("target");
    const std::uint64_t trials = config.require_u64("trials");
    if (trials < 1) throw validation_error("trials must be >= 1");

    double total_queries = 0.0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        CounterRng rng(config.seed, trial);
        total_queries += static_cast<double>(
            grover::classical_random_search(n, target, rng));
    }
    const double random_mean = total_queries / static_cast<double>(trials);
    const auto sorted = grover::classical_sorted_search(n, target);
    const auto schedule = grover::optimal_queries(n);

    std::size_t check = n;
    while (check > 1 && check % 4 == 0) check /= 4;
    const bool has_hybrid = check == 1;
    std::uint64_t hybrid_queries = 0;
    if (has_hybrid) {
        hybrid_queries = grover::hybrid_factorized_search(n, target).total_queries;
    }

    if (config.format == "json") {
        ordered_json doc = payload_skeleton(config);
        ordered_json rec;
        rec["N"] = n;
        rec["random_mean_queries"] = random_mean;
        rec["sorted_queries"] = sorted.queries;
        rec["grover_queries"] = schedule.q_star;
        if (has_hybrid) {
            rec["hybrid_queries"] = hybrid_queries;
        } else {
            rec["hybrid_queries"] = nullptr;
        }
        doc["records"] = ordered_json::array({rec});
        output.payload = doc.dump(2) + "\n";
    } else {
        std::ostringstream row;
        row << n << ',' << format_real(random_mean) << ',' << sorted.queries
            << ',' << schedule.q_star << ',';
        if (has_hybrid) {
            row << hybrid_queries;
        } else {
            row << "nan";
        }
        output.payload = csv_document(
            config, {},
            "N,random_mean_queries,sorted_queries,grover_queries,hybrid_queries",
            {row.str()});
    }
    return output;
}

ExperimentOutput run_summary(const ExperimentConfig& config) {
    const SummaryTable table = summary_table(config.require("dir"));
    if (!table.complete()) {
        std::string message = "missing experiment outputs:";
        for (const auto& name : table.missing) message += " " + name;
        throw validation_error(message);
    }
    ExperimentOutput output;
    output.payload = summary_to_json(table);
    return output;
}

} // namespace

ExperimentOutput run_experiment(const ExperimentConfig& config) {
    if (config.format != "csv" && config.format != "json") {
        throw validation_error("format must be 'csv' or 'json'");
    }
    if (config.subcommand == "qft") return run_qft(config);
    if (config.subcommand == "shor") return run_shor(config);
    if (config.subcommand == "grover") return run_grover(config);
    if (config.subcommand == "walk") return run_walk(config);
    if (config.subcommand == "baseline") return run_baseline(config);
    if (config.subcommand == "summary") return run_summary(config);
    throw validation_error("unknown subcommand '" + config.subcommand + "'");
}

void atomic_write(const std::filesystem::path& path,
                  const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw validation_error("cannot open output file " + tmp.string());
        }
        out << content;
        out.flush();
        if (!out) {
            throw validation_error("failed writing " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

namespace {

// Parses a CSV file with '#' comment lines, a header row, and numeric
// cells ("nan" allowed).
bool parse_csv_file(const std::filesystem::path& path,
                    std::vector<std::string>& columns,
                    std::vector<std::vector<double>>& rows) {
    std::ifstream in(path);
    if (!in) return false;
    columns.clear();
    rows.clear();
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream stream(line);
        std::string cell;
        while (std::getline(stream, cell, ',')) cells.push_back(cell);
        if (!have_header) {
            columns = cells;
            have_header = true;
            continue;
        }
        std::vector<double> numbers;
        numbers.reserve(cells.size());
        for (const auto& text : cells) {
            numbers.push_back(text.empty() ? std::nan("")
                                           : std::strtod(text.c_str(), nullptr));
        }
        rows.push_back(std::move(numbers));
    }
    return have_header;
}

} // namespace

SummaryTable summary_table(const std::filesystem::path& dir) {
    SummaryTable table;
    const std::vector<std::pair<std::string, std::string>> wanted = {
        {"fourier", "fourier.csv"},
        {"search", "search.csv"},
        {"walk_d1", "walk_scaling_d1.csv"},
        {"walk_d2", "walk_scaling_d2.csv"},
        {"walk_d3", "walk_scaling_d3.csv"},
    };
    for (const auto& [name, file] : wanted) {
        SummarySection section;
        section.name = name;
        section.source = file;
        if (!parse_csv_file(dir / file, section.columns, section.rows)) {
            table.missing.push_back(file);
            continue;
        }
        if (name.starts_with("walk_")) {
            // fit t_eff against N when the rows allow it
            std::size_t n_col = 0, teff_col = 0;
            bool have = false;
            for (std::size_t c = 0; c < section.columns.size(); ++c) {
                if (section.columns[c] == "N") n_col = c;
                if (section.columns[c] == "t_eff") {
                    teff_col = c;
                    have = true;
                }
            }
            if (have) {
                std::vector<std::pair<double, double>> points;
                for (const auto& row : section.rows) {
                    if (row.size() > std::max(n_col, teff_col) &&
                        std::isfinite(row[teff_col])) {
                        points.emplace_back(row[n_col], row[teff_col]);
                    }
                }
                const auto kept = apply_burn_in(points);
                if (kept.size() >= 3) section.fit = fit_power_law(kept);
            }
        }
        table.sections.push_back(std::move(section));
    }
    return table;
}

std::string summary_to_json(const SummaryTable& table) {
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["sections"] = ordered_json::array();
    for (const auto& section : table.sections) {
        ordered_json s;
        s["name"] = section.name;
        s["source"] = section.source;
        s["columns"] = section.columns;
        s["rows"] = ordered_json::array();
        for (const auto& row : section.rows) {
            ordered_json cells = ordered_json::array();
            for (const double v : row) {
                if (std::isfinite(v)) {
                    cells.push_back(v);
                } else {
                    cells.push_back(nullptr);
                }
            }
            s["rows"].push_back(cells);
        }
        if (section.fit) {
            s["fit"] = {{"exponent", section.fit->exponent},
                        {"log_intercept", section.fit->log_intercept},
                        {"r_squared", section.fit->r_squared}};
        }
        doc["sections"].push_back(s);
    }
    if (!table.missing.empty()) doc["missing"] = table.missing;
    return doc.dump(2) + "\n";
}

} // namespace qsim::harness
