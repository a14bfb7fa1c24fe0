// qsim command-line harness: seeded, reproducible experiment runs with
// CSV/JSON output. Exit codes: 0 success, 2 validation error, 3 resource
// limit, 4 probabilistic failure (factoring retries exhausted).

#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsim/errors.hpp"
#include "qsim/experiment.hpp"
#include "qsim/shor.hpp"

namespace {

using qsim::harness::ExperimentConfig;

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buffer[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buffer;
}

void emit_error(const std::string& message, int exit_code,
                const nlohmann::ordered_json& extra = {}) {
    nlohmann::ordered_json doc;
    doc["error"] = message;
    doc["exit_code"] = exit_code;
    if (!extra.empty()) doc["detail"] = extra;
    std::cerr << doc.dump() << "\n";
}

int execute(const ExperimentConfig& config) {
    const auto output = qsim::harness::run_experiment(config);
    if (config.out_path.empty()) {
        std::cout << output.payload;
    } else if (config.format == "json") {
        // File copies carry the timestamp in a sidecar field; the payload
        // itself stays byte-identical across runs.
        auto doc = nlohmann::ordered_json::parse(output.payload);
        doc["sidecar"] = {{"generated_at", timestamp_utc()}};
        qsim::harness::atomic_write(config.out_path, doc.dump(2) + "\n");
    } else {
        qsim::harness::atomic_write(config.out_path, output.payload);
    }
    if (!output.aux.empty()) std::cout << output.aux << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum algorithm simulation and scaling experiments"};
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    std::string out_path;
    std::string format = "csv";
    app.add_option("--seed", seed, "PRNG seed")->capture_default_str();
    app.add_option("--out", out_path, "output file (default: stdout)");
    app.add_option("--format", format, "output format: csv or json")
        ->capture_default_str();

    // qft
    auto* qft = app.add_subcommand("qft", "Fourier transform experiments");
    qft->fallthrough();
    std::string qft_mode = "compare";
    bool qft_compare_flag = false, qft_table_flag = false;
    std::uint64_t qft_n = 8, qft_states = 20, qft_n_min = 1, qft_n_max = 10;
    qft->add_option("--mode", qft_mode, "compare | table")->capture_default_str();
    qft->add_flag("--compare", qft_compare_flag, "shorthand for --mode compare");
    qft->add_flag("--table", qft_table_flag, "shorthand for --mode table");
    qft->add_option("--n", qft_n, "qubit count for --mode compare")
        ->capture_default_str();
    qft->add_option("--states", qft_states, "random states per comparison")
        ->capture_default_str();
    qft->add_option("--n-min", qft_n_min, "table range start")
        ->capture_default_str();
    qft->add_option("--n-max", qft_n_max, "table range end")
        ->capture_default_str();

    // shor
    auto* shor = app.add_subcommand("shor", "factor a modulus");
    shor->fallthrough();
    std::uint64_t shor_modulus = 15, shor_retries = 32;
    shor->add_option("--modulus", shor_modulus, "integer to factor (<= 64)")
        ->required();
    shor->add_option("--retries", shor_retries, "maximum base retries")
        ->capture_default_str();

    // grover
    auto* grover = app.add_subcommand("grover", "unstructured search");
    grover->fallthrough();
    std::uint64_t grover_n = 0, grover_target = 0, grover_trials = 100;
    std::string grover_queries = "auto";
    grover->add_option("--n", grover_n, "database size")->required();
    grover->add_option("--target", grover_target, "marked index")
        ->capture_default_str();
    grover->add_option("--queries", grover_queries, "query count or 'auto'")
        ->capture_default_str();
    grover->add_option("--trials", grover_trials, "measurement trials")
        ->capture_default_str();

    // walk
    auto* walk = app.add_subcommand("walk", "coined quantum walk experiments");
    walk->fallthrough();
    std::string walk_mode = "spread", walk_coin = "hadamard",
                walk_start = "uniform", walk_sides;
    std::uint64_t walk_d = 1, walk_side = 64, walk_steps = 100, walk_marked = 0;
    walk->add_option("--mode", walk_mode, "spread | search | scaling")
        ->capture_default_str();
    walk->add_option("--d", walk_d, "lattice dimension")->capture_default_str();
    walk->add_option("--side", walk_side, "lattice side length")
        ->capture_default_str();
    walk->add_option("--steps", walk_steps, "walk steps")->capture_default_str();
    walk->add_option("--coin", walk_coin, "hadamard (d=1) | grover")
        ->capture_default_str();
    walk->add_option("--marked", walk_marked, "marked site for --mode search")
        ->capture_default_str();
    walk->add_option("--start", walk_start, "uniform | origin")
        ->capture_default_str();
    walk->add_option("--sides", walk_sides,
                     "comma-separated side list for --mode scaling");

    // baseline
    auto* baseline =
        app.add_subcommand("baseline", "classical search / walk baselines");
    baseline->fallthrough();
    std::string baseline_kind = "search";
    std::uint64_t baseline_n = 256, baseline_target = 0, baseline_trials = 1000,
                  baseline_d = 1, baseline_side = 2050, baseline_steps = 1024;
    baseline->add_option("--kind", baseline_kind, "search | walk")
        ->capture_default_str();
    baseline->add_option("--n", baseline_n, "database size (search)")
        ->capture_default_str();
    baseline->add_option("--target", baseline_target, "marked index (search)")
        ->capture_default_str();
    baseline->add_option("--trials", baseline_trials, "trial count")
        ->capture_default_str();
    baseline->add_option("--d", baseline_d, "lattice dimension (walk)")
        ->capture_default_str();
    baseline->add_option("--side", baseline_side, "lattice side (walk)")
        ->capture_default_str();
    baseline->add_option("--steps", baseline_steps, "walk steps (walk)")
        ->capture_default_str();

    // summary
    auto* summary =
        app.add_subcommand("summary", "join experiment outputs into one table");
    summary->fallthrough();
    std::string summary_dir;
    summary->add_option("--dir", summary_dir, "directory of experiment outputs")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e); // --help
        }
        emit_error(e.what(), 2);
        return 2;
    }

    ExperimentConfig config;
    config.seed = seed;
    config.format = format;
    config.out_path = out_path;

    if (app.got_subcommand(qft)) {
        config.subcommand = "qft";
        if (qft_compare_flag) qft_mode = "compare";
        if (qft_table_flag) qft_mode = "table";
        config.params = {{"mode", qft_mode},
                         {"n", std::to_string(qft_n)},
                         {"states", std::to_string(qft_states)},
                         {"n-min", std::to_string(qft_n_min)},
                         {"n-max", std::to_string(qft_n_max)}};
    } else if (app.got_subcommand(shor)) {
        config.subcommand = "shor";
        config.format = "json"; // the run record is a JSON document
        config.params = {{"modulus", std::to_string(shor_modulus)},
                         {"retries", std::to_string(shor_retries)}};
    } else if (app.got_subcommand(grover)) {
        config.subcommand = "grover";
        config.params = {{"n", std::to_string(grover_n)},
                         {"target", std::to_string(grover_target)},
                         {"queries", grover_queries},
                         {"trials", std::to_string(grover_trials)}};
    } else if (app.got_subcommand(walk)) {
        config.subcommand = "walk";
        config.params = {{"mode", walk_mode},
                         {"d", std::to_string(walk_d)},
                         {"side", std::to_string(walk_side)},
                         {"steps", std::to_string(walk_steps)},
                         {"coin", walk_coin},
                         {"marked", std::to_string(walk_marked)},
                         {"start", walk_start},
                         {"sides", walk_sides}};
    } else if (app.got_subcommand(baseline)) {
        config.subcommand = "baseline";
        config.params = {{"kind", baseline_kind},
                         {"n", std::to_string(baseline_n)},
                         {"target", std::to_string(baseline_target)},
                         {"trials", std::to_string(baseline_trials)},
                         {"d", std::to_string(baseline_d)},
                         {"side", std::to_string(baseline_side)},
                         {"steps", std::to_string(baseline_steps)}};
    } else if (app.got_subcommand(summary)) {
        config.subcommand = "summary";
        config.format = "json";
        config.params = {{"dir", summary_dir}};
    }

    try {
        return execute(config);
    } catch (const qsim::shor::probabilistic_failure& e) {
        nlohmann::ordered_json detail;
        detail["M"] = e.record.modulus;
        detail["a_values_tried"] = e.record.a_values_tried;
        detail["y_samples"] = e.record.y_samples;
        detail["retries"] = e.record.retries;
        detail["oracle_calls"] = e.record.oracle_calls;
        emit_error(e.what(), 4, detail);
        return 4;
    } catch (const qsim::resource_limit_error& e) {
        emit_error(e.what(), 3);
        return 3;
    } catch (const qsim::validation_error& e) {
        emit_error(e.what(), 2);
        return 2;
    } catch (const std::invalid_argument& e) {
        emit_error(e.what(), 2);
        return 2;
    } catch (const std::out_of_range& e) {
        emit_error(e.what(), 2);
        return 2;
    } catch (const std::exception& e) {
        emit_error(e.what(), 1);
        return 1;
    }
}
