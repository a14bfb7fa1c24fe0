// experiment.hpp
// Experiment orchestration: configuration echo, deterministic CSV/JSON
// document construction, atomic file output, and the cross-module summary
// table. Every parameter a run consumes is echoed into its output header,
// and identical configurations produce byte-identical payloads (any
// timestamp lives in a sidecar field added at write time, never in the
// payload).

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsim/fit.hpp"

namespace qsim::harness {

inline constexpr int kSchemaVersion = 1;

// 17 significant digits: round-trip exact for 8-byte reals, '.' decimal
// separator, no locale.
std::string format_real(double value);

struct ExperimentConfig {
    std::string subcommand;
    std::vector<std::pair<std::string, std::string>> params; // ordered echo
    std::uint64_t seed = 1;
    std::string format = "csv"; // csv | json
    std::string out_path;       // empty -> stdout

    const std::string* find(const std::string& key) const;
    std::string require(const std::string& key) const;
    std::uint64_t require_u64(const std::string& key) const;
    double require_real(const std::string& key) const;
};

struct ExperimentOutput {
    std::string payload; // the document (CSV text or JSON payload)
    std::string aux;     // extra machine-readable line (e.g. walk summary)
};

// Validates, dispatches to the module operations, and builds the output
// document. Throws validation_error / resource_limit_error /
// shor::probabilistic_failure on the corresponding failures.
ExperimentOutput run_experiment(const ExperimentConfig& config);

// Temp-file-plus-rename write; no partial output is ever visible.
void atomic_write(const std::filesystem::path& path,
                  const std::string& content);

struct SummarySection {
    std::string name;
    std::string source;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::optional<FitResult> fit; // walk sections: t_eff vs N
};

struct SummaryTable {
    std::vector<SummarySection> sections;
    std::vector<std::string> missing;
    bool complete() const { return missing.empty(); }
};

// Joins prerequisite experiment outputs (fourier.csv, search.csv,
// walk_scaling_d1/2/3.csv) from a directory. Missing files are listed,
// not fabricated.
SummaryTable summary_table(const std::filesystem::path& dir);

std::string summary_to_json(const SummaryTable& table);

} // namespace qsim::harness
