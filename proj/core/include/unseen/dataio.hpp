#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "unseen/harness.hpp"
#include "unseen/partition.hpp"

namespace unseen {

// Raised on malformed input files; message carries the line number.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// CSV of "species,count" rows, header optional. Duplicate species and
// non-positive counts are rejected.
SampleCounts read_counts_csv(const std::filesystem::path& path);

// Newline-delimited tokens; each line is one individual, blank lines are
// skipped. An empty file is an error (a sample of size zero is not valid).
SampleCounts read_tokens(const std::filesystem::path& path);

// A self-describing result file: configuration echo, results, and enough
// provenance (seed derivation rule, per-replicate seeds) to reproduce it.
struct ReportDocument {
  std::string schema = "v1";
  std::string kind;  // "alpha-risk" | "unseen-risk" | "sweep"
  ExperimentConfig config;
  std::vector<std::string> labels;     // one per result (sweeps)
  std::vector<RiskReport> results;
  std::string rng_algorithm;
  std::vector<std::uint64_t> replicate_seeds;
  std::uint64_t wall_ms = 0;
};

bool operator==(const ReportDocument& a, const ReportDocument& b);

// Deterministic JSON: stable key order, shortest-round-trip floats. NaN
// anywhere in the results is a serialization error.
void write_report(const ReportDocument& doc, const std::filesystem::path& path);
std::string report_to_json(const ReportDocument& doc);
ReportDocument read_report(const std::filesystem::path& path);

void write_split_report(const SplitEvalReport& report, const std::filesystem::path& path);
std::string split_report_to_json(const SplitEvalReport& report);
SplitEvalReport read_split_report(const std::filesystem::path& path);

// Experiment configuration document: {"schema":"v1","experiment":{...}}.
// kind_out receives the experiment kind. Validation failures are collected
// and reported together.
struct ConfigDocument {
  std::string kind;
  ExperimentConfig config;
};

ConfigDocument read_experiment_config(const std::filesystem::path& path);
void write_experiment_config(const ConfigDocument& doc, const std::filesystem::path& path);

}  // namespace unseen
