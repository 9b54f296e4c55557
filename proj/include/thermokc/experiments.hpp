#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "thermokc/bitstring.hpp"
#include "thermokc/config.hpp"

namespace thermokc {

inline constexpr const char* kArtifactVersion = "thermokc 0.1.0";

// Experiment result. Every summary value is computed from the formatted
// rows, not from internal state, so a reader can recompute any statistic
// from rows.csv alone.
struct ExperimentReport {
    ExperimentConfig config;
    std::string version = kArtifactVersion;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::pair<std::string, std::string>> summary;  // name, value or "NA"
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);
ExperimentReport run_entropy_correlation(const ExperimentConfig& cfg);
ExperimentReport run_clausius(const ExperimentConfig& cfg);
ExperimentReport run_estimator_audit(const ExperimentConfig& cfg);
ExperimentReport run_kraft_audit(const ExperimentConfig& cfg);

// Writes rows.csv, summary.csv and config.echo under dir (created if
// missing). Pure function of the report: re-runs are byte-identical.
void write_report(const ExperimentReport& report, const std::string& dir);

struct ThresholdOutcome {
    std::string name;
    double target = 0.0;
    std::string actual;  // matching summary value, or "NA"
    bool met = false;
};

// One outcome per configured threshold.  Unknown threshold names and N/A
// summary values count as failures.
std::vector<ThresholdOutcome> evaluate_thresholds(const ExperimentReport& report);
bool thresholds_met(const ExperimentReport& report);

struct SuiteEntry {
    std::string name;
    BitString bits;
};

// The fixed complexity-audit suite: twenty strings of 0..16 bits spanning
// constant, periodic, near-constant and seeded-random content.
std::vector<SuiteEntry> audit_suite(std::uint64_t seed = 1);

// THERMOKC_THREADS cap (0 = uncapped) and the worker count it implies.
int thread_cap();
int worker_count();

}  // namespace thermokc
