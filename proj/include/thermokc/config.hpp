#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "thermokc/compressor.hpp"
#include "thermokc/ladder.hpp"

namespace thermokc {

enum class ExperimentKind { EntropyCorrelation, Clausius, EstimatorAudit, KraftAudit };

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& s);

// Raised on unknown keys, malformed values and guard violations; key()
// names the offending config field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message);
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

// Line-based KEY=VALUE text, # comments, dotted nesting (ti.h=0.0).
// Doubles are canonical at 12 significant digits, so serialize followed
// by parse is the identity on configs written that way.
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::EntropyCorrelation;
    int rows = 4;
    int cols = 4;
    double coupling = 1.0;  // J, shared by both protocols
    double ti_field = 0.0;  // ti.h
    double tf_field = 0.0;  // tf.h
    std::vector<double> hf_grid;  // clausius field sweep; overrides tf.h when set
    LadderSchedule ladder;
    std::vector<std::uint64_t> seeds{1};
    EstimatorMethod estimator = EstimatorMethod::Lz78Primed;
    std::vector<double> beta_grid;  // entropy-correlation temperature grid
    int burnin = 200;               // equilibration sweeps before pair sampling
    int pairs = 16;                 // microstate pairs per (beta, seed)
    int pair_gap = 1;               // sweeps between the two states of a pair
    int l_max = 24;                 // enumeration bound for the audit kinds
    std::string out = "report";
    std::map<std::string, double> thresholds;  // threshold.<name>=<value>

    bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config(std::istream& is);
ExperimentConfig parse_config_file(const std::string& path);

// Guard checks; throws ConfigError naming the field.
void validate(const ExperimentConfig& cfg);

// Canonical text form; omits empty list fields.
std::string serialize(const ExperimentConfig& cfg);

}  // namespace thermokc
