#include "thermokc/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "thermokc/format.hpp"
#include "thermokc/machine.hpp"

namespace thermokc {

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::EntropyCorrelation: return "entropy-correlation";
        case ExperimentKind::Clausius: return "clausius";
        case ExperimentKind::EstimatorAudit: return "estimator-audit";
        case ExperimentKind::KraftAudit: return "kraft-audit";
    }
    throw std::logic_error("unhandled experiment kind");
}

ExperimentKind experiment_kind_from_string(const std::string& s) {
    if (s == "entropy-correlation") return ExperimentKind::EntropyCorrelation;
    if (s == "clausius") return ExperimentKind::Clausius;
    if (s == "estimator-audit") return ExperimentKind::EstimatorAudit;
    if (s == "kraft-audit") return ExperimentKind::KraftAudit;
    throw ConfigError("experiment", "unknown experiment kind '" + s + "'");
}

ConfigError::ConfigError(std::string key, const std::string& message)
    : std::runtime_error("config error: " + key + ": " + message), key_(std::move(key)) {}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end != value.c_str() + value.size() || value.empty() || errno == ERANGE)
        throw ConfigError(key, "expected a number, got '" + value + "'");
    return v;
}

long long parse_int(const std::string& key, const std::string& value) {
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(value.c_str(), &end, 10);
    if (end != value.c_str() + value.size() || value.empty() || errno == ERANGE)
        throw ConfigError(key, "expected an integer, got '" + value + "'");
    return v;
}

std::vector<std::string> split_commas(const std::string& value) {
    std::vector<std::string> parts;
    std::string cur;
    std::stringstream ss(value);
    while (std::getline(ss, cur, ',')) parts.push_back(trim(cur));
    return parts;
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    for (const auto& part : split_commas(value)) out.push_back(parse_double(key, part));
    if (out.empty()) throw ConfigError(key, "empty list");
    return out;
}

// Comma list of non-negative integers; "a..b" expands to the inclusive
// range, so seeds=1..32 names thirty-two seeds.
std::vector<std::uint64_t> parse_seed_list(const std::string& key, const std::string& value) {
    std::vector<std::uint64_t> out;
    for (const auto& part : split_commas(value)) {
        const auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.push_back(static_cast<std::uint64_t>(parse_int(key, part)));
            continue;
        }
        const long long lo = parse_int(key, part.substr(0, dots));
        const long long hi = parse_int(key, part.substr(dots + 2));
        if (lo > hi) throw ConfigError(key, "descending range '" + part + "'");
        for (long long s = lo; s <= hi; ++s) out.push_back(static_cast<std::uint64_t>(s));
    }
    if (out.empty()) throw ConfigError(key, "empty list");
    return out;
}

std::string join12(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += fmt12(v[i]);
    }
    return s;
}

}  // namespace

ExperimentConfig parse_config(std::istream& is) {
    ExperimentConfig cfg;
    cfg.seeds.clear();
    cfg.thresholds.clear();
    std::set<std::string> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno), "expected KEY=VALUE");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!seen.insert(key).second) throw ConfigError(key, "duplicate key");

        if (key == "experiment") cfg.kind = experiment_kind_from_string(value);
        else if (key == "rows") cfg.rows = static_cast<int>(parse_int(key, value));
        else if (key == "cols") cfg.cols = static_cast<int>(parse_int(key, value));
        else if (key == "J") cfg.coupling = parse_double(key, value);
        else if (key == "ti.h") cfg.ti_field = parse_double(key, value);
        else if (key == "tf.h") cfg.tf_field = parse_double(key, value);
        else if (key == "hf.grid") cfg.hf_grid = parse_double_list(key, value);
        else if (key == "ladder.T") cfg.ladder.rungs = static_cast<int>(parse_int(key, value));
        else if (key == "ladder.beta-max") cfg.ladder.beta_max = parse_double(key, value);
        else if (key == "ladder.beta-min") cfg.ladder.beta_min = parse_double(key, value);
        else if (key == "ladder.sweeps")
            cfg.ladder.sweeps_per_rung = static_cast<int>(parse_int(key, value));
        else if (key == "ladder.betas") cfg.ladder.explicit_betas = parse_double_list(key, value);
        else if (key == "seeds") cfg.seeds = parse_seed_list(key, value);
        else if (key == "estimator") {
            try {
                cfg.estimator = estimator_from_string(value);
            } catch (const std::exception& e) {
                throw ConfigError(key, e.what());
            }
        } else if (key == "beta.grid") cfg.beta_grid = parse_double_list(key, value);
        else if (key == "burnin") cfg.burnin = static_cast<int>(parse_int(key, value));
        else if (key == "pairs") cfg.pairs = static_cast<int>(parse_int(key, value));
        else if (key == "pair-gap") cfg.pair_gap = static_cast<int>(parse_int(key, value));
        else if (key == "lmax") cfg.l_max = static_cast<int>(parse_int(key, value));
        else if (key == "out") cfg.out = value;
        else if (key.rfind("threshold.", 0) == 0) {
            const std::string name = key.substr(10);
            if (name.empty()) throw ConfigError(key, "missing threshold name");
            cfg.thresholds[name] = parse_double(key, value);
        } else throw ConfigError(key, "unknown key");
    }
    if (cfg.seeds.empty()) throw ConfigError("seeds", "required and non-empty");
    validate(cfg);
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("config", "cannot open '" + path + "'");
    return parse_config(is);
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.rows < 2) throw ConfigError("rows", "must be >= 2");
    if (cfg.cols < 2) throw ConfigError("cols", "must be >= 2");
    if (cfg.seeds.empty()) throw ConfigError("seeds", "required and non-empty");
    if (cfg.ladder.rungs < 1) throw ConfigError("ladder.T", "must be >= 1");
    if (cfg.ladder.sweeps_per_rung < 1) throw ConfigError("ladder.sweeps", "must be >= 1");
    if (!cfg.ladder.explicit_betas.empty() &&
        cfg.ladder.explicit_betas.size() != static_cast<std::size_t>(cfg.ladder.rungs))
        throw ConfigError("ladder.betas", "needs one entry per rung");
    for (int k = 0; k < cfg.ladder.rungs; ++k)
        if (cfg.ladder.beta_of(k) < 0.0) throw ConfigError("ladder.betas", "beta must be >= 0");
    if (cfg.burnin < 0) throw ConfigError("burnin", "must be >= 0");
    if (cfg.pairs < 1) throw ConfigError("pairs", "must be >= 1");
    if (cfg.pair_gap < 1) throw ConfigError("pair-gap", "must be >= 1");

    const bool uses_lattice =
        cfg.kind == ExperimentKind::EntropyCorrelation || cfg.kind == ExperimentKind::Clausius;
    if (uses_lattice) {
        if (cfg.coupling <= 0.0) throw ConfigError("J", "must be > 0");
        if (cfg.estimator == EstimatorMethod::ExactBounded && cfg.rows * cfg.cols > 16)
            throw ConfigError("estimator", "exact-bounded needs rows*cols <= 16");
    }
    switch (cfg.kind) {
        case ExperimentKind::EntropyCorrelation:
            for (const double b : cfg.beta_grid)
                if (b < 0.0) throw ConfigError("beta.grid", "beta must be >= 0");
            if (cfg.rows * cfg.cols <= 20 && cfg.beta_grid.empty())
                throw ConfigError("beta.grid", "required for exact-oracle lattices");
            break;
        case ExperimentKind::Clausius:
            for (const double h : cfg.hf_grid)
                if (!(h == h)) throw ConfigError("hf.grid", "not a number");
            break;
        case ExperimentKind::EstimatorAudit:
            if (cfg.l_max < 2 || cfg.l_max > kExactKMaxBound)
                throw ConfigError("lmax", "must be in [2, 24]");
            break;
        case ExperimentKind::KraftAudit:
            if (cfg.l_max < 2 || cfg.l_max > kKraftMaxBound)
                throw ConfigError("lmax", "must be in [2, 20]");
            break;
    }
}

std::string serialize(const ExperimentConfig& cfg) {
    std::string s;
    s += "experiment=" + to_string(cfg.kind) + "\n";
    s += "rows=" + std::to_string(cfg.rows) + "\n";
    s += "cols=" + std::to_string(cfg.cols) + "\n";
    s += "J=" + fmt12(cfg.coupling) + "\n";
    s += "ti.h=" + fmt12(cfg.ti_field) + "\n";
    s += "tf.h=" + fmt12(cfg.tf_field) + "\n";
    if (!cfg.hf_grid.empty()) s += "hf.grid=" + join12(cfg.hf_grid) + "\n";
    if (!cfg.beta_grid.empty()) s += "beta.grid=" + join12(cfg.beta_grid) + "\n";
    s += "ladder.T=" + std::to_string(cfg.ladder.rungs) + "\n";
    s += "ladder.beta-max=" + fmt12(cfg.ladder.beta_max) + "\n";
    s += "ladder.beta-min=" + fmt12(cfg.ladder.beta_min) + "\n";
    s += "ladder.sweeps=" + std::to_string(cfg.ladder.sweeps_per_rung) + "\n";
    if (!cfg.ladder.explicit_betas.empty())
        s += "ladder.betas=" + join12(cfg.ladder.explicit_betas) + "\n";
    s += "seeds=";
    for (std::size_t i = 0; i < cfg.seeds.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(cfg.seeds[i]);
    }
    s += "\n";
    s += "estimator=" + to_string(cfg.estimator) + "\n";
    s += "burnin=" + std::to_string(cfg.burnin) + "\n";
    s += "pairs=" + std::to_string(cfg.pairs) + "\n";
    s += "pair-gap=" + std::to_string(cfg.pair_gap) + "\n";
    s += "lmax=" + std::to_string(cfg.l_max) + "\n";
    s += "out=" + cfg.out + "\n";
    for (const auto& [name, value] : cfg.thresholds)
        s += "threshold." + name + "=" + fmt12(value) + "\n";
    return s;
}

}  // namespace thermokc
