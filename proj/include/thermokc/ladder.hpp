#pragma once

#include <vector>

namespace thermokc {

// Discrete temperature ladder, rungs k = 0..rungs-1. Rung 0 is the cold
// anchor (beta_max); the default map interpolates linearly down to
// beta_min. An explicit beta list overrides the map for experiments with
// arbitrary schedules.
struct LadderSchedule {
    int rungs = 1;
    double beta_max = 1.0;
    double beta_min = 0.0;
    int sweeps_per_rung = 1;
    std::vector<double> explicit_betas;

    double beta_of(int k) const;

    bool operator==(const LadderSchedule&) const = default;
};

inline double LadderSchedule::beta_of(int k) const {
    if (!explicit_betas.empty()) return explicit_betas[static_cast<std::size_t>(k)];
    if (rungs <= 1) return beta_max;
    const double t = static_cast<double>(k) / (rungs - 1);
    return beta_max * (1.0 - t) + beta_min * t;
}

}  // namespace thermokc
