#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "thermokc/bitstring.hpp"
#include "thermokc/compressor.hpp"
#include "thermokc/ladder.hpp"
#include "thermokc/machine.hpp"
#include "thermokc/rational.hpp"

namespace thermokc {

// Ordered microstates x_0..x_T produced along a temperature ladder. All
// states have the same bit length and there are exactly ladder.rungs + 1
// of them.
struct Trajectory {
    std::vector<BitString> states;
    LadderSchedule ladder;
    std::string tag;  // protocol time label, e.g. "t_i"
    std::uint64_t seed = 0;
    int rows = 0;  // state geometry, carried for the file header
    int cols = 0;

    int steps() const { return static_cast<int>(states.size()) - 1; }
    std::size_t state_bits() const { return states.empty() ? 0 : states.front().size(); }
};

// Validates and assembles a trajectory; throws std::invalid_argument on
// fewer than two states, mixed lengths, or a state count that does not
// match the ladder.
Trajectory stitch(std::vector<BitString> states, const LadderSchedule& ladder,
                  const std::string& tag, std::uint64_t seed, int rows = 0, int cols = 0);

struct ExactBoundedParams {
    int l_max = kExactKMaxBound;
    MachineConfig cfg;
};

// Mean of per-step conditional complexities along the trajectory:
// per_step[k] estimates K(x_{k+1} | x_k). The mean is exact rational.
struct TrajectoryComplexity {
    std::vector<ComplexityEstimate> per_step;
    Rational mean_bits{0};
    EstimatorMethod method = EstimatorMethod::Lz78Primed;
    std::string tag;
};

// One conditional estimate K_est(next | prev) under the chosen method.
// For exact-bounded, an UNKNOWN enumeration result is charged the
// saturation value l_max + 1 (a lower bound on the true complexity).
ComplexityEstimate estimate_step(const BitString& next, const BitString& prev,
                                 EstimatorMethod method, const ExactBoundedParams& params = {});

// The exact-bounded estimator is only admitted for states of <= 16 bits.
TrajectoryComplexity traj_complexity(const Trajectory& traj, EstimatorMethod method,
                                     const ExactBoundedParams& exact_params = {});

// Signed per-step differences (final minus initial) and their exact mean.
struct ComplexityDelta {
    std::vector<long long> per_step_delta;
    Rational delta_mean{0};
    std::string final_tag;
    std::string initial_tag;
};

ComplexityDelta delta_complexity(const TrajectoryComplexity& final_tc,
                                 const TrajectoryComplexity& initial_tc);

// Trajectory file format: header "T ROWS COLS TAG SEED", then T+1 lines of
// packed microstate bits.
void write_trajectory(std::ostream& os, const Trajectory& traj);
Trajectory read_trajectory(std::istream& is);

// CSV export, columns k,bits,method.
void write_traj_complexity_csv(std::ostream& os, const TrajectoryComplexity& tc);

}  // namespace thermokc
