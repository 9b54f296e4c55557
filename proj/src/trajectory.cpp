#include "thermokc/trajectory.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace thermokc {

ComplexityEstimate estimate_step(const BitString& next, const BitString& prev,
                                 EstimatorMethod method, const ExactBoundedParams& params) {
    switch (method) {
        case EstimatorMethod::Lz78Primed: return cond_complexity_primed(next, prev);
        case EstimatorMethod::Lz78Diff: return cond_complexity_diff(next, prev);
        case EstimatorMethod::ExactBounded: {
            const ExactComplexity k = exact_k(next, prev, params.l_max, params.cfg);
            const std::uint64_t bits =
                k.found() ? static_cast<std::uint64_t>(*k.value)
                          : static_cast<std::uint64_t>(params.l_max) + 1;  // saturation
            return ComplexityEstimate{bits, EstimatorMethod::ExactBounded, next.size()};
        }
    }
    throw std::logic_error("estimate_step: unreachable");
}

Trajectory stitch(std::vector<BitString> states, const LadderSchedule& ladder,
                  const std::string& tag, std::uint64_t seed, int rows, int cols) {
    if (states.size() < 2)
        throw std::invalid_argument("stitch: a trajectory needs at least two states");
    const std::size_t len = states.front().size();
    for (const BitString& s : states)
        if (s.size() != len) throw std::invalid_argument("stitch: states have mixed bit lengths");
    if (static_cast<int>(states.size()) != ladder.rungs + 1)
        throw std::invalid_argument("stitch: state count does not match the ladder rung count");
    Trajectory traj;
    traj.states = std::move(states);
    traj.ladder = ladder;
    traj.tag = tag;
    traj.seed = seed;
    traj.rows = rows;
    traj.cols = cols;
    return traj;
}

TrajectoryComplexity traj_complexity(const Trajectory& traj, EstimatorMethod method,
                                     const ExactBoundedParams& exact_params) {
    if (traj.steps() < 1) throw std::invalid_argument("traj_complexity: empty trajectory");
    if (method == EstimatorMethod::ExactBounded && traj.state_bits() > 16)
        throw std::invalid_argument(
            "traj_complexity: exact-bounded estimator requires states of <= 16 bits");

    const int steps = traj.steps();
    TrajectoryComplexity tc;
    tc.method = method;
    tc.tag = traj.tag;
    tc.per_step.resize(static_cast<std::size_t>(steps));
#pragma omp parallel for schedule(dynamic) if (steps > 4)
    for (int k = 0; k < steps; ++k)
        tc.per_step[static_cast<std::size_t>(k)] =
            estimate_step(traj.states[static_cast<std::size_t>(k) + 1],
                          traj.states[static_cast<std::size_t>(k)], method, exact_params);

    long long total = 0;
    for (const ComplexityEstimate& e : tc.per_step) total += static_cast<long long>(e.bits);
    tc.mean_bits = Rational(total, steps);
    return tc;
}

ComplexityDelta delta_complexity(const TrajectoryComplexity& final_tc,
                                 const TrajectoryComplexity& initial_tc) {
    if (final_tc.per_step.size() != initial_tc.per_step.size())
        throw std::invalid_argument("delta_complexity: step counts differ");
    if (final_tc.method != initial_tc.method)
        throw std::invalid_argument("delta_complexity: estimator methods differ");
    ComplexityDelta delta;
    delta.final_tag = final_tc.tag;
    delta.initial_tag = initial_tc.tag;
    delta.per_step_delta.reserve(final_tc.per_step.size());
    for (std::size_t k = 0; k < final_tc.per_step.size(); ++k) {
        if (final_tc.per_step[k].input_length != initial_tc.per_step[k].input_length)
            throw std::invalid_argument("delta_complexity: state bit lengths differ");
        delta.per_step_delta.push_back(static_cast<long long>(final_tc.per_step[k].bits) -
                                       static_cast<long long>(initial_tc.per_step[k].bits));
    }
    delta.delta_mean = final_tc.mean_bits - initial_tc.mean_bits;

    // The mean of per-step deltas must agree exactly with the difference of
    // means; both are exact rationals, so this is an identity, not a check.
    long long total = 0;
    for (long long d : delta.per_step_delta) total += d;
    if (Rational(total, static_cast<long long>(delta.per_step_delta.size())) != delta.delta_mean)
        throw std::logic_error("delta_complexity: mean identity violated");
    return delta;
}

void write_trajectory(std::ostream& os, const Trajectory& traj) {
    os << traj.steps() << ' ' << traj.rows << ' ' << traj.cols << ' '
       << (traj.tag.empty() ? "-" : traj.tag) << ' ' << traj.seed << '\n';
    for (const BitString& s : traj.states) os << s.str() << '\n';
}

Trajectory read_trajectory(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw std::runtime_error("read_trajectory: missing header");
    std::istringstream hs(header);
    int steps = 0, rows = 0, cols = 0;
    std::string tag;
    std::uint64_t seed = 0;
    if (!(hs >> steps >> rows >> cols >> tag >> seed))
        throw std::runtime_error("read_trajectory: bad header");
    std::vector<BitString> states;
    states.reserve(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i <= steps; ++i) {
        std::string line;
        if (!std::getline(is, line)) throw std::runtime_error("read_trajectory: missing state line");
        states.push_back(BitString::from_string(line));
    }
    LadderSchedule ladder;
    ladder.rungs = steps;
    return stitch(std::move(states), ladder, tag == "-" ? "" : tag, seed, rows, cols);
}

void write_traj_complexity_csv(std::ostream& os, const TrajectoryComplexity& tc) {
    os << "k,bits,method\n";
    for (std::size_t k = 0; k < tc.per_step.size(); ++k)
        os << k << ',' << tc.per_step[k].bits << ',' << to_string(tc.per_step[k].method) << '\n';
}

}  // namespace thermokc
