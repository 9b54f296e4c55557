#include "thermokc/thermal.hpp"

#include <bit>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace thermokc {

namespace {

void check_dims(const SpinLattice& lattice, const Hamiltonian& h) {
    if (lattice.rows != h.rows || lattice.cols != h.cols ||
        lattice.spins.size() != static_cast<std::size_t>(h.sites()))
        throw std::domain_error("lattice does not match Hamiltonian dimensions");
}

}  // namespace

void validate(const Hamiltonian& h) {
    if (h.rows < 2 || h.cols < 2) throw std::domain_error("lattice must be at least 2x2");
}

EnergyTally tally(const SpinLattice& lattice, const Hamiltonian& h) {
    validate(h);
    check_dims(lattice, h);
    EnergyTally t;
    for (int r = 0; r < h.rows; ++r) {
        for (int c = 0; c < h.cols; ++c) {
            const int s = lattice.spin(r, c);
            t.bond_sum += static_cast<long long>(s) * lattice.spin(r, (c + 1) % h.cols);
            t.bond_sum += static_cast<long long>(s) * lattice.spin((r + 1) % h.rows, c);
            t.magnetization += s;
        }
    }
    return t;
}

double energy(const SpinLattice& lattice, const Hamiltonian& h) {
    return energy_from(tally(lattice, h), h);
}

void metropolis_sweep(SpinLattice& lattice, const Hamiltonian& h, double beta, LatticeRng& rng,
                      EnergyTally* tracked) {
    validate(h);
    check_dims(lattice, h);
    if (beta < 0.0) throw std::domain_error("beta must be non-negative");
    const int n = h.sites();
    for (int step = 0; step < n; ++step) {
        const int site = rng.index(n);
        const int r = site / h.cols;
        const int c = site % h.cols;
        const int s = lattice.spin(r, c);
        const int nbr = lattice.spin((r + 1) % h.rows, c) +
                        lattice.spin((r + h.rows - 1) % h.rows, c) +
                        lattice.spin(r, (c + 1) % h.cols) +
                        lattice.spin(r, (c + h.cols - 1) % h.cols);
        const double de = 2.0 * s * (h.coupling * nbr + h.field);
        bool accept = de <= 0.0;
        if (!accept) accept = rng.uniform() < std::exp(-beta * de);
        if (accept) {
            lattice.set_spin(r, c, static_cast<std::int8_t>(-s));
            if (tracked) {
                tracked->bond_sum -= 2ll * s * nbr;
                tracked->magnetization -= 2ll * s;
            }
        }
    }
}

SpinLattice ground_state(const Hamiltonian& h) {
    validate(h);
    return SpinLattice::filled(h.rows, h.cols, h.field >= 0.0 ? 1 : -1);
}

Trajectory anneal_ladder(const Hamiltonian& h, const LadderSchedule& ladder, std::uint64_t seed,
                         const std::string& tag) {
    validate(h);
    if (h.coupling <= 0.0)
        throw std::domain_error("annealing assumes ferromagnetic coupling (J > 0)");
    if (ladder.rungs < 1) throw std::domain_error("ladder needs at least one rung");
    if (ladder.sweeps_per_rung < 1) throw std::domain_error("sweeps_per_rung must be positive");
    if (!ladder.explicit_betas.empty() &&
        ladder.explicit_betas.size() != static_cast<std::size_t>(ladder.rungs))
        throw std::domain_error("explicit beta list must have one entry per rung");
    for (int k = 0; k < ladder.rungs; ++k)
        if (ladder.beta_of(k) < 0.0) throw std::domain_error("beta must be non-negative");

    SpinLattice lattice = ground_state(h);
    EnergyTally t = tally(lattice, h);
    LatticeRng rng(seed);
    std::vector<BitString> states;
    states.reserve(static_cast<std::size_t>(ladder.rungs) + 1);
    states.push_back(pack_microstate(lattice));
    for (int k = 1; k <= ladder.rungs; ++k) {
        const double beta = ladder.beta_of(k - 1);
        for (int s = 0; s < ladder.sweeps_per_rung; ++s)
            metropolis_sweep(lattice, h, beta, rng, &t);
        states.push_back(pack_microstate(lattice));
    }
    return stitch(std::move(states), ladder, tag, seed, h.rows, h.cols);
}

namespace {

std::vector<double> all_energies(const Hamiltonian& h, bool parallel) {
    const int n = h.sites();
    std::vector<std::pair<int, int>> bonds;
    bonds.reserve(static_cast<std::size_t>(2 * n));
    for (int r = 0; r < h.rows; ++r) {
        for (int c = 0; c < h.cols; ++c) {
            const int i = r * h.cols + c;
            bonds.emplace_back(i, r * h.cols + (c + 1) % h.cols);
            bonds.emplace_back(i, ((r + 1) % h.rows) * h.cols + c);
        }
    }
    const std::uint32_t total = std::uint32_t{1} << n;
    std::vector<double> e(total);
#pragma omp parallel for schedule(static) if (parallel)
    for (long long id = 0; id < static_cast<long long>(total); ++id) {
        const auto u = static_cast<std::uint32_t>(id);
        const long long mag = 2ll * std::popcount(u) - n;
        long long bond = 0;
        for (const auto& [a, b] : bonds) bond += (((u >> a) & 1u) == ((u >> b) & 1u)) ? 1 : -1;
        e[static_cast<std::size_t>(id)] =
            -h.coupling * static_cast<double>(bond) - h.field * static_cast<double>(mag);
    }
    return e;
}

inline constexpr int kThermoChunks = 64;

// Shifted partial sums s0 = sum exp(-beta (E - E_min)) and
// s1 = sum (E - E_min) exp(-beta (E - E_min)), accumulated over
// kThermoChunks fixed index ranges and merged in chunk order, so the
// value never depends on the thread count.
struct ShiftedSums {
    double e_min = 0.0;
    double s0 = 0.0;
    double s1 = 0.0;
};

ShiftedSums shifted_sums(const std::vector<double>& e, double beta, bool parallel) {
    ShiftedSums out;
    out.e_min = e[0];
    for (const double v : e) out.e_min = std::min(out.e_min, v);

    const auto total = e.size();
    double part0[kThermoChunks] = {};
    double part1[kThermoChunks] = {};
#pragma omp parallel for schedule(static) if (parallel)
    for (int chunk = 0; chunk < kThermoChunks; ++chunk) {
        const std::size_t lo = total * static_cast<std::size_t>(chunk) / kThermoChunks;
        const std::size_t hi = total * (static_cast<std::size_t>(chunk) + 1) / kThermoChunks;
        double a0 = 0.0;
        double a1 = 0.0;
        for (std::size_t id = lo; id < hi; ++id) {
            const double shifted = e[id] - out.e_min;
            const double w = std::exp(-beta * shifted);
            a0 += w;
            a1 += shifted * w;
        }
        part0[chunk] = a0;
        part1[chunk] = a1;
    }
    for (int chunk = 0; chunk < kThermoChunks; ++chunk) {
        out.s0 += part0[chunk];
        out.s1 += part1[chunk];
    }
    return out;
}

ExactThermo thermo_impl(const Hamiltonian& h, double beta, bool parallel) {
    validate(h);
    if (h.sites() > kExactThermoMaxSites)
        throw std::domain_error("exact enumeration limited to 20 sites");
    if (beta < 0.0) throw std::domain_error("beta must be non-negative");

    const std::vector<double> e = all_energies(h, parallel);
    const ShiftedSums s = shifted_sums(e, beta, parallel);

    ExactThermo out;
    out.beta = beta;
    out.log_z = std::log(s.s0) - beta * s.e_min;
    out.mean_energy = s.e_min + s.s1 / s.s0;
    // S/ln2 = log2(s0) + beta (s1/s0)/ln2; the log2 form makes the
    // beta = 0 value land on exactly rows*cols bits.
    out.entropy_bits = std::log2(s.s0) + beta * (s.s1 / s.s0) / std::numbers::ln2;
    return out;
}

}  // namespace

ExactThermo exact_thermo(const Hamiltonian& h, double beta) { return thermo_impl(h, beta, true); }

ExactThermo exact_thermo_serial(const Hamiltonian& h, double beta) {
    return thermo_impl(h, beta, false);
}

std::vector<double> boltzmann_probabilities(const Hamiltonian& h, double beta) {
    validate(h);
    if (h.sites() > kExactThermoMaxSites)
        throw std::domain_error("exact enumeration limited to 20 sites");
    if (beta < 0.0) throw std::domain_error("beta must be non-negative");

    const std::vector<double> e = all_energies(h, true);
    const ShiftedSums s = shifted_sums(e, beta, true);
    std::vector<double> p(e.size());
    for (std::size_t id = 0; id < e.size(); ++id)
        p[id] = std::exp(-beta * (e[id] - s.e_min)) / s.s0;
    return p;
}

std::uint32_t state_id(const SpinLattice& lattice) {
    if (lattice.spins.size() != static_cast<std::size_t>(lattice.sites()))
        throw std::domain_error("lattice has unset spins");
    if (lattice.sites() > 32) throw std::domain_error("state id limited to 32 sites");
    std::uint32_t id = 0;
    for (int r = 0; r < lattice.rows; ++r)
        for (int c = 0; c < lattice.cols; ++c)
            if (lattice.spin(r, c) > 0) id |= std::uint32_t{1} << (r * lattice.cols + c);
    return id;
}

double heat_absorbed(const Trajectory& traj_f, const Trajectory& traj_i, const Hamiltonian& h_f,
                     const Hamiltonian& h_i) {
    if (traj_f.steps() != traj_i.steps() || traj_f.seed != traj_i.seed ||
        !(traj_f.ladder == traj_i.ladder))
        throw std::domain_error("trajectories are not aligned (T, seed, ladder must match)");
    if (traj_f.rows != h_f.rows || traj_f.cols != h_f.cols || traj_i.rows != h_i.rows ||
        traj_i.cols != h_i.cols)
        throw std::domain_error("trajectory geometry does not match Hamiltonian");
    if (h_f.rows != h_i.rows || h_f.cols != h_i.cols)
        throw std::domain_error("protocols compare runs of the same lattice geometry");
    double q = 0.0;
    for (int k = 1; k <= traj_f.steps(); ++k) {
        const SpinLattice xf =
            unpack_microstate(traj_f.states[static_cast<std::size_t>(k)], h_f.rows, h_f.cols);
        const SpinLattice xi =
            unpack_microstate(traj_i.states[static_cast<std::size_t>(k)], h_i.rows, h_i.cols);
        q += energy(xf, h_f) - energy(xi, h_i);
    }
    return q;
}

}  // namespace thermokc
