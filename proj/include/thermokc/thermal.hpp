#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "thermokc/ladder.hpp"
#include "thermokc/microstate.hpp"
#include "thermokc/trajectory.hpp"

namespace thermokc {

// 2D Ising Hamiltonian on a periodic lattice:
//   E(s) = -J sum_<ij> s_i s_j - h sum_i s_i
// with the 2*rows*cols (right, down) bonds each counted once. On a lattice
// of width 2 the wrap bond coincides with the direct one and is counted
// twice, matching the bond convention.
struct Hamiltonian {
    int rows = 2;
    int cols = 2;
    double coupling = 1.0;  // J
    double field = 0.0;     // h

    int sites() const { return rows * cols; }
    bool operator==(const Hamiltonian&) const = default;
};

void validate(const Hamiltonian& h);  // rows, cols >= 2

// Integer part of the energy: sum of bond products and total magnetization.
// Kept exactly so incremental bookkeeping matches a full recompute bit for
// bit regardless of J and h.
struct EnergyTally {
    long long bond_sum = 0;       // sum s_i s_j over bonds
    long long magnetization = 0;  // sum s_i

    bool operator==(const EnergyTally&) const = default;
};

EnergyTally tally(const SpinLattice& lattice, const Hamiltonian& h);

inline double energy_from(const EnergyTally& t, const Hamiltonian& h) {
    return -h.coupling * static_cast<double>(t.bond_sum) -
           h.field * static_cast<double>(t.magnetization);
}

double energy(const SpinLattice& lattice, const Hamiltonian& h);

// mt19937_64 with a fixed 53-bit mapping to [0,1); the standard library
// distributions are implementation-defined, which would break bit-exact
// reproducibility across toolchains.
class LatticeRng {
public:
    explicit LatticeRng(std::uint64_t seed) : gen_(seed) {}
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    // modulo bias is ~n/2^64, far below anything observable here
    int index(int n) { return static_cast<int>(gen_() % static_cast<std::uint64_t>(n)); }

private:
    std::mt19937_64 gen_;
};

// One pass of rows*cols single-spin Metropolis updates at uniformly drawn
// sites. A flip is accepted iff dE <= 0 or u < exp(-beta dE), with u drawn
// only when dE > 0. Sites are drawn rather than scanned in a fixed order:
// a deterministic scan makes the zero-cost flips a deterministic conveyor
// and the sweep chain reducible on small lattices (on 2x2 four states are
// unreachable from the ground state), which breaks Boltzmann sampling.
// Updates *tracked in place when given.
void metropolis_sweep(SpinLattice& lattice, const Hamiltonian& h, double beta, LatticeRng& rng,
                      EnergyTally* tracked = nullptr);

// Ground state of H for ferromagnetic coupling: all-up when h >= 0 (the
// h = 0 tie breaks toward all-up), all-down otherwise.
SpinLattice ground_state(const Hamiltonian& h);

// Anneals from the ground state along the ladder: x_k results from
// sweeps_per_rung sweeps at beta_{k-1} starting from x_{k-1}. Bit-identical
// for identical (H, ladder, seed).
Trajectory anneal_ladder(const Hamiltonian& h, const LadderSchedule& ladder, std::uint64_t seed,
                         const std::string& tag = "");

struct ExactThermo {
    double beta = 0.0;
    double log_z = 0.0;        // nats
    double mean_energy = 0.0;  // energy units
    double entropy_bits = 0.0;
};

inline constexpr int kExactThermoMaxSites = 20;

// Full 2^N enumeration with shift-stabilized accumulation. The parallel
// kernel reduces over fixed chunks merged in index order, so the result is
// bit-identical to the serial reference and independent of thread count.
ExactThermo exact_thermo(const Hamiltonian& h, double beta);
ExactThermo exact_thermo_serial(const Hamiltonian& h, double beta);

// Boltzmann probability of every state id (site i <-> bit i of the id,
// set bit = spin up); same guard as exact_thermo.
std::vector<double> boltzmann_probabilities(const Hamiltonian& h, double beta);

// State id of a lattice under the enumeration convention above.
std::uint32_t state_id(const SpinLattice& lattice);

// Per-rung energy excess of the final-protocol run over the initial one:
//   Q = sum_{k=1..T} [ E_f(x^f_k) - E_i(x^i_k) ].
double heat_absorbed(const Trajectory& traj_f, const Trajectory& traj_i, const Hamiltonian& h_f,
                     const Hamiltonian& h_i);

}  // namespace thermokc
