#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "thermokc/bitstring.hpp"

namespace thermokc {

// Rectangular spin configuration, row-major, spins are +1/-1.
struct SpinLattice {
    int rows = 0;
    int cols = 0;
    std::vector<std::int8_t> spins;

    static SpinLattice filled(int rows, int cols, int spin);

    int sites() const { return rows * cols; }
    int spin(int r, int c) const { return spins[static_cast<std::size_t>(r) * cols + c]; }
    void set_spin(int r, int c, int s) {
        spins[static_cast<std::size_t>(r) * cols + c] = static_cast<std::int8_t>(s);
    }

    bool operator==(const SpinLattice&) const = default;
};

// Bit i = 1 iff spin i (row-major) = +1. Fixed so every complexity number
// derived from a lattice is reproducible bit-exactly.
BitString pack_microstate(const SpinLattice& lattice);
SpinLattice unpack_microstate(const BitString& bits, int rows, int cols);

// Microstate file format: line 1 "ROWS COLS", line 2 the packed bits as
// ASCII 0/1, row-major, newline-terminated.
void write_microstate(std::ostream& os, const SpinLattice& lattice);
SpinLattice read_microstate(std::istream& is);

}  // namespace thermokc
