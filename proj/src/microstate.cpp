#include "thermokc/microstate.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace thermokc {

SpinLattice SpinLattice::filled(int rows, int cols, int spin) {
    if (rows <= 0 || cols <= 0)
        throw std::invalid_argument("SpinLattice: rows and cols must be positive");
    if (spin != 1 && spin != -1) throw std::invalid_argument("SpinLattice: spin must be +1 or -1");
    SpinLattice lat;
    lat.rows = rows;
    lat.cols = cols;
    lat.spins.assign(static_cast<std::size_t>(rows) * cols, static_cast<std::int8_t>(spin));
    return lat;
}

BitString pack_microstate(const SpinLattice& lattice) {
    if (lattice.rows <= 0 || lattice.cols <= 0 || lattice.spins.empty())
        throw std::invalid_argument("pack_microstate: empty lattice");
    if (lattice.spins.size() != static_cast<std::size_t>(lattice.sites()))
        throw std::invalid_argument("pack_microstate: spin count does not match dimensions");
    BitString out;
    out.reserve(lattice.spins.size());
    for (std::int8_t s : lattice.spins) out.push_back(s == 1 ? 1 : 0);
    return out;
}

SpinLattice unpack_microstate(const BitString& bits, int rows, int cols) {
    if (rows <= 0 || cols <= 0)
        throw std::invalid_argument("unpack_microstate: rows and cols must be positive");
    if (bits.size() != static_cast<std::size_t>(rows) * cols)
        throw std::invalid_argument("unpack_microstate: bit count does not match dimensions");
    SpinLattice lat;
    lat.rows = rows;
    lat.cols = cols;
    lat.spins.resize(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i)
        lat.spins[i] = bits.bit(i) ? std::int8_t{1} : std::int8_t{-1};
    return lat;
}

void write_microstate(std::ostream& os, const SpinLattice& lattice) {
    os << lattice.rows << ' ' << lattice.cols << '\n' << pack_microstate(lattice).str() << '\n';
}

SpinLattice read_microstate(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw std::runtime_error("read_microstate: missing header");
    std::istringstream hs(header);
    int rows = 0, cols = 0;
    if (!(hs >> rows >> cols)) throw std::runtime_error("read_microstate: bad header");
    std::string bits;
    if (!std::getline(is, bits)) throw std::runtime_error("read_microstate: missing bit line");
    return unpack_microstate(BitString::from_string(bits), rows, cols);
}

}  // namespace thermokc
