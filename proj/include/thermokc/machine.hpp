#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "thermokc/bitstring.hpp"
#include "thermokc/rational.hpp"

namespace thermokc {

// A fixed, small prefix computer. Programs are self-delimiting instruction
// streams; a syntactically complete program is never a proper prefix of
// another complete program.
//
// Instruction set (opcodes are 2 bits, operands Elias-gamma coded):
//   00 HALT                      end of program; the stream must end here
//   01 EMIT   gamma(k) b1..bk    append k literal bits
//   10 COPY   gamma(i) gamma(k)  append k bits of the data string, 1-based offset i
//   11 REPEAT gamma(k) gamma(n) b1..bk
//                                append the k-bit block n times
//
// The diagnostic variant widens opcodes to 3 bits (000/001/010/011, the
// rest malformed) so the machine-dependence of complexity values can be
// measured between two concrete computers.
enum class MachineVariant { TwoBitOpcodes, ThreeBitOpcodes };

struct MachineConfig {
    std::uint64_t step_budget = 10'000;  // decoded instructions + appended bits
    std::uint64_t output_limit = 4096;   // max output bits
};

struct Program {
    BitString code;
};

// Helper for building well-formed programs in tests and bounds arguments.
class ProgramBuilder {
public:
    explicit ProgramBuilder(MachineVariant variant = MachineVariant::TwoBitOpcodes)
        : variant_(variant) {}

    ProgramBuilder& emit(const BitString& literal_bits);
    ProgramBuilder& copy(std::uint64_t offset, std::uint64_t count);  // offset is 1-based
    ProgramBuilder& repeat(const BitString& block, std::uint64_t times);
    Program halt() const;

private:
    void opcode(int op);
    MachineVariant variant_;
    BitString code_;
};

enum class RunStatus { Halted, Diverged };

struct RunResult {
    RunStatus status = RunStatus::Diverged;
    BitString output;  // meaningful only when Halted

    bool halted() const { return status == RunStatus::Halted; }
};

// Deterministic interpretation of p on data d. DIVERGES on a malformed or
// truncated stream, on trailing bits after HALT, or when a budget in cfg
// is exhausted; never throws for those.
RunResult run(const Program& p, const BitString& d, const MachineConfig& cfg,
              MachineVariant variant = MachineVariant::TwoBitOpcodes);

struct ExactComplexity {
    std::optional<int> value;  // nullopt = UNKNOWN: no program of length <= bound fits
    int bound = 0;             // the enumeration limit L_max
    std::optional<Program> witness;

    bool found() const { return value.has_value(); }
};

inline constexpr int kExactKMaxBound = 24;
inline constexpr int kKraftMaxBound = 20;

// Exact bounded complexity per exhaustive enumeration: the minimum length
// over all programs of length <= l_max with run(p, d) = alpha, scanning
// lengths in increasing order and candidates in lexicographic order, so
// the witness is deterministic. The parallel kernel partitions the
// candidate space and merges by (length, lexicographic) order; it returns
// bit-identical results to the serial reference.
ExactComplexity exact_k(const BitString& alpha, const BitString& d, int l_max,
                        const MachineConfig& cfg = {},
                        MachineVariant variant = MachineVariant::TwoBitOpcodes);
ExactComplexity exact_k_serial(const BitString& alpha, const BitString& d, int l_max,
                               const MachineConfig& cfg = {},
                               MachineVariant variant = MachineVariant::TwoBitOpcodes);

// Sum of 2^-|p| over all syntactically complete, halting programs of
// length <= l_max; exact rational. At most 1 for a prefix-free program set.
Rational kraft_sum(int l_max, const BitString& d = {}, const MachineConfig& cfg = {},
                   MachineVariant variant = MachineVariant::TwoBitOpcodes);
Rational kraft_sum_serial(int l_max, const BitString& d = {}, const MachineConfig& cfg = {},
                          MachineVariant variant = MachineVariant::TwoBitOpcodes);

// All syntactically complete, halting programs of length <= max_len, in
// (length, lexicographic) order. For prefix-freeness audits; max_len <= 16.
std::vector<BitString> complete_programs(int max_len, const BitString& d = {},
                                         const MachineConfig& cfg = {},
                                         MachineVariant variant = MachineVariant::TwoBitOpcodes);

}  // namespace thermokc
