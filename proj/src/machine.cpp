#include "thermokc/machine.hpp"

#include <atomic>
#include <cstddef>
#include <stdexcept>

namespace thermokc {

namespace {

enum class Mode { Collect, Count, MatchTarget };

// One interpreter for every access pattern: Collect materializes the
// output, Count only bounds it, MatchTarget proves run(p, d) = target
// while aborting on the first deviating bit. All three agree on what
// halts: a stream is accepted only when HALT lands exactly on the last
// bit, so complete programs form a prefix-free set by construction.
template <Mode M, class Bits>
bool interpret(Bits bits, std::size_t len, const std::uint8_t* data, std::size_t dlen,
               const MachineConfig& cfg, MachineVariant variant, const std::uint8_t* target,
               std::size_t tlen, std::vector<std::uint8_t>* out) {
    std::size_t pos = 0;
    std::uint64_t steps = 0;
    std::uint64_t out_len = 0;

    auto read_gamma = [&](std::uint64_t& value) -> bool {
        int zeros = 0;
        while (pos < len && bits(pos) == 0) {
            ++pos;
            if (++zeros > 57) return false;  // operand cap keeps shifts defined
        }
        if (pos >= len) return false;
        ++pos;
        std::uint64_t v = 1;
        for (int i = 0; i < zeros; ++i) {
            if (pos >= len) return false;
            v = (v << 1) | static_cast<std::uint64_t>(bits(pos++));
        }
        value = v;
        return true;
    };

    auto append_bit = [&](std::uint8_t b) -> bool {
        if (++steps > cfg.step_budget) return false;
        if constexpr (M == Mode::MatchTarget) {
            if (out_len >= tlen || target[out_len] != b) return false;
        } else {
            if (out_len >= cfg.output_limit) return false;
            if constexpr (M == Mode::Collect) out->push_back(b);
        }
        ++out_len;
        return true;
    };

    const int opcode_bits = variant == MachineVariant::TwoBitOpcodes ? 2 : 3;
    for (;;) {
        if (pos + opcode_bits > len) return false;  // truncated opcode
        if (++steps > cfg.step_budget) return false;
        int op = 0;
        for (int i = 0; i < opcode_bits; ++i) op = (op << 1) | bits(pos++);
        switch (op) {
            case 0:  // HALT
                if (pos != len) return false;  // trailing bits: malformed
                if constexpr (M == Mode::MatchTarget)
                    return out_len == tlen;
                else
                    return true;
            case 1: {  // EMIT
                std::uint64_t k = 0;
                if (!read_gamma(k)) return false;
                for (std::uint64_t i = 0; i < k; ++i) {
                    if (pos >= len) return false;
                    if (!append_bit(static_cast<std::uint8_t>(bits(pos++)))) return false;
                }
                break;
            }
            case 2: {  // COPY
                std::uint64_t off = 0, k = 0;
                if (!read_gamma(off) || !read_gamma(k)) return false;
                if (off > dlen || k > dlen - (off - 1)) return false;  // outside data
                for (std::uint64_t i = 0; i < k; ++i)
                    if (!append_bit(data[off - 1 + i])) return false;
                break;
            }
            case 3: {  // REPEAT
                std::uint64_t k = 0, n = 0;
                if (!read_gamma(k) || !read_gamma(n)) return false;
                if (k > len - pos) return false;  // block bits must be present
                const std::size_t block = pos;
                pos += k;
                for (std::uint64_t r = 0; r < n; ++r)
                    for (std::uint64_t i = 0; i < k; ++i)
                        if (!append_bit(static_cast<std::uint8_t>(bits(block + i)))) return false;
                break;
            }
            default:
                return false;  // 3-bit variant: opcodes 4..7 are malformed
        }
    }
}

// MSB-first view of candidate c as an L-bit string; ascending c is
// lexicographic order over candidates of one length.
struct CandidateBits {
    std::uint64_t c;
    int len;
    int operator()(std::size_t i) const {
        return static_cast<int>((c >> (len - 1 - static_cast<int>(i))) & 1);
    }
};

BitString candidate_to_bitstring(std::uint64_t c, int len) {
    BitString out;
    out.reserve(static_cast<std::size_t>(len));
    for (int i = len - 1; i >= 0; --i) out.push_back(static_cast<int>((c >> i) & 1));
    return out;
}

bool candidate_matches(std::uint64_t c, int len, const BitString& d, const MachineConfig& cfg,
                       MachineVariant variant, const BitString& alpha) {
    return interpret<Mode::MatchTarget>(CandidateBits{c, len}, static_cast<std::size_t>(len),
                                        d.data(), d.size(), cfg, variant, alpha.data(),
                                        alpha.size(), nullptr);
}

bool candidate_complete(std::uint64_t c, int len, const BitString& d, const MachineConfig& cfg,
                        MachineVariant variant) {
    return interpret<Mode::Count>(CandidateBits{c, len}, static_cast<std::size_t>(len), d.data(),
                                  d.size(), cfg, variant, nullptr, 0, nullptr);
}

// First matching candidate of this length, or UINT64_MAX. Chunks scan in
// ascending order and a chunk is skipped only when some already-found
// match precedes its whole range, so the merged result equals the serial
// first match.
std::uint64_t scan_length(int len, const BitString& d, const MachineConfig& cfg,
                          MachineVariant variant, const BitString& alpha) {
    const std::uint64_t total = 1ull << len;
    constexpr int kChunkBits = 14;
    if (len <= kChunkBits + 2) {
        for (std::uint64_t c = 0; c < total; ++c)
            if (candidate_matches(c, len, d, cfg, variant, alpha)) return c;
        return UINT64_MAX;
    }
    const long long nchunks = static_cast<long long>(total >> kChunkBits);
    std::atomic<std::uint64_t> best{UINT64_MAX};
#pragma omp parallel for schedule(dynamic)
    for (long long ci = 0; ci < nchunks; ++ci) {
        const std::uint64_t base = static_cast<std::uint64_t>(ci) << kChunkBits;
        if (base >= best.load(std::memory_order_relaxed)) continue;
        const std::uint64_t end = base + (1ull << kChunkBits);
        for (std::uint64_t c = base; c < end; ++c) {
            if (candidate_matches(c, len, d, cfg, variant, alpha)) {
                std::uint64_t cur = best.load(std::memory_order_relaxed);
                while (c < cur && !best.compare_exchange_weak(cur, c)) {
                }
                break;
            }
        }
    }
    return best.load();
}

void check_exact_k_bound(int l_max) {
    if (l_max < 0 || l_max > kExactKMaxBound)
        throw std::domain_error("exact_k: l_max must be in [0, 24]");
}

}  // namespace

ProgramBuilder& ProgramBuilder::emit(const BitString& literal_bits) {
    if (literal_bits.empty()) throw std::invalid_argument("emit: needs at least one literal bit");
    opcode(1);
    code_.append(elias_encode(literal_bits.size()));
    code_.append(literal_bits);
    return *this;
}

ProgramBuilder& ProgramBuilder::copy(std::uint64_t offset, std::uint64_t count) {
    if (offset == 0 || count == 0) throw std::invalid_argument("copy: operands must be >= 1");
    opcode(2);
    code_.append(elias_encode(offset));
    code_.append(elias_encode(count));
    return *this;
}

ProgramBuilder& ProgramBuilder::repeat(const BitString& block, std::uint64_t times) {
    if (block.empty() || times == 0)
        throw std::invalid_argument("repeat: block and count must be non-empty");
    opcode(3);
    code_.append(elias_encode(block.size()));
    code_.append(elias_encode(times));
    code_.append(block);
    return *this;
}

Program ProgramBuilder::halt() const {
    ProgramBuilder tmp = *this;
    tmp.opcode(0);
    return Program{tmp.code_};
}

void ProgramBuilder::opcode(int op) {
    const int width = variant_ == MachineVariant::TwoBitOpcodes ? 2 : 3;
    for (int i = width - 1; i >= 0; --i) code_.push_back((op >> i) & 1);
}

RunResult run(const Program& p, const BitString& d, const MachineConfig& cfg,
              MachineVariant variant) {
    std::vector<std::uint8_t> out;
    auto bits = [&p](std::size_t i) { return p.code.bit(i); };
    const bool halted = interpret<Mode::Collect>(bits, p.code.size(), d.data(), d.size(), cfg,
                                                 variant, nullptr, 0, &out);
    if (!halted) return RunResult{RunStatus::Diverged, {}};
    BitString output;
    output.reserve(out.size());
    for (std::uint8_t b : out) output.push_back(b);
    return RunResult{RunStatus::Halted, std::move(output)};
}

ExactComplexity exact_k(const BitString& alpha, const BitString& d, int l_max,
                        const MachineConfig& cfg, MachineVariant variant) {
    check_exact_k_bound(l_max);
    if (alpha.size() > cfg.output_limit) return ExactComplexity{std::nullopt, l_max, std::nullopt};
    for (int len = 1; len <= l_max; ++len) {
        const std::uint64_t c = scan_length(len, d, cfg, variant, alpha);
        if (c != UINT64_MAX)
            return ExactComplexity{len, l_max, Program{candidate_to_bitstring(c, len)}};
    }
    return ExactComplexity{std::nullopt, l_max, std::nullopt};
}

ExactComplexity exact_k_serial(const BitString& alpha, const BitString& d, int l_max,
                               const MachineConfig& cfg, MachineVariant variant) {
    check_exact_k_bound(l_max);
    for (int len = 1; len <= l_max; ++len) {
        const std::uint64_t total = 1ull << len;
        for (std::uint64_t c = 0; c < total; ++c) {
            const Program p{candidate_to_bitstring(c, len)};
            const RunResult r = run(p, d, cfg, variant);
            if (r.halted() && r.output == alpha) return ExactComplexity{len, l_max, p};
        }
    }
    return ExactComplexity{std::nullopt, l_max, std::nullopt};
}

Rational kraft_sum(int l_max, const BitString& d, const MachineConfig& cfg,
                   MachineVariant variant) {
    if (l_max < 1 || l_max > kKraftMaxBound)
        throw std::domain_error("kraft_sum: l_max must be in [1, 20]");
    long long num = 0;
    for (int len = 1; len <= l_max; ++len) {
        const long long total = 1ll << len;
        std::uint64_t count = 0;
#pragma omp parallel for reduction(+ : count) schedule(static) if (len > 16)
        for (long long c = 0; c < total; ++c)
            if (candidate_complete(static_cast<std::uint64_t>(c), len, d, cfg, variant)) ++count;
        num += static_cast<long long>(count) << (l_max - len);
    }
    return Rational(num, 1ll << l_max);
}

Rational kraft_sum_serial(int l_max, const BitString& d, const MachineConfig& cfg,
                          MachineVariant variant) {
    if (l_max < 1 || l_max > kKraftMaxBound)
        throw std::domain_error("kraft_sum: l_max must be in [1, 20]");
    long long num = 0;
    for (int len = 1; len <= l_max; ++len) {
        long long count = 0;
        const std::uint64_t total = 1ull << len;
        for (std::uint64_t c = 0; c < total; ++c) {
            const Program p{candidate_to_bitstring(c, len)};
            if (run(p, d, cfg, variant).halted()) ++count;
        }
        num += count << (l_max - len);
    }
    return Rational(num, 1ll << l_max);
}

std::vector<BitString> complete_programs(int max_len, const BitString& d, const MachineConfig& cfg,
                                         MachineVariant variant) {
    if (max_len < 1 || max_len > 16)
        throw std::domain_error("complete_programs: max_len must be in [1, 16]");
    std::vector<BitString> out;
    for (int len = 1; len <= max_len; ++len) {
        const std::uint64_t total = 1ull << len;
        for (std::uint64_t c = 0; c < total; ++c)
            if (candidate_complete(c, len, d, cfg, variant))
                out.push_back(candidate_to_bitstring(c, len));
    }
    return out;
}

}  // namespace thermokc
