#include "thermokc/compressor.hpp"

#include <algorithm>
#include <array>
#include <bit>

namespace thermokc {

namespace {

// Array-backed binary trie; node ids double as dictionary indices.
struct Trie {
    std::vector<std::array<std::int32_t, 2>> child;
    std::vector<std::int32_t> parent;
    std::vector<std::uint8_t> edge_bit;

    Trie() { add_root(); }

    void add_root() {
        child.push_back({-1, -1});
        parent.push_back(-1);
        edge_bit.push_back(0);
    }

    std::int32_t step(std::int32_t node, int bit) const { return child[node][bit]; }

    std::int32_t add(std::int32_t node, int bit) {
        const auto id = static_cast<std::int32_t>(child.size());
        child.push_back({-1, -1});
        parent.push_back(node);
        edge_bit.push_back(static_cast<std::uint8_t>(bit));
        child[node][bit] = id;
        return id;
    }

    // Walks the whole string through the trie, adding one node per phrase.
    // Returns the node left unconsumed at end of input (0 if none).
    std::int32_t parse_into(const BitString& s, std::vector<Lz78Phrase>* phrases) {
        std::int32_t node = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const int b = s.bit(i);
            const std::int32_t next = step(node, b);
            if (next >= 0) {
                node = next;
                continue;
            }
            if (phrases)
                phrases->push_back({static_cast<std::uint32_t>(node),
                                    static_cast<std::uint8_t>(b)});
            add(node, b);
            node = 0;
        }
        return node;
    }
};

std::uint64_t ceil_log2(std::uint64_t d) {
    return d <= 1 ? 0 : std::bit_width(d - 1);
}

std::uint64_t cold_code_length(const BitString& s) { return code_length(lz78_parse(s)); }

}  // namespace

std::string to_string(EstimatorMethod method) {
    switch (method) {
        case EstimatorMethod::ExactBounded: return "exact-bounded";
        case EstimatorMethod::Lz78Primed: return "lz78-primed";
        case EstimatorMethod::Lz78Diff: return "lz78-diff";
    }
    return "?";
}

EstimatorMethod estimator_from_string(std::string_view name) {
    if (name == "exact-bounded") return EstimatorMethod::ExactBounded;
    if (name == "lz78-primed" || name == "primed") return EstimatorMethod::Lz78Primed;
    if (name == "lz78-diff" || name == "diff") return EstimatorMethod::Lz78Diff;
    throw std::invalid_argument("unknown estimator method: " + std::string(name));
}

Lz78Parse lz78_parse(const BitString& x, const BitString& primer) {
    Trie trie;
    trie.parse_into(primer, nullptr);
    Lz78Parse parse;
    parse.primer_phrases = static_cast<std::uint32_t>(trie.child.size() - 1);
    const std::int32_t leftover = trie.parse_into(x, &parse.phrases);
    if (leftover != 0) parse.tail = static_cast<std::uint32_t>(leftover);
    return parse;
}

std::uint64_t code_length(const Lz78Parse& parse) {
    std::uint64_t bits = elias_encode(parse.phrase_count() + 1).size();
    std::uint64_t dict = 1 + parse.primer_phrases;
    for (std::size_t j = 0; j < parse.phrases.size(); ++j) bits += ceil_log2(dict + j) + 1;
    if (parse.tail) bits += ceil_log2(dict + parse.phrases.size()) + 1;
    return bits;
}

BitString decompress(const Lz78Parse& parse, const BitString& primer) {
    Trie trie;
    trie.parse_into(primer, nullptr);
    if (parse.primer_phrases != trie.child.size() - 1)
        throw CorruptParse("decompress: primer does not match the recorded phrase count");

    auto render = [&trie](std::uint32_t node, BitString* out) {
        std::vector<std::uint8_t> rev;
        for (std::int32_t n = static_cast<std::int32_t>(node); n > 0; n = trie.parent[n])
            rev.push_back(trie.edge_bit[n]);
        for (auto it = rev.rbegin(); it != rev.rend(); ++it) out->push_back(*it);
    };

    BitString out;
    for (const Lz78Phrase& ph : parse.phrases) {
        if (ph.index >= trie.child.size()) throw CorruptParse("decompress: phrase index out of range");
        if (ph.bit > 1) throw CorruptParse("decompress: phrase bit is not binary");
        render(ph.index, &out);
        out.push_back(ph.bit);
        trie.add(static_cast<std::int32_t>(ph.index), ph.bit);
    }
    if (parse.tail) {
        if (*parse.tail >= trie.child.size()) throw CorruptParse("decompress: tail index out of range");
        render(*parse.tail, &out);
    }
    return out;
}

ComplexityEstimate cond_complexity_primed(const BitString& y, const BitString& x) {
    std::uint64_t bits = code_length(lz78_parse(y, x));
    if (!x.empty()) bits = std::min(bits, cold_code_length(y));
    return ComplexityEstimate{bits, EstimatorMethod::Lz78Primed, y.size()};
}

ComplexityEstimate cond_complexity_diff(const BitString& y, const BitString& x) {
    const std::uint64_t joint = cold_code_length(concat(x, y));
    const std::uint64_t base = cold_code_length(x);
    const std::uint64_t bits = joint > base ? joint - base : 0;  // complexity is non-negative
    return ComplexityEstimate{bits, EstimatorMethod::Lz78Diff, y.size()};
}

}  // namespace thermokc
