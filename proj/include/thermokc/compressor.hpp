#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "thermokc/bitstring.hpp"

namespace thermokc {

enum class EstimatorMethod { ExactBounded, Lz78Primed, Lz78Diff };

std::string to_string(EstimatorMethod method);
EstimatorMethod estimator_from_string(std::string_view name);  // throws on unknown name

struct Lz78Phrase {
    std::uint32_t index;  // dictionary entry being extended; 0 is the empty phrase
    std::uint8_t bit;     // the extension bit
};

// Greedy bit-level LZ78 factorization. Dictionary indices are creation
// order: 0 the empty phrase, then primer phrases, then the subject's own
// phrases; every referenced index precedes the phrase that references it.
struct Lz78Parse {
    std::vector<Lz78Phrase> phrases;
    std::optional<std::uint32_t> tail;  // final phrase that ended without an extension bit
    std::uint32_t primer_phrases = 0;

    std::size_t phrase_count() const { return phrases.size() + (tail ? 1 : 0); }
    std::uint32_t dictionary_size() const {
        return 1 + primer_phrases + static_cast<std::uint32_t>(phrases.size());
    }
};

struct CorruptParse : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses primer first (phrases retained, output discarded), then x.
Lz78Parse lz78_parse(const BitString& x, const BitString& primer = {});

// Accounting size of a parse in bits: a gamma-coded phrase count header
// plus, per phrase, ceil(log2 D) index bits (D = dictionary size when the
// phrase was emitted, ceil(log2 1) = 0) and one extension/terminator bit.
std::uint64_t code_length(const Lz78Parse& parse);

// Exact reconstruction of the parsed string; throws CorruptParse when an
// index is out of range for the primer-initialized dictionary.
BitString decompress(const Lz78Parse& parse, const BitString& primer = {});

struct ComplexityEstimate {
    std::uint64_t bits = 0;
    EstimatorMethod method = EstimatorMethod::Lz78Primed;
    std::uint64_t input_length = 0;
};

// Conditional complexity of y given x by dictionary priming. Never exceeds
// the unconditional estimate: a conditioned compressor may always ignore
// its conditioning data.
ComplexityEstimate cond_complexity_primed(const BitString& y, const BitString& x);

// Concatenation-difference form, clamped at zero.
ComplexityEstimate cond_complexity_diff(const BitString& y, const BitString& x);

}  // namespace thermokc
