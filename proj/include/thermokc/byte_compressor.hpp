#pragma once

#include <cstdint>
#include <span>

#include "thermokc/bitstring.hpp"

namespace thermokc {

// Adapter contract for plugging an external byte-stream compressor in as a
// complexity estimator. Not used by any shipped experiment: external tools
// make the numbers environment-dependent, so the built-in LZ78 estimators
// are the supported path.
class ByteCompressor {
public:
    virtual ~ByteCompressor() = default;
    virtual std::size_t compressed_size(std::span<const std::uint8_t> data) const = 0;
};

// Difference-form conditional estimate over MSB-first byte packing of the
// bit strings, in bits, clamped at zero.
std::uint64_t external_diff_bits(const BitString& y, const BitString& x,
                                 const ByteCompressor& compressor);

// The packing used by external_diff_bits, exposed for adapter tests.
std::vector<std::uint8_t> pack_bits_to_bytes(const BitString& s);

}  // namespace thermokc
