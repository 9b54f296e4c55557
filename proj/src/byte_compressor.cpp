#include "thermokc/byte_compressor.hpp"

namespace thermokc {

std::vector<std::uint8_t> pack_bits_to_bytes(const BitString& s) {
    std::vector<std::uint8_t> out((s.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s.bit(i)) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
    return out;
}

std::uint64_t external_diff_bits(const BitString& y, const BitString& x,
                                 const ByteCompressor& compressor) {
    const auto joint = pack_bits_to_bytes(concat(x, y));
    const auto base = pack_bits_to_bytes(x);
    const std::size_t cj = compressor.compressed_size(joint);
    const std::size_t cb = compressor.compressed_size(base);
    return cj > cb ? 8ull * (cj - cb) : 0ull;
}

}  // namespace thermokc
