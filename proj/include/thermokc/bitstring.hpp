#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace thermokc {

// Finite binary string. The empty string has length 0. Stored one bit per
// byte so tests and hot loops can index without masking; strings at the
// scales this project handles (<= a few 10^5 bits) stay cheap.
class BitString {
public:
    BitString() = default;

    static BitString from_string(std::string_view zeros_ones);
    static BitString zeros(std::size_t n);
    static BitString ones(std::size_t n);

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }

    int bit(std::size_t i) const { return bits_[i]; }
    void set_bit(std::size_t i, int b) { bits_[i] = static_cast<std::uint8_t>(b & 1); }

    void push_back(int b) { bits_.push_back(static_cast<std::uint8_t>(b & 1)); }
    void append(const BitString& other);
    void reserve(std::size_t n) { bits_.reserve(n); }

    BitString substr(std::size_t pos, std::size_t len) const;
    bool is_prefix_of(const BitString& other) const;

    std::string str() const;

    const std::uint8_t* data() const { return bits_.data(); }

    bool operator==(const BitString&) const = default;
    // Lexicographic with the convention that a proper prefix sorts first.
    bool operator<(const BitString& other) const { return bits_ < other.bits_; }

private:
    std::vector<std::uint8_t> bits_;
};

BitString concat(const BitString& a, const BitString& b);
inline BitString operator+(const BitString& a, const BitString& b) { return concat(a, b); }

// Elias gamma code: floor(log2 n) zeros followed by the binary form of n.
// Prefix-free over n >= 1; n = 0 is a domain error.
BitString elias_encode(std::uint64_t n);

// Decodes one gamma codeword starting at *pos, advancing *pos past it.
// Returns nullopt (leaving *pos unspecified) on a truncated codeword.
std::optional<std::uint64_t> elias_decode(const BitString& s, std::size_t* pos);

// Deterministic pseudo-random bit string; the generator is pinned to
// mt19937_64 so fixtures are identical on every platform.
BitString random_bits(std::size_t len, std::uint64_t seed);

}  // namespace thermokc
