#include "thermokc/bitstring.hpp"

#include <bit>
#include <random>
#include <stdexcept>

namespace thermokc {

BitString BitString::from_string(std::string_view zeros_ones) {
    BitString out;
    out.bits_.reserve(zeros_ones.size());
    for (char c : zeros_ones) {
        if (c == '0')
            out.bits_.push_back(0);
        else if (c == '1')
            out.bits_.push_back(1);
        else
            throw std::invalid_argument("BitString::from_string: character is not 0 or 1");
    }
    return out;
}

BitString BitString::zeros(std::size_t n) {
    BitString out;
    out.bits_.assign(n, 0);
    return out;
}

BitString BitString::ones(std::size_t n) {
    BitString out;
    out.bits_.assign(n, 1);
    return out;
}

void BitString::append(const BitString& other) {
    bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

BitString BitString::substr(std::size_t pos, std::size_t len) const {
    if (pos > bits_.size() || len > bits_.size() - pos)
        throw std::out_of_range("BitString::substr: range outside string");
    BitString out;
    out.bits_.assign(bits_.begin() + pos, bits_.begin() + pos + len);
    return out;
}

bool BitString::is_prefix_of(const BitString& other) const {
    if (size() > other.size()) return false;
    for (std::size_t i = 0; i < size(); ++i)
        if (bits_[i] != other.bits_[i]) return false;
    return true;
}

std::string BitString::str() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i]) s[i] = '1';
    return s;
}

BitString concat(const BitString& a, const BitString& b) {
    BitString out = a;
    out.append(b);
    return out;
}

BitString elias_encode(std::uint64_t n) {
    if (n == 0) throw std::domain_error("elias_encode: n must be >= 1");
    const int width = std::bit_width(n);  // floor(log2 n) + 1
    BitString out;
    out.reserve(2 * static_cast<std::size_t>(width) - 1);
    for (int i = 0; i < width - 1; ++i) out.push_back(0);
    for (int i = width - 1; i >= 0; --i) out.push_back(static_cast<int>((n >> i) & 1));
    return out;
}

std::optional<std::uint64_t> elias_decode(const BitString& s, std::size_t* pos) {
    std::size_t p = *pos;
    int zeros = 0;
    while (p < s.size() && s.bit(p) == 0) {
        ++p;
        if (++zeros > 63) return std::nullopt;
    }
    if (p >= s.size()) return std::nullopt;
    ++p;  // the leading 1 of the binary form
    std::uint64_t value = 1;
    for (int i = 0; i < zeros; ++i) {
        if (p >= s.size()) return std::nullopt;
        value = (value << 1) | static_cast<std::uint64_t>(s.bit(p++));
    }
    *pos = p;
    return value;
}

BitString random_bits(std::size_t len, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    BitString out;
    out.reserve(len);
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < len; ++i) {
        if (i % 64 == 0) word = gen();
        out.push_back(static_cast<int>(word & 1));
        word >>= 1;
    }
    return out;
}

}  // namespace thermokc
