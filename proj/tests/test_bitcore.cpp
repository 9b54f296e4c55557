#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>

#include "thermokc/bitstring.hpp"
#include "thermokc/microstate.hpp"

using namespace thermokc;

TEST_CASE("bitstring basics") {
    BitString b = BitString::from_string("0110");
    CHECK(b.size() == 4);
    CHECK(b.bit(0) == 0);
    CHECK(b.bit(1) == 1);
    CHECK(b.str() == "0110");
    CHECK(BitString{}.empty());
    CHECK(BitString::zeros(3).str() == "000");
    CHECK(BitString::ones(2).str() == "11");
    CHECK_THROWS(BitString::from_string("01x"));

    BitString c = b;
    CHECK(b == c);
    c.push_back(1);
    CHECK(b != c);
    CHECK(b.is_prefix_of(c));
    CHECK_FALSE(c.is_prefix_of(b));
    CHECK((b + BitString::from_string("1")).str() == "01101");
    CHECK(b.substr(1, 2).str() == "11");
}

TEST_CASE("prefix order convention") {
    // a proper prefix sorts before every extension
    CHECK(BitString::from_string("01") < BitString::from_string("010"));
    CHECK(BitString::from_string("0") < BitString::from_string("1"));
    CHECK_FALSE(BitString::from_string("1") < BitString::from_string("01"));
}

TEST_CASE("elias gamma fixed codewords") {
    CHECK(elias_encode(1).str() == "1");
    CHECK(elias_encode(2).str() == "010");
    CHECK(elias_encode(5).str() == "00101");
    CHECK(elias_encode(64).size() == 13);
    CHECK_THROWS_AS(elias_encode(0), std::domain_error);
}

TEST_CASE("elias gamma round trip") {
    for (std::uint64_t n = 1; n <= 4096; ++n) {
        const BitString code = elias_encode(n);
        std::size_t pos = 0;
        const auto back = elias_decode(code, &pos);
        REQUIRE(back.has_value());
        CHECK(*back == n);
        CHECK(pos == code.size());
    }
}

TEST_CASE("elias gamma is prefix-free") {
    std::set<BitString> codes;
    for (std::uint64_t n = 1; n <= 512; ++n) codes.insert(elias_encode(n));
    for (const auto& a : codes)
        for (const auto& b : codes)
            if (a != b) CHECK_FALSE(a.is_prefix_of(b));
}

TEST_CASE("truncated gamma decode fails") {
    BitString code = elias_encode(13);
    for (std::size_t cut = 0; cut < code.size(); ++cut) {
        std::size_t pos = 0;
        CHECK_FALSE(elias_decode(code.substr(0, cut), &pos).has_value());
    }
}

TEST_CASE("decode consumes exactly one codeword") {
    BitString joined = elias_encode(7) + elias_encode(300) + elias_encode(1);
    std::size_t pos = 0;
    CHECK(*elias_decode(joined, &pos) == 7);
    CHECK(*elias_decode(joined, &pos) == 300);
    CHECK(*elias_decode(joined, &pos) == 1);
    CHECK(pos == joined.size());
}

TEST_CASE("random bits are seed-deterministic") {
    CHECK(random_bits(128, 9) == random_bits(128, 9));
    CHECK(random_bits(128, 9) != random_bits(128, 10));
    CHECK(random_bits(0, 1).empty());
}

TEST_CASE("microstate packing") {
    SpinLattice lat = SpinLattice::filled(2, 2, 1);
    lat.set_spin(0, 1, -1);
    const BitString bits = pack_microstate(lat);
    CHECK(bits.str() == "1011");
    CHECK(unpack_microstate(bits, 2, 2) == lat);
    CHECK_THROWS(unpack_microstate(bits, 3, 2));
    CHECK_THROWS(pack_microstate(SpinLattice{}));
}

TEST_CASE("microstate file format") {
    SpinLattice lat = SpinLattice::filled(3, 2, -1);
    lat.set_spin(2, 1, 1);
    std::stringstream ss;
    write_microstate(ss, lat);
    CHECK(ss.str() == "3 2\n000001\n");
    CHECK(read_microstate(ss) == lat);
}
