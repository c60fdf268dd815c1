#include <gtest/gtest.h>

#include <random>

#include "hublab/bits.hpp"

using namespace hublab;

TEST(Gamma, KnownCodewords) {
    const uint64_t one[] = {1};
    EXPECT_EQ(to_bit_string(gamma_encode(one)), "1");
    const uint64_t two[] = {2};
    EXPECT_EQ(to_bit_string(gamma_encode(two)), "010");
    const uint64_t five[] = {5};
    EXPECT_EQ(to_bit_string(gamma_encode(five)), "00101");
    const uint64_t threes[] = {3, 3, 3};
    EXPECT_EQ(to_bit_string(gamma_encode(threes)), "011011011");
}

TEST(Gamma, StreamLengthAndRoundtrip) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<uint64_t> values(rng() % 300);
        uint64_t expected_bits = 0;
        for (auto& v : values) {
            v = 1 + (rng() >> (rng() % 64));
            uint64_t floor_log = 63 - __builtin_clzll(v);
            expected_bits += 2 * floor_log + 1;
        }
        const BitBlob blob = gamma_encode(values);
        EXPECT_EQ(blob.size, expected_bits);
        EXPECT_EQ(gamma_decode(blob, values.size()), values);
    }
}

TEST(Gamma, DecodePastEndThrows) {
    const uint64_t v[] = {9, 4};
    const BitBlob blob = gamma_encode(v);
    EXPECT_THROW(gamma_decode(blob, 3), DecodeError);
    BitBlob cut = blob;
    cut.size -= 1;
    EXPECT_THROW(gamma_decode(cut, 2), DecodeError);
}

TEST(Gamma, ZeroIsRejected) {
    BitWriter w;
    EXPECT_THROW(w.write_gamma(0), std::invalid_argument);
}

TEST(Zigzag, Examples) {
    EXPECT_EQ(zigzag(0), 1u);
    EXPECT_EQ(zigzag(-1), 2u);
    EXPECT_EQ(zigzag(1), 3u);
    EXPECT_EQ(zigzag(-2), 4u);
    EXPECT_EQ(zigzag(7), 15u);
    for (int64_t x = -1000; x <= 1000; ++x) EXPECT_EQ(unzigzag(zigzag(x)), x);
}

TEST(BitStream, FixedWidthFieldsAreLsbFirst) {
    BitWriter w;
    w.write(0b101, 3);
    w.write(0x1234, 16);
    w.write(~uint64_t(0), 64);
    const BitBlob b = w.take();
    EXPECT_EQ(b.size, 83u);
    EXPECT_EQ(to_bit_string(b).substr(0, 3), "101");
    EXPECT_EQ(b.words[0] & 0x7, 0b101u);
    BitReader r(b);
    EXPECT_EQ(r.read(3), 0b101u);
    EXPECT_EQ(r.read(16), 0x1234u);
    EXPECT_EQ(r.read(64), ~uint64_t(0));
    EXPECT_THROW(r.read(1), DecodeError);
}

TEST(BitStream, RandomFieldsRoundtrip) {
    std::mt19937_64 rng(5);
    std::vector<std::pair<uint64_t, unsigned>> fields;
    BitWriter w;
    for (int i = 0; i < 5000; ++i) {
        const unsigned width = rng() % 65;
        const uint64_t v = rng() & bits::low_mask(width);
        fields.push_back({v, width});
        w.write(v, width);
    }
    const BitBlob b = w.take();
    BitReader r(b);
    for (const auto& [v, width] : fields) ASSERT_EQ(r.read(width), v);
    EXPECT_EQ(r.remaining(), 0u);
}
