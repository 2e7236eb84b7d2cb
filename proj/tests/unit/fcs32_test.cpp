/*
 * Copyright 2026 The ethpipe Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ethpipe/error.hpp"
#include "ethpipe/fcs32.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <string_view>

using namespace ethpipe;
using ethpipe::testing::Rng;

namespace {

ByteSpan text(std::string_view s)
{
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

} // namespace

// Reference values below were produced with an independent CRC-32 (zlib).
TEST(Crc32, CheckValues)
{
    EXPECT_EQ(crc32_compute(text("123456789")).value, 0xCBF43926u);
    EXPECT_EQ(crc32_compute({}).value, 0x00000000u);
    EXPECT_EQ(crc32_compute(text(std::string_view("\0", 1))).value, 0xD202EF8Du);
    EXPECT_EQ(crc32_compute(text("The quick brown fox jumps over the lazy dog")).value, 0x414FA339u);
}

TEST(Crc32, OracleAgreesOnCheckValues)
{
    EXPECT_EQ(crc32_bitwise_oracle(text("123456789")).value, 0xCBF43926u);
    EXPECT_EQ(crc32_bitwise_oracle({}).value, 0u);
    EXPECT_EQ(crc32_bitwise_oracle(text(std::string_view("\0", 1))).value, 0xD202EF8Du);
}

TEST(Crc32, TableMatchesBothOraclesOnRandomData)
{
    Rng rng(0xC0FFEE);
    for (int i = 0; i < 2000; ++i) {
        const auto data = rng.bytes(rng.range(0, 2000));
        const auto fast = crc32_compute(data).value;
        ASSERT_EQ(fast, crc32_bitwise_oracle(data).value) << "len " << data.size();
        ASSERT_EQ(fast, ethpipe::testing::crc32_reflected_bitwise(data)) << "len " << data.size();
    }
}

TEST(Crc32, IncrementalRegisterMatchesOneShot)
{
    Rng rng(11);
    const auto data = rng.bytes(777);
    Crc32Register r;
    r.update(ByteSpan(data).first(100));
    for (std::size_t i = 100; i < 300; ++i) r.update(data[i]);
    r.update(ByteSpan(data).subspan(300));
    EXPECT_EQ(r.value(), crc32_compute(data));
}

TEST(Fcs, AppendedLeastSignificantByteFirst)
{
    Bytes f(60);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = static_cast<std::uint8_t>(i);
    append_fcs(f, crc32_compute(f));
    ASSERT_EQ(f.size(), 64u);
    EXPECT_EQ(f[60], 0xEE);
    EXPECT_EQ(f[61], 0x7F);
    EXPECT_EQ(f[62], 0xEC);
    EXPECT_EQ(f[63], 0xB0);
    EXPECT_EQ(read_fcs(f), 0xB0EC7FEEu);
    EXPECT_EQ(fcs_verify(f), FcsVerdict::ok);
}

TEST(Fcs, ResidueConstant)
{
    EXPECT_EQ(kFcsResidue, 0xDEBB20E3u);
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        auto f = rng.bytes(rng.range(1, 1514));
        append_fcs(f, crc32_compute(f));
        Crc32Register r;
        r.update(f);
        ASSERT_EQ(r.raw(), kFcsResidue);
        ASSERT_EQ(fcs_verify_residue(f), FcsVerdict::ok);
    }
}

TEST(Fcs, VerifyRejectsShortInput)
{
    Bytes four{1, 2, 3, 4};
    try {
        fcs_verify(four);
        FAIL() << "expected InputTooShort";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::input_too_short);
    }
    EXPECT_THROW(fcs_verify_residue(four), Error);
}

TEST(Fcs, EverySingleBitFlipDetected)
{
    Rng rng(99);
    for (int n = 0; n < 5; ++n) {
        const auto frame = ethpipe::testing::random_frame(rng, 64, 200);
        for (std::size_t bit = 0; bit < frame.size() * 8; ++bit) {
            auto bad = frame;
            bad[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
            ASSERT_EQ(fcs_verify(bad), FcsVerdict::bad) << "bit " << bit;
            ASSERT_EQ(fcs_verify_residue(bad), FcsVerdict::bad) << "bit " << bit;
        }
    }
}

TEST(Fcs, BurstsUpTo32BitsDetected)
{
    Rng rng(1234);
    for (int n = 0; n < 3000; ++n) {
        auto f = ethpipe::testing::random_frame(rng);
        const std::size_t nbits = f.size() * 8;
        const std::size_t len = rng.range(1, 32);
        const std::size_t start = rng.range(0, nbits - len);
        // A burst of length len has both end bits set; interior bits are arbitrary.
        for (std::size_t k = 0; k < len; ++k) {
            const bool flip = k == 0 || k == len - 1 || rng.coin();
            if (flip) f[(start + k) / 8] ^= static_cast<std::uint8_t>(1u << ((start + k) % 8));
        }
        ASSERT_EQ(fcs_verify(f), FcsVerdict::bad) << "burst " << len << " at " << start;
    }
}

TEST(Fcs, VerdictNames)
{
    EXPECT_EQ(to_string(FcsVerdict::ok), "ok");
    EXPECT_EQ(to_string(FcsVerdict::bad), "bad");
    EXPECT_EQ(to_string(FcsVerdict::unchecked), "unchecked");
}
