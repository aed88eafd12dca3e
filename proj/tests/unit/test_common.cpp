// Copyright 2026 The cellmosaic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <atomic>
#include <string>

#include <cellmosaic/common/binary_io.hpp>
#include <cellmosaic/common/crc32c.hpp>
#include <cellmosaic/common/errors.hpp>
#include <cellmosaic/common/parallel.hpp>
#include <cellmosaic/common/rng.hpp>

#include "../support.hpp"

using namespace cellmosaic;

TEST_SUITE("common") {
    TEST_CASE("crc32c check value") {
        const std::string s = "123456789";
        CHECK(crc32c(std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size())) == 0xE3069283U);
        CHECK(crc32c({}) == 0U);
    }

    TEST_CASE("rng streams are reproducible and salts separate them") {
        Rng a(42);
        Rng b(42);
        for (int i = 0; i < 100; ++i) {
            CHECK(a.next() == b.next());
        }
        CHECK(mix_seed(1, "a") != mix_seed(1, "b"));
        CHECK(mix_seed(1, "a") == mix_seed(1, "a"));
        CHECK(mix_seed(1, std::uint64_t{3}) != mix_seed(2, std::uint64_t{3}));
        Rng r(7);
        for (int i = 0; i < 1000; ++i) {
            const double u = r.uniform();
            CHECK(u >= 0.0);
            CHECK(u < 1.0);
            CHECK(r.below(13) < 13U);
        }
    }

    TEST_CASE("byte writer and reader are little-endian and bounds-checked") {
        ByteWriter w;
        w.put_u16(0x0102);
        w.put_u32(0x03040506);
        w.put_f32(1.5f);
        w.put_string16("hi");
        const auto bytes = w.release();
        CHECK(bytes[0] == 0x02);
        CHECK(bytes[1] == 0x01);
        CHECK(bytes[2] == 0x06);
        ByteReader r(bytes);
        CHECK(r.get_u16() == 0x0102);
        CHECK(r.get_u32() == 0x03040506U);
        CHECK(r.get_f32() == 1.5f);
        CHECK(r.get_string16() == "hi");
        CHECK(r.remaining() == 0);
        CHECK_THROWS_AS(r.get_u8(), CorruptionError);
    }

    TEST_CASE("missing file is an io error") {
        CHECK_THROWS_AS(read_file_bytes("/nonexistent/cellmosaic/file.bin"), IoError);
    }

    TEST_CASE("parallel_for runs every index once and rethrows") {
        std::vector<std::atomic<int>> hits(257);
        parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
        for (const auto& h : hits) {
            CHECK(h.load() == 1);
        }
        CHECK_THROWS_AS(parallel_for(10, 3,
                                     [](std::size_t i) {
                                         if (i == 5) throw SpecError("boom");
                                     }),
                        SpecError);
        parallel_for(0, 4, [](std::size_t) { FAIL("no work expected"); });
    }
}
