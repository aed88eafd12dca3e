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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <cellmosaic/mosaic/types.hpp>

namespace cellmosaic {

//! Real-valued embedding of one patch.
struct FeatureVector {
    PatchRef patch;
    std::vector<float> values;
    std::string extractor_id;

    friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

inline constexpr std::size_t kBitsPerWord = 64;

constexpr std::size_t words_for_bits(std::size_t bits) noexcept { return (bits + kBitsPerWord - 1) / kBitsPerWord; }
constexpr std::size_t bytes_for_bits(std::size_t bits) noexcept { return (bits + 7) / 8; }

//! Bit i lives in word i / 64 at position 63 - i % 64, so the words read
//! most-significant-bit first. Padding bits past bit_count are always zero.
class PackedBits {
  public:
    PackedBits() = default;
    explicit PackedBits(std::size_t bit_count) : bit_count_(bit_count), words_(words_for_bits(bit_count), 0) {}

    static PackedBits from_bools(const std::vector<bool>& bits);
    //! MSB-first byte stream of bytes_for_bits(bit_count) bytes; padding must be zero.
    static PackedBits from_bytes(std::span<const std::uint8_t> bytes, std::size_t bit_count);

    [[nodiscard]] std::size_t size() const noexcept { return bit_count_; }
    [[nodiscard]] bool test(std::size_t i) const noexcept {
        return ((words_[i / kBitsPerWord] >> (kBitsPerWord - 1 - i % kBitsPerWord)) & 1U) != 0;
    }
    void set(std::size_t i) noexcept { words_[i / kBitsPerWord] |= std::uint64_t{1} << (kBitsPerWord - 1 - i % kBitsPerWord); }

    [[nodiscard]] std::span<const std::uint64_t> words() const noexcept { return words_; }
    [[nodiscard]] std::vector<bool> to_bools() const;
    [[nodiscard]] std::vector<std::uint8_t> to_bytes() const;
    //! "1010..." rendering, handy in tests and logs.
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const PackedBits&, const PackedBits&) = default;

  private:
    std::size_t bit_count_{0};
    std::vector<std::uint64_t> words_;
};

struct Barcode {
    PatchRef patch;
    PackedBits bits;
    std::string extractor_id;

    friend bool operator==(const Barcode&, const Barcode&) = default;
};

//! Bit i = 1 iff values[i+1] > values[i]; d values give d - 1 bits.
PackedBits encode_differences(std::span<const float> values);

//! Throws SpecError when the vector has fewer than two values.
Barcode barcode(const FeatureVector& feature);

//! XOR + popcount over equal-length word spans.
std::uint32_t hamming_words(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) noexcept;

//! Throws IncompatibleBarcodeError on mismatched length or extractor.
std::uint32_t hamming(const Barcode& a, const Barcode& b);

}  // namespace cellmosaic
