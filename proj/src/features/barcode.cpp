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

#include <cellmosaic/features/barcode.hpp>

#include <bit>

#include <cellmosaic/common/errors.hpp>

namespace cellmosaic {

PackedBits PackedBits::from_bools(const std::vector<bool>& bits) {
    PackedBits packed(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) {
            packed.set(i);
        }
    }
    return packed;
}

PackedBits PackedBits::from_bytes(std::span<const std::uint8_t> bytes, std::size_t bit_count) {
    if (bytes.size() != bytes_for_bits(bit_count)) {
        throw FormatError("packed barcode has the wrong byte length");
    }
    PackedBits packed(bit_count);
    for (std::size_t b = 0; b < bytes.size(); ++b) {
        const std::size_t word = b / 8;
        const std::size_t shift = 8 * (7 - b % 8);
        packed.words_[word] |= static_cast<std::uint64_t>(bytes[b]) << shift;
    }
    const std::size_t tail = bit_count % kBitsPerWord;
    if (tail != 0 && (packed.words_.back() & (~std::uint64_t{0} >> tail)) != 0) {
        throw CorruptionError("nonzero padding bits in packed barcode");
    }
    return packed;
}

std::vector<bool> PackedBits::to_bools() const {
    std::vector<bool> bits(bit_count_);
    for (std::size_t i = 0; i < bit_count_; ++i) {
        bits[i] = test(i);
    }
    return bits;
}

std::vector<std::uint8_t> PackedBits::to_bytes() const {
    std::vector<std::uint8_t> bytes(bytes_for_bits(bit_count_));
    for (std::size_t b = 0; b < bytes.size(); ++b) {
        bytes[b] = static_cast<std::uint8_t>(words_[b / 8] >> (8 * (7 - b % 8)));
    }
    return bytes;
}

std::string PackedBits::to_string() const {
    std::string s(bit_count_, '0');
    for (std::size_t i = 0; i < bit_count_; ++i) {
        if (test(i)) {
            s[i] = '1';
        }
    }
    return s;
}

PackedBits encode_differences(std::span<const float> values) {
    PackedBits bits(values.size() < 2 ? 0 : values.size() - 1);
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        if (values[i + 1] > values[i]) {
            bits.set(i);
        }
    }
    return bits;
}

Barcode barcode(const FeatureVector& feature) {
    if (feature.values.size() < 2) {
        throw SpecError("barcoding needs at least two feature values");
    }
    return {feature.patch, encode_differences(feature.values), feature.extractor_id};
}

std::uint32_t hamming_words(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) noexcept {
    std::uint32_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d += static_cast<std::uint32_t>(std::popcount(a[i] ^ b[i]));
    }
    return d;
}

std::uint32_t hamming(const Barcode& a, const Barcode& b) {
    if (a.bits.size() != b.bits.size()) {
        throw IncompatibleBarcodeError("barcode lengths differ: " + std::to_string(a.bits.size()) + " vs " +
                                       std::to_string(b.bits.size()));
    }
    if (a.extractor_id != b.extractor_id) {
        throw IncompatibleBarcodeError("barcodes come from different extractors: '" + a.extractor_id + "' vs '" +
                                       b.extractor_id + "'");
    }
    return hamming_words(a.bits.words(), b.bits.words());
}

}  // namespace cellmosaic
