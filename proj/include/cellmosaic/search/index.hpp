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

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <cellmosaic/features/barcode.hpp>

namespace cellmosaic {

//! Labels carried by every indexed slide.
struct SlideInfo {
    std::string slide_id;
    std::string patient_id;
    std::string tumor_type;
    std::string project_code;

    friend bool operator==(const SlideInfo&, const SlideInfo&) = default;
};

struct SlideRange {
    SlideInfo info;
    std::uint32_t start{0};
    std::uint32_t length{0};

    friend bool operator==(const SlideRange&, const SlideRange&) = default;
};

inline constexpr std::uint16_t kIndexFileVersion = 1;

//! Immutable, bit-packed barcode index grouped by slide. Slides are sorted by
//! slide_id and each slide's patches by (y, x); a slide owns one contiguous,
//! non-empty entry range.
//!
//! File layout (little-endian):
//!   "KIMX" | u16 version | u32 bit_count | u32 entry_count | u16 len + extractor_id
//!   u32 slide_count, per slide: 4 x (u16 len + UTF-8) id, patient, tumor type,
//!   project code | u32 start | u32 length
//!   payload: per entry u32 x | u32 y | u32 side | f32 mag, then every entry's
//!   barcode as ceil(bit_count / 8) MSB-first bytes
//!   u32 CRC-32C of the payload
class BarcodedIndex {
  public:
    BarcodedIndex() = default;

    //! Throws MetadataError when a barcode's slide has no metadata and
    //! IncompatibleBarcodeError on mixed lengths or extractors.
    static BarcodedIndex build(std::vector<Barcode> barcodes, const std::vector<SlideInfo>& metadata);

    [[nodiscard]] std::size_t size() const noexcept { return patches_.size(); }
    [[nodiscard]] bool empty() const noexcept { return patches_.empty(); }
    [[nodiscard]] std::size_t bit_count() const noexcept { return bit_count_; }
    [[nodiscard]] std::size_t words_per_entry() const noexcept { return words_per_entry_; }
    [[nodiscard]] const std::string& extractor_id() const noexcept { return extractor_id_; }

    [[nodiscard]] std::span<const std::uint64_t> entry_words(std::size_t entry) const noexcept {
        return {words_.data() + entry * words_per_entry_, words_per_entry_};
    }
    [[nodiscard]] const PatchRef& entry_patch(std::size_t entry) const noexcept { return patches_[entry]; }
    [[nodiscard]] const SlideInfo& entry_slide(std::size_t entry) const noexcept {
        return slides_[entry_slide_[entry]].info;
    }
    [[nodiscard]] std::size_t entry_slide_index(std::size_t entry) const noexcept { return entry_slide_[entry]; }
    [[nodiscard]] Barcode entry_barcode(std::size_t entry) const;

    [[nodiscard]] const std::vector<SlideRange>& slides() const noexcept { return slides_; }
    //! nullptr when the slide is not indexed.
    [[nodiscard]] const SlideRange* find_slide(const std::string& slide_id) const;
    [[nodiscard]] std::vector<Barcode> slide_barcodes(const std::string& slide_id) const;

    //! Throws IncompatibleBarcodeError when `query` cannot be compared against this index.
    void check_compatible(const Barcode& query) const;

    [[nodiscard]] std::vector<std::uint8_t> serialize() const;
    //! FormatError on bad magic/version/structure, CorruptionError on truncation or CRC mismatch.
    static BarcodedIndex deserialize(std::span<const std::uint8_t> bytes);

    void save(const std::filesystem::path& path) const;
    static BarcodedIndex load(const std::filesystem::path& path);

    //! CRC-32C of the serialized payload.
    [[nodiscard]] std::uint32_t checksum() const;

    friend bool operator==(const BarcodedIndex&, const BarcodedIndex&) = default;

  private:
    void finalize_entry_slides();

    std::size_t bit_count_{0};
    std::size_t words_per_entry_{0};
    std::string extractor_id_;
    std::vector<std::uint64_t> words_;
    std::vector<PatchRef> patches_;
    std::vector<SlideRange> slides_;
    std::vector<std::uint32_t> entry_slide_;
};

}  // namespace cellmosaic
