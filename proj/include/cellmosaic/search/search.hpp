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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <cellmosaic/search/index.hpp>

namespace cellmosaic {

enum class LabelField { tumor_type, project_code };

const std::string& label_of(const SlideInfo& info, LabelField field) noexcept;

struct VoteCandidate {
    std::string label;
    std::uint64_t distance{0};
};

//! Most frequent label; ties go to the smaller summed distance, then to the
//! lexicographically smaller label. Empty input yields an empty label.
std::string majority_vote(std::span<const VoteCandidate> candidates);

struct Neighbor {
    std::size_t entry{0};
    std::uint32_t distance{0};
    SlideInfo slide;
};

struct PatchSearchResult {
    //! Ascending by (distance, entry index).
    std::vector<Neighbor> neighbors;
    std::string predicted_label;
};

inline constexpr std::size_t kDefaultK = 3;

//! Exhaustive Hamming k-NN. Entries of `exclude_patient` are skipped. Throws
//! EmptyIndexError when no candidate remains, IncompatibleBarcodeError on a
//! length/extractor mismatch.
PatchSearchResult knn_patch(const Barcode& query, const BarcodedIndex& index, std::size_t k = kDefaultK,
                            const std::optional<std::string>& exclude_patient = std::nullopt,
                            LabelField field = LabelField::tumor_type);

struct SlideMatchScore {
    std::string slide_id;
    //! Lower median over query patches of each patch's minimum distance to the slide.
    std::uint32_t score{0};
    std::size_t slide_index{0};

    friend bool operator==(const SlideMatchScore&, const SlideMatchScore&) = default;
};

using SlideFilter = std::function<bool(const SlideInfo&)>;

//! Median-of-min slide matching, ranked ascending by (score, slide_id). Slides
//! of `exclude_patient` and slides rejected by `filter` are not candidates.
//! Throws SpecError for an empty query and EmptyIndexError without candidates.
std::vector<SlideMatchScore> match_wsi(std::span<const Barcode> query, const BarcodedIndex& index,
                                       const std::optional<std::string>& exclude_patient = std::nullopt,
                                       const SlideFilter& filter = {});

//! Lower median: element (n - 1) / 2 of the sorted values.
std::uint32_t lower_median(std::vector<std::uint32_t> values);

}  // namespace cellmosaic
