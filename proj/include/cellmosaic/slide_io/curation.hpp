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
#include <string>
#include <tuple>
#include <vector>

#include <cellmosaic/slide_io/manifest.hpp>

namespace cellmosaic {

//! The detailed class label: (morphology, primary diagnosis, tissue of origin).
struct LabelKey {
    std::string morphology;
    std::string primary_diagnosis;
    std::string tissue_of_origin;

    friend auto operator<=>(const LabelKey&, const LabelKey&) = default;
};

LabelKey label_key(const SlideRecord& record);

struct LabelGroup {
    LabelKey key;
    std::vector<std::string> member_slide_ids;
};

struct CurationOptions {
    std::size_t min_group_size{20};
    double test_fraction{0.10};
    double validation_fraction{0.10};
    double min_magnification{20.0};
    std::uint64_t seed{0};
};

enum class ExclusionReason { frozen_section, missing_label, low_magnification, small_group };

std::string_view to_string(ExclusionReason reason) noexcept;

struct Exclusion {
    std::string slide_id;
    ExclusionReason reason;
};

struct CurationResult {
    //! Input records in input order with `split` assigned.
    std::vector<SlideRecord> records;
    std::vector<Exclusion> exclusions;
    //! Groups that survived the size filter, sorted by key.
    std::vector<LabelGroup> groups;
};

//! Assigns train/validation/test splits. Frozen sections, slides lacking any label
//! field and slides below the magnification floor are excluded, then label groups
//! smaller than min_group_size are dropped. Per surviving group, test and
//! validation slides are drawn only from patients that own a single eligible
//! slide: floor(fraction * group size), at least one each, chosen by a seeded
//! Fisher-Yates shuffle of the candidates sorted by slide_id. Everything else
//! in the group becomes train. Input `split` values are ignored.
CurationResult curate_dataset(const std::vector<SlideRecord>& records, const CurationOptions& options);

}  // namespace cellmosaic
