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

#include <cellmosaic/slide_io/curation.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include <cellmosaic/common/errors.hpp>
#include <cellmosaic/common/rng.hpp>

namespace cellmosaic {

LabelKey label_key(const SlideRecord& record) {
    return {record.morphology, record.primary_diagnosis, record.tissue_of_origin};
}

std::string_view to_string(ExclusionReason reason) noexcept {
    switch (reason) {
        case ExclusionReason::frozen_section:
            return "frozen_section";
        case ExclusionReason::missing_label:
            return "missing_label";
        case ExclusionReason::low_magnification:
            return "low_magnification";
        case ExclusionReason::small_group:
            break;
    }
    return "small_group";
}

namespace {

    std::size_t split_quota(double fraction, std::size_t group_size) {
        const auto n = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(group_size) + 1e-9));
        return std::max<std::size_t>(1, n);
    }

}  // namespace

CurationResult curate_dataset(const std::vector<SlideRecord>& records, const CurationOptions& options) {
    if (!(options.test_fraction > 0.0 && options.test_fraction < 0.5) ||
        !(options.validation_fraction > 0.0 && options.validation_fraction < 0.5)) {
        throw SpecError("test and validation fractions must lie in (0, 0.5)");
    }
    CurationResult result;
    result.records = records;
    for (auto& r : result.records) {
        r.split = Split::excluded;
    }

    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < result.records.size(); ++i) {
        const auto& r = result.records[i];
        if (r.section_kind == SectionKind::frozen) {
            result.exclusions.push_back({r.slide_id, ExclusionReason::frozen_section});
        } else if (r.morphology.empty() || r.primary_diagnosis.empty() || r.tissue_of_origin.empty()) {
            result.exclusions.push_back({r.slide_id, ExclusionReason::missing_label});
        } else if (!r.base_magnification || *r.base_magnification < options.min_magnification) {
            result.exclusions.push_back({r.slide_id, ExclusionReason::low_magnification});
        } else {
            eligible.push_back(i);
        }
    }

    std::unordered_map<std::string, std::size_t> slides_per_patient;
    std::map<LabelKey, std::vector<std::size_t>> groups;
    for (const std::size_t i : eligible) {
        ++slides_per_patient[result.records[i].patient_id];
        groups[label_key(result.records[i])].push_back(i);
    }

    Rng rng(mix_seed(options.seed, "curation"));
    for (auto& [key, members] : groups) {
        if (members.size() < options.min_group_size) {
            for (const std::size_t i : members) {
                result.exclusions.push_back({result.records[i].slide_id, ExclusionReason::small_group});
            }
            continue;
        }
        std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
            return result.records[a].slide_id < result.records[b].slide_id;
        });
        std::vector<std::size_t> candidates;
        for (const std::size_t i : members) {
            if (slides_per_patient[result.records[i].patient_id] == 1) {
                candidates.push_back(i);
            }
        }
        for (std::size_t i = candidates.size(); i > 1; --i) {
            std::swap(candidates[i - 1], candidates[rng.below(i)]);
        }
        const std::size_t n_test = std::min(candidates.size(), split_quota(options.test_fraction, members.size()));
        const std::size_t n_val =
            std::min(candidates.size() - n_test, split_quota(options.validation_fraction, members.size()));
        for (const std::size_t i : members) {
            result.records[i].split = Split::train;
        }
        for (std::size_t c = 0; c < n_test + n_val; ++c) {
            result.records[candidates[c]].split = c < n_test ? Split::test : Split::validation;
        }

        LabelGroup group{key, {}};
        for (const std::size_t i : members) {
            group.member_slide_ids.push_back(result.records[i].slide_id);
        }
        result.groups.push_back(std::move(group));
    }
    return result;
}

}  // namespace cellmosaic
