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

#include <cellmosaic/search/search.hpp>

#include <algorithm>
#include <limits>
#include <map>
#include <tuple>

#include <cellmosaic/common/errors.hpp>

namespace cellmosaic {

const std::string& label_of(const SlideInfo& info, LabelField field) noexcept {
    return field == LabelField::project_code ? info.project_code : info.tumor_type;
}

std::string majority_vote(std::span<const VoteCandidate> candidates) {
    struct Tally {
        std::size_t count{0};
        std::uint64_t distance{0};
    };
    std::map<std::string, Tally> tallies;
    for (const auto& c : candidates) {
        auto& t = tallies[c.label];
        ++t.count;
        t.distance += c.distance;
    }
    const std::string* best = nullptr;
    Tally best_tally;
    // std::map iterates labels in lexicographic order, so strict comparisons keep the smaller label.
    for (const auto& [label, t] : tallies) {
        if (best == nullptr || t.count > best_tally.count ||
            (t.count == best_tally.count && t.distance < best_tally.distance)) {
            best = &label;
            best_tally = t;
        }
    }
    return best == nullptr ? std::string{} : *best;
}

PatchSearchResult knn_patch(const Barcode& query, const BarcodedIndex& index, std::size_t k,
                            const std::optional<std::string>& exclude_patient, LabelField field) {
    if (k == 0) {
        throw SpecError("k must be at least 1");
    }
    if (!index.empty()) {
        index.check_compatible(query);
    }
    std::vector<std::pair<std::uint32_t, std::size_t>> scored;
    scored.reserve(index.size());
    const auto q = query.bits.words();
    for (std::size_t e = 0; e < index.size(); ++e) {
        if (exclude_patient && index.entry_slide(e).patient_id == *exclude_patient) {
            continue;
        }
        scored.emplace_back(hamming_words(q, index.entry_words(e)), e);
    }
    if (scored.empty()) {
        throw EmptyIndexError("no index entries left to search");
    }
    const std::size_t take = std::min(k, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<long>(take), scored.end());

    PatchSearchResult result;
    std::vector<VoteCandidate> votes;
    for (std::size_t i = 0; i < take; ++i) {
        const auto [d, e] = scored[i];
        result.neighbors.push_back({e, d, index.entry_slide(e)});
        votes.push_back({label_of(index.entry_slide(e), field), d});
    }
    result.predicted_label = majority_vote(votes);
    return result;
}

std::uint32_t lower_median(std::vector<std::uint32_t> values) {
    if (values.empty()) {
        throw SpecError("median of an empty set");
    }
    const auto mid = values.begin() + static_cast<long>((values.size() - 1) / 2);
    std::nth_element(values.begin(), mid, values.end());
    return *mid;
}

std::vector<SlideMatchScore> match_wsi(std::span<const Barcode> query, const BarcodedIndex& index,
                                       const std::optional<std::string>& exclude_patient, const SlideFilter& filter) {
    if (query.empty()) {
        throw SpecError("median-of-min matching needs at least one query barcode");
    }
    if (!index.empty()) {
        for (const auto& q : query) {
            index.check_compatible(q);
        }
    }
    std::vector<SlideMatchScore> ranked;
    std::vector<std::uint32_t> minima(query.size());
    const auto& slides = index.slides();
    for (std::size_t s = 0; s < slides.size(); ++s) {
        const auto& range = slides[s];
        if (exclude_patient && range.info.patient_id == *exclude_patient) {
            continue;
        }
        if (filter && !filter(range.info)) {
            continue;
        }
        for (std::size_t qi = 0; qi < query.size(); ++qi) {
            const auto q = query[qi].bits.words();
            std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
            for (std::uint32_t e = range.start; e < range.start + range.length; ++e) {
                best = std::min(best, hamming_words(q, index.entry_words(e)));
            }
            minima[qi] = best;
        }
        ranked.push_back({range.info.slide_id, lower_median(minima), s});
    }
    if (ranked.empty()) {
        throw EmptyIndexError("no candidate slides left to match");
    }
    std::sort(ranked.begin(), ranked.end(), [](const SlideMatchScore& a, const SlideMatchScore& b) {
        return std::tie(a.score, a.slide_id) < std::tie(b.score, b.slide_id);
    });
    return ranked;
}

}  // namespace cellmosaic
