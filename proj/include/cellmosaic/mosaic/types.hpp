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
#include <string_view>
#include <vector>

namespace cellmosaic {

//! A square patch of side `side` at magnification `mag`, top-left (x, y) in `mag` pixels.
struct PatchRef {
    std::string slide_id;
    std::uint32_t x{0};
    std::uint32_t y{0};
    std::uint32_t side{0};
    float mag{0.0f};

    friend bool operator==(const PatchRef&, const PatchRef&) = default;
};

enum class MosaicStage { full_mosaic, cell_mosaic };

std::string_view to_string(MosaicStage stage) noexcept;

struct MosaicEntry {
    PatchRef patch;
    //! Position in the slide's kept-patch list.
    std::size_t patch_index{0};
    int cluster_id{0};

    friend bool operator==(const MosaicEntry&, const MosaicEntry&) = default;
};

struct Mosaic {
    std::string slide_id;
    MosaicStage stage{MosaicStage::full_mosaic};
    std::vector<MosaicEntry> entries;

    [[nodiscard]] std::size_t size() const noexcept { return entries.size(); }
    friend bool operator==(const Mosaic&, const Mosaic&) = default;
};

//! One JSON object per line: {slide_id, x, y, side, mag, cluster_id, stage}.
std::string mosaic_to_jsonl(const Mosaic& mosaic);

}  // namespace cellmosaic
