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

#include <cellmosaic/cellularity/cell_mosaic.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

#include <cellmosaic/cellularity/deconvolution.hpp>
#include <cellmosaic/common/errors.hpp>
#include <cellmosaic/slide_io/raster_codec.hpp>

namespace cellmosaic {

std::size_t default_min_content_bytes(int patch_side) {
    const double scale = patch_side / 1000.0;
    return static_cast<std::size_t>(std::llround(100.0 * 1000.0 * scale * scale));
}

std::size_t content_bytes(const RgbImage& patch) { return encode_jpeg(patch, kContentJpegQuality).size(); }

CellularityScore score_patch(const PatchRef& ref, const RgbImage& pixels, const StainMatrix& w, double h_threshold) {
    return {ref, cellularity_ratio(pixels, w, h_threshold), content_bytes(pixels)};
}

std::size_t cell_mosaic_quota(std::size_t mosaic_size, double t_cell) {
    const auto q = static_cast<std::size_t>(std::llround(t_cell * static_cast<double>(mosaic_size)));
    return std::max<std::size_t>(1, q);
}

Mosaic cell_mosaic(const Mosaic& mosaic, const std::vector<CellularityScore>& scores, double t_cell,
                   std::size_t min_content_bytes) {
    if (scores.size() != mosaic.entries.size()) {
        throw ShapeError("cellularity scores do not cover the mosaic");
    }
    Mosaic out;
    out.slide_id = mosaic.slide_id;
    out.stage = MosaicStage::cell_mosaic;
    if (mosaic.entries.empty()) {
        return out;
    }

    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (scores[i].content_bytes >= min_content_bytes) {
            order.push_back(i);
        }
    }
    if (order.empty()) {
        throw EmptyCellMosaicError("no mosaic patch of slide '" + mosaic.slide_id + "' reaches " +
                                   std::to_string(min_content_bytes) + " content bytes");
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a].ratio > scores[b].ratio; });
    const std::size_t keep = std::min(order.size(), cell_mosaic_quota(mosaic.entries.size(), t_cell));
    for (std::size_t r = 0; r < keep; ++r) {
        out.entries.push_back(mosaic.entries[order[r]]);
    }
    return out;
}

}  // namespace cellmosaic
