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
#include <vector>

#include <cellmosaic/cellularity/stain_matrix.hpp>
#include <cellmosaic/mosaic/types.hpp>
#include <cellmosaic/slide_io/image.hpp>

namespace cellmosaic {

struct CellularityScore {
    PatchRef patch;
    //! mask-positive pixels / all pixels
    double ratio{0.0};
    //! Encoded JPEG size of the patch, a texture proxy.
    std::size_t content_bytes{0};
};

inline constexpr double kDefaultTopCellFraction = 0.20;
inline constexpr int kContentJpegQuality = 90;

//! 100 KB scaled by patch area relative to a 1000 px patch.
std::size_t default_min_content_bytes(int patch_side);

std::size_t content_bytes(const RgbImage& patch);

CellularityScore score_patch(const PatchRef& ref, const RgbImage& pixels, const StainMatrix& w, double h_threshold);

//! max(1, round(t_cell * mosaic_size))
std::size_t cell_mosaic_quota(std::size_t mosaic_size, double t_cell);

//! Keeps the high-cellularity part of a mosaic. scores[i] belongs to
//! mosaic.entries[i]. Patches below min_content_bytes are dropped, the rest are
//! ranked by ratio (descending, ties to the lower mosaic position) and the first
//! cell_mosaic_quota(|mosaic|, t_cell) survivors are kept, in rank order.
//! Throws EmptyCellMosaicError when no patch passes the content filter.
Mosaic cell_mosaic(const Mosaic& mosaic, const std::vector<CellularityScore>& scores,
                   double t_cell = kDefaultTopCellFraction, std::size_t min_content_bytes = 0);

}  // namespace cellmosaic
