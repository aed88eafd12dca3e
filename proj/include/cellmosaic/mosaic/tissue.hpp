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

#include <array>
#include <cstdint>
#include <vector>

#include <cellmosaic/slide_io/image.hpp>
#include <cellmosaic/slide_io/slide.hpp>

namespace cellmosaic {

//! Binary tissue raster at the segmentation magnification.
struct TissueMask {
    int width{0};
    int height{0};
    //! Segmentation magnification of the grid.
    double mag{0.0};
    //! 1 = tissue, row-major.
    std::vector<std::uint8_t> cells;

    [[nodiscard]] bool at(int x, int y) const noexcept {
        return cells[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)] != 0;
    }
    [[nodiscard]] std::size_t area() const noexcept;
};

//! HSV saturation of every pixel quantized to 0..255.
std::vector<std::uint8_t> saturation_channel(const RgbImage& image);

//! Otsu's threshold over a 256-bin histogram: the level t maximising between-class
//! variance for classes {v <= t} and {v > t}. Returns 0 for a single-valued histogram.
int otsu_threshold(const std::array<std::size_t, 256>& histogram);

//! Saturation below which a pixel is never tissue (white or grey glass).
inline constexpr std::uint8_t kBackgroundSaturation = 20;

//! Thresholds saturation with Otsu's level, then applies one 3x3 majority pass.
//! When the lower Otsu class is itself saturated (no glass in view) every
//! pixel above kBackgroundSaturation counts as tissue.
TissueMask segment_thumbnail(const RgbImage& thumbnail, double mag);

//! Segments the slide at magnification m_C.
TissueMask segment_tissue(const Slide& slide, double m_c);

//! One pass of 3x3 majority voting; out-of-image neighbours do not vote.
std::vector<std::uint8_t> majority_smooth(const std::vector<std::uint8_t>& cells, int width, int height);

}  // namespace cellmosaic
