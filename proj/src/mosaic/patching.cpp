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

#include <cellmosaic/mosaic/patching.hpp>

#include <algorithm>
#include <cmath>

#include <cellmosaic/common/errors.hpp>

namespace cellmosaic {

PatchGrid make_grid(int width, int height, int side, double mag) {
    if (side <= 0) {
        throw SpecError("patch side must be positive");
    }
    return {width / side, height / side, side, mag};
}

double tissue_fraction(const TissueMask& mask, double m_i, int x, int y, int side) {
    const double r = mask.mag / m_i;
    const int x0 = std::clamp(static_cast<int>(std::floor(x * r + 1e-9)), 0, mask.width);
    const int y0 = std::clamp(static_cast<int>(std::floor(y * r + 1e-9)), 0, mask.height);
    const int x1 = std::clamp(static_cast<int>(std::ceil((x + side) * r - 1e-9)), 0, mask.width);
    const int y1 = std::clamp(static_cast<int>(std::ceil((y + side) * r - 1e-9)), 0, mask.height);
    const std::size_t total = static_cast<std::size_t>(x1 - x0) * static_cast<std::size_t>(y1 - y0);
    if (total == 0) {
        return 0.0;
    }
    std::size_t positive = 0;
    for (int yy = y0; yy < y1; ++yy) {
        for (int xx = x0; xx < x1; ++xx) {
            positive += mask.at(xx, yy) ? 1 : 0;
        }
    }
    return static_cast<double>(positive) / static_cast<double>(total);
}

std::vector<PatchRef> extract_patches(const std::string& slide_id, int width_at_mi, int height_at_mi,
                                      const TissueMask& mask, double m_i, int side, double min_tissue_fraction) {
    const PatchGrid grid = make_grid(width_at_mi, height_at_mi, side, m_i);
    std::vector<PatchRef> patches;
    for (int row = 0; row < grid.rows; ++row) {
        for (int col = 0; col < grid.columns; ++col) {
            const int x = col * side;
            const int y = row * side;
            if (tissue_fraction(mask, m_i, x, y, side) >= min_tissue_fraction) {
                patches.push_back({slide_id, static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y),
                                   static_cast<std::uint32_t>(side), static_cast<float>(m_i)});
            }
        }
    }
    return patches;
}

std::vector<PatchRef> extract_patches(const Slide& slide, const TissueMask& mask, double m_i, int side,
                                      double min_tissue_fraction) {
    if (m_i > slide.base_magnification() + 1e-9) {
        throw SpecError("indexing magnification exceeds base magnification");
    }
    return extract_patches(slide.record().slide_id, slide.width_at(m_i), slide.height_at(m_i), mask, m_i, side,
                           min_tissue_fraction);
}

}  // namespace cellmosaic
