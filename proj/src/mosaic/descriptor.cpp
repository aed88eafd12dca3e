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

#include <cellmosaic/mosaic/descriptor.hpp>

#include <algorithm>
#include <cmath>

namespace cellmosaic {

std::vector<double> rgb_histogram(const RgbImage& image, int bins) {
    std::vector<double> hist(3 * static_cast<std::size_t>(bins), 0.0);
    if (image.empty()) {
        return hist;
    }
    const auto bytes = image.bytes();
    const std::size_t n = image.pixel_count();
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t ch = 0; ch < 3; ++ch) {
            const auto bin = static_cast<std::size_t>(bytes[3 * p + ch] * bins / 256);
            hist[ch * static_cast<std::size_t>(bins) + bin] += 1.0;
        }
    }
    for (double& v : hist) {
        v /= static_cast<double>(n);
    }
    return hist;
}

RgbImage read_patch(const Slide& slide, const PatchRef& patch, double mag) {
    const double to_base = slide.base_magnification() / patch.mag;
    const int out_side = std::max(1, static_cast<int>(std::lround(patch.side * mag / patch.mag)));
    return slide.read_footprint(patch.x * to_base, patch.y * to_base, patch.side * to_base, out_side);
}

std::vector<double> compute_patch_descriptor(const Slide& slide, const PatchRef& patch, double m_c) {
    return rgb_histogram(read_patch(slide, patch, m_c));
}

}  // namespace cellmosaic
