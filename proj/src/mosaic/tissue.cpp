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

#include <cellmosaic/mosaic/tissue.hpp>

#include <algorithm>
#include <numeric>

#include <cellmosaic/common/errors.hpp>

namespace cellmosaic {

std::size_t TissueMask::area() const noexcept {
    return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), std::uint8_t{1}));
}

std::vector<std::uint8_t> saturation_channel(const RgbImage& image) {
    std::vector<std::uint8_t> sat(image.pixel_count());
    const auto bytes = image.bytes();
    for (std::size_t p = 0; p < sat.size(); ++p) {
        const int r = bytes[3 * p];
        const int g = bytes[3 * p + 1];
        const int b = bytes[3 * p + 2];
        const int hi = std::max({r, g, b});
        const int lo = std::min({r, g, b});
        // S = (max - min) / max, rounded to 0..255
        sat[p] = hi == 0 ? 0 : static_cast<std::uint8_t>((255 * (hi - lo) + hi / 2) / hi);
    }
    return sat;
}

int otsu_threshold(const std::array<std::size_t, 256>& histogram) {
    double total = 0.0;
    double weighted = 0.0;
    for (int v = 0; v < 256; ++v) {
        total += static_cast<double>(histogram[static_cast<std::size_t>(v)]);
        weighted += v * static_cast<double>(histogram[static_cast<std::size_t>(v)]);
    }
    if (total == 0.0) {
        return 0;
    }
    double w0 = 0.0;
    double sum0 = 0.0;
    double best = -1.0;
    int best_t = 0;
    for (int t = 0; t < 255; ++t) {
        w0 += static_cast<double>(histogram[static_cast<std::size_t>(t)]);
        sum0 += t * static_cast<double>(histogram[static_cast<std::size_t>(t)]);
        const double w1 = total - w0;
        if (w0 == 0.0 || w1 == 0.0) {
            continue;
        }
        const double mu0 = sum0 / w0;
        const double mu1 = (weighted - sum0) / w1;
        const double between = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
        if (between > best) {
            best = between;
            best_t = t;
        }
    }
    return best_t;
}

std::vector<std::uint8_t> majority_smooth(const std::vector<std::uint8_t>& cells, int width, int height) {
    std::vector<std::uint8_t> out(cells.size(), 0);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            int votes = 0;
            int voters = 0;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    const int nx = x + dx;
                    const int ny = y + dy;
                    if (nx < 0 || ny < 0 || nx >= width || ny >= height) {
                        continue;
                    }
                    ++voters;
                    votes += cells[static_cast<std::size_t>(ny) * static_cast<std::size_t>(width) + static_cast<std::size_t>(nx)];
                }
            }
            out[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)] =
                2 * votes > voters ? 1 : 0;
        }
    }
    return out;
}

TissueMask segment_thumbnail(const RgbImage& thumbnail, double mag) {
    TissueMask mask;
    mask.width = thumbnail.width();
    mask.height = thumbnail.height();
    mask.mag = mag;
    const auto sat = saturation_channel(thumbnail);

    std::array<std::size_t, 256> histogram{};
    for (const std::uint8_t s : sat) {
        ++histogram[s];
    }
    const int t = otsu_threshold(histogram);
    std::size_t low_count = 0;
    double low_sum = 0.0;
    for (int v = 0; v <= t; ++v) {
        low_count += histogram[static_cast<std::size_t>(v)];
        low_sum += v * static_cast<double>(histogram[static_cast<std::size_t>(v)]);
    }
    const bool no_glass = low_count == 0 || low_sum / static_cast<double>(low_count) > kBackgroundSaturation ||
                          low_count == sat.size();
    const int cut = no_glass ? kBackgroundSaturation : std::max<int>(t, kBackgroundSaturation);

    std::vector<std::uint8_t> raw(sat.size());
    std::transform(sat.begin(), sat.end(), raw.begin(), [cut](std::uint8_t s) { return s > cut ? 1 : 0; });
    mask.cells = majority_smooth(raw, mask.width, mask.height);
    return mask;
}

TissueMask segment_tissue(const Slide& slide, double m_c) {
    if (m_c > slide.base_magnification()) {
        throw SpecError("segmentation magnification exceeds base magnification");
    }
    return segment_thumbnail(slide.thumbnail(m_c), m_c);
}

}  // namespace cellmosaic
