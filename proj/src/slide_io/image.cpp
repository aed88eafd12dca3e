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

#include <cellmosaic/slide_io/image.hpp>

#include <algorithm>
#include <cmath>

#include <cellmosaic/common/errors.hpp>

namespace cellmosaic {

RgbImage::RgbImage(int width, int height, Rgb fill)
    : width_(width), height_(height), data_(3 * static_cast<std::size_t>(std::max(width, 0)) *
                                            static_cast<std::size_t>(std::max(height, 0))) {
    if (width < 0 || height < 0) {
        throw SpecError("negative image dimensions");
    }
    for (std::size_t i = 0; i < data_.size(); i += 3) {
        data_[i] = fill.r;
        data_[i + 1] = fill.g;
        data_[i + 2] = fill.b;
    }
}

RgbImage RgbImage::crop(int x, int y, int w, int h) const {
    if (x < 0 || y < 0 || w < 0 || h < 0 || x + w > width_ || y + h > height_) {
        throw BoundsError("crop rectangle outside image");
    }
    RgbImage out(w, h);
    const std::size_t row_bytes = 3 * static_cast<std::size_t>(w);
    for (int row = 0; row < h; ++row) {
        const auto* src = &data_[offset(x, y + row)];
        std::copy(src, src + row_bytes, &out.data_[out.offset(0, row)]);
    }
    return out;
}

namespace {

    struct Tap {
        int index;
        double weight;
    };

    // Source taps for every output index along one axis.
    std::vector<std::vector<Tap>> axis_taps(double origin, double step, int out_n, int src_n) {
        std::vector<std::vector<Tap>> taps(static_cast<std::size_t>(out_n));
        for (int i = 0; i < out_n; ++i) {
            const double lo = std::max(0.0, origin + i * step);
            const double hi = std::min(static_cast<double>(src_n), origin + (i + 1) * step);
            auto& t = taps[static_cast<std::size_t>(i)];
            for (int s = static_cast<int>(std::floor(lo)); s < src_n && s < hi; ++s) {
                const double w = std::min(hi, s + 1.0) - std::max(lo, static_cast<double>(s));
                if (w > 1e-12) {
                    t.push_back({s, w});
                }
            }
        }
        return taps;
    }

}  // namespace

RgbImage resample_area(const RgbImage& src, double x0, double y0, double step, int out_width, int out_height) {
    if (step < 1.0) {
        throw SpecError("area resampling only downsamples (step >= 1)");
    }
    const auto xt = axis_taps(x0, step, out_width, src.width());
    const auto yt = axis_taps(y0, step, out_height, src.height());

    // Horizontal pass into a double buffer restricted to the rows we need.
    int row_lo = src.height();
    int row_hi = 0;
    for (const auto& t : yt) {
        if (!t.empty()) {
            row_lo = std::min(row_lo, t.front().index);
            row_hi = std::max(row_hi, t.back().index + 1);
        }
    }
    row_lo = std::min(row_lo, row_hi);
    const auto rows = static_cast<std::size_t>(row_hi - row_lo);
    std::vector<double> horiz(rows * static_cast<std::size_t>(out_width) * 3, 0.0);
    std::vector<double> horiz_w(static_cast<std::size_t>(out_width), 0.0);
    const auto bytes = src.bytes();
    for (int i = 0; i < out_width; ++i) {
        for (const auto& tap : xt[static_cast<std::size_t>(i)]) {
            horiz_w[static_cast<std::size_t>(i)] += tap.weight;
        }
    }
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t src_row = (static_cast<std::size_t>(row_lo) + r) * static_cast<std::size_t>(src.width()) * 3;
        for (int i = 0; i < out_width; ++i) {
            double* acc = &horiz[(r * static_cast<std::size_t>(out_width) + static_cast<std::size_t>(i)) * 3];
            for (const auto& tap : xt[static_cast<std::size_t>(i)]) {
                const std::uint8_t* p = &bytes[src_row + 3 * static_cast<std::size_t>(tap.index)];
                acc[0] += tap.weight * p[0];
                acc[1] += tap.weight * p[1];
                acc[2] += tap.weight * p[2];
            }
        }
    }

    RgbImage out(out_width, out_height);
    auto out_bytes = out.bytes();
    for (int j = 0; j < out_height; ++j) {
        const auto& ytaps = yt[static_cast<std::size_t>(j)];
        double wy = 0.0;
        for (const auto& tap : ytaps) {
            wy += tap.weight;
        }
        for (int i = 0; i < out_width; ++i) {
            double acc[3] = {0.0, 0.0, 0.0};
            for (const auto& tap : ytaps) {
                const double* h = &horiz[((static_cast<std::size_t>(tap.index - row_lo)) * static_cast<std::size_t>(out_width) +
                                          static_cast<std::size_t>(i)) *
                                         3];
                acc[0] += tap.weight * h[0];
                acc[1] += tap.weight * h[1];
                acc[2] += tap.weight * h[2];
            }
            const double total = wy * horiz_w[static_cast<std::size_t>(i)];
            std::uint8_t* o = &out_bytes[(static_cast<std::size_t>(j) * static_cast<std::size_t>(out_width) +
                                          static_cast<std::size_t>(i)) *
                                         3];
            for (int c = 0; c < 3; ++c) {
                const double v = total > 0.0 ? acc[c] / total : 0.0;
                o[c] = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
            }
        }
    }
    return out;
}

RgbImage downsample_area(const RgbImage& src, double factor) {
    if (!(factor > 0.0 && factor <= 1.0)) {
        throw SpecError("downsample factor must be in (0, 1]");
    }
    if (factor == 1.0) {
        return src;
    }
    const int w = static_cast<int>(std::ceil(src.width() * factor - 1e-9));
    const int h = static_cast<int>(std::ceil(src.height() * factor - 1e-9));
    return resample_area(src, 0.0, 0.0, 1.0 / factor, w, h);
}

}  // namespace cellmosaic
