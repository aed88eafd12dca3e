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
#include <cstdint>
#include <span>
#include <vector>

namespace cellmosaic {

struct Rgb {
    std::uint8_t r{0};
    std::uint8_t g{0};
    std::uint8_t b{0};

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

//! Interleaved 8-bit RGB raster, row-major, value semantics.
class RgbImage {
  public:
    RgbImage() = default;
    RgbImage(int width, int height, Rgb fill = {});

    [[nodiscard]] int width() const noexcept { return width_; }
    [[nodiscard]] int height() const noexcept { return height_; }
    [[nodiscard]] bool empty() const noexcept { return width_ == 0 || height_ == 0; }
    [[nodiscard]] std::size_t pixel_count() const noexcept {
        return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    }

    [[nodiscard]] Rgb at(int x, int y) const noexcept {
        const std::uint8_t* p = &data_[offset(x, y)];
        return {p[0], p[1], p[2]};
    }
    void set(int x, int y, Rgb c) noexcept {
        std::uint8_t* p = &data_[offset(x, y)];
        p[0] = c.r;
        p[1] = c.g;
        p[2] = c.b;
    }

    [[nodiscard]] std::span<const std::uint8_t> bytes() const noexcept { return data_; }
    [[nodiscard]] std::span<std::uint8_t> bytes() noexcept { return data_; }

    //! Exact sub-rectangle copy; the rectangle must lie inside the image.
    [[nodiscard]] RgbImage crop(int x, int y, int w, int h) const;

    friend bool operator==(const RgbImage&, const RgbImage&) = default;

  private:
    [[nodiscard]] std::size_t offset(int x, int y) const noexcept {
        return 3 * (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x));
    }

    int width_{0};
    int height_{0};
    std::vector<std::uint8_t> data_;
};

//! Area-average (box filter) resampling. Output pixel (i, j) averages the source
//! rectangle [x0 + i*step, x0 + (i+1)*step) x [y0 + j*step, y0 + (j+1)*step),
//! weighting partially covered source pixels by their overlap. Parts of the
//! footprint that fall outside the source are ignored. step >= 1.
RgbImage resample_area(const RgbImage& src, double x0, double y0, double step, int out_width, int out_height);

//! Downsamples the whole image by `factor` in (0, 1]; output dimensions are rounded up.
RgbImage downsample_area(const RgbImage& src, double factor);

}  // namespace cellmosaic
