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

#include <cellmosaic/slide_io/slide.hpp>

#include <cmath>
#include <string>

#include <cellmosaic/common/errors.hpp>
#include <cellmosaic/slide_io/raster_codec.hpp>

namespace cellmosaic {

namespace {

    constexpr double kEdgeTolerance = 1e-9;

}  // namespace

Slide Slide::open(const SlideRecord& record) { return Slide(record, load_raster(record.pixel_path)); }

Slide::Slide(SlideRecord record, RgbImage pixels)
    : record_(std::move(record)), pixels_(std::make_shared<const RgbImage>(std::move(pixels))) {
    if (!record_.base_magnification || *record_.base_magnification <= 0.0) {
        throw SpecError("slide '" + record_.slide_id + "' has no base magnification");
    }
    base_mag_ = *record_.base_magnification;
}

int Slide::width_at(double mag) const noexcept {
    return static_cast<int>(std::floor(pixels_->width() * (mag / base_mag_) + kEdgeTolerance));
}

int Slide::height_at(double mag) const noexcept {
    return static_cast<int>(std::floor(pixels_->height() * (mag / base_mag_) + kEdgeTolerance));
}

RgbImage Slide::read_region(int x, int y, int side, double mag) const {
    if (!(mag > 0.0) || mag > base_mag_ + kEdgeTolerance) {
        throw SpecError("read magnification " + std::to_string(mag) + " outside (0, " + std::to_string(base_mag_) + "]");
    }
    const double step = base_mag_ / mag;
    const bool inside = x >= 0 && y >= 0 && side > 0 && (x + side) * step <= pixels_->width() + kEdgeTolerance &&
                        (y + side) * step <= pixels_->height() + kEdgeTolerance;
    if (!inside) {
        throw BoundsError("region (" + std::to_string(x) + ", " + std::to_string(y) + ", side " + std::to_string(side) +
                          ") at " + std::to_string(mag) + "x lies outside slide '" + record_.slide_id + "'");
    }
    if (std::abs(step - 1.0) < kEdgeTolerance) {
        return pixels_->crop(x, y, side, side);
    }
    return resample_area(*pixels_, x * step, y * step, step, side, side);
}

RgbImage Slide::read_footprint(double x0, double y0, double extent, int out_side) const {
    if (out_side <= 0) {
        throw SpecError("footprint output side must be positive");
    }
    const double step = extent / out_side;
    if (std::abs(step - 1.0) < kEdgeTolerance && x0 == std::floor(x0) && y0 == std::floor(y0)) {
        return pixels_->crop(static_cast<int>(x0), static_cast<int>(y0), out_side, out_side);
    }
    return resample_area(*pixels_, x0, y0, step, out_side, out_side);
}

RgbImage Slide::thumbnail(double mag) const {
    if (!(mag > 0.0) || mag > base_mag_ + kEdgeTolerance) {
        throw SpecError("thumbnail magnification exceeds base magnification");
    }
    return downsample_area(*pixels_, std::min(1.0, mag / base_mag_));
}

RgbImage read_region(const SlideRecord& slide, int x, int y, int side, double mag) {
    return Slide::open(slide).read_region(x, y, side, mag);
}

}  // namespace cellmosaic
