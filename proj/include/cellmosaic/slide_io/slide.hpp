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

#include <memory>

#include <cellmosaic/slide_io/image.hpp>
#include <cellmosaic/slide_io/manifest.hpp>

namespace cellmosaic {

//! A decoded slide raster together with its manifest record. Copies share the
//! immutable pixel buffer, so a Slide can be handed to many readers.
class Slide {
  public:
    //! Decodes the raster at `record.pixel_path`; throws IoError when unreadable
    //! and SpecError when the record carries no base magnification.
    static Slide open(const SlideRecord& record);

    Slide(SlideRecord record, RgbImage pixels);

    [[nodiscard]] const SlideRecord& record() const noexcept { return record_; }
    [[nodiscard]] const RgbImage& pixels() const noexcept { return *pixels_; }
    [[nodiscard]] double base_magnification() const noexcept { return base_mag_; }

    //! Slide extent at `mag`, rounded down to whole pixels.
    [[nodiscard]] int width_at(double mag) const noexcept;
    [[nodiscard]] int height_at(double mag) const noexcept;

    //! side x side pixels at `mag` whose top-left corner is (x, y) in `mag` coordinates.
    //! At base magnification the crop is exact; below it pixels are area-averaged.
    [[nodiscard]] RgbImage read_region(int x, int y, int side, double mag) const;

    //! The base-magnification rectangle [x0, x0 + extent)^2 rendered as out_side^2 pixels.
    [[nodiscard]] RgbImage read_footprint(double x0, double y0, double extent, int out_side) const;

    //! The whole slide at `mag` with dimensions rounded up.
    [[nodiscard]] RgbImage thumbnail(double mag) const;

  private:
    SlideRecord record_;
    std::shared_ptr<const RgbImage> pixels_;
    double base_mag_{0.0};
};

//! Convenience wrapper that decodes the slide for a single read.
RgbImage read_region(const SlideRecord& slide, int x, int y, int side, double mag);

}  // namespace cellmosaic
