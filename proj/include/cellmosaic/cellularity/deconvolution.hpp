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
#include <cellmosaic/slide_io/image.hpp>

namespace cellmosaic {

inline constexpr double kFullTransmission = 255.0;
//! Intensities are clamped to this floor before the logarithm.
inline constexpr double kIntensityFloor = 1.0;

//! Per-channel optical density -log10(max(I, floor) / I0).
Vec3 rgb_to_od(const Vec3& intensity, double i0 = kFullTransmission, double floor = kIntensityFloor);
Vec3 rgb_to_od(Rgb pixel, double i0 = kFullTransmission);

//! Forward stain model: transmitted intensity I0 * 10^(-W c), unquantized.
Vec3 stain_to_intensity(const StainMatrix& w, const Vec3& concentrations, double i0 = kFullTransmission);

//! Forward model rounded to 8-bit intensities.
Rgb stain_to_rgb(const StainMatrix& w, const Vec3& concentrations, double i0 = kFullTransmission);

//! Per-pixel (c_H, c_E, c_residual), same shape as the source raster. Values are
//! the exact linear solve; negative concentrations are kept.
class ConcentrationMaps {
  public:
    ConcentrationMaps(int width, int height) : width_(width), height_(height), values_(3 * pixel_count()) {}

    [[nodiscard]] int width() const noexcept { return width_; }
    [[nodiscard]] int height() const noexcept { return height_; }
    [[nodiscard]] std::size_t pixel_count() const noexcept {
        return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    }
    [[nodiscard]] Vec3 at(std::size_t pixel) const noexcept {
        return {values_[3 * pixel], values_[3 * pixel + 1], values_[3 * pixel + 2]};
    }
    [[nodiscard]] double hematoxylin(std::size_t pixel) const noexcept { return values_[3 * pixel]; }
    [[nodiscard]] double eosin(std::size_t pixel) const noexcept { return values_[3 * pixel + 1]; }
    void set(std::size_t pixel, const Vec3& c) noexcept {
        values_[3 * pixel] = c[0];
        values_[3 * pixel + 1] = c[1];
        values_[3 * pixel + 2] = c[2];
    }

  private:
    int width_;
    int height_;
    std::vector<double> values_;
};

ConcentrationMaps deconvolve(const RgbImage& patch, const StainMatrix& w);

inline constexpr double kDefaultHematoxylinThreshold = 0.25;

//! Fraction of pixels whose hematoxylin concentration strictly exceeds the threshold.
double cellularity_ratio(const RgbImage& patch, const StainMatrix& w,
                         double h_threshold = kDefaultHematoxylinThreshold);

}  // namespace cellmosaic
