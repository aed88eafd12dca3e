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

#include <cellmosaic/cellularity/deconvolution.hpp>

#include <algorithm>
#include <array>
#include <cmath>

namespace cellmosaic {

Vec3 rgb_to_od(const Vec3& intensity, double i0, double floor) {
    Vec3 od{};
    for (std::size_t ch = 0; ch < 3; ++ch) {
        od[ch] = -std::log10(std::max(intensity[ch], floor) / i0);
    }
    return od;
}

Vec3 rgb_to_od(Rgb pixel, double i0) {
    return rgb_to_od(Vec3{static_cast<double>(pixel.r), static_cast<double>(pixel.g), static_cast<double>(pixel.b)}, i0);
}

Vec3 stain_to_intensity(const StainMatrix& w, const Vec3& concentrations, double i0) {
    const Vec3 od = w.to_od(concentrations);
    return {i0 * std::pow(10.0, -od[0]), i0 * std::pow(10.0, -od[1]), i0 * std::pow(10.0, -od[2])};
}

Rgb stain_to_rgb(const StainMatrix& w, const Vec3& concentrations, double i0) {
    const Vec3 i = stain_to_intensity(w, concentrations, i0);
    auto q = [](double v) { return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L)); };
    return {q(i[0]), q(i[1]), q(i[2])};
}

namespace {

    std::array<double, 256> od_table() {
        std::array<double, 256> t{};
        for (int v = 0; v < 256; ++v) {
            t[static_cast<std::size_t>(v)] = -std::log10(std::max(static_cast<double>(v), kIntensityFloor) / kFullTransmission);
        }
        return t;
    }

    const std::array<double, 256>& od_lookup() {
        static const std::array<double, 256> table = od_table();
        return table;
    }

}  // namespace

ConcentrationMaps deconvolve(const RgbImage& patch, const StainMatrix& w) {
    ConcentrationMaps maps(patch.width(), patch.height());
    const auto& lut = od_lookup();
    const auto bytes = patch.bytes();
    for (std::size_t p = 0; p < maps.pixel_count(); ++p) {
        const Vec3 od{lut[bytes[3 * p]], lut[bytes[3 * p + 1]], lut[bytes[3 * p + 2]]};
        maps.set(p, w.to_concentrations(od));
    }
    return maps;
}

double cellularity_ratio(const RgbImage& patch, const StainMatrix& w, double h_threshold) {
    if (patch.empty()) {
        return 0.0;
    }
    const auto& lut = od_lookup();
    const auto& row = w.inverse_rows()[0];
    const auto bytes = patch.bytes();
    std::size_t positive = 0;
    const std::size_t n = patch.pixel_count();
    for (std::size_t p = 0; p < n; ++p) {
        const double c_h = row[0] * lut[bytes[3 * p]] + row[1] * lut[bytes[3 * p + 1]] + row[2] * lut[bytes[3 * p + 2]];
        positive += c_h > h_threshold ? 1 : 0;
    }
    return static_cast<double>(positive) / static_cast<double>(n);
}

}  // namespace cellmosaic
