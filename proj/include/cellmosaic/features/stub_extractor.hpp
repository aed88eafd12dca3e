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

#include <string_view>
#include <vector>

#include <cellmosaic/cellularity/stain_matrix.hpp>
#include <cellmosaic/features/barcode.hpp>
#include <cellmosaic/slide_io/image.hpp>

namespace cellmosaic {

inline constexpr std::string_view kStubExtractorId = "stub-color-gradient-stain-64";
inline constexpr std::size_t kStubFeatureSize = 64;
inline constexpr int kGradientBins = 16;
inline constexpr int kStainBins = 12;
inline constexpr double kStainHistogramMax = 2.0;

//! Magnitude-weighted histogram of gradient orientations over [0, 2pi) on the
//! grey image, central differences on interior pixels. A patch without any
//! gradient yields the uniform histogram.
std::vector<double> gradient_orientation_histogram(const RgbImage& patch, int bins = kGradientBins);

//! Hematoxylin then eosin concentration histograms over [0, 2], out-of-range
//! values clamped into the end bins; each block sums to 1.
std::vector<double> stain_histograms(const RgbImage& patch, const StainMatrix& w, int bins = kStainBins);

//! Classical 64-d descriptor: 24 RGB histogram + 16 gradient orientation +
//! 24 H/E concentration values, L2-normalized as a whole.
std::vector<float> stub_features(const RgbImage& patch);

//! Throws SpecError for an empty raster.
FeatureVector stub_extract(const PatchRef& ref, const RgbImage& patch);

}  // namespace cellmosaic
