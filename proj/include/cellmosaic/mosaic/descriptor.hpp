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

#include <vector>

#include <cellmosaic/mosaic/types.hpp>
#include <cellmosaic/slide_io/image.hpp>
#include <cellmosaic/slide_io/slide.hpp>

namespace cellmosaic {

inline constexpr int kHistogramBins = 8;
inline constexpr int kDescriptorSize = 3 * kHistogramBins;

//! Per-channel normalized histograms, `bins` equal-width bins over 0..255, R then G then B.
std::vector<double> rgb_histogram(const RgbImage& image, int bins = kHistogramBins);

//! Reads the patch footprint at magnification m_C. The output side is
//! round(side * m_C / mag), at least one pixel.
RgbImage read_patch(const Slide& slide, const PatchRef& patch, double mag);

//! 24-d clustering descriptor: the RGB histogram of the footprint at m_C.
std::vector<double> compute_patch_descriptor(const Slide& slide, const PatchRef& patch, double m_c);

}  // namespace cellmosaic
