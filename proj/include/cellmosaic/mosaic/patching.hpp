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

#include <cellmosaic/mosaic/tissue.hpp>
#include <cellmosaic/mosaic/types.hpp>

namespace cellmosaic {

//! Grid geometry shared by patch enumeration and its tests.
struct PatchGrid {
    int columns{0};
    int rows{0};
    int side{0};
    double mag{0.0};
};

//! Non-overlapping grid with stride `side` over a slide of `width` x `height` at `mag`.
PatchGrid make_grid(int width, int height, int side, double mag);

//! Fraction of mask-positive cells under the footprint of the m_I square
//! [x, x + side)^2, mapped onto the mask grid.
double tissue_fraction(const TissueMask& mask, double m_i, int x, int y, int side);

//! Grid patches whose tissue fraction is at least min_tissue_fraction, row-major.
std::vector<PatchRef> extract_patches(const Slide& slide, const TissueMask& mask, double m_i, int side,
                                      double min_tissue_fraction = 0.5);

//! Same as above for callers that only know the slide extent at m_I.
std::vector<PatchRef> extract_patches(const std::string& slide_id, int width_at_mi, int height_at_mi,
                                      const TissueMask& mask, double m_i, int side, double min_tissue_fraction = 0.5);

}  // namespace cellmosaic
