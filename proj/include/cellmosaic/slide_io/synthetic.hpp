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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <cellmosaic/slide_io/image.hpp>
#include <cellmosaic/slide_io/manifest.hpp>

namespace cellmosaic {

struct SyntheticBlob {
    double center_x{0.0};
    double center_y{0.0};
    double radius{0.0};
    //! Stain concentrations (c_H, c_E) of the blob interior.
    double c_h{0.0};
    double c_e{0.0};
    //! Fraction of the blob area covered by nucleus dots, in [0, 1].
    double nucleus_density{0.0};
};

//! Recipe for a synthetic stained slide. Blob interiors go through the forward
//! stain model with the default H&E matrix; nuclei are small discs whose
//! hematoxylin concentration is raised by `nucleus_boost`.
struct SyntheticSlideSpec {
    int width{0};
    int height{0};
    Rgb background{242, 240, 245};
    std::vector<SyntheticBlob> blobs;
    std::uint64_t seed{0};
    //! Relative per-pixel concentration jitter inside blobs (0 = flat).
    double noise_amplitude{0.0};
    //! Smooth multiplicative density field (value noise on a lattice of
    //! `texture_scale` px, smoothstep-interpolated). 0 disables it.
    double texture_amplitude{0.0};
    double texture_scale{8.0};
    double nucleus_radius{3.0};
    double nucleus_boost{1.0};
};

//! Pure rendering; identical specs give identical rasters.
RgbImage render_synthetic_slide(const SyntheticSlideSpec& spec);

//! Renders, writes a PNG to `path` and returns `meta` with pixel_path set.
//! Throws SpecError for zero-area images, out-of-range densities or blobs
//! extending past the image.
SlideRecord generate_synthetic_slide(const SyntheticSlideSpec& spec, const std::filesystem::path& path,
                                     SlideRecord meta);

void validate(const SyntheticSlideSpec& spec);

}  // namespace cellmosaic
