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
#include <vector>

#include <cellmosaic/slide_io/image.hpp>

namespace cellmosaic {

//! Decodes a PNG/TIFF/JPEG raster into RGB. Throws IoError when unreadable.
RgbImage load_raster(const std::filesystem::path& path);

//! Writes a lossless PNG with fixed encoder settings, so equal images give equal bytes.
void save_png(const std::filesystem::path& path, const RgbImage& image);

std::vector<std::uint8_t> encode_jpeg(const RgbImage& image, int quality);

}  // namespace cellmosaic
