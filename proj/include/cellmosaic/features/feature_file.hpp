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
#include <span>
#include <vector>

#include <cellmosaic/features/barcode.hpp>

namespace cellmosaic {

inline constexpr std::uint16_t kFeatureFileVersion = 1;

//! Little-endian feature file:
//!   "KIMF" | u16 version | u16 reserved | u32 d | u32 count | u16 len + extractor_id
//!   then per record: u16 len + slide_id | u32 x | u32 y | u32 side | f32 mag | d x f32
//! All records must share d and extractor_id; an empty list stores d = 0.
std::vector<std::uint8_t> encode_features(std::span<const FeatureVector> features);
std::vector<FeatureVector> decode_features(std::span<const std::uint8_t> bytes);

void save_features(std::span<const FeatureVector> features, const std::filesystem::path& path);
std::vector<FeatureVector> load_features(const std::filesystem::path& path);

}  // namespace cellmosaic
