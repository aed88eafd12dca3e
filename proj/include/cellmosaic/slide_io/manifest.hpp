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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cellmosaic {

enum class SectionKind { permanent, frozen };
enum class Split { train, validation, test, excluded };

std::string_view to_string(SectionKind kind) noexcept;
std::string_view to_string(Split split) noexcept;
std::optional<SectionKind> parse_section_kind(std::string_view text) noexcept;
std::optional<Split> parse_split(std::string_view text) noexcept;

//! One slide of a dataset manifest.
struct SlideRecord {
    std::string slide_id;
    std::string patient_id;
    std::filesystem::path pixel_path;
    //! Empty when the manifest carries no magnification for the slide.
    std::optional<double> base_magnification;
    SectionKind section_kind{SectionKind::permanent};
    std::string morphology;
    std::string primary_diagnosis;
    std::string tissue_of_origin;
    std::string tumor_type;
    std::string project_code;
    Split split{Split::excluded};

    friend bool operator==(const SlideRecord&, const SlideRecord&) = default;
};

//! Parses manifest CSV text. Relative pixel paths are resolved against `base_dir`.
std::vector<SlideRecord> parse_manifest(std::string_view text, const std::filesystem::path& base_dir = {});

std::vector<SlideRecord> load_manifest(const std::filesystem::path& path);

//! Writes records with the full column set; pixel paths are written as stored.
void save_manifest(const std::vector<SlideRecord>& records, const std::filesystem::path& path);

std::string format_manifest(const std::vector<SlideRecord>& records);

}  // namespace cellmosaic
