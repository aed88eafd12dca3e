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
#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <cellmosaic/cellularity/stain_matrix.hpp>

namespace cellmosaic {

enum class ExtractorKind { stub, external_file };

std::string_view to_string(ExtractorKind kind) noexcept;

struct PipelineConfig {
    double m_i{20.0};
    double m_c{5.0};
    int l{1000};
    int n_c{9};
    double p{0.15};
    double t_cell{0.20};
    int k{3};
    double h_threshold{0.25};
    double min_tissue_fraction{0.5};
    //! Unset means default_min_content_bytes(l).
    std::optional<std::size_t> min_content_bytes;
    std::uint64_t seed{0};
    ExtractorKind extractor{ExtractorKind::stub};
    //! KIMF file read when extractor = external-file.
    std::filesystem::path feature_file;
    //! Hematoxylin then eosin optical-density columns; the residual is derived.
    std::array<double, 6> stain_matrix{0.650, 0.704, 0.286, 0.072, 0.990, 0.105};
    //! 0 means one per logical core.
    std::size_t workers{0};

    [[nodiscard]] std::size_t resolved_min_content_bytes() const;
    [[nodiscard]] std::size_t resolved_workers() const;
    //! Throws ConfigError when the two columns are degenerate.
    [[nodiscard]] StainMatrix stain() const;

    friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

//! Throws ConfigError naming the first violated invariant.
void validate(const PipelineConfig& config);

//! Sets one key from its textual value. Keys use the file spelling
//! (m_I, m_C, l, n_C, p, T_Cell, ...). Throws ConfigError on unknown keys or bad values.
void apply_setting(PipelineConfig& config, std::string_view key, std::string_view value);

//! `key = value` lines; '#' starts a comment, string values may be quoted.
//! Applies onto `base` and validates.
PipelineConfig parse_config(std::string_view text, PipelineConfig base = {});
PipelineConfig load_config(const std::filesystem::path& path, PipelineConfig base = {});

//! Parseable text listing every key with its resolved value.
std::string echo_config(const PipelineConfig& config);

}  // namespace cellmosaic
