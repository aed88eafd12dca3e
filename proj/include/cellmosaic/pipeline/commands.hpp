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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <cellmosaic/eval/evaluation.hpp>
#include <cellmosaic/pipeline/config.hpp>
#include <cellmosaic/slide_io/synthetic.hpp>

namespace cellmosaic {

namespace exit_code {
    inline constexpr int ok = 0;
    inline constexpr int failure = 1;
    inline constexpr int no_slides = 2;
    inline constexpr int incompatible = 3;
    inline constexpr int unknown_site = 4;
}  // namespace exit_code

inline constexpr std::string_view kIndexFileName = "index.kimx";
inline constexpr std::string_view kMosaicFileName = "mosaics.jsonl";
inline constexpr std::string_view kIndexLogName = "index.log";

struct IndexCommand {
    std::filesystem::path manifest;
    std::filesystem::path out_dir;
    PipelineConfig config;
};

//! Writes index.kimx, mosaics.jsonl (full and cell mosaic per slide) and
//! index.log. Failing slides are logged and skipped.
int cmd_index(const IndexCommand& cmd, std::ostream& out, std::ostream& err);

struct SearchCommand {
    std::filesystem::path index;
    //! Either a KIMF file with the query's features...
    std::filesystem::path query_features;
    //! ...or a manifest row processed through the pipeline.
    std::filesystem::path manifest;
    std::string query_slide;
    std::optional<std::string> exclude_patient;
    std::size_t top{10};
    PipelineConfig config;
};

//! Prints {query, results: [{rank, slide_id, score, patient_id, tumor_type, project_code}]}.
int cmd_search(const SearchCommand& cmd, std::ostream& out, std::ostream& err);

struct EvalCommand {
    std::filesystem::path index;
    std::filesystem::path test_manifest;
    EvalMode mode{EvalMode::horizontal};
    //! Vertical only; unset evaluates every site present in both the test set and the index.
    std::optional<std::string> site;
    bool exclude_same_patient{true};
    std::filesystem::path out_dir;
    PipelineConfig config;
};

//! Output file stem: "horizontal" or "vertical_<site>".
std::string report_stem(EvalMode mode, const std::string& site);

//! Queries the manifest's test rows (all rows when none is marked test).
//! Writes <stem>.json and <stem>.txt per report, prints the macro summary.
int cmd_eval(const EvalCommand& cmd, std::ostream& out, std::ostream& err);

struct SynthGroup {
    std::string tumor_type;
    std::string project_code;
    std::string tissue_of_origin;
    double c_h{0.0};
    double c_e{0.0};
    double nucleus_density{0.0};
};

//! Three sites with two subtypes each, distinct stain mixes and nucleus densities.
std::vector<SynthGroup> default_synth_groups();

struct SynthCommand {
    std::filesystem::path out_dir;
    std::uint64_t seed{0};
    int slide_side{2048};
    int slides_per_group{5};
    double noise_amplitude{0.08};
    double texture_amplitude{0.3};
    double texture_scale{8.0};
    std::vector<SynthGroup> groups{default_synth_groups()};
};

//! The synthetic spec of corpus slide `ordinal` of `group`.
SyntheticSlideSpec synth_slide_spec(const SynthCommand& cmd, const SynthGroup& group, int ordinal);

//! Writes slides/<id>.png and manifest.csv (every row split = test).
int cmd_synth(const SynthCommand& cmd, std::ostream& out, std::ostream& err);

//! Renders one slide from a JSON spec
//! {width, height, background: [r, g, b], seed, noise_amplitude, texture_amplitude, texture_scale, nucleus_radius, nucleus_boost, blobs: [...]}.
int cmd_synth_spec(const std::filesystem::path& spec_json, const std::filesystem::path& out_png, std::ostream& out,
                   std::ostream& err);

struct FeaturesCommand {
    std::filesystem::path manifest;
    std::filesystem::path out;
    PipelineConfig config;
};

//! Stub features of every slide's cell mosaic in one KIMF file.
int cmd_features(const FeaturesCommand& cmd, std::ostream& out, std::ostream& err);

struct CurateCommand {
    std::filesystem::path manifest;
    std::filesystem::path out;
    std::size_t min_group_size{20};
    std::uint64_t seed{0};
};

//! Writes the curated manifest with splits assigned; exclusions go to err.
int cmd_curate(const CurateCommand& cmd, std::ostream& out, std::ostream& err);

}  // namespace cellmosaic
