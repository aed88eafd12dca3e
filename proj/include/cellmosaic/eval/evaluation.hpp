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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <cellmosaic/eval/metrics.hpp>
#include <cellmosaic/search/search.hpp>

namespace cellmosaic {

//! A query slide: its labels and its cell-mosaic barcodes.
struct TestSlide {
    SlideInfo info;
    std::vector<Barcode> barcodes;
};

enum class EvalMode { horizontal, vertical };

std::string_view to_string(EvalMode mode) noexcept;

struct EvalOptions {
    std::size_t k{kDefaultK};
    //! Skip index slides of the query's own patient.
    bool exclude_same_patient{true};
    std::size_t workers{1};
};

struct SlidePrediction {
    std::string slide_id;
    std::string truth;
    std::string predicted;
    //! Top-k candidates that voted, best first.
    std::vector<SlideMatchScore> top;
};

//! Slide-level prediction: majority over the top-k median-of-min candidates
//! (ties by summed score, then label). Slides without barcodes or without any
//! candidate are reported in `skipped` instead. Output is sorted by slide_id.
struct PredictionRun {
    std::vector<SlidePrediction> predictions;
    std::vector<std::string> skipped;
};

PredictionRun predict_slides(std::span<const TestSlide> slides, const BarcodedIndex& index, LabelField field,
                             const SlideFilter& pool, const EvalOptions& options);

struct ClassResult {
    std::string name;
    std::size_t support{0};
    std::optional<double> accuracy;
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> f1;
    bool degenerate{false};
};

struct EvalReport {
    EvalMode mode{EvalMode::horizontal};
    //! "all" for horizontal runs.
    std::string site{"all"};
    std::size_t k{kDefaultK};
    //! Axis labels of `confusion`, sorted.
    std::vector<std::string> labels;
    std::vector<std::vector<std::size_t>> confusion;
    //! Classes with nonzero support only.
    std::vector<ClassResult> classes;
    double overall_accuracy{0.0};
    double macro_accuracy{0.0};
    double macro_f1{0.0};
    std::vector<std::string> warnings;
    std::vector<SlidePrediction> predictions;
};

//! Tumor-type retrieval across the whole index.
EvalReport horizontal_eval(std::span<const TestSlide> slides, const BarcodedIndex& index,
                           const EvalOptions& options = {});

//! Project-code retrieval among index slides of one tumor type. Throws
//! UnknownSiteError when the site has no test slide or no index slide.
EvalReport vertical_eval(std::span<const TestSlide> slides, const BarcodedIndex& index, const std::string& site,
                         const EvalOptions& options = {});

}  // namespace cellmosaic
