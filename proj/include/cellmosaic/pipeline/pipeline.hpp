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
#include <string>
#include <utility>
#include <vector>

#include <cellmosaic/cellularity/cell_mosaic.hpp>
#include <cellmosaic/features/barcode.hpp>
#include <cellmosaic/mosaic/types.hpp>
#include <cellmosaic/pipeline/config.hpp>
#include <cellmosaic/search/index.hpp>
#include <cellmosaic/slide_io/manifest.hpp>

namespace cellmosaic {

struct StageTiming {
    std::string stage;
    double milliseconds{0.0};
};

struct SlideIndexResult {
    SlideInfo info;
    std::size_t kept_patches{0};
    //! Sizes of the n_C patch clusters.
    std::vector<std::size_t> cluster_sizes;
    Mosaic mosaic;
    Mosaic cell_mosaic;
    //! Scores for mosaic.entries, same order.
    std::vector<CellularityScore> scores;
    //! Features and barcodes of the cell mosaic, same order.
    std::vector<FeatureVector> features;
    std::vector<Barcode> barcodes;
    std::vector<StageTiming> timings;
};

SlideInfo slide_info(const SlideRecord& record);

//! Per-slide seed: every random step of a slide derives from (config seed, slide_id).
std::uint64_t slide_seed(std::uint64_t seed, const std::string& slide_id);

//! segment -> patch -> cluster -> mosaic -> cellMosaic -> stub features -> barcodes.
//! Throws on unreadable slides, on slides without tissue patches and when the
//! cell mosaic is empty.
SlideIndexResult index_slide(const SlideRecord& record, const PipelineConfig& config);

//! Barcodes for the slide from a feature list (external-file mode); features of
//! other slides are ignored. Throws SpecError when the slide has no features.
std::vector<Barcode> barcodes_for_slide(const std::vector<FeatureVector>& features, const std::string& slide_id);

}  // namespace cellmosaic
