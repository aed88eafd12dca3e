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

#include <cellmosaic/pipeline/pipeline.hpp>

#include <chrono>

#include <cellmosaic/cellularity/stain_matrix.hpp>
#include <cellmosaic/common/errors.hpp>
#include <cellmosaic/common/rng.hpp>
#include <cellmosaic/features/stub_extractor.hpp>
#include <cellmosaic/mosaic/descriptor.hpp>
#include <cellmosaic/mosaic/mosaic.hpp>
#include <cellmosaic/mosaic/patching.hpp>
#include <cellmosaic/mosaic/tissue.hpp>
#include <cellmosaic/slide_io/slide.hpp>

namespace cellmosaic {

namespace {

    class Stopwatch {
      public:
        explicit Stopwatch(std::vector<StageTiming>& out) : out_(out), last_(std::chrono::steady_clock::now()) {}
        void lap(std::string stage) {
            const auto now = std::chrono::steady_clock::now();
            out_.push_back({std::move(stage), std::chrono::duration<double, std::milli>(now - last_).count()});
            last_ = now;
        }

      private:
        std::vector<StageTiming>& out_;
        std::chrono::steady_clock::time_point last_;
    };

}  // namespace

SlideInfo slide_info(const SlideRecord& record) {
    return {record.slide_id, record.patient_id, record.tumor_type, record.project_code};
}

std::uint64_t slide_seed(std::uint64_t seed, const std::string& slide_id) { return mix_seed(seed, slide_id); }

SlideIndexResult index_slide(const SlideRecord& record, const PipelineConfig& config) {
    SlideIndexResult result;
    result.info = slide_info(record);
    Stopwatch watch(result.timings);

    const Slide slide = Slide::open(record);
    watch.lap("open");

    const TissueMask mask = segment_tissue(slide, config.m_c);
    watch.lap("segment");

    const std::vector<PatchRef> patches =
        extract_patches(slide, mask, config.m_i, config.l, config.min_tissue_fraction);
    if (patches.empty()) {
        throw SpecError("slide '" + record.slide_id + "' has no tissue patches");
    }
    result.kept_patches = patches.size();
    watch.lap("patch");

    std::vector<std::vector<double>> descriptors;
    descriptors.reserve(patches.size());
    for (const auto& patch : patches) {
        descriptors.push_back(compute_patch_descriptor(slide, patch, config.m_c));
    }
    const std::uint64_t seed = slide_seed(config.seed, record.slide_id);
    const ClusterAssignment clusters =
        cluster_patches(descriptors, static_cast<std::size_t>(config.n_c), mix_seed(seed, "cluster"));
    result.cluster_sizes.assign(clusters.centroids.size(), 0);
    for (const int label : clusters.labels) {
        ++result.cluster_sizes[static_cast<std::size_t>(label)];
    }
    watch.lap("cluster");

    result.mosaic = select_mosaic(patches, clusters, config.p, mix_seed(seed, "mosaic"));
    watch.lap("mosaic");

    const StainMatrix w = config.stain();
    std::vector<RgbImage> pixels;
    pixels.reserve(result.mosaic.size());
    result.scores.reserve(result.mosaic.size());
    for (const auto& entry : result.mosaic.entries) {
        pixels.push_back(read_patch(slide, entry.patch, config.m_i));
        result.scores.push_back(score_patch(entry.patch, pixels.back(), w, config.h_threshold));
    }
    result.cell_mosaic =
        cell_mosaic(result.mosaic, result.scores, config.t_cell, config.resolved_min_content_bytes());
    watch.lap("cellularity");

    for (const auto& entry : result.cell_mosaic.entries) {
        std::size_t position = 0;
        while (result.mosaic.entries[position].patch_index != entry.patch_index) {
            ++position;
        }
        result.features.push_back(stub_extract(entry.patch, pixels[position]));
        result.barcodes.push_back(barcode(result.features.back()));
    }
    watch.lap("features");
    return result;
}

std::vector<Barcode> barcodes_for_slide(const std::vector<FeatureVector>& features, const std::string& slide_id) {
    std::vector<Barcode> out;
    for (const auto& f : features) {
        if (f.patch.slide_id == slide_id) {
            out.push_back(barcode(f));
        }
    }
    if (out.empty()) {
        throw SpecError("no features for slide '" + slide_id + "'");
    }
    return out;
}

}  // namespace cellmosaic
