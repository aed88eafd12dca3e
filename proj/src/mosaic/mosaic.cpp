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

#include <cellmosaic/mosaic/mosaic.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <json.hpp>

#include <cellmosaic/common/errors.hpp>
#include <cellmosaic/common/rng.hpp>

namespace cellmosaic {

std::string_view to_string(MosaicStage stage) noexcept {
    return stage == MosaicStage::cell_mosaic ? "cell_mosaic" : "full_mosaic";
}

std::string mosaic_to_jsonl(const Mosaic& mosaic) {
    std::string out;
    for (const auto& e : mosaic.entries) {
        nlohmann::ordered_json line = {
            {"slide_id", e.patch.slide_id},        {"x", e.patch.x},
            {"y", e.patch.y},                      {"side", e.patch.side},
            {"mag", e.patch.mag},                  {"cluster_id", e.cluster_id},
            {"stage", std::string(to_string(mosaic.stage))},
        };
        out += line.dump();
        out.push_back('\n');
    }
    return out;
}

ClusterAssignment cluster_patches(const std::vector<std::vector<double>>& descriptors, std::size_t n_c,
                                  std::uint64_t seed) {
    if (descriptors.empty()) {
        throw SpecError("cluster_patches needs at least one descriptor");
    }
    PointSet points(descriptors.front().size());
    for (const auto& d : descriptors) {
        points.push_back(d);
    }
    auto result = kmeans(points, {n_c, seed, 300});
    return {std::move(result.assignment), std::move(result.centroids)};
}

std::size_t mosaic_quota(std::size_t cluster_size, double p) {
    const auto q = static_cast<std::size_t>(std::llround(p * static_cast<double>(cluster_size)));
    return std::max<std::size_t>(1, q);
}

Mosaic select_mosaic(const std::vector<PatchRef>& patches, const ClusterAssignment& assignment, double p,
                     std::uint64_t seed) {
    Mosaic mosaic;
    mosaic.stage = MosaicStage::full_mosaic;
    if (patches.empty()) {
        return mosaic;
    }
    if (assignment.labels.size() != patches.size()) {
        throw ShapeError("cluster assignment does not cover the patch list");
    }
    mosaic.slide_id = patches.front().slide_id;

    std::map<int, std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < patches.size(); ++i) {
        members[assignment.labels[i]].push_back(i);
    }

    std::vector<std::size_t> chosen;
    for (const auto& [cluster, idx] : members) {
        const std::size_t quota = std::min(mosaic_quota(idx.size(), p), idx.size());
        PointSet centres(2);
        for (const std::size_t i : idx) {
            const double half = patches[i].side / 2.0;
            const double c[2] = {patches[i].x + half, patches[i].y + half};
            centres.push_back(c);
        }
        const auto spatial = kmeans(centres, {quota, mix_seed(seed, static_cast<std::uint64_t>(cluster)), 300});
        for (std::size_t s = 0; s < spatial.centroids.size(); ++s) {
            std::size_t best = idx.size();
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t m = 0; m < idx.size(); ++m) {
                if (spatial.assignment[m] != static_cast<int>(s)) {
                    continue;
                }
                const double d = squared_distance(centres[m], spatial.centroids[s]);
                if (d < best_d) {
                    best_d = d;
                    best = m;
                }
            }
            if (best != idx.size()) {
                chosen.push_back(idx[best]);
            }
        }
    }
    std::sort(chosen.begin(), chosen.end());
    for (const std::size_t i : chosen) {
        mosaic.entries.push_back({patches[i], i, assignment.labels[i]});
    }
    return mosaic;
}

}  // namespace cellmosaic
