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
#include <vector>

#include <cellmosaic/mosaic/kmeans.hpp>
#include <cellmosaic/mosaic/types.hpp>

namespace cellmosaic {

struct ClusterAssignment {
    //! cluster id per kept patch, in [0, n_C)
    std::vector<int> labels;
    PointSet centroids;
};

inline constexpr std::size_t kDefaultClusters = 9;
inline constexpr double kDefaultMosaicFraction = 0.15;

//! k-means over patch descriptors with k = min(n_C, #patches).
ClusterAssignment cluster_patches(const std::vector<std::vector<double>>& descriptors, std::size_t n_c,
                                  std::uint64_t seed);

//! max(1, round(p * cluster_size))
std::size_t mosaic_quota(std::size_t cluster_size, double p);

//! From every cluster c picks mosaic_quota(|c|, p) patches: a spatial k-means
//! over the patch centres of c, then per spatial cluster the member closest to
//! its centre. Entries come out in kept-patch order.
Mosaic select_mosaic(const std::vector<PatchRef>& patches, const ClusterAssignment& assignment, double p,
                     std::uint64_t seed);

}  // namespace cellmosaic
