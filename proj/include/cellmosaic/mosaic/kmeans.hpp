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
#include <cstdint>
#include <span>
#include <vector>

namespace cellmosaic {

//! Dense row-major point set.
class PointSet {
  public:
    PointSet() = default;
    explicit PointSet(std::size_t dim) : dim_(dim) {}
    PointSet(std::size_t dim, std::vector<double> values);

    void push_back(std::span<const double> point);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t size() const noexcept { return dim_ == 0 ? 0 : values_.size() / dim_; }
    [[nodiscard]] std::span<const double> operator[](std::size_t i) const noexcept {
        return {values_.data() + i * dim_, dim_};
    }

  private:
    std::size_t dim_{0};
    std::vector<double> values_;
};

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept;

struct KMeansOptions {
    std::size_t k{1};
    std::uint64_t seed{0};
    int max_iterations{300};
};

struct KMeansResult {
    std::vector<int> assignment;
    PointSet centroids;
    int iterations{0};
    //! Within-cluster sum of squares after each assignment step.
    std::vector<double> objective_history;

    [[nodiscard]] std::size_t non_empty_clusters() const;
};

//! Lloyd's k-means with k-means++ seeding. k is clamped to the number of
//! points; ties in assignment go to the lowest cluster id. A cluster left empty
//! is re-seeded at the point farthest from its centroid (lowest index on ties)
//! when that distance is positive. Stops when assignments no longer change or
//! after max_iterations.
KMeansResult kmeans(const PointSet& points, const KMeansOptions& options);

}  // namespace cellmosaic
