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

#include <cellmosaic/mosaic/kmeans.hpp>

#include <algorithm>
#include <limits>

#include <cellmosaic/common/errors.hpp>
#include <cellmosaic/common/rng.hpp>

namespace cellmosaic {

PointSet::PointSet(std::size_t dim, std::vector<double> values) : dim_(dim), values_(std::move(values)) {
    if (dim_ == 0 || values_.size() % dim_ != 0) {
        throw ShapeError("point buffer is not a multiple of the dimension");
    }
}

void PointSet::push_back(std::span<const double> point) {
    if (point.size() != dim_) {
        throw ShapeError("point dimension mismatch");
    }
    values_.insert(values_.end(), point.begin(), point.end());
}

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

std::size_t KMeansResult::non_empty_clusters() const {
    std::vector<bool> used(centroids.size(), false);
    for (const int a : assignment) {
        used[static_cast<std::size_t>(a)] = true;
    }
    return static_cast<std::size_t>(std::count(used.begin(), used.end(), true));
}

namespace {

    std::vector<std::size_t> plus_plus_seeds(const PointSet& points, std::size_t k, Rng& rng) {
        const std::size_t n = points.size();
        std::vector<std::size_t> seeds{static_cast<std::size_t>(rng.below(n))};
        std::vector<double> d2(n);
        for (std::size_t i = 0; i < n; ++i) {
            d2[i] = squared_distance(points[i], points[seeds[0]]);
        }
        while (seeds.size() < k) {
            double total = 0.0;
            for (const double d : d2) {
                total += d;
            }
            std::size_t pick = 0;
            if (total > 0.0) {
                const double target = rng.uniform() * total;
                double acc = 0.0;
                pick = n;
                for (std::size_t i = 0; i < n; ++i) {
                    acc += d2[i];
                    if (d2[i] > 0.0 && acc > target) {
                        pick = i;
                        break;
                    }
                }
                if (pick == n) {
                    // rounding at the top end: last point with positive weight
                    for (std::size_t i = n; i-- > 0;) {
                        if (d2[i] > 0.0) {
                            pick = i;
                            break;
                        }
                    }
                }
            }
            // total == 0: every point coincides with a seed; duplicate the first point.
            seeds.push_back(pick);
            for (std::size_t i = 0; i < n; ++i) {
                d2[i] = std::min(d2[i], squared_distance(points[i], points[pick]));
            }
        }
        return seeds;
    }

    int nearest(std::span<const double> p, const std::vector<double>& centroids, std::size_t dim, std::size_t k,
                double& best_d) {
        int best = 0;
        best_d = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
            const double d = squared_distance(p, std::span<const double>(centroids.data() + c * dim, dim));
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(c);
            }
        }
        return best;
    }

}  // namespace

KMeansResult kmeans(const PointSet& points, const KMeansOptions& options) {
    const std::size_t n = points.size();
    if (n == 0) {
        throw SpecError("k-means needs at least one point");
    }
    if (options.k == 0) {
        throw SpecError("k-means needs k >= 1");
    }
    const std::size_t k = std::min(options.k, n);
    const std::size_t dim = points.dim();
    Rng rng(options.seed);

    std::vector<double> centroids(k * dim);
    const auto seeds = plus_plus_seeds(points, k, rng);
    for (std::size_t c = 0; c < k; ++c) {
        std::copy(points[seeds[c]].begin(), points[seeds[c]].end(), centroids.begin() + static_cast<long>(c * dim));
    }

    KMeansResult result;
    result.assignment.assign(n, -1);
    std::vector<double> dist(n);
    std::vector<std::size_t> counts(k);
    for (int iter = 0; iter < options.max_iterations; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            const int a = nearest(points[i], centroids, dim, k, dist[i]);
            if (a != result.assignment[i]) {
                result.assignment[i] = a;
                changed = true;
            }
        }

        // Re-seed empty clusters at the worst-fit point.
        std::fill(counts.begin(), counts.end(), 0);
        for (const int a : result.assignment) {
            ++counts[static_cast<std::size_t>(a)];
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] != 0) {
                continue;
            }
            std::size_t worst = n;
            double worst_d = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (dist[i] > worst_d && counts[static_cast<std::size_t>(result.assignment[i])] > 1) {
                    worst_d = dist[i];
                    worst = i;
                }
            }
            if (worst == n) {
                continue;
            }
            --counts[static_cast<std::size_t>(result.assignment[worst])];
            result.assignment[worst] = static_cast<int>(c);
            counts[c] = 1;
            dist[worst] = 0.0;
            std::copy(points[worst].begin(), points[worst].end(), centroids.begin() + static_cast<long>(c * dim));
            changed = true;
        }

        double objective = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            objective += dist[i];
        }
        result.objective_history.push_back(objective);
        result.iterations = iter + 1;
        if (!changed && iter > 0) {
            break;
        }

        // Update step; empty clusters keep their centroid.
        std::vector<double> sums(k * dim, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto a = static_cast<std::size_t>(result.assignment[i]);
            const auto p = points[i];
            for (std::size_t d = 0; d < dim; ++d) {
                sums[a * dim + d] += p[d];
            }
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] == 0) {
                continue;
            }
            for (std::size_t d = 0; d < dim; ++d) {
                centroids[c * dim + d] = sums[c * dim + d] / static_cast<double>(counts[c]);
            }
        }
    }

    result.centroids = PointSet(dim, std::move(centroids));
    return result;
}

}  // namespace cellmosaic
