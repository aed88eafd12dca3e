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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <json.hpp>

#include <cellmosaic/mosaic/descriptor.hpp>
#include <cellmosaic/mosaic/kmeans.hpp>
#include <cellmosaic/mosaic/mosaic.hpp>
#include <cellmosaic/mosaic/patching.hpp>
#include <cellmosaic/mosaic/tissue.hpp>
#include <cellmosaic/slide_io/slide.hpp>
#include <cellmosaic/slide_io/synthetic.hpp>

#include "../support.hpp"

using namespace cellmosaic;

namespace {

Slide make_slide(RgbImage pixels, double mag = 20.0) {
    SlideRecord r;
    r.slide_id = "s";
    r.base_magnification = mag;
    return Slide(r, std::move(pixels));
}

TissueMask full_mask(int w, int h, double mag, std::uint8_t v) {
    return {w, h, mag, std::vector<std::uint8_t>(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), v)};
}

std::vector<PatchRef> line_patches(int n) {
    std::vector<PatchRef> out;
    for (int i = 0; i < n; ++i) {
        out.push_back(test::patch_at("s", static_cast<std::uint32_t>(i), 0, 1));
    }
    return out;
}

}  // namespace

TEST_SUITE("mosaic") {
    TEST_CASE("otsu separates a bimodal histogram") {
        std::array<std::size_t, 256> hist{};
        hist[10] = 100;
        hist[200] = 50;
        const int t = otsu_threshold(hist);
        CHECK(t >= 10);
        CHECK(t < 200);
        std::array<std::size_t, 256> flat{};
        flat[77] = 9;
        CHECK(otsu_threshold(flat) == 0);
    }

    TEST_CASE("uniform white slide has an empty mask") {
        const Slide slide = make_slide(RgbImage(400, 400, {255, 255, 255}));
        const TissueMask mask = segment_tissue(slide, 5.0);
        CHECK(mask.width == 100);
        CHECK(mask.height == 100);
        CHECK(mask.area() == 0);
        CHECK(extract_patches(slide, mask, 20.0, 100).empty());
    }

    TEST_CASE("fully stained slide has a full mask") {
        const Slide slide = make_slide(RgbImage(400, 400, {150, 60, 170}));
        const TissueMask mask = segment_tissue(slide, 5.0);
        CHECK(mask.area() == mask.cells.size());
    }

    TEST_CASE("one stained blob on white gives a mask close to the disc") {
        SyntheticSlideSpec spec;
        spec.width = 800;
        spec.height = 800;
        spec.seed = 3;
        spec.blobs.push_back({400.0, 400.0, 240.0, 0.6, 0.5, 0.2});
        const Slide slide = make_slide(render_synthetic_slide(spec));
        const TissueMask mask = segment_tissue(slide, 5.0);
        const double disc = std::numbers::pi * 60.0 * 60.0;  // radius 240 at 20x is 60 at 5x
        CHECK(std::abs(static_cast<double>(mask.area()) - disc) < 0.1 * disc);
    }

    TEST_CASE("majority smoothing removes isolated cells") {
        std::vector<std::uint8_t> cells(25, 0);
        cells[12] = 1;
        const auto cleared = majority_smooth(cells, 5, 5);
        CHECK(std::count(cleared.begin(), cleared.end(), 1) == 0);
        std::vector<std::uint8_t> ones(25, 1);
        ones[12] = 0;
        const auto filled = majority_smooth(ones, 5, 5);
        CHECK(filled[12] == 1);
    }

    TEST_CASE("all-one mask over 4000 x 4000 yields the 4 x 4 grid") {
        const auto patches = extract_patches("s", 4000, 4000, full_mask(1000, 1000, 5.0, 1), 20.0, 1000);
        REQUIRE(patches.size() == 16);
        CHECK(patches[0].x == 0);
        CHECK(patches[1].x == 1000);
        CHECK(patches[4].y == 1000);
        for (const auto& p : patches) {
            CHECK(p.x % 1000 == 0);
            CHECK(p.y % 1000 == 0);
            CHECK(p.side == 1000);
            CHECK(p.mag == 20.0f);
        }
        CHECK(extract_patches("s", 4000, 4000, full_mask(1000, 1000, 5.0, 0), 20.0, 1000).empty());
    }

    TEST_CASE("left-half mask keeps exactly the left grid columns") {
        TissueMask mask = full_mask(1000, 1000, 5.0, 0);
        for (int y = 0; y < 1000; ++y) {
            for (int x = 0; x < 500; ++x) {
                mask.cells[static_cast<std::size_t>(y) * 1000 + static_cast<std::size_t>(x)] = 1;
            }
        }
        const auto patches = extract_patches("s", 4000, 4000, mask, 20.0, 500);
        CHECK(patches.size() == 32);
        for (const auto& p : patches) {
            CHECK(p.x < 2000);
        }
        const PatchGrid grid = make_grid(4000, 4000, 500, 20.0);
        CHECK(grid.columns == 8);
        CHECK(grid.rows == 8);
    }

    TEST_CASE("partial grid cells at the edge are not patches") {
        const PatchGrid grid = make_grid(1050, 999, 100, 20.0);
        CHECK(grid.columns == 10);
        CHECK(grid.rows == 9);
    }

    TEST_CASE("descriptor histograms") {
        const auto gray = rgb_histogram(RgbImage(8, 8, {128, 128, 128}));
        REQUIRE(gray.size() == 24);
        for (int c = 0; c < 3; ++c) {
            for (int b = 0; b < 8; ++b) {
                CHECK(gray[static_cast<std::size_t>(c * 8 + b)] == (b == 4 ? 1.0 : 0.0));
            }
        }
        RgbImage half(8, 8, {255, 255, 255});
        for (int y = 0; y < 4; ++y) {
            for (int x = 0; x < 8; ++x) {
                half.set(x, y, {0, 0, 0});
            }
        }
        const auto bw = rgb_histogram(half);
        for (int c = 0; c < 3; ++c) {
            CHECK(bw[static_cast<std::size_t>(c * 8)] == 0.5);
            CHECK(bw[static_cast<std::size_t>(c * 8 + 7)] == 0.5);
        }
        RgbImage flipped(8, 8);
        for (int y = 0; y < 8; ++y) {
            for (int x = 0; x < 8; ++x) {
                flipped.set(x, y, half.at(x, 7 - y));
            }
        }
        CHECK(rgb_histogram(flipped) == bw);

        const Slide slide = make_slide(RgbImage(400, 400, {128, 128, 128}));
        const auto d = compute_patch_descriptor(slide, test::patch_at("s", 0, 0, 200), 5.0);
        CHECK(d == gray);
        CHECK(read_patch(slide, test::patch_at("s", 200, 200, 200), 5.0).width() == 50);
    }

    TEST_CASE("identical descriptors collapse into the lowest cluster") {
        const std::vector<std::vector<double>> same(9, std::vector<double>{0.5, 0.25, 0.25});
        const auto a = cluster_patches(same, 9, 1);
        for (const int label : a.labels) {
            CHECK(label == 0);
        }
    }

    TEST_CASE("fewer patches than clusters gives one patch per cluster") {
        std::vector<std::vector<double>> d;
        for (int i = 0; i < 5; ++i) {
            d.push_back({static_cast<double>(i * i), 1.0});
        }
        const auto a = cluster_patches(d, 9, 2);
        CHECK(a.centroids.size() == 5);
        CHECK(std::set<int>(a.labels.begin(), a.labels.end()).size() == 5);
    }

    TEST_CASE("well separated clouds are recovered") {
        Rng rng(11);
        std::vector<std::vector<double>> d;
        std::vector<int> truth;
        for (int i = 0; i < 200; ++i) {
            const int c = static_cast<int>(rng.below(2));
            truth.push_back(c);
            d.push_back({c * 100.0 + rng.uniform(-1, 1), c * -50.0 + rng.uniform(-1, 1), rng.uniform(-1, 1)});
        }
        const auto a = cluster_patches(d, 2, 4);
        for (std::size_t i = 0; i < d.size(); ++i) {
            CHECK((a.labels[i] == a.labels[0]) == (truth[i] == truth[0]));
        }
    }

    TEST_CASE("k-means objective never increases and ends at a fixed point") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            Rng rng(seed);
            PointSet points(4);
            const int n = 20 + static_cast<int>(rng.below(150));
            for (int i = 0; i < n; ++i) {
                const std::array<double, 4> p{rng.uniform(), rng.uniform(), rng.uniform() * 3, rng.uniform()};
                points.push_back(p);
            }
            const auto result = kmeans(points, {1 + rng.below(10), seed, 300});
            for (std::size_t i = 1; i < result.objective_history.size(); ++i) {
                CHECK(result.objective_history[i] <= result.objective_history[i - 1] + 1e-9);
            }
            CHECK(result.non_empty_clusters() <= result.centroids.size());
            for (std::size_t i = 0; i < points.size(); ++i) {
                const double own = squared_distance(points[i], result.centroids[static_cast<std::size_t>(result.assignment[i])]);
                for (std::size_t c = 0; c < result.centroids.size(); ++c) {
                    CHECK(own <= squared_distance(points[i], result.centroids[c]) + 1e-12);
                }
            }
            const auto again = kmeans(points, {result.centroids.size(), seed, 300});
            CHECK(again.assignment == result.assignment);
        }
    }

    TEST_CASE("mosaic quotas") {
        CHECK(mosaic_quota(100, 0.15) == 15);
        CHECK(mosaic_quota(2, 0.15) == 1);
        CHECK(mosaic_quota(0, 0.15) == 1);
        const auto patches = line_patches(100);
        ClusterAssignment one{std::vector<int>(100, 0), PointSet(1, {0.0})};
        CHECK(select_mosaic(patches, one, 0.15, 3).size() == 15);

        std::vector<int> labels;
        for (int c = 0, n = 2; c < 3; ++c, ++n) {
            labels.insert(labels.end(), static_cast<std::size_t>(n), c);
        }
        ClusterAssignment three{labels, PointSet(1, {0.0, 1.0, 2.0})};
        const Mosaic m = select_mosaic(line_patches(9), three, 0.15, 3);
        CHECK(m.size() == 3);
        std::set<int> clusters;
        for (const auto& e : m.entries) {
            clusters.insert(e.cluster_id);
        }
        CHECK(clusters.size() == 3);
        CHECK(select_mosaic({}, ClusterAssignment{}, 0.15, 1).size() == 0);
    }

    TEST_CASE("spatial pick on a line lands near the quartiles") {
        ClusterAssignment one{std::vector<int>(100, 0), PointSet(1, {0.0})};
        const Mosaic m = select_mosaic(line_patches(100), one, 0.02, 9);
        REQUIRE(m.size() == 2);
        CHECK(std::abs(static_cast<int>(m.entries[0].patch.x) - 25) <= 1);
        CHECK(std::abs(static_cast<int>(m.entries[1].patch.x) - 75) <= 1);
    }

    TEST_CASE("mosaic is a duplicate-free subset bounded by the quota sum") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            Rng rng(seed);
            std::vector<PatchRef> patches;
            std::vector<std::vector<double>> d;
            for (std::uint32_t y = 0; y < 12; ++y) {
                for (std::uint32_t x = 0; x < 12; ++x) {
                    if (rng.uniform() < 0.7) {
                        patches.push_back(test::patch_at("s", x * 128, y * 128));
                        d.push_back({rng.uniform(), rng.uniform(), rng.uniform()});
                    }
                }
            }
            const auto a = cluster_patches(d, 9, seed);
            const Mosaic m = select_mosaic(patches, a, 0.15, seed);
            std::vector<std::size_t> sizes(a.centroids.size(), 0);
            for (const int l : a.labels) {
                ++sizes[static_cast<std::size_t>(l)];
            }
            std::size_t bound = 0;
            std::size_t non_empty = 0;
            for (const auto s : sizes) {
                if (s > 0) {
                    bound += mosaic_quota(s, 0.15);
                    ++non_empty;
                }
            }
            CHECK(m.size() <= bound);
            CHECK(m.size() >= non_empty);
            std::set<std::size_t> seen;
            for (const auto& e : m.entries) {
                CHECK(seen.insert(e.patch_index).second);
                CHECK(patches[e.patch_index] == e.patch);
            }
            CHECK(select_mosaic(patches, a, 0.15, seed) == m);
        }
    }

    TEST_CASE("mosaic jsonl lines") {
        Mosaic m{"s", MosaicStage::cell_mosaic, {{test::patch_at("s", 128, 256), 4, 2}}};
        const std::string text = mosaic_to_jsonl(m);
        REQUIRE(!text.empty());
        CHECK(text.back() == '\n');
        const auto j = nlohmann::json::parse(text);
        CHECK(j["slide_id"] == "s");
        CHECK(j["x"] == 128);
        CHECK(j["y"] == 256);
        CHECK(j["side"] == 128);
        CHECK(j["mag"] == 20.0);
        CHECK(j["cluster_id"] == 2);
        CHECK(j["stage"] == "cell_mosaic");
    }
}
