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
#include <limits>
#include <set>

#include <cellmosaic/cellularity/cell_mosaic.hpp>
#include <cellmosaic/cellularity/deconvolution.hpp>
#include <cellmosaic/cellularity/stain_matrix.hpp>
#include <cellmosaic/common/errors.hpp>

#include "../support.hpp"

using namespace cellmosaic;

namespace {

constexpr double kNoFloor = std::numeric_limits<double>::min();

Mosaic mosaic_of(std::size_t n) {
    Mosaic m{"s", MosaicStage::full_mosaic, {}};
    for (std::size_t i = 0; i < n; ++i) {
        m.entries.push_back({test::patch_at("s", static_cast<std::uint32_t>(i) * 128, 0), i, 0});
    }
    return m;
}

std::vector<CellularityScore> scores_of(const Mosaic& m, const std::vector<double>& ratios, std::size_t bytes = 5000) {
    std::vector<CellularityScore> out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        out.push_back({m.entries[i].patch, ratios[i], bytes});
    }
    return out;
}

}  // namespace

TEST_SUITE("cellularity") {
    TEST_CASE("default stain matrix") {
        const StainMatrix w = StainMatrix::default_he();
        CHECK(w.hematoxylin() == Vec3{0.650, 0.704, 0.286});
        CHECK(w.eosin() == Vec3{0.072, 0.990, 0.105});
        // normalized cross product of the two columns, computed independently
        CHECK(w.residual()[0] == doctest::Approx(-0.33185688).epsilon(1e-7));
        CHECK(w.residual()[1] == doctest::Approx(-0.07559332).epsilon(1e-7));
        CHECK(w.residual()[2] == doctest::Approx(0.94029605).epsilon(1e-7));
        const Vec3 c = w.to_concentrations({1.0, 0.0, 0.0});
        CHECK(c[0] == doctest::Approx(1.48913738).epsilon(1e-7));
        CHECK(c[1] == doctest::Approx(-1.08428169).epsilon(1e-7));
    }

    TEST_CASE("matrix completion") {
        const StainMatrix unit = StainMatrix::complete({1, 0, 0}, {0, 1, 0});
        CHECK(unit.residual() == Vec3{0, 0, 1});
        CHECK_THROWS_AS((void)StainMatrix::complete({0.65, 0.70, 0.29}, {0.65, 0.70, 0.29}), DegenerateStainError);
        CHECK_THROWS_AS((void)StainMatrix::complete({0, 0, 0}, {0, 1, 0}), DegenerateStainError);
        CHECK_THROWS_AS((void)StainMatrix::complete({1, 2, 3}, {-2, -4, -6}), DegenerateStainError);
        CHECK_THROWS_AS((void)StainMatrix::complete({std::nan(""), 0, 0}, {0, 1, 0}), DegenerateStainError);
        Rng rng(2);
        for (int i = 0; i < 100; ++i) {
            const Vec3 h{rng.uniform(0.1, 1), rng.uniform(0.1, 1), rng.uniform(0.1, 1)};
            const Vec3 e{rng.uniform(0.1, 1), rng.uniform(0.1, 1), rng.uniform(0.1, 1)};
            const StainMatrix w = StainMatrix::complete(h, e);
            const Vec3& r = w.residual();
            CHECK(std::hypot(r[0], r[1], r[2]) == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(r[0] * h[0] + r[1] * h[1] + r[2] * h[2] == doctest::Approx(0.0).epsilon(1e-12));
            const Vec3 c{rng.uniform(), rng.uniform(), rng.uniform()};
            const Vec3 back = w.to_concentrations(w.to_od(c));
            for (int k = 0; k < 3; ++k) {
                CHECK(back[static_cast<std::size_t>(k)] == doctest::Approx(c[static_cast<std::size_t>(k)]).epsilon(1e-9));
            }
        }
    }

    TEST_CASE("optical density") {
        CHECK(rgb_to_od(Rgb{255, 255, 255}) == Vec3{0, 0, 0});
        const Vec3 tenth = rgb_to_od(Vec3{25.5, 255, 255});
        CHECK(tenth[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(tenth[1] == 0.0);
        const Vec3 black = rgb_to_od(Rgb{0, 0, 0});
        for (const double v : black) {
            CHECK(v == doctest::Approx(2.4065401804).epsilon(1e-9));
        }
        double previous = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 256; ++i) {
            const double od = rgb_to_od(Rgb{static_cast<std::uint8_t>(i), 0, 0})[0];
            CHECK(od >= 0.0);
            CHECK(od <= previous);
            previous = od;
        }
    }

    TEST_CASE("deconvolution of synthesized pixels") {
        const StainMatrix w = StainMatrix::default_he();
        for (const Vec3 c : {Vec3{1, 0, 0}, Vec3{0.5, 1.5, 0}}) {
            const Vec3 back = w.to_concentrations(rgb_to_od(stain_to_intensity(w, c)));
            for (int k = 0; k < 3; ++k) {
                CHECK(std::abs(back[static_cast<std::size_t>(k)] - c[static_cast<std::size_t>(k)]) < 1e-3);
            }
        }
        const auto white = deconvolve(RgbImage(4, 4, {255, 255, 255}), w);
        for (std::size_t i = 0; i < white.pixel_count(); ++i) {
            CHECK(white.at(i) == Vec3{0, 0, 0});
        }
        CHECK(stain_to_rgb(w, {1, 0, 0}) == Rgb{57, 50, 132});
    }

    TEST_CASE("unquantized roundtrip over random concentrations") {
        const StainMatrix w = StainMatrix::default_he();
        Rng rng(17);
        for (int i = 0; i < 2000; ++i) {
            const Vec3 c{rng.uniform(0, 2), rng.uniform(0, 2), 0.0};
            const Vec3 back = w.to_concentrations(rgb_to_od(stain_to_intensity(w, c), kFullTransmission, kNoFloor));
            CHECK(std::abs(back[0] - c[0]) < 1e-6);
            CHECK(std::abs(back[1] - c[1]) < 1e-6);
        }
    }

    TEST_CASE("deconvolve agrees with the per-pixel solve") {
        const StainMatrix w = StainMatrix::default_he();
        Rng rng(4);
        RgbImage img(13, 7);
        for (auto& b : img.bytes()) {
            b = static_cast<std::uint8_t>(rng.below(256));
        }
        const auto maps = deconvolve(img, w);
        CHECK(maps.width() == 13);
        CHECK(maps.height() == 7);
        for (int y = 0; y < 7; ++y) {
            for (int x = 0; x < 13; ++x) {
                const Vec3 expected = w.to_concentrations(rgb_to_od(img.at(x, y)));
                const Vec3 got = maps.at(static_cast<std::size_t>(y) * 13 + static_cast<std::size_t>(x));
                for (int k = 0; k < 3; ++k) {
                    CHECK(got[static_cast<std::size_t>(k)] ==
                          doctest::Approx(expected[static_cast<std::size_t>(k)]).epsilon(1e-12));
                }
            }
        }
    }

    TEST_CASE("cellularity ratio") {
        const StainMatrix w = StainMatrix::default_he();
        CHECK(cellularity_ratio(RgbImage(10, 10, {255, 255, 255}), w) == 0.0);

        RgbImage quarter(20, 20, {255, 255, 255});
        for (int y = 0; y < 10; ++y) {
            for (int x = 0; x < 10; ++x) {
                quarter.set(x, y, stain_to_rgb(w, {1.0, 0.0, 0.0}));
            }
        }
        CHECK(cellularity_ratio(quarter, w) == 0.25);

        const RgbImage edge(6, 6, stain_to_rgb(w, {0.25, 0.0, 0.0}));
        const double exact = deconvolve(edge, w).hematoxylin(0);
        CHECK(cellularity_ratio(edge, w, exact) == 0.0);
        CHECK(cellularity_ratio(edge, w, std::nextafter(exact, 0.0)) == 1.0);
    }

    TEST_CASE("cellularity ratio is permutation invariant and antitone in the threshold") {
        const StainMatrix w = StainMatrix::default_he();
        Rng rng(8);
        RgbImage img(16, 16);
        for (int y = 0; y < 16; ++y) {
            for (int x = 0; x < 16; ++x) {
                img.set(x, y, stain_to_rgb(w, {rng.uniform(0, 1.5), rng.uniform(0, 1), 0}));
            }
        }
        RgbImage shuffled(16, 16);
        std::vector<int> order(256);
        for (int i = 0; i < 256; ++i) {
            order[static_cast<std::size_t>(i)] = i;
        }
        for (std::size_t i = order.size() - 1; i > 0; --i) {
            std::swap(order[i], order[rng.below(i + 1)]);
        }
        for (int i = 0; i < 256; ++i) {
            const int j = order[static_cast<std::size_t>(i)];
            shuffled.set(i % 16, i / 16, img.at(j % 16, j / 16));
        }
        CHECK(cellularity_ratio(img, w) == cellularity_ratio(shuffled, w));
        double previous = 1.0;
        for (double t = -0.5; t <= 2.0; t += 0.05) {
            const double r = cellularity_ratio(img, w, t);
            CHECK(r >= 0.0);
            CHECK(r <= previous);
            previous = r;
        }
    }

    TEST_CASE("content proxy") {
        CHECK(default_min_content_bytes(1000) == 100000);
        CHECK(default_min_content_bytes(128) == 1638);
        Rng rng(1);
        RgbImage noisy(128, 128);
        for (auto& b : noisy.bytes()) {
            b = static_cast<std::uint8_t>(rng.below(256));
        }
        CHECK(content_bytes(noisy) > content_bytes(RgbImage(128, 128, {240, 240, 240})));
        const auto s = score_patch(test::patch_at("s", 0, 0), noisy, StainMatrix::default_he(), 0.25);
        CHECK(s.content_bytes == content_bytes(noisy));
        CHECK(s.ratio == cellularity_ratio(noisy, StainMatrix::default_he()));
    }

    TEST_CASE("cell mosaic keeps the top fraction") {
        const Mosaic m80 = mosaic_of(80);
        CHECK(cell_mosaic(m80, scores_of(m80, std::vector<double>(80, 0.5)), 0.20, 1000).size() == 16);
        const Mosaic m1 = mosaic_of(1);
        const Mosaic one = cell_mosaic(m1, scores_of(m1, {0.0}), 0.20, 1000);
        CHECK(one.size() == 1);
        CHECK(one.stage == MosaicStage::cell_mosaic);

        const Mosaic m10 = mosaic_of(10);
        std::vector<double> ratios;
        for (int i = 0; i < 10; ++i) {
            ratios.push_back(0.1 * i);
        }
        const Mosaic top = cell_mosaic(m10, scores_of(m10, ratios), 0.20, 1000);
        REQUIRE(top.size() == 2);
        CHECK(top.entries[0].patch_index == 9);
        CHECK(top.entries[1].patch_index == 8);

        std::vector<double> tied(10, 0.3);
        const Mosaic ties = cell_mosaic(m10, scores_of(m10, tied), 0.20, 1000);
        CHECK(ties.entries[0].patch_index == 0);
        CHECK(ties.entries[1].patch_index == 1);
    }

    TEST_CASE("content filter runs before the cut") {
        const Mosaic m = mosaic_of(10);
        auto scores = scores_of(m, {0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1, 0.0});
        scores[0].content_bytes = 10;
        const Mosaic out = cell_mosaic(m, scores, 0.20, 1000);
        REQUIRE(out.size() == 2);
        CHECK(out.entries[0].patch_index == 1);
        CHECK(out.entries[1].patch_index == 2);
        for (auto& s : scores) {
            s.content_bytes = 0;
        }
        CHECK_THROWS_AS((void)cell_mosaic(m, scores, 0.20, 1000), EmptyCellMosaicError);
    }

    TEST_CASE("cell mosaic count law and subset property") {
        Rng rng(12);
        for (std::size_t n = 1; n <= 200; ++n) {
            CHECK(cell_mosaic_quota(n, 0.20) == std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(0.2 * n))));
            const Mosaic m = mosaic_of(n);
            std::vector<double> ratios;
            for (std::size_t i = 0; i < n; ++i) {
                ratios.push_back(rng.uniform());
            }
            auto scores = scores_of(m, ratios);
            for (auto& s : scores) {
                s.content_bytes = rng.below(2) == 0 ? 0 : 5000;
            }
            scores[0].content_bytes = 5000;
            const Mosaic out = cell_mosaic(m, scores, 0.20, 1000);
            CHECK(out.size() <= cell_mosaic_quota(n, 0.20));
            std::set<std::size_t> seen;
            for (const auto& e : out.entries) {
                CHECK(e.patch_index < n);
                CHECK(m.entries[e.patch_index] == e);
                CHECK(seen.insert(e.patch_index).second);
            }
        }
    }
}
