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

#include <cellmosaic/features/stub_extractor.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <cellmosaic/cellularity/deconvolution.hpp>
#include <cellmosaic/common/errors.hpp>
#include <cellmosaic/mosaic/descriptor.hpp>

namespace cellmosaic {

std::vector<double> gradient_orientation_histogram(const RgbImage& patch, int bins) {
    std::vector<double> hist(static_cast<std::size_t>(bins), 0.0);
    const int w = patch.width();
    const int h = patch.height();
    std::vector<double> grey(patch.pixel_count());
    const auto bytes = patch.bytes();
    for (std::size_t p = 0; p < grey.size(); ++p) {
        grey[p] = (bytes[3 * p] + bytes[3 * p + 1] + bytes[3 * p + 2]) / 3.0;
    }
    auto g = [&](int x, int y) { return grey[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x)]; };
    double total = 0.0;
    for (int y = 1; y + 1 < h; ++y) {
        for (int x = 1; x + 1 < w; ++x) {
            const double gx = 0.5 * (g(x + 1, y) - g(x - 1, y));
            const double gy = 0.5 * (g(x, y + 1) - g(x, y - 1));
            const double mag = std::hypot(gx, gy);
            if (mag == 0.0) {
                continue;
            }
            double angle = std::atan2(gy, gx);
            if (angle < 0.0) {
                angle += 2.0 * std::numbers::pi;
            }
            auto bin = static_cast<int>(angle / (2.0 * std::numbers::pi) * bins);
            bin = std::clamp(bin, 0, bins - 1);
            hist[static_cast<std::size_t>(bin)] += mag;
            total += mag;
        }
    }
    if (total == 0.0) {
        std::fill(hist.begin(), hist.end(), 1.0 / bins);
        return hist;
    }
    for (double& v : hist) {
        v /= total;
    }
    return hist;
}

std::vector<double> stain_histograms(const RgbImage& patch, const StainMatrix& w, int bins) {
    std::vector<double> hist(2 * static_cast<std::size_t>(bins), 0.0);
    const ConcentrationMaps maps = deconvolve(patch, w);
    const std::size_t n = maps.pixel_count();
    if (n == 0) {
        return hist;
    }
    auto bin_of = [bins](double c) {
        const auto b = static_cast<int>(std::floor(c / kStainHistogramMax * bins));
        return static_cast<std::size_t>(std::clamp(b, 0, bins - 1));
    };
    for (std::size_t p = 0; p < n; ++p) {
        hist[bin_of(maps.hematoxylin(p))] += 1.0;
        hist[static_cast<std::size_t>(bins) + bin_of(maps.eosin(p))] += 1.0;
    }
    for (double& v : hist) {
        v /= static_cast<double>(n);
    }
    return hist;
}

std::vector<float> stub_features(const RgbImage& patch) {
    if (patch.empty()) {
        throw SpecError("stub extractor needs a non-empty patch");
    }
    static const StainMatrix w = StainMatrix::default_he();
    std::vector<double> all = rgb_histogram(patch, kHistogramBins);
    const auto grad = gradient_orientation_histogram(patch, kGradientBins);
    const auto stain = stain_histograms(patch, w, kStainBins);
    all.insert(all.end(), grad.begin(), grad.end());
    all.insert(all.end(), stain.begin(), stain.end());

    double norm = 0.0;
    for (const double v : all) {
        norm += v * v;
    }
    norm = std::sqrt(norm);
    std::vector<float> out(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
        out[i] = static_cast<float>(all[i] / norm);
    }
    return out;
}

FeatureVector stub_extract(const PatchRef& ref, const RgbImage& patch) {
    return {ref, stub_features(patch), std::string(kStubExtractorId)};
}

}  // namespace cellmosaic
