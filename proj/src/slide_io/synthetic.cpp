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

#include <cellmosaic/slide_io/synthetic.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <cellmosaic/cellularity/deconvolution.hpp>
#include <cellmosaic/common/errors.hpp>
#include <cellmosaic/common/rng.hpp>
#include <cellmosaic/slide_io/raster_codec.hpp>

namespace cellmosaic {

void validate(const SyntheticSlideSpec& spec) {
    if (spec.width <= 0 || spec.height <= 0) {
        throw SpecError("synthetic slide must have positive area");
    }
    if (spec.texture_amplitude < 0.0 || spec.texture_amplitude >= 1.0 || !(spec.texture_scale >= 1.0)) {
        throw SpecError("texture amplitude must lie in [0, 1) and texture scale be at least 1 px");
    }
    for (const auto& b : spec.blobs) {
        if (!(b.nucleus_density >= 0.0 && b.nucleus_density <= 1.0)) {
            throw SpecError("nucleus density outside [0, 1]");
        }
        if (b.c_h < 0.0 || b.c_e < 0.0 || b.radius <= 0.0) {
            throw SpecError("blob needs positive radius and nonnegative stain mix");
        }
        if (b.center_x - b.radius < 0.0 || b.center_y - b.radius < 0.0 || b.center_x + b.radius > spec.width ||
            b.center_y + b.radius > spec.height) {
            throw SpecError("blob extends past the image bounds");
        }
    }
}

namespace {

class ValueNoise {
  public:
    ValueNoise(int width, int height, double scale, std::uint64_t seed) : scale_(scale) {
        cols_ = static_cast<int>(std::ceil(width / scale)) + 2;
        const int rows = static_cast<int>(std::ceil(height / scale)) + 2;
        Rng rng(mix_seed(seed, "texture"));
        lattice_.resize(static_cast<std::size_t>(cols_) * static_cast<std::size_t>(rows));
        for (double& v : lattice_) {
            v = rng.uniform(-1.0, 1.0);
        }
    }

    //! In [-1, 1].
    [[nodiscard]] double at(double x, double y) const {
        const double gx = x / scale_;
        const double gy = y / scale_;
        const auto ix = static_cast<int>(gx);
        const auto iy = static_cast<int>(gy);
        const double fx = smooth(gx - ix);
        const double fy = smooth(gy - iy);
        const double top = lerp(node(ix, iy), node(ix + 1, iy), fx);
        const double bottom = lerp(node(ix, iy + 1), node(ix + 1, iy + 1), fx);
        return lerp(top, bottom, fy);
    }

  private:
    static double smooth(double t) { return t * t * (3.0 - 2.0 * t); }
    static double lerp(double a, double b, double t) { return a + (b - a) * t; }
    [[nodiscard]] double node(int x, int y) const {
        return lattice_[static_cast<std::size_t>(y) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(x)];
    }

    double scale_;
    int cols_{0};
    std::vector<double> lattice_;
};

}  // namespace

RgbImage render_synthetic_slide(const SyntheticSlideSpec& spec) {
    validate(spec);
    RgbImage image(spec.width, spec.height, spec.background);
    const StainMatrix w = StainMatrix::default_he();
    Rng rng(spec.seed);
    const ValueNoise texture(spec.width, spec.height, spec.texture_scale, spec.seed);

    for (const auto& blob : spec.blobs) {
        const int x0 = static_cast<int>(std::floor(blob.center_x - blob.radius));
        const int x1 = static_cast<int>(std::ceil(blob.center_x + blob.radius));
        const int y0 = static_cast<int>(std::floor(blob.center_y - blob.radius));
        const int y1 = static_cast<int>(std::ceil(blob.center_y + blob.radius));
        const double r2 = blob.radius * blob.radius;

        // Hematoxylin boost per pixel of the bounding box, painted from the nucleus discs.
        const int bw = x1 - x0;
        const int bh = y1 - y0;
        std::vector<std::uint8_t> nucleus(static_cast<std::size_t>(bw) * static_cast<std::size_t>(bh), 0);
        const double dot_area = std::numbers::pi * spec.nucleus_radius * spec.nucleus_radius;
        const auto dots = static_cast<std::size_t>(std::llround(blob.nucleus_density * std::numbers::pi * r2 / dot_area));
        for (std::size_t d = 0; d < dots; ++d) {
            // uniform point in the disc
            const double rho = blob.radius * std::sqrt(rng.uniform());
            const double theta = 2.0 * std::numbers::pi * rng.uniform();
            const double cx = blob.center_x + rho * std::cos(theta);
            const double cy = blob.center_y + rho * std::sin(theta);
            const double nr = spec.nucleus_radius;
            for (int y = static_cast<int>(std::floor(cy - nr)); y <= static_cast<int>(std::ceil(cy + nr)); ++y) {
                for (int x = static_cast<int>(std::floor(cx - nr)); x <= static_cast<int>(std::ceil(cx + nr)); ++x) {
                    if (x < x0 || y < y0 || x >= x1 || y >= y1) {
                        continue;
                    }
                    const double dx = x + 0.5 - cx;
                    const double dy = y + 0.5 - cy;
                    if (dx * dx + dy * dy <= nr * nr) {
                        nucleus[static_cast<std::size_t>(y - y0) * static_cast<std::size_t>(bw) +
                                static_cast<std::size_t>(x - x0)] = 1;
                    }
                }
            }
        }

        for (int y = std::max(0, y0); y < std::min(spec.height, y1); ++y) {
            for (int x = std::max(0, x0); x < std::min(spec.width, x1); ++x) {
                const double dx = x + 0.5 - blob.center_x;
                const double dy = y + 0.5 - blob.center_y;
                if (dx * dx + dy * dy > r2) {
                    continue;
                }
                double c_h = blob.c_h;
                double c_e = blob.c_e;
                if (spec.texture_amplitude > 0.0) {
                    const double t = 1.0 + spec.texture_amplitude * texture.at(x + 0.5, y + 0.5);
                    c_h *= t;
                    c_e *= t;
                }
                if (spec.noise_amplitude > 0.0) {
                    c_h *= 1.0 + spec.noise_amplitude * rng.uniform(-1.0, 1.0);
                    c_e *= 1.0 + spec.noise_amplitude * rng.uniform(-1.0, 1.0);
                }
                if (nucleus[static_cast<std::size_t>(y - y0) * static_cast<std::size_t>(bw) +
                            static_cast<std::size_t>(x - x0)]) {
                    c_h += spec.nucleus_boost;
                }
                image.set(x, y, stain_to_rgb(w, {c_h, c_e, 0.0}));
            }
        }
    }
    return image;
}

SlideRecord generate_synthetic_slide(const SyntheticSlideSpec& spec, const std::filesystem::path& path,
                                     SlideRecord meta) {
    const RgbImage image = render_synthetic_slide(spec);
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    save_png(path, image);
    meta.pixel_path = path;
    return meta;
}

}  // namespace cellmosaic
