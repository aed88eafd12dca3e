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

#include <cellmosaic/cellularity/stain_matrix.hpp>

#include <cmath>

#include <cellmosaic/common/errors.hpp>

namespace cellmosaic {

namespace {

    Vec3 cross(const Vec3& a, const Vec3& b) {
        return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
    }

    double norm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

    bool finite(const Vec3& v) { return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]); }

}  // namespace

StainMatrix StainMatrix::complete(const Vec3& hematoxylin, const Vec3& eosin) {
    if (!finite(hematoxylin) || !finite(eosin)) {
        throw DegenerateStainError("stain columns must be finite");
    }
    const double nh = norm(hematoxylin);
    const double ne = norm(eosin);
    if (nh == 0.0 || ne == 0.0) {
        throw DegenerateStainError("stain columns must be nonzero");
    }
    const Vec3 r = cross(hematoxylin, eosin);
    const double nr = norm(r);
    // sin of the angle between the columns
    if (nr <= 1e-9 * nh * ne) {
        throw DegenerateStainError("stain columns are parallel");
    }

    StainMatrix m;
    m.columns_ = {hematoxylin, eosin, Vec3{r[0] / nr, r[1] / nr, r[2] / nr}};

    // Inverse via the adjugate: rows of W^-1 are cross products of column pairs over det.
    const auto& c = m.columns_;
    const Vec3 r0 = cross(c[1], c[2]);
    const Vec3 r1 = cross(c[2], c[0]);
    const Vec3 r2 = cross(c[0], c[1]);
    const double det = c[0][0] * r0[0] + c[0][1] * r0[1] + c[0][2] * r0[2];
    if (!std::isfinite(det) || std::abs(det) < 1e-12) {
        throw DegenerateStainError("stain matrix is singular");
    }
    for (int k = 0; k < 3; ++k) {
        m.inverse_[0][static_cast<std::size_t>(k)] = r0[static_cast<std::size_t>(k)] / det;
        m.inverse_[1][static_cast<std::size_t>(k)] = r1[static_cast<std::size_t>(k)] / det;
        m.inverse_[2][static_cast<std::size_t>(k)] = r2[static_cast<std::size_t>(k)] / det;
    }
    return m;
}

StainMatrix StainMatrix::default_he() { return complete(kDefaultHematoxylin, kDefaultEosin); }

Vec3 StainMatrix::to_od(const Vec3& c) const noexcept {
    Vec3 od{};
    for (std::size_t ch = 0; ch < 3; ++ch) {
        od[ch] = columns_[0][ch] * c[0] + columns_[1][ch] * c[1] + columns_[2][ch] * c[2];
    }
    return od;
}

Vec3 StainMatrix::to_concentrations(const Vec3& od) const noexcept {
    Vec3 c{};
    for (std::size_t s = 0; s < 3; ++s) {
        c[s] = inverse_[s][0] * od[0] + inverse_[s][1] * od[1] + inverse_[s][2] * od[2];
    }
    return c;
}

}  // namespace cellmosaic
