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

#include <array>

namespace cellmosaic {

using Vec3 = std::array<double, 3>;

//! 3x3 stain matrix whose columns are optical-density directions per RGB
//! channel: hematoxylin, eosin and a residual column derived as the normalized
//! cross product of the first two. The inverse is computed once at construction.
class StainMatrix {
  public:
    //! Completes a two-stain matrix. Throws DegenerateStainError for zero,
    //! non-finite or parallel columns.
    static StainMatrix complete(const Vec3& hematoxylin, const Vec3& eosin);

    //! H&E columns (0.650, 0.704, 0.286) and (0.072, 0.990, 0.105).
    static StainMatrix default_he();

    [[nodiscard]] const Vec3& column(int i) const noexcept { return columns_[static_cast<std::size_t>(i)]; }
    [[nodiscard]] const Vec3& hematoxylin() const noexcept { return columns_[0]; }
    [[nodiscard]] const Vec3& eosin() const noexcept { return columns_[1]; }
    [[nodiscard]] const Vec3& residual() const noexcept { return columns_[2]; }

    //! Optical density produced by concentrations c: OD = W * c.
    [[nodiscard]] Vec3 to_od(const Vec3& concentrations) const noexcept;

    //! Concentrations from optical density: c = W^-1 * OD.
    [[nodiscard]] Vec3 to_concentrations(const Vec3& od) const noexcept;

    //! Row-major inverse, exposed for tight per-pixel loops.
    [[nodiscard]] const std::array<Vec3, 3>& inverse_rows() const noexcept { return inverse_; }

  private:
    StainMatrix() = default;

    std::array<Vec3, 3> columns_{};
    std::array<Vec3, 3> inverse_{};
};

inline constexpr Vec3 kDefaultHematoxylin = {0.650, 0.704, 0.286};
inline constexpr Vec3 kDefaultEosin = {0.072, 0.990, 0.105};

}  // namespace cellmosaic
