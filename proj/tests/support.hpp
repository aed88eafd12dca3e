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

#include <atomic>
#include <filesystem>
#include <string>
#include <vector>

#include <unistd.h>

#include <cellmosaic/common/rng.hpp>
#include <cellmosaic/features/barcode.hpp>

namespace cellmosaic::test {

//! Scratch directory removed on scope exit.
class TempDir {
  public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("cellmosaic-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }
    [[nodiscard]] std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

  private:
    std::filesystem::path path_;
};

inline PatchRef patch_at(const std::string& slide, std::uint32_t x, std::uint32_t y, std::uint32_t side = 128) {
    return {slide, x, y, side, 20.0f};
}

inline PackedBits random_bits(Rng& rng, std::size_t n) {
    PackedBits bits(n);
    for (std::size_t i = 0; i < n; ++i) {
        if ((rng.next() & 1U) != 0) {
            bits.set(i);
        }
    }
    return bits;
}

inline Barcode random_barcode(Rng& rng, std::size_t n, const PatchRef& patch, const std::string& extractor = "test") {
    return {patch, random_bits(rng, n), extractor};
}

inline PackedBits bits_from_string(const std::string& s) {
    std::vector<bool> v;
    for (const char c : s) {
        v.push_back(c == '1');
    }
    return PackedBits::from_bools(v);
}

}  // namespace cellmosaic::test
