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
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cellmosaic {

//! Appends little-endian primitives to a growing byte buffer.
class ByteWriter {
  public:
    void put_u8(std::uint8_t v) { buffer_.push_back(v); }
    void put_u16(std::uint16_t v);
    void put_u32(std::uint32_t v);
    void put_f32(float v);
    //! u16 length prefix followed by the raw UTF-8 bytes.
    void put_string16(std::string_view s);
    void put_bytes(std::span<const std::uint8_t> bytes);

    [[nodiscard]] std::size_t size() const noexcept { return buffer_.size(); }
    [[nodiscard]] const std::vector<std::uint8_t>& bytes() const noexcept { return buffer_; }
    std::vector<std::uint8_t> release() { return std::move(buffer_); }

  private:
    std::vector<std::uint8_t> buffer_;
};

//! Bounds-checked little-endian reader; running off the end throws CorruptionError.
class ByteReader {
  public:
    explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

    std::uint8_t get_u8();
    std::uint16_t get_u16();
    std::uint32_t get_u32();
    float get_f32();
    std::string get_string16();
    std::span<const std::uint8_t> get_bytes(std::size_t n);

    [[nodiscard]] std::size_t position() const noexcept { return pos_; }
    [[nodiscard]] std::size_t remaining() const noexcept { return data_.size() - pos_; }

  private:
    void require(std::size_t n) const;

    std::span<const std::uint8_t> data_;
    std::size_t pos_{0};
};

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace cellmosaic
