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

#include <cellmosaic/features/feature_file.hpp>

#include <cmath>
#include <cstring>

#include <cellmosaic/common/binary_io.hpp>
#include <cellmosaic/common/errors.hpp>

namespace cellmosaic {

namespace {

    constexpr char kMagic[4] = {'K', 'I', 'M', 'F'};

}  // namespace

std::vector<std::uint8_t> encode_features(std::span<const FeatureVector> features) {
    const std::size_t d = features.empty() ? 0 : features.front().values.size();
    const std::string extractor = features.empty() ? std::string{} : features.front().extractor_id;
    for (const auto& f : features) {
        if (f.values.size() != d) {
            throw ShapeError("feature dimension differs within one file");
        }
        if (f.extractor_id != extractor) {
            throw IncompatibleBarcodeError("mixed extractor ids within one feature file");
        }
        for (const float v : f.values) {
            if (!std::isfinite(v)) {
                throw SpecError("non-finite feature value for slide '" + f.patch.slide_id + "'");
            }
        }
    }
    ByteWriter out;
    for (const char c : kMagic) {
        out.put_u8(static_cast<std::uint8_t>(c));
    }
    out.put_u16(kFeatureFileVersion);
    out.put_u16(0);
    out.put_u32(static_cast<std::uint32_t>(d));
    out.put_u32(static_cast<std::uint32_t>(features.size()));
    out.put_string16(extractor);
    for (const auto& f : features) {
        out.put_string16(f.patch.slide_id);
        out.put_u32(f.patch.x);
        out.put_u32(f.patch.y);
        out.put_u32(f.patch.side);
        out.put_f32(f.patch.mag);
        for (const float v : f.values) {
            out.put_f32(v);
        }
    }
    return out.release();
}

std::vector<FeatureVector> decode_features(std::span<const std::uint8_t> bytes) {
    ByteReader in(bytes);
    if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
        throw FormatError("not a feature file (bad magic)");
    }
    in.get_bytes(4);
    const std::uint16_t version = in.get_u16();
    if (version != kFeatureFileVersion) {
        throw FormatError("unsupported feature file version " + std::to_string(version));
    }
    in.get_u16();
    const std::uint32_t d = in.get_u32();
    const std::uint32_t count = in.get_u32();
    const std::string extractor = in.get_string16();
    if (count > 0 && d < 2) {
        throw FormatError("feature dimension must be at least 2");
    }
    std::vector<FeatureVector> features;
    features.reserve(std::min<std::size_t>(count, in.remaining() / (18 + 4 * std::size_t{d} + 1)));
    for (std::uint32_t r = 0; r < count; ++r) {
        FeatureVector f;
        f.patch.slide_id = in.get_string16();
        f.patch.x = in.get_u32();
        f.patch.y = in.get_u32();
        f.patch.side = in.get_u32();
        f.patch.mag = in.get_f32();
        f.values.resize(d);
        for (float& v : f.values) {
            v = in.get_f32();
        }
        f.extractor_id = extractor;
        features.push_back(std::move(f));
    }
    if (in.remaining() != 0) {
        throw CorruptionError("trailing bytes after the last feature record");
    }
    return features;
}

void save_features(std::span<const FeatureVector> features, const std::filesystem::path& path) {
    write_file_bytes(path, encode_features(features));
}

std::vector<FeatureVector> load_features(const std::filesystem::path& path) {
    return decode_features(read_file_bytes(path));
}

}  // namespace cellmosaic
