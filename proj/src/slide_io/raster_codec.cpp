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

#include <cellmosaic/slide_io/raster_codec.hpp>

#include <cstring>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include <cellmosaic/common/binary_io.hpp>
#include <cellmosaic/common/errors.hpp>

namespace cellmosaic {

namespace {

    // OpenCV stores BGR; swap on the way in and out.
    cv::Mat to_bgr(const RgbImage& image) {
        cv::Mat mat(image.height(), image.width(), CV_8UC3);
        const auto src = image.bytes();
        for (int y = 0; y < image.height(); ++y) {
            auto* row = mat.ptr<std::uint8_t>(y);
            const std::uint8_t* in = src.data() + 3 * static_cast<std::size_t>(y) * static_cast<std::size_t>(image.width());
            for (int x = 0; x < image.width(); ++x) {
                row[3 * x] = in[3 * x + 2];
                row[3 * x + 1] = in[3 * x + 1];
                row[3 * x + 2] = in[3 * x];
            }
        }
        return mat;
    }

}  // namespace

RgbImage load_raster(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
        throw IoError("slide raster not found: " + path.string());
    }
    const cv::Mat mat = cv::imread(path.string(), cv::IMREAD_COLOR);
    if (mat.empty()) {
        throw IoError("cannot decode slide raster: " + path.string());
    }
    RgbImage image(mat.cols, mat.rows);
    auto dst = image.bytes();
    for (int y = 0; y < mat.rows; ++y) {
        const auto* row = mat.ptr<std::uint8_t>(y);
        std::uint8_t* out = dst.data() + 3 * static_cast<std::size_t>(y) * static_cast<std::size_t>(mat.cols);
        for (int x = 0; x < mat.cols; ++x) {
            out[3 * x] = row[3 * x + 2];
            out[3 * x + 1] = row[3 * x + 1];
            out[3 * x + 2] = row[3 * x];
        }
    }
    return image;
}

void save_png(const std::filesystem::path& path, const RgbImage& image) {
    std::vector<std::uint8_t> buffer;
    if (!cv::imencode(".png", to_bgr(image), buffer, {cv::IMWRITE_PNG_COMPRESSION, 3})) {
        throw IoError("PNG encoding failed for " + path.string());
    }
    write_file_bytes(path, buffer);
}

std::vector<std::uint8_t> encode_jpeg(const RgbImage& image, int quality) {
    std::vector<std::uint8_t> buffer;
    if (image.empty()) {
        return buffer;
    }
    if (!cv::imencode(".jpg", to_bgr(image), buffer, {cv::IMWRITE_JPEG_QUALITY, quality})) {
        throw IoError("JPEG encoding failed");
    }
    return buffer;
}

}  // namespace cellmosaic
