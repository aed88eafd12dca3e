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

#include <cellmosaic/slide_io/manifest.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <cellmosaic/common/binary_io.hpp>
#include <cellmosaic/common/errors.hpp>
#include <cellmosaic/slide_io/csv.hpp>

namespace cellmosaic {

std::string_view to_string(SectionKind kind) noexcept {
    return kind == SectionKind::frozen ? "frozen" : "permanent";
}

std::string_view to_string(Split split) noexcept {
    switch (split) {
        case Split::train:
            return "train";
        case Split::validation:
            return "validation";
        case Split::test:
            return "test";
        case Split::excluded:
            break;
    }
    return "excluded";
}

std::optional<SectionKind> parse_section_kind(std::string_view text) noexcept {
    if (text == "permanent") return SectionKind::permanent;
    if (text == "frozen") return SectionKind::frozen;
    return std::nullopt;
}

std::optional<Split> parse_split(std::string_view text) noexcept {
    if (text.empty() || text == "excluded") return Split::excluded;
    if (text == "train") return Split::train;
    if (text == "validation") return Split::validation;
    if (text == "test") return Split::test;
    return std::nullopt;
}

namespace {

    constexpr std::array kRequiredColumns = {
        "slide_id",         "patient_id",       "pixel_path", "base_magnification", "section_kind", "morphology",
        "primary_diagnosis", "tissue_of_origin", "tumor_type", "project_code",
    };

    std::optional<double> parse_positive(std::string_view text, bool& ok) {
        ok = true;
        if (text.empty()) {
            return std::nullopt;
        }
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value) || value <= 0.0) {
            ok = false;
            return std::nullopt;
        }
        return value;
    }

}  // namespace

std::vector<SlideRecord> parse_manifest(std::string_view text, const std::filesystem::path& base_dir) {
    const auto rows = csv::parse(text);
    if (rows.empty()) {
        throw ManifestFormatError("manifest has no header row");
    }
    std::unordered_map<std::string, std::size_t> column;
    for (std::size_t i = 0; i < rows.front().size(); ++i) {
        column.emplace(rows.front()[i], i);
    }
    for (const char* name : kRequiredColumns) {
        if (!column.contains(name)) {
            throw ManifestFormatError(std::string("manifest is missing required column '") + name + "'");
        }
    }
    const auto split_col = column.find("split");

    std::vector<SlideRecord> records;
    std::vector<std::string> bad_rows;
    std::string bad_detail;
    std::unordered_set<std::string> seen;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        auto field = [&](const char* name) -> std::string {
            const std::size_t i = column.at(name);
            return i < row.size() ? row[i] : std::string{};
        };
        SlideRecord rec;
        rec.slide_id = field("slide_id");
        rec.patient_id = field("patient_id");
        rec.morphology = field("morphology");
        rec.primary_diagnosis = field("primary_diagnosis");
        rec.tissue_of_origin = field("tissue_of_origin");
        rec.tumor_type = field("tumor_type");
        rec.project_code = field("project_code");

        std::string problem;
        const std::string path = field("pixel_path");
        rec.pixel_path = path;
        if (!path.empty() && rec.pixel_path.is_relative() && !base_dir.empty()) {
            rec.pixel_path = base_dir / rec.pixel_path;
        }
        bool mag_ok = true;
        rec.base_magnification = parse_positive(field("base_magnification"), mag_ok);
        if (!mag_ok) {
            problem = "unparsable base_magnification '" + field("base_magnification") + "'";
        }
        if (const auto kind = parse_section_kind(field("section_kind"))) {
            rec.section_kind = *kind;
        } else if (problem.empty()) {
            problem = "bad section_kind '" + field("section_kind") + "'";
        }
        const std::string split_text =
            split_col != column.end() && split_col->second < row.size() ? row[split_col->second] : std::string{};
        if (const auto split = parse_split(split_text)) {
            rec.split = *split;
        } else if (problem.empty()) {
            problem = "bad split '" + split_text + "'";
        }
        if (rec.slide_id.empty() && problem.empty()) {
            problem = "empty slide_id";
        }
        if (!problem.empty()) {
            const std::string id = rec.slide_id.empty() ? "<row " + std::to_string(r + 1) + ">" : rec.slide_id;
            bad_detail += (bad_rows.empty() ? "" : "; ") + id + ": " + problem;
            bad_rows.push_back(id);
            continue;
        }
        if (!seen.insert(rec.slide_id).second) {
            throw DuplicateIdError("duplicate slide_id '" + rec.slide_id + "' in manifest");
        }
        records.push_back(std::move(rec));
    }
    if (!bad_rows.empty()) {
        throw ManifestRowError("rejected manifest rows: " + bad_detail, std::move(bad_rows));
    }
    return records;
}

std::vector<SlideRecord> load_manifest(const std::filesystem::path& path) {
    const auto bytes = read_file_bytes(path);
    return parse_manifest(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()),
                          path.parent_path());
}

std::string format_manifest(const std::vector<SlideRecord>& records) {
    std::string out = "slide_id,patient_id,pixel_path,base_magnification,section_kind,morphology,"
                      "primary_diagnosis,tissue_of_origin,tumor_type,project_code,split\n";
    for (const auto& r : records) {
        std::string mag;
        if (r.base_magnification) {
            std::ostringstream os;
            os << *r.base_magnification;
            mag = os.str();
        }
        out += csv::format_row({r.slide_id, r.patient_id, r.pixel_path.string(), mag, std::string(to_string(r.section_kind)),
                                r.morphology, r.primary_diagnosis, r.tissue_of_origin, r.tumor_type, r.project_code,
                                std::string(to_string(r.split))});
        out.push_back('\n');
    }
    return out;
}

void save_manifest(const std::vector<SlideRecord>& records, const std::filesystem::path& path) {
    const std::string text = format_manifest(records);
    write_file_bytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace cellmosaic
