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

#include <cellmosaic/pipeline/config.hpp>

#include <charconv>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <cellmosaic/cellularity/cell_mosaic.hpp>
#include <cellmosaic/common/binary_io.hpp>
#include <cellmosaic/common/errors.hpp>
#include <cellmosaic/common/parallel.hpp>

namespace cellmosaic {

std::string_view to_string(ExtractorKind kind) noexcept {
    return kind == ExtractorKind::external_file ? "external-file" : "stub";
}

std::size_t PipelineConfig::resolved_min_content_bytes() const {
    return min_content_bytes ? *min_content_bytes : default_min_content_bytes(l);
}

std::size_t PipelineConfig::resolved_workers() const { return workers == 0 ? default_workers() : workers; }

StainMatrix PipelineConfig::stain() const {
    try {
        return StainMatrix::complete({stain_matrix[0], stain_matrix[1], stain_matrix[2]},
                                     {stain_matrix[3], stain_matrix[4], stain_matrix[5]});
    } catch (const DegenerateStainError& e) {
        throw ConfigError(std::string("stain_matrix: ") + e.what());
    }
}

void validate(const PipelineConfig& c) {
    if (!(c.p > 0.0 && c.p <= 1.0)) {
        throw ConfigError(fmt::format("p must lie in (0, 1], got {}", c.p));
    }
    if (!(c.t_cell > 0.0 && c.t_cell <= 1.0)) {
        throw ConfigError(fmt::format("T_Cell must lie in (0, 1], got {}", c.t_cell));
    }
    if (c.n_c < 1) {
        throw ConfigError(fmt::format("n_C must be at least 1, got {}", c.n_c));
    }
    if (c.l < 32) {
        throw ConfigError(fmt::format("l must be at least 32, got {}", c.l));
    }
    if (!(c.m_c > 0.0) || !(c.m_i > 0.0)) {
        throw ConfigError("magnifications must be positive");
    }
    if (c.m_c > c.m_i) {
        throw ConfigError(fmt::format("m_C ({}) must not exceed m_I ({})", c.m_c, c.m_i));
    }
    if (c.k < 1) {
        throw ConfigError(fmt::format("k must be at least 1, got {}", c.k));
    }
    if (!(c.min_tissue_fraction >= 0.0 && c.min_tissue_fraction <= 1.0)) {
        throw ConfigError("min_tissue_fraction must lie in [0, 1]");
    }
    (void)c.stain();
    if (c.extractor == ExtractorKind::external_file && c.feature_file.empty()) {
        throw ConfigError("extractor = external-file needs feature_file");
    }
}

namespace {

    std::string_view trim(std::string_view s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string_view::npos) {
            return {};
        }
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    }

    template <typename T>
    T parse_number(std::string_view key, std::string_view value) {
        T out{};
        const auto* end = value.data() + value.size();
        const auto [ptr, ec] = std::from_chars(value.data(), end, out);
        if (ec != std::errc{} || ptr != end) {
            throw ConfigError(fmt::format("bad value '{}' for {}", value, key));
        }
        return out;
    }

    std::string unquote(std::string_view value) {
        if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front()) {
            return std::string(value.substr(1, value.size() - 2));
        }
        return std::string(value);
    }

    //! Drops a '#' comment that is not inside quotes.
    std::string_view strip_comment(std::string_view line) {
        char quote = 0;
        for (std::size_t i = 0; i < line.size(); ++i) {
            const char ch = line[i];
            if (quote != 0) {
                if (ch == quote) {
                    quote = 0;
                }
            } else if (ch == '"' || ch == '\'') {
                quote = ch;
            } else if (ch == '#') {
                return line.substr(0, i);
            }
        }
        return line;
    }

}  // namespace

void apply_setting(PipelineConfig& c, std::string_view key, std::string_view raw) {
    const std::string value = unquote(trim(raw));
    const std::string_view v = value;
    if (key == "m_I") {
        c.m_i = parse_number<double>(key, v);
    } else if (key == "m_C") {
        c.m_c = parse_number<double>(key, v);
    } else if (key == "l") {
        c.l = parse_number<int>(key, v);
    } else if (key == "n_C") {
        c.n_c = parse_number<int>(key, v);
    } else if (key == "p") {
        c.p = parse_number<double>(key, v);
    } else if (key == "T_Cell") {
        c.t_cell = parse_number<double>(key, v);
    } else if (key == "k") {
        c.k = parse_number<int>(key, v);
    } else if (key == "h_threshold") {
        c.h_threshold = parse_number<double>(key, v);
    } else if (key == "min_tissue_fraction") {
        c.min_tissue_fraction = parse_number<double>(key, v);
    } else if (key == "min_content_bytes") {
        if (v == "auto" || v.empty()) {
            c.min_content_bytes.reset();
        } else {
            c.min_content_bytes = parse_number<std::size_t>(key, v);
        }
    } else if (key == "seed") {
        c.seed = parse_number<std::uint64_t>(key, v);
    } else if (key == "extractor") {
        if (v == "stub") {
            c.extractor = ExtractorKind::stub;
        } else if (v == "external-file") {
            c.extractor = ExtractorKind::external_file;
        } else {
            throw ConfigError(fmt::format("extractor must be stub or external-file, got '{}'", v));
        }
    } else if (key == "feature_file") {
        c.feature_file = value;
    } else if (key == "stain_matrix") {
        std::array<double, 6> columns{};
        std::size_t n = 0;
        std::string_view rest = v;
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const std::string_view item = trim(rest.substr(0, comma));
            if (n == columns.size()) {
                throw ConfigError("stain_matrix takes exactly six numbers");
            }
            columns[n++] = parse_number<double>(key, item);
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        }
        if (n != columns.size()) {
            throw ConfigError("stain_matrix takes exactly six numbers");
        }
        c.stain_matrix = columns;
    } else if (key == "workers") {
        c.workers = parse_number<std::size_t>(key, v);
    } else {
        throw ConfigError(fmt::format("unknown config key '{}'", key));
    }
}

PipelineConfig parse_config(std::string_view text, PipelineConfig base) {
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        const std::string_view line = trim(strip_comment(text.substr(0, nl)));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(fmt::format("line {}: expected key = value", line_no));
        }
        apply_setting(base, trim(line.substr(0, eq)), line.substr(eq + 1));
    }
    validate(base);
    return base;
}

PipelineConfig load_config(const std::filesystem::path& path, PipelineConfig base) {
    const auto bytes = read_file_bytes(path);
    return parse_config(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()), std::move(base));
}

std::string echo_config(const PipelineConfig& c) {
    std::string out;
    out += fmt::format("m_I = {}\n", c.m_i);
    out += fmt::format("m_C = {}\n", c.m_c);
    out += fmt::format("l = {}\n", c.l);
    out += fmt::format("n_C = {}\n", c.n_c);
    out += fmt::format("p = {}\n", c.p);
    out += fmt::format("T_Cell = {}\n", c.t_cell);
    out += fmt::format("k = {}\n", c.k);
    out += fmt::format("h_threshold = {}\n", c.h_threshold);
    out += fmt::format("min_tissue_fraction = {}\n", c.min_tissue_fraction);
    out += fmt::format("min_content_bytes = {}\n", c.resolved_min_content_bytes());
    out += fmt::format("seed = {}\n", c.seed);
    out += fmt::format("extractor = \"{}\"\n", to_string(c.extractor));
    out += fmt::format("feature_file = \"{}\"\n", c.feature_file.string());
    out += fmt::format("stain_matrix = \"{}\"\n", fmt::join(c.stain_matrix, ", "));
    out += fmt::format("workers = {}\n", c.resolved_workers());
    return out;
}

}  // namespace cellmosaic
