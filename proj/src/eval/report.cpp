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

#include <cellmosaic/eval/report.hpp>

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace cellmosaic {

namespace {

    std::string hex32(std::uint32_t v) {
        std::ostringstream os;
        os << std::hex << std::setw(8) << std::setfill('0') << v;
        return os.str();
    }

}  // namespace

nlohmann::ordered_json report_to_json(const EvalReport& report, std::uint64_t seed, std::uint32_t index_checksum) {
    nlohmann::ordered_json j;
    j["mode"] = std::string(to_string(report.mode));
    j["site"] = report.site;
    j["k"] = report.k;
    auto classes = nlohmann::ordered_json::array();
    for (const auto& c : report.classes) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["support"] = c.support;
        if (c.accuracy) e["accuracy"] = *c.accuracy;
        if (c.precision) e["precision"] = *c.precision;
        if (c.recall) e["recall"] = *c.recall;
        if (c.f1) {
            e["f1"] = *c.f1;
            e["degenerate"] = c.degenerate;
        }
        classes.push_back(std::move(e));
    }
    j["classes"] = std::move(classes);
    j["confusion"] = report.confusion;
    j["confusion_labels"] = report.labels;
    j["overall"] = {{"accuracy", report.overall_accuracy},
                    {"macro_accuracy", report.macro_accuracy},
                    {"macro_f1", report.macro_f1},
                    {"evaluated", report.predictions.size()}};
    j["warnings"] = report.warnings;
    auto preds = nlohmann::ordered_json::array();
    for (const auto& p : report.predictions) {
        auto top = nlohmann::ordered_json::array();
        for (const auto& m : p.top) {
            top.push_back({{"slide_id", m.slide_id}, {"score", m.score}});
        }
        preds.push_back({{"slide_id", p.slide_id}, {"truth", p.truth}, {"predicted", p.predicted}, {"top", top}});
    }
    j["predictions"] = std::move(preds);
    j["seed"] = seed;
    j["index_checksum"] = hex32(index_checksum);
    return j;
}

std::string report_to_text(const EvalReport& report) {
    std::ostringstream os;
    os << (report.mode == EvalMode::horizontal ? "Horizontal search" : "Vertical search") << " (site: " << report.site
       << ", k = " << report.k << ")\n\n";
    std::size_t width = 5;
    for (const auto& l : report.labels) {
        width = std::max(width, l.size());
    }
    os << std::left << std::setw(static_cast<int>(width) + 2) << "class" << std::right << std::setw(9) << "support";
    if (report.mode == EvalMode::horizontal) {
        os << std::setw(12) << "accuracy %";
    } else {
        os << std::setw(12) << "precision" << std::setw(9) << "recall" << std::setw(9) << "F1";
    }
    os << '\n';
    os << std::fixed;
    for (const auto& c : report.classes) {
        os << std::left << std::setw(static_cast<int>(width) + 2) << c.name << std::right << std::setw(9) << c.support;
        if (c.accuracy) {
            os << std::setw(12) << std::setprecision(1) << 100.0 * *c.accuracy;
        } else {
            os << std::setw(12) << std::setprecision(3) << c.precision.value_or(0.0) << std::setw(9) << c.recall.value_or(0.0)
               << std::setw(9) << c.f1.value_or(0.0) << (c.degenerate ? "  (0/0)" : "");
        }
        os << '\n';
    }
    os << "\nconfusion (rows = truth, columns = predicted)\n";
    os << std::setw(static_cast<int>(width) + 2) << "";
    for (std::size_t i = 0; i < report.labels.size(); ++i) {
        os << std::setw(6) << i;
    }
    os << '\n';
    for (std::size_t r = 0; r < report.labels.size(); ++r) {
        os << std::left << std::setw(static_cast<int>(width) + 2) << (std::to_string(r) + " " + report.labels[r])
           << std::right;
        for (const std::size_t v : report.confusion[r]) {
            os << std::setw(6) << v;
        }
        os << '\n';
    }
    for (const auto& w : report.warnings) {
        os << "warning: " << w << '\n';
    }
    os << '\n' << report_summary(report) << '\n';
    return os.str();
}

std::string report_summary(const EvalReport& report) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(1);
    os << to_string(report.mode) << " " << report.site << ": " << report.predictions.size() << " slides, accuracy "
       << 100.0 * report.overall_accuracy << "%, macro accuracy " << 100.0 * report.macro_accuracy << "%, macro F1 "
       << std::setprecision(3) << report.macro_f1;
    return os.str();
}

}  // namespace cellmosaic
