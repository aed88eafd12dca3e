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

#include <cstdint>
#include <string>

#include <json.hpp>

#include <cellmosaic/eval/evaluation.hpp>

namespace cellmosaic {

//! {mode, site, k, classes: [{name, support, accuracy?, precision?, recall?, f1?}],
//!  confusion, confusion_labels, overall, warnings, predictions, seed, index_checksum}
nlohmann::ordered_json report_to_json(const EvalReport& report, std::uint64_t seed, std::uint32_t index_checksum);

//! Fixed-width table for terminals; percentages rounded here only.
std::string report_to_text(const EvalReport& report);

//! One-line macro summary.
std::string report_summary(const EvalReport& report);

}  // namespace cellmosaic
