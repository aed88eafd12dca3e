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
#include <span>
#include <string>
#include <vector>

namespace cellmosaic {

struct ClassMetrics {
    std::string label;
    std::size_t support{0};
    std::size_t true_positives{0};
    std::size_t false_positives{0};
    std::size_t false_negatives{0};
    double precision{0.0};
    double recall{0.0};
    double f1{0.0};
    //! Precision or recall was 0/0 and has been recorded as 0.
    bool degenerate{false};
};

struct ConfusionResult {
    //! Sorted union of true and predicted labels; indexes both matrix axes.
    std::vector<std::string> labels;
    //! matrix[truth][predicted]
    std::vector<std::vector<std::size_t>> matrix;
    std::vector<ClassMetrics> per_class;
};

//! One-vs-rest precision, recall and F1 = 2PR / (P + R) per label. Throws
//! ShapeError for empty or unequal-length inputs.
ConfusionResult confusion_and_f1(std::span<const std::string> truth, std::span<const std::string> predicted);

}  // namespace cellmosaic
