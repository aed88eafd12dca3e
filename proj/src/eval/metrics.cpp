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

#include <cellmosaic/eval/metrics.hpp>

#include <algorithm>
#include <map>

#include <cellmosaic/common/errors.hpp>

namespace cellmosaic {

ConfusionResult confusion_and_f1(std::span<const std::string> truth, std::span<const std::string> predicted) {
    if (truth.size() != predicted.size()) {
        throw ShapeError("truth and prediction lists differ in length");
    }
    if (truth.empty()) {
        throw ShapeError("confusion matrix needs at least one prediction");
    }
    ConfusionResult result;
    result.labels.assign(truth.begin(), truth.end());
    result.labels.insert(result.labels.end(), predicted.begin(), predicted.end());
    std::sort(result.labels.begin(), result.labels.end());
    result.labels.erase(std::unique(result.labels.begin(), result.labels.end()), result.labels.end());

    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < result.labels.size(); ++i) {
        pos[result.labels[i]] = i;
    }
    const std::size_t n = result.labels.size();
    result.matrix.assign(n, std::vector<std::size_t>(n, 0));
    for (std::size_t i = 0; i < truth.size(); ++i) {
        ++result.matrix[pos[truth[i]]][pos[predicted[i]]];
    }

    for (std::size_t c = 0; c < n; ++c) {
        ClassMetrics m;
        m.label = result.labels[c];
        m.true_positives = result.matrix[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            m.support += result.matrix[c][j];
            if (j != c) {
                m.false_negatives += result.matrix[c][j];
                m.false_positives += result.matrix[j][c];
            }
        }
        const std::size_t predicted_pos = m.true_positives + m.false_positives;
        const std::size_t actual_pos = m.true_positives + m.false_negatives;
        m.degenerate = predicted_pos == 0 || actual_pos == 0;
        m.precision = predicted_pos == 0 ? 0.0 : static_cast<double>(m.true_positives) / static_cast<double>(predicted_pos);
        m.recall = actual_pos == 0 ? 0.0 : static_cast<double>(m.true_positives) / static_cast<double>(actual_pos);
        m.f1 = m.precision + m.recall == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / (m.precision + m.recall);
        result.per_class.push_back(std::move(m));
    }
    return result;
}

}  // namespace cellmosaic
