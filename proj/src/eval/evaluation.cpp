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

#include <cellmosaic/eval/evaluation.hpp>

#include <algorithm>

#include <cellmosaic/common/errors.hpp>
#include <cellmosaic/common/parallel.hpp>

namespace cellmosaic {

std::string_view to_string(EvalMode mode) noexcept { return mode == EvalMode::vertical ? "vertical" : "horizontal"; }

PredictionRun predict_slides(std::span<const TestSlide> slides, const BarcodedIndex& index, LabelField field,
                             const SlideFilter& pool, const EvalOptions& options) {
    std::vector<const TestSlide*> order;
    for (const auto& s : slides) {
        order.push_back(&s);
    }
    std::sort(order.begin(), order.end(),
              [](const TestSlide* a, const TestSlide* b) { return a->info.slide_id < b->info.slide_id; });

    std::vector<std::optional<SlidePrediction>> slots(order.size());
    parallel_for(order.size(), options.workers, [&](std::size_t i) {
        const TestSlide& slide = *order[i];
        if (slide.barcodes.empty()) {
            return;
        }
        const auto exclude = options.exclude_same_patient ? std::optional<std::string>(slide.info.patient_id)
                                                          : std::nullopt;
        std::vector<SlideMatchScore> ranked;
        try {
            ranked = match_wsi(slide.barcodes, index, exclude, pool);
        } catch (const EmptyIndexError&) {
            return;
        }
        ranked.resize(std::min(ranked.size(), options.k));
        std::vector<VoteCandidate> votes;
        for (const auto& m : ranked) {
            votes.push_back({label_of(index.slides()[m.slide_index].info, field), m.score});
        }
        slots[i] = SlidePrediction{slide.info.slide_id, label_of(slide.info, field), majority_vote(votes), ranked};
    });

    PredictionRun run;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (slots[i]) {
            run.predictions.push_back(std::move(*slots[i]));
        } else {
            run.skipped.push_back(order[i]->info.slide_id);
        }
    }
    return run;
}

namespace {

    EvalReport assemble(EvalMode mode, std::string site, const EvalOptions& options, PredictionRun run) {
        EvalReport report;
        report.mode = mode;
        report.site = std::move(site);
        report.k = options.k;
        for (const auto& s : run.skipped) {
            report.warnings.push_back("slide '" + s + "' skipped: no barcodes or no candidate slides");
        }
        report.predictions = std::move(run.predictions);
        if (report.predictions.empty()) {
            report.warnings.emplace_back("no slide could be evaluated");
            return report;
        }
        std::vector<std::string> truth;
        std::vector<std::string> predicted;
        for (const auto& p : report.predictions) {
            truth.push_back(p.truth);
            predicted.push_back(p.predicted);
        }
        const ConfusionResult cm = confusion_and_f1(truth, predicted);
        report.labels = cm.labels;
        report.confusion = cm.matrix;

        std::size_t correct = 0;
        double acc_sum = 0.0;
        double f1_sum = 0.0;
        for (const auto& m : cm.per_class) {
            correct += m.true_positives;
            if (m.support == 0) {
                report.warnings.push_back("class '" + m.label + "' has no test support and is omitted");
                continue;
            }
            ClassResult c;
            c.name = m.label;
            c.support = m.support;
            const double accuracy = static_cast<double>(m.true_positives) / static_cast<double>(m.support);
            if (mode == EvalMode::horizontal) {
                c.accuracy = accuracy;
            } else {
                c.precision = m.precision;
                c.recall = m.recall;
                c.f1 = m.f1;
                c.degenerate = m.degenerate;
            }
            acc_sum += accuracy;
            f1_sum += m.f1;
            report.classes.push_back(std::move(c));
        }
        report.overall_accuracy = static_cast<double>(correct) / static_cast<double>(report.predictions.size());
        if (!report.classes.empty()) {
            report.macro_accuracy = acc_sum / static_cast<double>(report.classes.size());
            report.macro_f1 = f1_sum / static_cast<double>(report.classes.size());
        }
        return report;
    }

}  // namespace

EvalReport horizontal_eval(std::span<const TestSlide> slides, const BarcodedIndex& index, const EvalOptions& options) {
    auto run = predict_slides(slides, index, LabelField::tumor_type, {}, options);
    return assemble(EvalMode::horizontal, "all", options, std::move(run));
}

EvalReport vertical_eval(std::span<const TestSlide> slides, const BarcodedIndex& index, const std::string& site,
                         const EvalOptions& options) {
    std::vector<TestSlide> in_site;
    for (const auto& s : slides) {
        if (s.info.tumor_type == site) {
            in_site.push_back(s);
        }
    }
    const bool indexed = std::any_of(index.slides().begin(), index.slides().end(),
                                     [&](const SlideRange& r) { return r.info.tumor_type == site; });
    if (in_site.empty() || !indexed) {
        throw UnknownSiteError("site '" + site + "' is not present in both the test slides and the index");
    }
    const SlideFilter pool = [&site](const SlideInfo& info) { return info.tumor_type == site; };
    auto run = predict_slides(in_site, index, LabelField::project_code, pool, options);
    return assemble(EvalMode::vertical, site, options, std::move(run));
}

}  // namespace cellmosaic
