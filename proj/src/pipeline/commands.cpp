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

#include <cellmosaic/pipeline/commands.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include <cellmosaic/common/binary_io.hpp>
#include <cellmosaic/common/errors.hpp>
#include <cellmosaic/common/parallel.hpp>
#include <cellmosaic/common/rng.hpp>
#include <cellmosaic/eval/report.hpp>
#include <cellmosaic/features/feature_file.hpp>
#include <cellmosaic/mosaic/mosaic.hpp>
#include <cellmosaic/pipeline/pipeline.hpp>
#include <cellmosaic/slide_io/curation.hpp>

namespace cellmosaic {

namespace {

    void write_text(const std::filesystem::path& path, const std::string& text) {
        write_file_bytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
    }

    struct SlideOutcome {
        std::optional<SlideIndexResult> result;
        std::string error;
    };

    std::vector<SlideOutcome> run_pipeline(const std::vector<SlideRecord>& records, const PipelineConfig& config) {
        std::vector<SlideOutcome> outcomes(records.size());
        parallel_for(records.size(), config.resolved_workers(), [&](std::size_t i) {
            try {
                outcomes[i].result = index_slide(records[i], config);
            } catch (const std::exception& e) {
                outcomes[i].error = e.what();
            }
        });
        return outcomes;
    }

    std::string describe_slide(const SlideIndexResult& r, const PipelineConfig& config) {
        std::size_t expected = 0;
        for (const std::size_t c : r.cluster_sizes) {
            expected += mosaic_quota(c, config.p);
        }
        const double coverage = static_cast<double>(r.mosaic.size()) / static_cast<double>(r.kept_patches);
        std::string line = fmt::format(
            "ok {} kept={} clusters={} mosaic={} expected_mosaic={} coverage={:.4f} cell_mosaic={} timings_ms:",
            r.info.slide_id, r.kept_patches, r.cluster_sizes.size(), r.mosaic.size(), expected, coverage,
            r.cell_mosaic.size());
        for (const auto& t : r.timings) {
            line += fmt::format(" {}={:.1f}", t.stage, t.milliseconds);
        }
        return line;
    }

    std::vector<SlideRecord> query_rows(const std::vector<SlideRecord>& records) {
        std::vector<SlideRecord> test;
        std::copy_if(records.begin(), records.end(), std::back_inserter(test),
                     [](const SlideRecord& r) { return r.split == Split::test; });
        return test.empty() ? records : test;
    }

}  // namespace

int cmd_index(const IndexCommand& cmd, std::ostream& out, std::ostream& err) {
    validate(cmd.config);
    const std::vector<SlideRecord> records = load_manifest(cmd.manifest);
    std::filesystem::create_directories(cmd.out_dir);

    std::string log = "# resolved config\n" + echo_config(cmd.config) + "\n# slides\n";
    std::vector<Barcode> barcodes;
    std::vector<SlideInfo> metadata;
    std::string mosaics;
    std::size_t failures = 0;

    if (cmd.config.extractor == ExtractorKind::external_file) {
        const std::vector<FeatureVector> features = load_features(cmd.config.feature_file);
        for (const auto& record : records) {
            try {
                auto slide_codes = barcodes_for_slide(features, record.slide_id);
                log += fmt::format("ok {} features={}\n", record.slide_id, slide_codes.size());
                metadata.push_back(slide_info(record));
                std::move(slide_codes.begin(), slide_codes.end(), std::back_inserter(barcodes));
            } catch (const std::exception& e) {
                ++failures;
                log += fmt::format("FAILED {}: {}\n", record.slide_id, e.what());
            }
        }
    } else {
        auto outcomes = run_pipeline(records, cmd.config);
        for (std::size_t i = 0; i < records.size(); ++i) {
            auto& o = outcomes[i];
            if (!o.result) {
                ++failures;
                log += fmt::format("FAILED {}: {}\n", records[i].slide_id, o.error);
                continue;
            }
            log += describe_slide(*o.result, cmd.config) + "\n";
            mosaics += mosaic_to_jsonl(o.result->mosaic);
            mosaics += mosaic_to_jsonl(o.result->cell_mosaic);
            metadata.push_back(o.result->info);
            std::move(o.result->barcodes.begin(), o.result->barcodes.end(), std::back_inserter(barcodes));
        }
    }

    const std::size_t successes = metadata.size();
    log += fmt::format("\n# summary\nslides={} indexed={} failed={}\n", records.size(), successes, failures);
    if (successes == 0) {
        write_text(cmd.out_dir / kIndexLogName, log);
        err << "no slide could be indexed; see " << (cmd.out_dir / kIndexLogName).string() << '\n';
        return exit_code::no_slides;
    }
    const BarcodedIndex index = BarcodedIndex::build(std::move(barcodes), metadata);
    index.save(cmd.out_dir / kIndexFileName);
    write_text(cmd.out_dir / kMosaicFileName, mosaics);
    log += fmt::format("entries={} bits={} checksum={:08x}\n", index.size(), index.bit_count(), index.checksum());
    write_text(cmd.out_dir / kIndexLogName, log);
    out << fmt::format("indexed {} of {} slides, {} patches, checksum {:08x}\n", successes, records.size(),
                       index.size(), index.checksum());
    if (failures > 0) {
        err << failures << " slide(s) failed; see " << (cmd.out_dir / kIndexLogName).string() << '\n';
    }
    return exit_code::ok;
}

int cmd_search(const SearchCommand& cmd, std::ostream& out, std::ostream& err) {
    try {
        const BarcodedIndex index = BarcodedIndex::load(cmd.index);
        std::vector<Barcode> query;
        std::string query_name;
        if (!cmd.query_features.empty()) {
            for (const auto& f : load_features(cmd.query_features)) {
                query.push_back(barcode(f));
            }
            query_name = cmd.query_features.string();
        } else {
            validate(cmd.config);
            const auto records = load_manifest(cmd.manifest);
            const auto it = std::find_if(records.begin(), records.end(),
                                         [&](const SlideRecord& r) { return r.slide_id == cmd.query_slide; });
            if (it == records.end()) {
                throw SpecError("slide '" + cmd.query_slide + "' is not in the manifest");
            }
            query = index_slide(*it, cmd.config).barcodes;
            query_name = cmd.query_slide;
        }
        if (query.empty()) {
            throw SpecError("query has no barcodes");
        }
        for (const auto& b : query) {
            index.check_compatible(b);
        }
        auto ranked = match_wsi(query, index, cmd.exclude_patient);
        ranked.resize(std::min(ranked.size(), cmd.top));

        nlohmann::ordered_json j;
        j["query"] = query_name;
        j["query_patches"] = query.size();
        j["exclude_patient"] = cmd.exclude_patient ? nlohmann::ordered_json(*cmd.exclude_patient) : nullptr;
        auto results = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < ranked.size(); ++i) {
            const SlideInfo& info = index.slides()[ranked[i].slide_index].info;
            results.push_back({{"rank", i + 1},
                               {"slide_id", ranked[i].slide_id},
                               {"score", ranked[i].score},
                               {"patient_id", info.patient_id},
                               {"tumor_type", info.tumor_type},
                               {"project_code", info.project_code}});
        }
        j["results"] = std::move(results);
        out << j.dump(2) << '\n';
        return exit_code::ok;
    } catch (const IncompatibleBarcodeError& e) {
        err << "incompatible query: " << e.what() << '\n';
        return exit_code::incompatible;
    }
}

std::string report_stem(EvalMode mode, const std::string& site) {
    if (mode == EvalMode::horizontal) {
        return "horizontal";
    }
    std::string stem = "vertical_";
    for (const char ch : site) {
        stem += std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_';
    }
    return stem;
}

int cmd_eval(const EvalCommand& cmd, std::ostream& out, std::ostream& err) {
    validate(cmd.config);
    const BarcodedIndex index = BarcodedIndex::load(cmd.index);
    const std::vector<SlideRecord> rows = query_rows(load_manifest(cmd.test_manifest));

    std::vector<TestSlide> slides(rows.size());
    std::vector<std::string> problems(rows.size());
    std::optional<std::vector<FeatureVector>> external;
    if (cmd.config.extractor == ExtractorKind::external_file) {
        external = load_features(cmd.config.feature_file);
    }
    parallel_for(rows.size(), cmd.config.resolved_workers(), [&](std::size_t i) {
        slides[i].info = slide_info(rows[i]);
        try {
            if (index.find_slide(rows[i].slide_id) != nullptr) {
                slides[i].barcodes = index.slide_barcodes(rows[i].slide_id);
            } else if (external) {
                slides[i].barcodes = barcodes_for_slide(*external, rows[i].slide_id);
            } else {
                slides[i].barcodes = index_slide(rows[i], cmd.config).barcodes;
            }
        } catch (const std::exception& e) {
            problems[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!problems[i].empty()) {
            err << "slide " << rows[i].slide_id << " has no barcodes: " << problems[i] << '\n';
        }
    }

    EvalOptions options;
    options.k = static_cast<std::size_t>(cmd.config.k);
    options.exclude_same_patient = cmd.exclude_same_patient;
    options.workers = cmd.config.resolved_workers();

    std::vector<EvalReport> reports;
    try {
        if (cmd.mode == EvalMode::horizontal) {
            reports.push_back(horizontal_eval(slides, index, options));
        } else if (cmd.site) {
            reports.push_back(vertical_eval(slides, index, *cmd.site, options));
        } else {
            std::set<std::string> sites;
            for (const auto& s : slides) {
                if (std::any_of(index.slides().begin(), index.slides().end(),
                                [&](const SlideRange& r) { return r.info.tumor_type == s.info.tumor_type; })) {
                    sites.insert(s.info.tumor_type);
                }
            }
            for (const auto& site : sites) {
                reports.push_back(vertical_eval(slides, index, site, options));
            }
        }
    } catch (const UnknownSiteError& e) {
        err << e.what() << '\n';
        return exit_code::unknown_site;
    }

    std::filesystem::create_directories(cmd.out_dir);
    for (auto& report : reports) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (!problems[i].empty() && (report.mode == EvalMode::horizontal || rows[i].tumor_type == report.site)) {
                report.warnings.push_back("slide '" + rows[i].slide_id + "' could not be processed: " + problems[i]);
            }
        }
        const std::string stem = report_stem(report.mode, report.site);
        write_text(cmd.out_dir / (stem + ".json"), report_to_json(report, cmd.config.seed, index.checksum()).dump(2) + "\n");
        write_text(cmd.out_dir / (stem + ".txt"), report_to_text(report));
        out << report_summary(report) << '\n';
    }
    return exit_code::ok;
}

std::vector<SynthGroup> default_synth_groups() {
    return {
        {"Gastrointestinal", "COAD", "Colon", 0.10, 0.80, 0.10},
        {"Gastrointestinal", "STAD", "Stomach", 0.14, 0.62, 0.32},
        {"Pulmonary", "LUAD", "Lung", 0.20, 0.30, 0.10},
        {"Pulmonary", "LUSC", "Lung", 0.16, 0.42, 0.32},
        {"Urinary", "BLCA", "Bladder", 0.06, 0.18, 0.10},
        {"Urinary", "KIRC", "Kidney", 0.04, 0.30, 0.32},
    };
}

namespace {

    std::string synth_slide_id(const SynthGroup& group, int ordinal) {
        return fmt::format("SYN-{}-{:02d}", group.project_code, ordinal + 1);
    }

}  // namespace

SyntheticSlideSpec synth_slide_spec(const SynthCommand& cmd, const SynthGroup& group, int ordinal) {
    const std::string id = synth_slide_id(group, ordinal);
    Rng rng(mix_seed(cmd.seed, id));
    SyntheticSlideSpec spec;
    spec.width = cmd.slide_side;
    spec.height = cmd.slide_side;
    spec.seed = rng.next();
    spec.noise_amplitude = cmd.noise_amplitude;
    spec.texture_amplitude = cmd.texture_amplitude;
    spec.texture_scale = cmd.texture_scale;
    const double side = cmd.slide_side;
    const int blobs = 3 + static_cast<int>(rng.below(3));
    for (int b = 0; b < blobs; ++b) {
        SyntheticBlob blob;
        blob.radius = side * rng.uniform(0.16, 0.26);
        blob.center_x = rng.uniform(blob.radius, side - blob.radius);
        blob.center_y = rng.uniform(blob.radius, side - blob.radius);
        blob.c_h = group.c_h * rng.uniform(0.95, 1.05);
        blob.c_e = group.c_e * rng.uniform(0.95, 1.05);
        blob.nucleus_density = std::clamp(group.nucleus_density * rng.uniform(0.9, 1.1), 0.0, 1.0);
        spec.blobs.push_back(blob);
    }
    return spec;
}

int cmd_synth(const SynthCommand& cmd, std::ostream& out, std::ostream& /*err*/) {
    std::vector<SlideRecord> records;
    for (const auto& group : cmd.groups) {
        for (int i = 0; i < cmd.slides_per_group; ++i) {
            SlideRecord meta;
            meta.slide_id = synth_slide_id(group, i);
            meta.patient_id = "PT-" + meta.slide_id.substr(4);
            meta.base_magnification = 20.0;
            meta.section_kind = SectionKind::permanent;
            meta.morphology = "8000/3";
            meta.primary_diagnosis = group.project_code;
            meta.tissue_of_origin = group.tissue_of_origin;
            meta.tumor_type = group.tumor_type;
            meta.project_code = group.project_code;
            meta.split = Split::test;
            records.push_back(generate_synthetic_slide(synth_slide_spec(cmd, group, i),
                                                       cmd.out_dir / "slides" / (meta.slide_id + ".png"), meta));
        }
    }
    for (auto& r : records) {
        r.pixel_path = std::filesystem::relative(r.pixel_path, cmd.out_dir);
    }
    std::sort(records.begin(), records.end(),
              [](const SlideRecord& a, const SlideRecord& b) { return a.slide_id < b.slide_id; });
    save_manifest(records, cmd.out_dir / "manifest.csv");
    out << "wrote " << records.size() << " slides and " << (cmd.out_dir / "manifest.csv").string() << '\n';
    return exit_code::ok;
}

int cmd_synth_spec(const std::filesystem::path& spec_json, const std::filesystem::path& out_png, std::ostream& out,
                   std::ostream& /*err*/) {
    const auto bytes = read_file_bytes(spec_json);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(bytes.begin(), bytes.end());
    } catch (const nlohmann::json::exception& e) {
        throw SpecError(std::string("bad synthetic spec: ") + e.what());
    }
    try {
        SyntheticSlideSpec spec;
        spec.width = j.at("width").get<int>();
        spec.height = j.at("height").get<int>();
        if (j.contains("background")) {
            const auto bg = j.at("background").get<std::vector<int>>();
            if (bg.size() != 3) {
                throw SpecError("background must have three components");
            }
            spec.background = {static_cast<std::uint8_t>(std::clamp(bg[0], 0, 255)),
                               static_cast<std::uint8_t>(std::clamp(bg[1], 0, 255)),
                               static_cast<std::uint8_t>(std::clamp(bg[2], 0, 255))};
        }
        spec.seed = j.value("seed", std::uint64_t{0});
        spec.noise_amplitude = j.value("noise_amplitude", 0.0);
        spec.texture_amplitude = j.value("texture_amplitude", 0.0);
        spec.texture_scale = j.value("texture_scale", 8.0);
        spec.nucleus_radius = j.value("nucleus_radius", 3.0);
        spec.nucleus_boost = j.value("nucleus_boost", 1.0);
        for (const auto& b : j.value("blobs", nlohmann::json::array())) {
            spec.blobs.push_back({b.at("center_x").get<double>(), b.at("center_y").get<double>(),
                                  b.at("radius").get<double>(), b.at("c_h").get<double>(), b.at("c_e").get<double>(),
                                  b.value("nucleus_density", 0.0)});
        }
        SlideRecord meta;
        meta.slide_id = out_png.stem().string();
        generate_synthetic_slide(spec, out_png, meta);
    } catch (const nlohmann::json::exception& e) {
        throw SpecError(std::string("bad synthetic spec: ") + e.what());
    }
    out << "wrote " << out_png.string() << '\n';
    return exit_code::ok;
}

int cmd_features(const FeaturesCommand& cmd, std::ostream& out, std::ostream& err) {
    validate(cmd.config);
    const auto records = load_manifest(cmd.manifest);
    auto outcomes = run_pipeline(records, cmd.config);
    std::vector<FeatureVector> features;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (!outcomes[i].result) {
            err << "FAILED " << records[i].slide_id << ": " << outcomes[i].error << '\n';
            continue;
        }
        auto& f = outcomes[i].result->features;
        std::move(f.begin(), f.end(), std::back_inserter(features));
    }
    if (features.empty()) {
        err << "no features extracted\n";
        return exit_code::no_slides;
    }
    save_features(features, cmd.out);
    out << "wrote " << features.size() << " feature vectors to " << cmd.out.string() << '\n';
    return exit_code::ok;
}

int cmd_curate(const CurateCommand& cmd, std::ostream& out, std::ostream& err) {
    CurationOptions options;
    options.min_group_size = cmd.min_group_size;
    options.seed = cmd.seed;
    const CurationResult result = curate_dataset(load_manifest(cmd.manifest), options);
    for (const auto& e : result.exclusions) {
        err << "excluded " << e.slide_id << ": " << to_string(e.reason) << '\n';
    }
    save_manifest(result.records, cmd.out);
    std::map<Split, std::size_t> counts;
    for (const auto& r : result.records) {
        ++counts[r.split];
    }
    out << fmt::format("{} groups, train={} validation={} test={} excluded={}\n", result.groups.size(),
                       counts[Split::train], counts[Split::validation], counts[Split::test], counts[Split::excluded]);
    return exit_code::ok;
}

}  // namespace cellmosaic
