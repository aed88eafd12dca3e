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

// Acceptance suite: one verdict line per criterion. Tolerances and budgets are
// fixed here and are not configurable from the command line.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <cellmosaic/cellularity/cell_mosaic.hpp>
#include <cellmosaic/cellularity/deconvolution.hpp>
#include <cellmosaic/cellularity/stain_matrix.hpp>
#include <cellmosaic/common/binary_io.hpp>
#include <cellmosaic/common/parallel.hpp>
#include <cellmosaic/common/rng.hpp>
#include <cellmosaic/features/barcode.hpp>
#include <cellmosaic/mosaic/mosaic.hpp>
#include <cellmosaic/pipeline/commands.hpp>
#include <cellmosaic/pipeline/pipeline.hpp>
#include <cellmosaic/search/index.hpp>
#include <cellmosaic/search/search.hpp>

#include "../oracles.hpp"
#include "../support.hpp"

namespace {

using namespace cellmosaic;
using Clock = std::chrono::steady_clock;

constexpr double kAffineBudgetSeconds = 1.0;
constexpr double kKnnBudgetSeconds = 5.0;
constexpr double kEndToEndBudgetSeconds = 120.0;
constexpr double kUnquantizedTolerance = 1e-6;
constexpr double kQuantizedTolerance = 2e-2;
constexpr std::uint64_t kSeed = 20240101;
constexpr std::uint64_t kCorpusSeed = 7;
constexpr int kCorpusPatchSide = 128;

struct Verdict {
    bool pass{false};
    std::string detail;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string slurp(const std::filesystem::path& p) {
    const auto b = read_file_bytes(p);
    return {b.begin(), b.end()};
}

PipelineConfig corpus_config() {
    PipelineConfig c;
    c.l = kCorpusPatchSide;
    c.seed = kCorpusSeed;
    return c;
}

SynthCommand corpus_command(const std::filesystem::path& dir) {
    SynthCommand cmd;
    cmd.out_dir = dir;
    cmd.seed = kCorpusSeed;
    return cmd;
}

int run_quiet(const std::function<int(std::ostream&, std::ostream&)>& f, std::string* errors = nullptr) {
    std::ostringstream out;
    std::ostringstream err;
    const int rc = f(out, err);
    if (errors != nullptr) {
        *errors = err.str();
    }
    return rc;
}

Verdict barcode_affine(const std::filesystem::path&) {
    Rng rng(mix_seed(kSeed, "affine"));
    const auto start = Clock::now();
    std::size_t equal = 0;
    constexpr std::size_t kVectors = 1000;
    for (std::size_t t = 0; t < kVectors; ++t) {
        FeatureVector f{{"s", 0, 0, 1, 20.0f}, std::vector<float>(64), "acc"};
        for (auto& v : f.values) {
            v = static_cast<float>(rng.uniform(-1.0, 1.0));
        }
        const double alpha = 10.0 * (1.0 - rng.uniform());  // (0, 10]
        const double beta = rng.uniform(-5.0, 5.0);
        FeatureVector g = f;
        for (auto& v : g.values) {
            v = static_cast<float>(alpha * v + beta);
        }
        equal += barcode(f).bits == barcode(g).bits ? 1 : 0;
    }
    const double elapsed = seconds_since(start);
    return {equal == kVectors && elapsed < kAffineBudgetSeconds,
            fmt::format("{}/{} barcodes unchanged under alpha*f+beta, {:.3f} s (budget {} s)", equal, kVectors, elapsed,
                        kAffineBudgetSeconds)};
}

Verdict hamming_knn_oracle(const std::filesystem::path&) {
    Rng rng(mix_seed(kSeed, "knn"));
    const auto start = Clock::now();
    std::size_t queries = 0;
    std::size_t mismatches = 0;
    for (const std::size_t bits : {std::size_t{15}, std::size_t{63}, std::size_t{1023}}) {
        std::vector<Barcode> codes;
        std::vector<SlideInfo> meta;
        for (int s = 0; s < 100; ++s) {
            const std::string id = fmt::format("slide-{:03d}", s);
            meta.push_back({id, fmt::format("pt-{}", s / 3), fmt::format("T{}", s % 4), "C"});
            for (std::uint32_t p = 0; p < 5; ++p) {
                codes.push_back(test::random_barcode(rng, bits, test::patch_at(id, p * 128, 0)));
            }
        }
        const BarcodedIndex index = BarcodedIndex::build(codes, meta);
        for (int q = 0; q < 50; ++q) {
            const Barcode query = test::random_barcode(rng, bits, test::patch_at("q", 0, 0));
            const std::optional<std::string> exclude =
                q % 2 == 0 ? std::nullopt : std::optional<std::string>(meta[rng.below(meta.size())].patient_id);
            const auto got = knn_patch(query, index, 3, exclude);
            const auto [want, label] = test::naive_knn(query, index, 3, exclude);
            bool same = got.predicted_label == label && got.neighbors.size() == want.size();
            for (std::size_t i = 0; same && i < want.size(); ++i) {
                same = got.neighbors[i].entry == want[i].entry && got.neighbors[i].distance == want[i].distance;
            }
            ++queries;
            mismatches += same ? 0 : 1;
        }
    }
    std::size_t violations = 0;
    constexpr std::size_t kTriples = 10000;
    for (std::size_t t = 0; t < kTriples; ++t) {
        const std::size_t bits = 1 + rng.below(1024);
        const PatchRef ref = test::patch_at("t", 0, 0);
        const Barcode a = test::random_barcode(rng, bits, ref);
        const Barcode b = test::random_barcode(rng, bits, ref);
        const Barcode c = test::random_barcode(rng, bits, ref);
        const bool ok = hamming(a, c) <= hamming(a, b) + hamming(b, c) && hamming(a, b) == hamming(b, a) &&
                        hamming(a, a) == 0 && hamming(a, b) == test::bit_loop_distance(a.bits, b.bits);
        violations += ok ? 0 : 1;
    }
    const double elapsed = seconds_since(start);
    return {mismatches == 0 && violations == 0 && elapsed < kKnnBudgetSeconds,
            fmt::format("{} queries over 500-entry databases, {} mismatches vs naive scan; {} triples, {} metric "
                        "violations; {:.3f} s (budget {} s)",
                        queries, mismatches, kTriples, violations, elapsed, kKnnBudgetSeconds)};
}

Verdict deconvolution_roundtrip(const std::filesystem::path&) {
    const StainMatrix w = StainMatrix::default_he();
    const bool defaults = w.hematoxylin() == Vec3{0.650, 0.704, 0.286} && w.eosin() == Vec3{0.072, 0.990, 0.105};
    Rng rng(mix_seed(kSeed, "deconvolution"));
    double max_unquantized = 0.0;
    double max_quantized = 0.0;
    std::size_t quantized_ok = 0;
    constexpr std::size_t kPairs = 10000;
    for (std::size_t i = 0; i < kPairs; ++i) {
        const Vec3 c{rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0), 0.0};
        const Vec3 intensity = stain_to_intensity(w, c);
        // real-valued intensities: only exact zeros need clamping
        const Vec3 exact =
            w.to_concentrations(rgb_to_od(intensity, kFullTransmission, std::numeric_limits<double>::min()));
        const Vec3 quantized = w.to_concentrations(rgb_to_od(stain_to_rgb(w, c)));
        double err_q = 0.0;
        for (int k = 0; k < 2; ++k) {
            const auto kk = static_cast<std::size_t>(k);
            max_unquantized = std::max(max_unquantized, std::abs(exact[kk] - c[kk]));
            err_q = std::max(err_q, std::abs(quantized[kk] - c[kk]));
        }
        max_quantized = std::max(max_quantized, err_q);
        quantized_ok += err_q <= kQuantizedTolerance ? 1 : 0;
    }
    const bool unquantized_pass = max_unquantized <= kUnquantizedTolerance;
    const bool quantized_pass = quantized_ok == kPairs;
    return {defaults && unquantized_pass && quantized_pass,
            fmt::format("stain matrix defaults {}; unquantized max error {:.3g} (tol {}) {}; 8-bit quantized {}/{} "
                        "within {} (max error {:.3g}) {}",
                        defaults ? "exact" : "WRONG", max_unquantized, kUnquantizedTolerance,
                        unquantized_pass ? "ok" : "FAIL", quantized_ok, kPairs, kQuantizedTolerance, max_quantized,
                        quantized_pass ? "ok" : "FAIL")};
}

Verdict cellmosaic_count_law(const std::filesystem::path&) {
    std::size_t wrong = 0;
    std::size_t at80 = 0;
    for (std::size_t n = 1; n <= 200; ++n) {
        Mosaic m{"s", MosaicStage::full_mosaic, {}};
        std::vector<CellularityScore> scores;
        for (std::size_t i = 0; i < n; ++i) {
            const PatchRef p = test::patch_at("s", static_cast<std::uint32_t>(i) * 128, 0);
            m.entries.push_back({p, i, 0});
            scores.push_back({p, static_cast<double>((i * 37) % 101) / 100.0, 10000});
        }
        const std::size_t size = cell_mosaic(m, scores, 0.20, 1000).size();
        const auto expected = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(0.2 * static_cast<double>(n))));
        wrong += size == expected ? 0 : 1;
        if (n == 80) {
            at80 = size;
        }
    }
    return {wrong == 0 && at80 == 16,
            fmt::format("{} of 200 mosaic sizes off the max(1, round(0.2 n)) law; 80 -> {}", wrong, at80)};
}

//! Shared corpus and index used by the corpus-level criteria.
struct Corpus {
    std::filesystem::path manifest;
    std::filesystem::path index;
};

Corpus prepare_corpus(const std::filesystem::path& work) {
    const auto dir = work / "corpus";
    const Corpus c{dir / "manifest.csv", work / "index" / std::string(kIndexFileName)};
    if (!std::filesystem::exists(c.manifest)) {
        std::filesystem::remove_all(dir);
        if (run_quiet([&](auto& o, auto& e) { return cmd_synth(corpus_command(dir), o, e); }) != 0) {
            throw std::runtime_error("corpus generation failed");
        }
    }
    if (!std::filesystem::exists(c.index)) {
        IndexCommand cmd{c.manifest, work / "index", corpus_config()};
        if (run_quiet([&](auto& o, auto& e) { return cmd_index(cmd, o, e); }) != 0) {
            throw std::runtime_error("corpus indexing failed");
        }
    }
    return c;
}

Verdict end_to_end_synthetic(const std::filesystem::path& work) {
    const auto dir = work / "e2e";
    std::filesystem::remove_all(dir);
    const auto start = Clock::now();
    const PipelineConfig config = corpus_config();
    std::string errors;
    if (run_quiet([&](auto& o, auto& e) { return cmd_synth(corpus_command(dir / "corpus"), o, e); }, &errors) != 0) {
        return {false, "synth failed: " + errors};
    }
    const auto manifest = dir / "corpus" / "manifest.csv";
    const auto run = [&](const std::string& tag) -> std::string {
        IndexCommand index{manifest, dir / ("index_" + tag), config};
        if (run_quiet([&](auto& o, auto& e) { return cmd_index(index, o, e); }, &errors) != 0) {
            return "index failed: " + errors;
        }
        for (const EvalMode mode : {EvalMode::horizontal, EvalMode::vertical}) {
            EvalCommand eval;
            eval.index = index.out_dir / std::string(kIndexFileName);
            eval.test_manifest = manifest;
            eval.mode = mode;
            eval.out_dir = dir / ("report_" + tag);
            eval.config = config;
            if (run_quiet([&](auto& o, auto& e) { return cmd_eval(eval, o, e); }, &errors) != 0) {
                return "eval failed: " + errors;
            }
        }
        return {};
    };
    if (const auto problem = run("a"); !problem.empty()) {
        return {false, problem};
    }
    const double elapsed = seconds_since(start);

    std::vector<std::string> problems;
    const auto horizontal = nlohmann::json::parse(slurp(dir / "report_a" / "horizontal.json"));
    std::size_t classes = 0;
    for (const auto& c : horizontal["classes"]) {
        ++classes;
        if (c["accuracy"].get<double>() != 1.0) {
            problems.push_back(fmt::format("{} accuracy {}", c["name"].get<std::string>(), c["accuracy"].get<double>()));
        }
    }
    std::size_t subtypes = 0;
    std::size_t sites = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir / "report_a")) {
        const auto name = entry.path().filename().string();
        if (name.rfind("vertical_", 0) != 0 || entry.path().extension() != ".json") {
            continue;
        }
        ++sites;
        const auto report = nlohmann::json::parse(slurp(entry.path()));
        for (const auto& c : report["classes"]) {
            ++subtypes;
            if (c["f1"].get<double>() != 1.0) {
                problems.push_back(fmt::format("{} F1 {}", c["name"].get<std::string>(), c["f1"].get<double>()));
            }
        }
    }
    if (classes != 3 || sites != 3 || subtypes != 6) {
        problems.push_back(fmt::format("expected 3 classes / 3 sites / 6 subtypes, got {} / {} / {}", classes, sites, subtypes));
    }

    if (const auto problem = run("b"); !problem.empty()) {
        return {false, problem};
    }
    const bool same_index = read_file_bytes(dir / "index_a" / std::string(kIndexFileName)) ==
                            read_file_bytes(dir / "index_b" / std::string(kIndexFileName));
    bool same_reports = true;
    for (const auto& entry : std::filesystem::directory_iterator(dir / "report_a")) {
        if (entry.path().extension() == ".json") {
            same_reports = same_reports && read_file_bytes(entry.path()) ==
                                               read_file_bytes(dir / "report_b" / entry.path().filename());
        }
    }
    if (!same_index) problems.emplace_back("rerun index differs");
    if (!same_reports) problems.emplace_back("rerun report JSON differs");
    if (elapsed >= kEndToEndBudgetSeconds) problems.push_back(fmt::format("runtime {:.1f} s over budget", elapsed));

    std::string detail = fmt::format(
        "horizontal accuracy 100% for {} classes, vertical F1 1.0 for {} subtypes in {} sites; synth+index+eval "
        "{:.1f} s (budget {} s); rerun index {}, reports {}",
        classes, subtypes, sites, elapsed, kEndToEndBudgetSeconds, same_index ? "identical" : "DIFFERENT",
        same_reports ? "identical" : "DIFFERENT");
    if (!problems.empty()) {
        detail += "; problems:";
        for (const auto& p : problems) {
            detail += " [" + p + "]";
        }
    }
    return {problems.empty(), detail};
}

std::string self_score(const std::vector<SlideMatchScore>& ranked, const std::string& id) {
    for (const auto& r : ranked) {
        if (r.slide_id == id) {
            return fmt::format("{}", r.score);
        }
    }
    return "absent";
}

Verdict self_retrieval(const std::filesystem::path& work) {
    const Corpus corpus = prepare_corpus(work);
    const BarcodedIndex index = BarcodedIndex::load(corpus.index);
    std::size_t hits = 0;
    std::vector<std::string> misses;
    for (const auto& slide : index.slides()) {
        const auto ranked = match_wsi(index.slide_barcodes(slide.info.slide_id), index);
        if (ranked[0].slide_id == slide.info.slide_id && ranked[0].score == 0) {
            ++hits;
        } else {
            misses.push_back(fmt::format("{} (top {} score {}, self score {})", slide.info.slide_id, ranked[0].slide_id,
                                         ranked[0].score, self_score(ranked, slide.info.slide_id)));
        }
    }
    std::string detail = fmt::format("{}/{} slides rank themselves first with score 0", hits, index.slides().size());
    for (const auto& m : misses) {
        detail += "; miss " + m;
    }
    return {hits == index.slides().size() && hits == 30, detail};
}

Verdict mosaic_size_bound(const std::filesystem::path& work) {
    const Corpus corpus = prepare_corpus(work);
    const PipelineConfig config = corpus_config();
    const auto records = load_manifest(corpus.manifest);
    std::vector<std::optional<SlideIndexResult>> results(records.size());
    parallel_for(records.size(), config.resolved_workers(),
                 [&](std::size_t i) { results[i] = index_slide(records[i], config); });
    std::size_t exact = 0;
    std::size_t covered = 0;
    double lo = 1.0;
    double hi = 0.0;
    for (const auto& r : results) {
        std::size_t expected = 0;
        for (const std::size_t c : r->cluster_sizes) {
            if (c > 0) {
                expected += mosaic_quota(c, config.p);
            }
        }
        exact += r->mosaic.size() == expected ? 1 : 0;
        const double coverage = static_cast<double>(r->mosaic.size()) / static_cast<double>(r->kept_patches);
        lo = std::min(lo, coverage);
        hi = std::max(hi, coverage);
        covered += coverage >= config.p / 2 && coverage <= 2 * config.p ? 1 : 0;
    }
    // coverage exceeds p because every cluster contributes at least one patch and rounding is per cluster
    return {exact == records.size() && covered == records.size(),
            fmt::format("{}/{} slides select exactly sum_c max(1, round(p |c|)); {}/{} within coverage [{}, {}], "
                        "observed [{:.4f}, {:.4f}] (per-cluster rounding slack above p = {})",
                        exact, records.size(), covered, records.size(), config.p / 2, 2 * config.p, lo, hi, config.p)};
}

Verdict determinism(const std::filesystem::path& work) {
    const Corpus corpus = prepare_corpus(work);
    std::vector<std::uint32_t> checksums;
    std::vector<std::vector<std::uint8_t>> files;
    for (const std::size_t workers : {std::size_t{1}, std::size_t{4}}) {
        PipelineConfig config = corpus_config();
        config.workers = workers;
        const auto out = work / fmt::format("determinism_{}", workers);
        std::filesystem::remove_all(out);
        IndexCommand cmd{corpus.manifest, out, config};
        if (run_quiet([&](auto& o, auto& e) { return cmd_index(cmd, o, e); }) != 0) {
            return {false, "index run failed"};
        }
        const auto path = out / std::string(kIndexFileName);
        checksums.push_back(BarcodedIndex::load(path).checksum());
        files.push_back(read_file_bytes(path));
    }
    checksums.push_back(BarcodedIndex::load(corpus.index).checksum());
    const bool same = std::adjacent_find(checksums.begin(), checksums.end(), std::not_equal_to<>()) == checksums.end() &&
                      files[0] == files[1];
    return {same, fmt::format("index checksums {:08x} (1 worker), {:08x} (4 workers), {:08x} (prepared run)",
                              checksums[0], checksums[1], checksums[2])};
}

struct Criterion {
    std::string id;
    Verdict (*run)(const std::filesystem::path&);
};

const std::vector<Criterion> kCriteria = {
    {"barcode_affine", barcode_affine},
    {"hamming_knn_oracle", hamming_knn_oracle},
    {"deconvolution_roundtrip", deconvolution_roundtrip},
    {"cellmosaic_count_law", cellmosaic_count_law},
    {"end_to_end_synthetic", end_to_end_synthetic},
    {"self_retrieval", self_retrieval},
    {"mosaic_size_bound", mosaic_size_bound},
    {"determinism", determinism},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cellmosaic acceptance suite"};
    std::filesystem::path work = std::filesystem::temp_directory_path() / "cellmosaic-acceptance";
    std::vector<std::string> only;
    bool prepare = false;
    bool list = false;
    app.add_option("--work", work, "scratch directory for the synthetic corpus");
    app.add_option("--only", only, "run only these criteria");
    app.add_flag("--prepare", prepare, "generate and index the shared corpus, then exit");
    app.add_flag("--list", list, "list criterion ids");
    CLI11_PARSE(app, argc, argv);

    if (list) {
        for (const auto& c : kCriteria) {
            std::cout << c.id << '\n';
        }
        return 0;
    }
    std::filesystem::create_directories(work);
    if (prepare) {
        try {
            std::filesystem::remove_all(work / "corpus");
            std::filesystem::remove_all(work / "index");
            prepare_corpus(work);
            std::cout << "prepared corpus in " << work.string() << '\n';
            return 0;
        } catch (const std::exception& e) {
            std::cerr << "prepare failed: " << e.what() << '\n';
            return 1;
        }
    }
    for (const auto& id : only) {
        if (std::none_of(kCriteria.begin(), kCriteria.end(), [&](const Criterion& c) { return c.id == id; })) {
            std::cerr << "unknown criterion '" << id << "'\n";
            return 2;
        }
    }

    std::size_t failed = 0;
    for (const auto& c : kCriteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) {
            continue;
        }
        Verdict v;
        try {
            v = c.run(work);
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failed += v.pass ? 0 : 1;
        std::cout << (v.pass ? "PASS " : "FAIL ") << c.id << ": " << v.detail << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
