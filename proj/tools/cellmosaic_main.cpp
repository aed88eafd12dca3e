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

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <cellmosaic/common/errors.hpp>
#include <cellmosaic/pipeline/commands.hpp>

namespace {

using namespace cellmosaic;

//! Flags shared by the pipeline subcommands; they win over the config file.
struct CommonFlags {
    std::string config_file;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> workers;
    std::optional<int> k;
    std::vector<std::string> settings;

    void attach(CLI::App* app) {
        app->add_option("--config", config_file, "key = value config file");
        app->add_option("--seed", seed, "random seed");
        app->add_option("--workers", workers, "worker threads (0 = logical cores)");
        app->add_option("--k", k, "top-k slides per vote");
        app->add_option("--set", settings, "override one config key, key=value");
    }

    [[nodiscard]] PipelineConfig resolve() const {
        PipelineConfig c = config_file.empty() ? PipelineConfig{} : load_config(config_file);
        for (const auto& s : settings) {
            const auto eq = s.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("--set expects key=value, got '" + s + "'");
            }
            apply_setting(c, s.substr(0, eq), s.substr(eq + 1));
        }
        if (seed) c.seed = *seed;
        if (workers) c.workers = *workers;
        if (k) c.k = *k;
        validate(c);
        return c;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cellmosaic: cellularity-filtered mosaic indexing and barcode search for whole-slide images"};
    app.require_subcommand(1);

    CommonFlags index_flags;
    IndexCommand index_cmd;
    auto* index = app.add_subcommand("index", "index the slides of a manifest");
    index->add_option("--manifest", index_cmd.manifest, "slide manifest CSV")->required();
    index->add_option("--out", index_cmd.out_dir, "output directory")->required();
    index_flags.attach(index);

    CommonFlags search_flags;
    SearchCommand search_cmd;
    std::string exclude_patient;
    auto* search = app.add_subcommand("search", "rank indexed slides against a query");
    search->add_option("--index", search_cmd.index, "index file")->required();
    auto* qf = search->add_option("--query-features", search_cmd.query_features, "KIMF file with the query patches");
    auto* qm = search->add_option("--manifest", search_cmd.manifest, "manifest holding the query slide");
    auto* qs = search->add_option("--query-slide", search_cmd.query_slide, "slide id to process as the query");
    qm->needs(qs);
    qs->needs(qm);
    qf->excludes(qm);
    search->add_option("--exclude-patient", exclude_patient, "skip index slides of this patient");
    search->add_option("--top", search_cmd.top, "number of ranked slides to print")->capture_default_str();
    search_flags.attach(search);

    CommonFlags eval_flags;
    EvalCommand eval_cmd;
    std::string mode = "horizontal";
    std::string site;
    bool keep_patient = false;
    auto* eval = app.add_subcommand("eval", "horizontal or vertical search evaluation");
    eval->add_option("--index", eval_cmd.index, "index file")->required();
    eval->add_option("--manifest", eval_cmd.test_manifest, "test manifest")->required();
    eval->add_option("--mode", mode, "horizontal or vertical")->check(CLI::IsMember({"horizontal", "vertical"}));
    eval->add_option("--site", site, "tumor type for vertical search (default: every site)");
    eval->add_option("--out", eval_cmd.out_dir, "report directory")->required();
    eval->add_flag("--no-exclude-patient", keep_patient, "let a query match slides of its own patient");
    eval_flags.attach(eval);

    SynthCommand synth_cmd;
    std::string spec_file;
    std::string spec_out;
    auto* synth = app.add_subcommand("synth", "generate the synthetic test corpus");
    synth->add_option("--out", synth_cmd.out_dir, "corpus directory");
    synth->add_option("--seed", synth_cmd.seed, "random seed")->capture_default_str();
    synth->add_option("--side", synth_cmd.slide_side, "slide side in pixels")->capture_default_str();
    synth->add_option("--per-group", synth_cmd.slides_per_group, "slides per subtype")->capture_default_str();
    synth->add_option("--noise", synth_cmd.noise_amplitude, "relative stain noise")->capture_default_str();
    synth->add_option("--texture", synth_cmd.texture_amplitude, "smooth density texture amplitude")->capture_default_str();
    synth->add_option("--texture-scale", synth_cmd.texture_scale, "texture lattice spacing in px")->capture_default_str();
    synth->add_option("--spec", spec_file, "render one slide from a JSON spec instead");
    synth->add_option("--png", spec_out, "output PNG for --spec");

    CommonFlags features_flags;
    FeaturesCommand features_cmd;
    auto* features = app.add_subcommand("features", "stub features of every cell mosaic into a KIMF file");
    features->add_option("--manifest", features_cmd.manifest, "slide manifest CSV")->required();
    features->add_option("--out", features_cmd.out, "KIMF output file")->required();
    features_flags.attach(features);

    CurateCommand curate_cmd;
    auto* curate = app.add_subcommand("curate", "filter a manifest and assign splits");
    curate->add_option("--manifest", curate_cmd.manifest, "input manifest")->required();
    curate->add_option("--out", curate_cmd.out, "curated manifest")->required();
    curate->add_option("--min-group", curate_cmd.min_group_size, "smallest label group kept")->capture_default_str();
    curate->add_option("--seed", curate_cmd.seed, "split seed")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*index) {
            index_cmd.config = index_flags.resolve();
            return cmd_index(index_cmd, std::cout, std::cerr);
        }
        if (*search) {
            if (search_cmd.query_features.empty() && search_cmd.query_slide.empty()) {
                std::cerr << "search needs --query-features or --manifest with --query-slide\n";
                return exit_code::failure;
            }
            search_cmd.config = search_flags.resolve();
            if (!exclude_patient.empty()) {
                search_cmd.exclude_patient = exclude_patient;
            }
            return cmd_search(search_cmd, std::cout, std::cerr);
        }
        if (*eval) {
            eval_cmd.config = eval_flags.resolve();
            eval_cmd.mode = mode == "vertical" ? EvalMode::vertical : EvalMode::horizontal;
            if (!site.empty()) {
                eval_cmd.site = site;
            }
            eval_cmd.exclude_same_patient = !keep_patient;
            return cmd_eval(eval_cmd, std::cout, std::cerr);
        }
        if (*synth) {
            if (!spec_file.empty()) {
                if (spec_out.empty()) {
                    std::cerr << "--spec needs --png\n";
                    return exit_code::failure;
                }
                return cmd_synth_spec(spec_file, spec_out, std::cout, std::cerr);
            }
            if (synth_cmd.out_dir.empty()) {
                std::cerr << "synth needs --out\n";
                return exit_code::failure;
            }
            return cmd_synth(synth_cmd, std::cout, std::cerr);
        }
        if (*features) {
            features_cmd.config = features_flags.resolve();
            return cmd_features(features_cmd, std::cout, std::cerr);
        }
        if (*curate) {
            return cmd_curate(curate_cmd, std::cout, std::cerr);
        }
    } catch (const IncompatibleBarcodeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code::incompatible;
    } catch (const UnknownSiteError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code::unknown_site;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code::failure;
    }
    return exit_code::failure;
}
