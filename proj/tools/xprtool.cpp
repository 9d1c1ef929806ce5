// SPDX-License-Identifier: Apache-2.0
//
// xprkit - multipath cross-polarization ratio modeling toolkit
// Copyright (C) 2025-2026 The xprkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "xpr/cli.hpp"
#include "xpr/textio.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace
{

using namespace xpr;

// Applies `key = value` entries from a config file onto the generator
// configuration; command line flags are applied afterwards and win
void apply_gen_config(GenConfig &cfg, const std::filesystem::path &file)
{
    KeyValueBlock kv = read_key_value_file(file);
    auto dbl = [&](const char *key, double &dst) {
        if (kv.contains(key))
            dst = kv.get_double(key);
    };
    auto uint = [&](const char *key, auto &dst) {
        if (kv.contains(key))
            dst = static_cast<std::remove_reference_t<decltype(dst)>>(kv.get_uint(key));
    };
    if (kv.contains("campaign_id"))
        cfg.campaign_id = kv.get("campaign_id");
    uint("n_links", cfg.n_links);
    dbl("paths_per_link_mean", cfg.paths_per_link_mean);
    uint("min_separation_bins", cfg.min_separation_bins);
    dbl("l_ex_mean_db", cfg.l_ex_mean_db);
    dbl("l_ex_cap_db", cfg.l_ex_cap_db);
    dbl("noise_floor_db", cfg.noise_floor_db);
    dbl("noise_threshold_db", cfg.p_th_db);
    dbl("delta_tau_ns", cfg.delta_tau_ns);
    dbl("delta_phi_deg", cfg.delta_phi_deg);
    uint("n_delay", cfg.n_delay);
    uint("n_angle", cfg.n_angle);
    dbl("center_frequency_hz", cfg.center_frequency_hz);
    dbl("bandwidth_hz", cfg.bandwidth_hz);
    dbl("link_distance_min_m", cfg.link_distance_min_m);
    dbl("link_distance_max_m", cfg.link_distance_max_m);
    dbl("bs_height_m", cfg.bs_height_m);
    dbl("ms_height_m", cfg.ms_height_m);
    uint("n_observations", cfg.n_observations);
    if (kv.contains("model"))
    {
        if (kv.get("model") == "1")
        {
            Model1 m{18.0, 9.0};
            dbl("mu1_db", m.mu1_db);
            dbl("sigma1_db", m.sigma1_db);
            cfg.truth_model = m;
        }
        else if (kv.get("model") == "2")
        {
            Model2 m = std::get<Model2>(default_model2());
            dbl("alpha2", m.alpha2);
            dbl("beta2_db", m.beta2_db);
            dbl("sigma2_db", m.sigma2_db);
            cfg.truth_model = m;
        }
        else
        {
            throw parse_error(file, "model must be 1 or 2");
        }
    }
}

void apply_detect_config(DetectionConfig &cfg, const std::filesystem::path &file)
{
    KeyValueBlock kv = read_key_value_file(file);
    if (kv.contains("window_half_width"))
        cfg.window_half_width = int(kv.get_uint("window_half_width"));
    if (kv.contains("removal_half_extent"))
        cfg.removal_half_extent = int(kv.get_uint("removal_half_extent"));
    if (kv.contains("pairing_tolerance"))
        cfg.pairing_tolerance = int(kv.get_uint("pairing_tolerance"));
    if (kv.contains("exclude_before_delay_ns"))
        cfg.exclude_before_delay_s = kv.get_double("exclude_before_delay_ns") * 1e-9;
}

WhichModels parse_which(const std::string &s)
{
    if (s == "1")
        return WhichModels::model1;
    if (s == "2")
        return WhichModels::model2;
    if (s == "both")
        return WhichModels::both;
    throw CLI::ValidationError("--model", "must be 1, 2 or both");
}

Type3Mode parse_type3(const std::string &s)
{
    if (s == "bound")
        return Type3Mode::bound;
    if (s == "drop")
        return Type3Mode::drop;
    throw CLI::ValidationError("--type3-mode", "must be bound or drop");
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"xprkit batch pipeline: synthetic campaign generation, dual-polarized "
                 "multipath detection, censored XPR model fitting, total cross-polarization "
                 "validation, and polarization matrix sampling"};
    app.require_subcommand(1);

    // ---- gen ----
    auto *gen = app.add_subcommand("gen", "Generate a synthetic measurement campaign");
    std::string gen_out, gen_config, gen_id;
    std::uint64_t gen_seed = 0;
    GenConfig gen_cfg;
    int gen_links = 0;
    double gen_paths = 0.0;
    gen->add_option("--seed", gen_seed, "RNG seed (mandatory for reproducibility)")->required();
    gen->add_option("--out", gen_out, "Output directory")->required();
    gen->add_option("--config", gen_config, "Config file with generator parameters");
    gen->add_option("--campaign-id", gen_id, "Campaign label");
    gen->add_option("--links", gen_links, "Number of links");
    gen->add_option("--paths", gen_paths, "Mean number of scattered paths per link");

    // ---- detect ----
    auto *detect = app.add_subcommand("detect", "Detect MPCs in PADP files");
    std::vector<std::string> detect_inputs;
    std::string detect_out, detect_config, detect_model_file;
    std::uint64_t detect_seed = 0;
    int d_window = 0, d_removal = 0, d_pairing = 0;
    double d_exclude_ns = 0.0;
    detect->add_option("inputs", detect_inputs, "PADP base paths or directories")->required();
    detect->add_option("--out", detect_out, "Output directory")->required();
    detect->add_option("--config", detect_config, "Config file with detection parameters");
    detect->add_option("--seed", detect_seed, "Accepted for interface uniformity; detection is deterministic");
    detect->add_option("--model-file", detect_model_file, "Model drawn into the band plot");
    detect->add_option("--window-half-width", d_window, "Sliding-average half width in delay bins");
    detect->add_option("--removal-half-extent", d_removal, "Peak removal half extent in bins");
    detect->add_option("--pairing-tolerance", d_pairing, "Weaker-polarization search half extent");
    detect->add_option("--exclude-before-delay-ns", d_exclude_ns,
                       "Reject peaks at or before this delay (default: direct-path delay)");

    // ---- fit ----
    auto *fit = app.add_subcommand("fit", "Fit XPR models to detected MPC lists");
    std::vector<std::string> fit_inputs;
    std::string fit_out, fit_model = "both", fit_type3 = "bound";
    fit->add_option("inputs", fit_inputs, "MPC files or directories")->required();
    fit->add_option("--out", fit_out, "Output directory")->required();
    fit->add_option("--model", fit_model, "Which models to fit: 1, 2 or both");
    fit->add_option("--type3-mode", fit_type3, "Type-3 handling in the model-2 fit: bound or drop");

    // ---- validate ----
    auto *validate = app.add_subcommand("validate",
                                        "Compare models on total cross-polarization power");
    std::vector<std::string> val_inputs;
    std::string val_out, val_model = "both", val_type3 = "bound", val_model_file;
    std::uint64_t val_seed = 0;
    int val_realizations = 100;
    validate->add_option("inputs", val_inputs, "MPC files or directories")->required();
    validate->add_option("--out", val_out, "Output directory")->required();
    validate->add_option("--seed", val_seed, "RNG seed (mandatory for reproducibility)")->required();
    validate->add_option("--realizations", val_realizations, "Synthesized realizations per link");
    validate->add_option("--model", val_model, "Which models to fit and validate: 1, 2 or both");
    validate->add_option("--type3-mode", val_type3, "Type-3 handling in the model-2 fit");
    validate->add_option("--model-file", val_model_file, "Validate this model instead of fitting");

    // ---- sample ----
    auto *sample = app.add_subcommand("sample", "Sample polarization matrices");
    std::string sample_out, sample_model_file;
    std::uint64_t sample_seed = 0;
    std::size_t sample_n = 1000;
    double sample_l_ex = 0.0;
    sample->add_option("--seed", sample_seed, "RNG seed (mandatory for reproducibility)")->required();
    sample->add_option("--out", sample_out, "Output directory")->required();
    sample->add_option("--n", sample_n, "Number of matrices");
    sample->add_option("--l-ex", sample_l_ex, "Excess loss in dB the draws are conditioned on");
    sample->add_option("--model-file", sample_model_file,
                       "Model parameter file (default: campaign-average model 2)");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (gen->parsed())
        {
            if (!gen_config.empty())
                apply_gen_config(gen_cfg, gen_config);
            if (gen->count("--campaign-id"))
                gen_cfg.campaign_id = gen_id;
            if (gen->count("--links"))
                gen_cfg.n_links = gen_links;
            if (gen->count("--paths"))
                gen_cfg.paths_per_link_mean = gen_paths;
            gen_cfg.seed = gen_seed;
            return cli::cmd_gen({gen_cfg, gen_out});
        }
        if (detect->parsed())
        {
            cli::DetectOptions options;
            if (!detect_config.empty())
                apply_detect_config(options.detection, detect_config);
            if (detect->count("--window-half-width"))
                options.detection.window_half_width = d_window;
            if (detect->count("--removal-half-extent"))
                options.detection.removal_half_extent = d_removal;
            if (detect->count("--pairing-tolerance"))
                options.detection.pairing_tolerance = d_pairing;
            if (detect->count("--exclude-before-delay-ns"))
                options.detection.exclude_before_delay_s = d_exclude_ns * 1e-9;
            for (const std::string &s : detect_inputs)
                options.inputs.emplace_back(s);
            options.out_dir = detect_out;
            if (!detect_model_file.empty())
                options.model_file = detect_model_file;
            return cli::cmd_detect(options);
        }
        if (fit->parsed())
        {
            cli::FitOptions_Cmd options;
            for (const std::string &s : fit_inputs)
                options.inputs.emplace_back(s);
            options.out_dir = fit_out;
            options.which = parse_which(fit_model);
            options.type3_mode = parse_type3(fit_type3);
            return cli::cmd_fit(options);
        }
        if (validate->parsed())
        {
            cli::ValidateOptions options;
            for (const std::string &s : val_inputs)
                options.inputs.emplace_back(s);
            options.out_dir = val_out;
            options.which = parse_which(val_model);
            options.type3_mode = parse_type3(val_type3);
            options.n_realizations = val_realizations;
            options.seed = val_seed;
            if (!val_model_file.empty())
                options.model_file = val_model_file;
            return cli::cmd_validate(options);
        }
        if (sample->parsed())
        {
            cli::SampleOptions options;
            if (!sample_model_file.empty())
                options.model_file = sample_model_file;
            options.n = sample_n;
            options.l_ex_db = sample_l_ex;
            options.seed = sample_seed;
            options.out_dir = sample_out;
            return cli::cmd_sample(options);
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "xprtool: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
