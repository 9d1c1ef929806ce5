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

#ifndef xprkit_cli_H
#define xprkit_cli_H

#include "xpr/detect.hpp"
#include "xpr/estimate.hpp"
#include "xpr/synthgen.hpp"

#include <filesystem>
#include <optional>
#include <vector>

namespace xpr::cli
{

// Batch commands behind the xprtool subcommands. Each returns a process
// exit status and prints a diagnostic to stderr on failure; outputs are
// written atomically so no partial files remain.

struct GenOptions
{
    GenConfig config; // seed inside
    std::filesystem::path out_dir;
};

// Writes per link `<id>.main.padp` + `<id>.cross.padp`, the ground-truth
// sidecar `truth.txt`, and ideal-detection MPC lists under `truth_mpc/`
int cmd_gen(const GenOptions &options);

struct DetectOptions
{
    // Each input is a PADP base path (or one of the pair); a directory is
    // scanned for `*.main.padp`
    std::vector<std::filesystem::path> inputs;
    DetectionConfig detection;
    std::filesystem::path out_dir;
    // Model drawn into the scatter band plot; defaults to the shipped
    // campaign-average parameters
    std::optional<std::filesystem::path> model_file;
};

// Writes `<id>.mpc.csv` per link plus plot-ready data under `plots/`:
// the delay profile and detected markers per link, and the pooled
// XPR-versus-excess-loss scatter with a model band file
int cmd_detect(const DetectOptions &options);

struct FitOptions_Cmd
{
    std::vector<std::filesystem::path> inputs; // MPC files or directories
    WhichModels which = WhichModels::both;
    Type3Mode type3_mode = Type3Mode::bound;
    std::filesystem::path out_dir;
};

// Groups links by campaign, fits the requested models and writes
// `fits.csv`, `fits_detail.txt` and `<campaign>.model<k>.txt` per fit
int cmd_fit(const FitOptions_Cmd &options);

struct ValidateOptions
{
    std::vector<std::filesystem::path> inputs; // MPC files or directories
    WhichModels which = WhichModels::both;
    Type3Mode type3_mode = Type3Mode::bound;
    int n_realizations = 100;
    std::uint64_t seed = 0;
    std::filesystem::path out_dir;
    // When set, validate this model instead of fitting
    std::optional<std::filesystem::path> model_file;
};

// Writes `validation.csv` with one row per campaign and model
int cmd_validate(const ValidateOptions &options);

struct SampleOptions
{
    std::optional<std::filesystem::path> model_file; // default model when unset
    std::size_t n = 1000;
    double l_ex_db = 0.0;
    std::uint64_t seed = 0;
    std::filesystem::path out_dir;
};

// Writes `matrices.csv` with n sampled polarization matrices
int cmd_sample(const SampleOptions &options);

// Helpers shared with the front end
std::vector<std::filesystem::path> scan_padp_bases(std::span<const std::filesystem::path> inputs);
std::vector<std::filesystem::path> scan_mpc_files(std::span<const std::filesystem::path> inputs);

} // namespace xpr::cli

#endif
