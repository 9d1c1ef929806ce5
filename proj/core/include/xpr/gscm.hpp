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

#ifndef xprkit_gscm_H
#define xprkit_gscm_H

#include "xpr/models.hpp"
#include "xpr/rng.hpp"

#include <complex>
#include <filesystem>
#include <span>
#include <vector>

namespace xpr
{

// Per-sub-path 2x2 polarization transfer matrix for channel-model
// integration: unit-magnitude co-polar entries, cross entries of magnitude
// sqrt(1/kappa) with kappa the linear XPR, and independent uniform phases.
struct PolarizationMatrix
{
    std::complex<double> a_vv;
    std::complex<double> a_vh;
    std::complex<double> a_hv;
    std::complex<double> a_hh;
    double xpr_db = 0.0;  // the draw behind kappa
    double l_ex_db = 0.0; // excess loss the draw was conditioned on
};

// Draw order: XPR first, then the four phases vv, vh, hv, hh. The same
// kappa applies to |a_vv/a_hv|^2 and |a_hh/a_vh|^2.
PolarizationMatrix sample_matrix(const XprModel &model, double l_ex_db, Rng &rng);

// Batch export: eight real columns (re/im per entry) plus l_ex and XPR
void write_matrix_batch(const std::filesystem::path &path,
                        std::span<const PolarizationMatrix> matrices);

} // namespace xpr

#endif
