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

#ifndef xprkit_models_H
#define xprkit_models_H

#include "xpr/rng.hpp"

#include <filesystem>
#include <variant>

namespace xpr
{

// Constant-mean log-normal XPR model: XPR|dB ~ N(mu1, sigma1^2)
struct Model1
{
    double mu1_db = 0.0;
    double sigma1_db = 1.0;
};

// Excess-loss dependent XPR model: XPR|dB ~ N(mu2(L_ex), sigma2^2) with
// mu2(L_ex) = alpha2 * L_ex + beta2, clipped to 0 for L_ex > -beta2/alpha2.
// Sound fits have alpha2 < 0 and beta2 > 0; this is reported, not enforced.
struct Model2
{
    double alpha2 = 0.0; // dB of mean XPR per dB of excess loss
    double beta2_db = 0.0;
    double sigma2_db = 1.0;
};

using XprModel = std::variant<Model1, Model2>;

// Campaign-averaged Model2 parameters used as library defaults
inline XprModel default_model2() { return Model2{-0.5, 28.0, 6.0}; }

double model_sigma_db(const XprModel &model);

// Mean XPR in dB at the given excess loss. Model1 ignores l_ex; Model2
// applies the linear-then-clipped mean. Only the mean is clipped at 0;
// samples may go negative.
double mean_xpr_db(const XprModel &model, double l_ex_db);

// Gaussian draw around mean_xpr_db with the model's sigma
double sample_xpr_db(const XprModel &model, double l_ex_db, Rng &rng);

// kappa = 10^(XPR_dB / 10)
double linear_xpr(double xpr_db);

// XPR of a linearly polarized wave whose polarization has rotated by gamma:
// XPR|dB = 20 log10(1 / tan gamma). Requires gamma in (0, pi/2).
double xpr_from_rotation_db(double gamma_rad);

// Mean rotation angle implied by the linear regime of the excess-loss model:
// gamma = 10^(-beta/20) * (10^(L_ex/10))^(-alpha/2)
double rotation_from_model_rad(double alpha2, double beta2_db, double l_ex_db);

// Model parameter file: `model = 1|2` plus the named parameters
XprModel read_model_file(const std::filesystem::path &path);
void write_model_file(const XprModel &model, const std::filesystem::path &path);

} // namespace xpr

#endif
