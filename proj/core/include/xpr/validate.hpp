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

#ifndef xprkit_validate_H
#define xprkit_validate_H

#include "xpr/detect.hpp"
#include "xpr/estimate.hpp"
#include "xpr/models.hpp"
#include "xpr/rng.hpp"

#include <span>
#include <string>
#include <vector>

namespace xpr
{

// No epsilon observation carried information (all doubly censored)
class unestimable_error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Total cross-polarization power of one link; censored when no component
// had a detectable cross amplitude (then only C_tot < P_th is known)
struct CrossPowerObservation
{
    bool censored = false;
    double c_tot_db = 0.0; // meaningful only when !censored
    std::string link_id;
};

// Linear-power sum of the detectable cross amplitudes
CrossPowerObservation total_cross_power(std::span<const Mpc> mpcs,
                                        const std::string &link_id = {});

// Synthesized total cross power: components with a detectable main
// amplitude get P_c = P_m - XPR with XPR drawn from the model at the
// component's excess loss; type-3 components keep their measured cross
// amplitude. Components ending below P_th drop out of the sum.
// Consumes exactly one draw from rng; the per-component draws come from
// substreams keyed on (tau, phi), making the result invariant to the
// order of the MPC list.
CrossPowerObservation synthesize_cross_power(std::span<const Mpc> mpcs, const XprModel &model,
                                             double p_th_db, Rng &rng,
                                             const std::string &link_id = {});

struct ErrorMetricResult
{
    double mu_eps_db = 0.0;
    double sigma_eps_db = 0.0;
    std::size_t n_links = 0;
    std::size_t n_eps = 0;     // epsilon observations entering the fit
    std::size_t n_dropped = 0; // realizations dropped as doubly censored
};

// Prediction-accuracy metric: per link and realization the dB difference
// eps between synthesized and measured total cross power, censored when
// either side is censored, then a pooled constant-mean Tobit fit of
// (mu_eps, sigma_eps). Realizations where both sides are censored carry no
// information and are dropped.
ErrorMetricResult error_metric(std::span<const Link> links, const XprModel &model,
                               int n_realizations, Rng &rng);

struct ValidationRow
{
    std::string campaign_id;
    int model = 0; // 1 or 2
    ErrorMetricResult metric;
};

// Report: campaign_id, model, mu_eps_db, sigma_eps_db, n_links, n_dropped
void write_validation_report(const std::filesystem::path &path,
                             std::span<const ValidationRow> rows);

} // namespace xpr

#endif
