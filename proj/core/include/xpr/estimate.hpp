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

#ifndef xprkit_estimate_H
#define xprkit_estimate_H

#include "xpr/detect.hpp"
#include "xpr/models.hpp"

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace xpr
{

// Fit could not be set up: no exactly measured observation to anchor it
class unidentifiable_error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Fit setup is degenerate, e.g. no spread in the excess-loss regressor
class ill_conditioned_error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

enum class Censoring
{
    exact,          // XPR measured: value_db is the XPR
    right_censored, // XPR > value_db (cross polarization under the threshold)
    left_censored,  // XPR < value_db (main polarization under the threshold)
};

struct CensoredObservation
{
    Censoring kind = Censoring::exact;
    double value_db = 0.0; // exact XPR or the censoring bound
    // Excess-loss regressor for model 2; NaN when unavailable
    double l_ex_db = std::numeric_limits<double>::quiet_NaN();

    bool has_l_ex() const { return l_ex_db == l_ex_db; }
};

// Handling of type-3 MPCs (main polarization censored) in the model-2 fit,
// where the excess loss that the mean depends on is itself unknown:
//   bound - use the lower bound L_ex >= (-P_th) - FSPL(tau)
//   drop  - exclude type-3 observations from the model-2 fit
// Model 1 keeps type-3 observations in either mode.
enum class Type3Mode
{
    bound,
    drop,
};

// Maps detected MPCs to censored XPR observations:
//   type1 -> exact(P_m - P_c), type2 -> right_censored(P_m - P_th),
//   type3 -> left_censored(P_th - P_c)
std::vector<CensoredObservation> observations_from_mpcs(std::span<const Mpc> mpcs,
                                                        const CampaignMeta &meta, Type3Mode mode);

// Censored Gaussian log-likelihood in nats. Exact observations contribute
// -ln(sigma) + ln phi(z), right-censored ln(1 - Phi(z)), left-censored
// ln Phi(z), with z standardized by the model mean at the observation's
// excess loss. Model 2 requires every observation to carry l_ex.
double log_likelihood(const XprModel &model, std::span<const CensoredObservation> observations);

struct FitOptions
{
    int n_starts = 5;
    int max_iterations = 2000;
    double param_tol = 1e-4;
    double loglik_tol = 1e-8;
    // Search box: mu/beta in [mu_lo, mu_hi], alpha in [alpha_lo, alpha_hi],
    // sigma in [sigma_lo, sigma_hi]
    double mu_lo = 0.0;
    double mu_hi = 60.0;
    double alpha_lo = -2.0;
    double alpha_hi = 0.5;
    double sigma_lo = 0.5;
    double sigma_hi = 20.0;
};

struct FitResult
{
    XprModel model = Model1{};
    double loglik = 0.0;
    std::size_t n_exact = 0;
    std::size_t n_right_censored = 0;
    std::size_t n_left_censored = 0;
    bool converged = false;
    int n_restarts_used = 0;
};

// Maximum-likelihood fit of the constant-mean model. With no censored
// observations this is the closed-form Gaussian MLE (sample mean and /N
// standard deviation); otherwise a multi-start simplex search over the box.
FitResult fit_model1(std::span<const CensoredObservation> observations,
                     const FitOptions &options = {});

// Maximum-likelihood fit of the excess-loss dependent model; observations
// without l_ex are excluded (this is how Type3Mode::drop takes effect).
// Starts from the least-squares line through the exact observations, from
// the embedded model-1 solution, and from deterministic jitters of both.
FitResult fit_model2(std::span<const CensoredObservation> observations,
                     const FitOptions &options = {});

enum class WhichModels
{
    model1,
    model2,
    both,
};

// Per-campaign summary row in the style of a measurement report table
struct CampaignFitRow
{
    std::string campaign_id;
    double center_frequency_hz = 0.0;
    double bandwidth_hz = 0.0;
    double bs_height_m = 0.0;
    double ms_height_m = 0.0;
    double d_min_m = 0.0;
    double d_max_m = 0.0;
    double dynamic_range_db = 0.0; // max main amplitude minus P_th
    std::size_t n_links = 0;
    TypeCensus counts;
    std::optional<FitResult> model1;
    std::optional<FitResult> model2;
};

// Pools the MPCs of one campaign's links, runs the census and the requested
// fits. Throws std::invalid_argument when there are no MPCs at all.
CampaignFitRow fit_campaign(std::span<const Link> links, WhichModels which,
                            Type3Mode type3_mode = Type3Mode::bound,
                            const FitOptions &options = {});

// Report writers: a delimited table row per campaign plus a structured
// detail block per fit (log-likelihood and convergence diagnostics)
void write_fit_table(const std::filesystem::path &path, std::span<const CampaignFitRow> rows);
void write_fit_details(const std::filesystem::path &path, std::span<const CampaignFitRow> rows,
                       Type3Mode type3_mode);

} // namespace xpr

#endif
