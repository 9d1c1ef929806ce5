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

#ifndef xprkit_synthgen_H
#define xprkit_synthgen_H

#include "xpr/estimate.hpp"
#include "xpr/models.hpp"
#include "xpr/padp.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace xpr
{

// Campaign could not be realized, e.g. the requested paths do not fit the
// delay grid at the required separation
class generation_error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct GenConfig
{
    XprModel truth_model = default_model2();
    std::string campaign_id = "synthetic";
    int n_links = 10;

    // Number of scattered paths per link is Poisson with this mean; paths
    // keep at least min_separation_bins delay bins apart (and from the LOS
    // bin). Keep the separation above twice the detection removal extent
    // for clean single-pass recovery.
    double paths_per_link_mean = 50.0;
    int min_separation_bins = 13;

    // Excess loss is exponential in dB, truncated at the cap
    double l_ex_mean_db = 15.0;
    double l_ex_cap_db = 60.0;

    double noise_floor_db = -150.0;
    double p_th_db = -130.0;

    double delta_tau_ns = 0.25;
    double delta_phi_deg = 5.0;
    std::size_t n_delay = 2048;
    std::size_t n_angle = 72;

    double center_frequency_hz = 61e9;
    double bandwidth_hz = 4e9;
    double link_distance_min_m = 5.0;
    double link_distance_max_m = 30.0;
    double bs_height_m = 2.6;
    double ms_height_m = 2.6;

    // Target count for generate_observations (detectable observations)
    std::size_t n_observations = 5000;

    std::uint64_t seed = 0;

    void validate() const; // throws std::invalid_argument
};

// One planted path with its uncensored ground truth
struct TruthPath
{
    std::size_t delay_bin = 0;
    std::size_t angle_bin = 0;
    double tau_s = 0.0;
    double phi_deg = 0.0;
    double l_ex_db = 0.0;
    double xpr_db = 0.0;
    double p_main_db = 0.0;
    double p_cross_db = 0.0;
    bool is_los = false;
};

struct GeneratedLink
{
    std::string link_id;
    Padp padp;
    std::vector<TruthPath> truth; // LOS first, then scattered paths by delay
};

struct GeneratedCampaign
{
    GenConfig config;
    std::vector<GeneratedLink> links;
};

// Plants a LOS path at free-space level plus Poisson-many scattered paths
// with exponential excess loss and XPR drawn from the truth model. Paths are
// rasterized as single-cell impulses with a two-bin skirt 13 dB down in
// delay; the jittered noise floor is added in linear power.
GeneratedCampaign generate_campaign(const GenConfig &config);

// The censored view of a generated link: what an ideal detector would
// report, bypassing rasterization and peak search. Paths with both
// polarizations under the threshold are omitted (they are undetectable).
std::vector<Mpc> ideal_mpcs(const GeneratedLink &link, double p_th_db);

CampaignMeta campaign_meta(const GenConfig &config, double link_distance_m);

// One uncensored draw behind a censored observation
struct ObservationDraw
{
    double tau_s = 0.0;
    double l_ex_db = 0.0;
    double xpr_db = 0.0;
    double p_main_db = 0.0;
    double p_cross_db = 0.0;
};

struct GeneratedObservations
{
    // observations[i] is the censored view of truth[i]
    std::vector<CensoredObservation> observations;
    std::vector<ObservationDraw> truth;
    std::size_t n_undetectable = 0; // draws discarded with both pols censored
};

// Draws (tau, L_ex, XPR) triples and applies the censoring rules directly,
// for testing the estimator in isolation. Keeps drawing until
// config.n_observations detectable observations exist.
GeneratedObservations generate_observations(const GenConfig &config);

// Ground-truth sidecar: configuration echo plus one CSV block per link
void write_truth(const std::filesystem::path &path, const GeneratedCampaign &campaign);

} // namespace xpr

#endif
