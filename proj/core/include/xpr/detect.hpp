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

#ifndef xprkit_detect_H
#define xprkit_detect_H

#include "xpr/padp.hpp"

#include <optional>
#include <span>
#include <vector>

namespace xpr
{

// Censoring class of a detected multipath component with respect to the
// noise threshold P_th:
//   type1 - both polarization amplitudes above P_th, XPR measured exactly
//   type2 - cross below P_th, XPR only lower-bounded
//   type3 - main below P_th, XPR only upper-bounded
enum class MpcType
{
    type1 = 1,
    type2 = 2,
    type3 = 3,
};

struct Mpc
{
    double tau_s = 0.0;
    double phi_deg = 0.0;
    std::optional<double> p_main_db;  // absent when below P_th
    std::optional<double> p_cross_db; // absent when below P_th
    MpcType type = MpcType::type1;
    std::optional<double> excess_loss_db; // present iff p_main is present

    // Measured XPR, only available for type 1
    std::optional<double> xpr_db() const
    {
        if (p_main_db && p_cross_db)
            return *p_main_db - *p_cross_db;
        return std::nullopt;
    }
};

struct DetectionConfig
{
    // Half width of the sliding local-average window in delay bins; 2 gives
    // the 4-delta-tau window
    int window_half_width = 2;
    // Half extent of the square removed around a detected peak, in bins
    int removal_half_extent = 6;
    // Half extent of the search square for the weaker polarization, in bins
    int pairing_tolerance = 2;
    // Peaks at or before this delay are rejected (direct LOS path). Unset
    // means: take the direct-path delay from the campaign metadata.
    std::optional<double> exclude_before_delay_s;

    void validate() const; // throws std::invalid_argument
};

// Delay domain representation P(tau): maximum over azimuth and over both
// polarizations per delay bin
std::vector<double> delay_profile(const Padp &padp);
std::vector<double> delay_profile(const PowerGrid &main_db, const PowerGrid &cross_db);

// Indices of delay bins that are local maxima of the profile: above the
// sliding-window average (computed on linear power), above both immediate
// neighbours, above the threshold, and after the excluded direct path.
// Windows truncated by the grid edge are renormalized by the actual bin
// count; the first and last bin never qualify.
std::vector<std::size_t> find_local_maxima(std::span<const double> profile_db,
                                           std::span<const double> delays_s,
                                           const DetectionConfig &config, double threshold_db);

// Full two-step detection: peak search on P(tau), amplitude pairing in both
// polarizations, removal of the detected area, repeated until nothing is
// left above the threshold. Output sorted by delay, then azimuth.
std::vector<Mpc> detect_mpcs(const Padp &padp, const DetectionConfig &config = {});

struct TypeCensus
{
    std::size_t n_type1 = 0;
    std::size_t n_type2 = 0;
    std::size_t n_type3 = 0;
    std::size_t total() const { return n_type1 + n_type2 + n_type3; }
};

TypeCensus census(std::span<const Mpc> mpcs);

// One detected link: campaign metadata plus its MPC list
struct Link
{
    std::string link_id;
    CampaignMeta meta;
    std::vector<Mpc> mpcs;
};

// MPC list file: `# key = value` metadata comments, then a CSV header
// `tau_ns,phi_deg,p_main_db,p_cross_db,type,excess_loss_db` and one record
// per MPC with `NA` for censored fields.
void write_mpcs(const std::filesystem::path &path, const Link &link);
Link read_mpcs(const std::filesystem::path &path);

} // namespace xpr

#endif
