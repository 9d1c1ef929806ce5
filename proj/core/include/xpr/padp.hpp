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

#ifndef xprkit_padp_H
#define xprkit_padp_H

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace xpr
{

inline constexpr double speed_of_light_m_s = 299792458.0;

// Relative tolerance for delay/azimuth grid uniformity checks
inline constexpr double grid_uniformity_tol = 1e-6;

// Measurement campaign metadata shared by all links of a campaign (except
// the per-link distance). Powers throughout the library are path gains in
// dB, i.e. typically negative; noise_threshold_db is P_th on that scale.
struct CampaignMeta
{
    double center_frequency_hz = 0.0;
    double bandwidth_hz = 0.0;
    double noise_threshold_db = 0.0;
    double bs_height_m = 0.0;
    double ms_height_m = 0.0;
    double link_distance_m = 0.0;
    std::string campaign_id;

    // Delay of the direct path with tau = 0 at the Tx instant
    double direct_path_delay_s() const { return link_distance_m / speed_of_light_m_s; }

    void validate() const; // throws std::invalid_argument
};

// Dense power grid in dB, row-major [delay][azimuth]
struct PowerGrid
{
    std::size_t n_delay = 0;
    std::size_t n_angle = 0;
    std::vector<double> db;

    PowerGrid() = default;
    PowerGrid(std::size_t nd, std::size_t na, double fill = 0.0)
        : n_delay(nd), n_angle(na), db(nd * na, fill)
    {
    }

    double &at(std::size_t i, std::size_t j) { return db[i * n_angle + j]; }
    double at(std::size_t i, std::size_t j) const { return db[i * n_angle + j]; }
    bool same_shape(const PowerGrid &o) const
    {
        return n_delay == o.n_delay && n_angle == o.n_angle;
    }
};

// Dual-polarized power angular delay profile of one measured link.
// Immutable after construction; the constructor enforces matching grid
// dimensions, a strictly increasing uniform delay grid, a uniform azimuth
// grid and finite power values.
class Padp
{
  public:
    Padp(std::vector<double> delays_s, std::vector<double> azimuths_deg, PowerGrid main_db,
         PowerGrid cross_db, CampaignMeta meta);

    const std::vector<double> &delays_s() const { return delays_s_; }
    const std::vector<double> &azimuths_deg() const { return azimuths_deg_; }
    const PowerGrid &main_db() const { return main_db_; }
    const PowerGrid &cross_db() const { return cross_db_; }
    const CampaignMeta &meta() const { return meta_; }

    std::size_t n_delay() const { return delays_s_.size(); }
    std::size_t n_angle() const { return azimuths_deg_.size(); }
    double delta_tau_s() const { return delta_tau_s_; }
    double delta_phi_deg() const { return delta_phi_deg_; }

    // True when the azimuth grid spans the full circle, so neighbourhood
    // operations wrap at 360 degrees
    bool full_circle() const { return full_circle_; }

  private:
    std::vector<double> delays_s_;
    std::vector<double> azimuths_deg_;
    PowerGrid main_db_;
    PowerGrid cross_db_;
    CampaignMeta meta_;
    double delta_tau_s_ = 0.0;
    double delta_phi_deg_ = 0.0;
    bool full_circle_ = false;
};

// Free-space path loss at delay tau: 20 log10(4 pi d / lambda) with
// d = c tau and lambda = c / f. Throws std::domain_error for non-positive
// tau or frequency.
double fspl_at_delay_db(double tau_s, double center_frequency_hz);

// Loss of a path in excess of free space at its delay. p_main_db is a path
// gain (negative), so the excess loss is (-p_main) - FSPL(tau); a path at
// exactly free-space level yields 0 dB.
double excess_loss_db(double p_main_db, double tau_s, const CampaignMeta &meta);

// Paired-file PADP format: `<base>.main.padp` and `<base>.cross.padp`, each
// a `key = value` header (campaign metadata plus grid shape and
// `polarization = main|cross`) followed by one row per delay sample:
// the delay in seconds then one dB value per azimuth. `#` starts a comment.
Padp read_padp(const std::filesystem::path &base);
void write_padp(const Padp &padp, const std::filesystem::path &base);

} // namespace xpr

#endif
