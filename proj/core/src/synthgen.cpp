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

#include "xpr/synthgen.hpp"

#include "xpr/textio.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace xpr
{

namespace
{

// Sidelobe stand-in: the two delay bins on each side of an impulse carry a
// skirt this far below the peak
constexpr double skirt_down_db = 13.0;
constexpr int skirt_bins = 2;

// Noise floor jitter amplitude in dB
constexpr double noise_jitter_db = 1.5;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

void add_power_db(double &cell_db, double add_db)
{
    cell_db = linear_to_db(db_to_linear(cell_db) + db_to_linear(add_db));
}

} // namespace

void GenConfig::validate() const
{
    if (n_links < 1)
        throw std::invalid_argument("GenConfig: n_links must be >= 1");
    if (paths_per_link_mean < 0.0)
        throw std::invalid_argument("GenConfig: paths_per_link_mean must be >= 0");
    if (min_separation_bins < 1)
        throw std::invalid_argument("GenConfig: min_separation_bins must be >= 1");
    if (!(l_ex_mean_db > 0.0) || !(l_ex_cap_db > 0.0))
        throw std::invalid_argument("GenConfig: excess-loss distribution must be positive");
    if (!(p_th_db > noise_floor_db))
        throw std::invalid_argument("GenConfig: P_th must lie above the noise floor");
    if (!(delta_tau_ns > 0.0) || !(delta_phi_deg > 0.0))
        throw std::invalid_argument("GenConfig: grid steps must be positive");
    if (n_delay < 8 || n_angle < 1)
        throw std::invalid_argument("GenConfig: grid is too small");
    if (!(link_distance_min_m > 0.0) || !(link_distance_max_m >= link_distance_min_m))
        throw std::invalid_argument("GenConfig: bad link distance range");
    if (!(center_frequency_hz > 0.0) || !(bandwidth_hz > 0.0))
        throw std::invalid_argument("GenConfig: frequencies must be positive");
}

CampaignMeta campaign_meta(const GenConfig &config, double link_distance_m)
{
    CampaignMeta meta;
    meta.center_frequency_hz = config.center_frequency_hz;
    meta.bandwidth_hz = config.bandwidth_hz;
    meta.noise_threshold_db = config.p_th_db;
    meta.bs_height_m = config.bs_height_m;
    meta.ms_height_m = config.ms_height_m;
    meta.link_distance_m = link_distance_m;
    meta.campaign_id = config.campaign_id;
    return meta;
}

namespace
{

// Draws `count` delay bins in [first, last] with pairwise distance (and
// distance from the LOS bin) of at least `separation`
std::vector<std::size_t> draw_separated_bins(Rng &rng, std::size_t first, std::size_t last,
                                             std::size_t los_bin, int separation,
                                             std::size_t count)
{
    if (count == 0)
        return {};
    if (last < first)
        throw generation_error("synthgen: delay grid too short for the LOS delay and separation");
    std::size_t capacity = (last - first) / std::size_t(separation) + 1;
    if (count > capacity)
        throw generation_error("synthgen: cannot place " + std::to_string(count) +
                               " paths at separation " + std::to_string(separation) +
                               " in " + std::to_string(last - first + 1) + " delay bins");

    std::vector<std::size_t> bins;
    std::size_t attempts = 0;
    const std::size_t max_attempts = 20000 * count;
    while (bins.size() < count)
    {
        if (++attempts > max_attempts)
            throw generation_error("synthgen: path placement did not converge; "
                                   "separation too tight for the grid");
        std::size_t b = first + std::size_t(rng.uniform01() * double(last - first + 1));
        b = std::min(b, last);
        bool ok = std::llabs(std::int64_t(b) - std::int64_t(los_bin)) >= separation;
        for (std::size_t existing : bins)
            if (std::llabs(std::int64_t(b) - std::int64_t(existing)) < separation)
            {
                ok = false;
                break;
            }
        if (ok)
            bins.push_back(b);
    }
    std::sort(bins.begin(), bins.end());
    return bins;
}

void rasterize_path(PowerGrid &grid, std::size_t bin, std::size_t angle, double amp_db)
{
    add_power_db(grid.at(bin, angle), amp_db);
    for (int d = -skirt_bins; d <= skirt_bins; ++d)
    {
        if (d == 0)
            continue;
        std::int64_t i = std::int64_t(bin) + d;
        if (i < 0 || i >= std::int64_t(grid.n_delay))
            continue;
        add_power_db(grid.at(std::size_t(i), angle), amp_db - skirt_down_db);
    }
}

} // namespace

GeneratedCampaign generate_campaign(const GenConfig &config)
{
    config.validate();
    const double delta_tau_s = config.delta_tau_ns * 1e-9;

    std::vector<double> delays(config.n_delay);
    for (std::size_t i = 0; i < config.n_delay; ++i)
        delays[i] = double(i) * delta_tau_s;
    std::vector<double> azimuths(config.n_angle);
    for (std::size_t j = 0; j < config.n_angle; ++j)
        azimuths[j] = double(j) * config.delta_phi_deg;

    Rng campaign_rng(config.seed);
    GeneratedCampaign campaign;
    campaign.config = config;

    for (int k = 0; k < config.n_links; ++k)
    {
        Rng rng = campaign_rng.fork(std::uint64_t(k));
        double distance = rng.uniform(config.link_distance_min_m, config.link_distance_max_m);
        CampaignMeta meta = campaign_meta(config, distance);

        double tau_direct = distance / speed_of_light_m_s;
        std::size_t los_bin = std::size_t(std::llround(tau_direct / delta_tau_s));
        if (los_bin < 1 || los_bin + std::size_t(config.min_separation_bins) + 2 >= config.n_delay)
            throw generation_error("synthgen: LOS delay does not fit the delay grid");

        std::size_t n_paths = rng.poisson(config.paths_per_link_mean);
        std::size_t first = los_bin + std::size_t(config.min_separation_bins);
        std::size_t last = config.n_delay - 2;
        std::vector<std::size_t> bins =
            draw_separated_bins(rng, first, last, los_bin, config.min_separation_bins, n_paths);

        std::vector<TruthPath> truth;

        // LOS path exactly at free-space level for its grid bin
        TruthPath los;
        los.is_los = true;
        los.delay_bin = los_bin;
        los.angle_bin = std::size_t(rng.uniform01() * double(config.n_angle));
        los.angle_bin = std::min(los.angle_bin, config.n_angle - 1);
        los.tau_s = delays[los_bin];
        los.phi_deg = azimuths[los.angle_bin];
        los.l_ex_db = 0.0;
        los.p_main_db = -fspl_at_delay_db(los.tau_s, config.center_frequency_hz);
        los.xpr_db = sample_xpr_db(config.truth_model, los.l_ex_db, rng);
        los.p_cross_db = los.p_main_db - los.xpr_db;
        truth.push_back(los);

        for (std::size_t bin : bins)
        {
            TruthPath p;
            p.delay_bin = bin;
            p.angle_bin = std::size_t(rng.uniform01() * double(config.n_angle));
            p.angle_bin = std::min(p.angle_bin, config.n_angle - 1);
            p.tau_s = delays[bin];
            p.phi_deg = azimuths[p.angle_bin];
            p.l_ex_db = rng.truncated_exponential(config.l_ex_mean_db, config.l_ex_cap_db);
            p.xpr_db = sample_xpr_db(config.truth_model, p.l_ex_db, rng);
            p.p_main_db = -(fspl_at_delay_db(p.tau_s, config.center_frequency_hz) + p.l_ex_db);
            p.p_cross_db = p.p_main_db - p.xpr_db;
            truth.push_back(p);
        }

        PowerGrid main_grid(config.n_delay, config.n_angle);
        PowerGrid cross_grid(config.n_delay, config.n_angle);
        for (std::size_t i = 0; i < config.n_delay; ++i)
            for (std::size_t j = 0; j < config.n_angle; ++j)
            {
                main_grid.at(i, j) =
                    config.noise_floor_db + rng.uniform(-noise_jitter_db, noise_jitter_db);
                cross_grid.at(i, j) =
                    config.noise_floor_db + rng.uniform(-noise_jitter_db, noise_jitter_db);
            }
        for (const TruthPath &p : truth)
        {
            rasterize_path(main_grid, p.delay_bin, p.angle_bin, p.p_main_db);
            rasterize_path(cross_grid, p.delay_bin, p.angle_bin, p.p_cross_db);
        }

        GeneratedLink link{config.campaign_id + "_link" + std::to_string(k),
                           Padp(delays, azimuths, std::move(main_grid), std::move(cross_grid),
                                meta),
                           std::move(truth)};
        campaign.links.push_back(std::move(link));
    }
    return campaign;
}

std::vector<Mpc> ideal_mpcs(const GeneratedLink &link, double p_th_db)
{
    std::vector<Mpc> out;
    for (const TruthPath &p : link.truth)
    {
        if (p.is_los)
            continue;
        bool main_up = p.p_main_db > p_th_db;
        bool cross_up = p.p_cross_db > p_th_db;
        if (!main_up && !cross_up)
            continue;
        Mpc mpc;
        mpc.tau_s = p.tau_s;
        mpc.phi_deg = p.phi_deg;
        if (main_up)
            mpc.p_main_db = p.p_main_db;
        if (cross_up)
            mpc.p_cross_db = p.p_cross_db;
        mpc.type = main_up ? (cross_up ? MpcType::type1 : MpcType::type2) : MpcType::type3;
        if (main_up)
            mpc.excess_loss_db = excess_loss_db(p.p_main_db, p.tau_s, link.padp.meta());
        out.push_back(mpc);
    }
    return out;
}

GeneratedObservations generate_observations(const GenConfig &config)
{
    config.validate();
    const double delta_tau_s = config.delta_tau_ns * 1e-9;
    Rng rng = Rng(config.seed).fork(0x0B5E7BA7105ull);

    GeneratedObservations out;
    const std::size_t max_attempts = std::max<std::size_t>(1000, 1000 * config.n_observations);
    std::size_t attempts = 0;
    while (out.observations.size() < config.n_observations)
    {
        if (++attempts > max_attempts)
            throw generation_error(
                "synthgen: could not draw enough detectable observations; threshold too high");

        double distance = rng.uniform(config.link_distance_min_m, config.link_distance_max_m);
        double tau_direct = distance / speed_of_light_m_s;
        double tau = rng.uniform(tau_direct + delta_tau_s,
                                 tau_direct + double(config.n_delay) * delta_tau_s);
        double l_ex = rng.truncated_exponential(config.l_ex_mean_db, config.l_ex_cap_db);
        double xpr = sample_xpr_db(config.truth_model, l_ex, rng);
        double p_main = -(fspl_at_delay_db(tau, config.center_frequency_hz) + l_ex);
        double p_cross = p_main - xpr;

        bool main_up = p_main > config.p_th_db;
        bool cross_up = p_cross > config.p_th_db;
        if (!main_up && !cross_up)
        {
            ++out.n_undetectable;
            continue;
        }

        CensoredObservation obs;
        if (main_up && cross_up)
        {
            obs.kind = Censoring::exact;
            obs.value_db = p_main - p_cross;
            obs.l_ex_db = l_ex;
        }
        else if (main_up)
        {
            obs.kind = Censoring::right_censored;
            obs.value_db = p_main - config.p_th_db;
            obs.l_ex_db = l_ex;
        }
        else
        {
            obs.kind = Censoring::left_censored;
            obs.value_db = config.p_th_db - p_cross;
            // Only the lower bound on the excess loss is observable here
            obs.l_ex_db = -config.p_th_db - fspl_at_delay_db(tau, config.center_frequency_hz);
        }
        out.observations.push_back(obs);
        out.truth.push_back(ObservationDraw{tau, l_ex, xpr, p_main, p_cross});
    }
    return out;
}

void write_truth(const std::filesystem::path &path, const GeneratedCampaign &campaign)
{
    const GenConfig &c = campaign.config;
    std::ostringstream out;
    out << "# xprkit synthetic campaign ground truth\n";
    out << "campaign_id = " << c.campaign_id << "\n";
    out << "seed = " << c.seed << "\n";
    out << "n_links = " << c.n_links << "\n";
    if (const auto *m1 = std::get_if<Model1>(&c.truth_model))
    {
        out << "model = 1\n";
        out << "mu1_db = " << format_compact(m1->mu1_db) << "\n";
        out << "sigma1_db = " << format_compact(m1->sigma1_db) << "\n";
    }
    else
    {
        const Model2 &m2 = std::get<Model2>(c.truth_model);
        out << "model = 2\n";
        out << "alpha2 = " << format_compact(m2.alpha2) << "\n";
        out << "beta2_db = " << format_compact(m2.beta2_db) << "\n";
        out << "sigma2_db = " << format_compact(m2.sigma2_db) << "\n";
    }
    out << "paths_per_link_mean = " << format_compact(c.paths_per_link_mean) << "\n";
    out << "min_separation_bins = " << c.min_separation_bins << "\n";
    out << "l_ex_mean_db = " << format_compact(c.l_ex_mean_db) << "\n";
    out << "l_ex_cap_db = " << format_compact(c.l_ex_cap_db) << "\n";
    out << "noise_floor_db = " << format_compact(c.noise_floor_db) << "\n";
    out << "noise_threshold_db = " << format_compact(c.p_th_db) << "\n";
    out << "delta_tau_ns = " << format_compact(c.delta_tau_ns) << "\n";
    out << "delta_phi_deg = " << format_compact(c.delta_phi_deg) << "\n";
    out << "n_delay = " << c.n_delay << "\n";
    out << "n_angle = " << c.n_angle << "\n";
    out << "center_frequency_hz = " << format_compact(c.center_frequency_hz) << "\n";
    out << "bandwidth_hz = " << format_compact(c.bandwidth_hz) << "\n";

    for (const GeneratedLink &link : campaign.links)
    {
        out << "\n[link " << link.link_id << "]\n";
        out << "link_distance_m = " << format_compact(link.padp.meta().link_distance_m) << "\n";
        out << "tau_ns,phi_deg,l_ex_db,xpr_db,p_main_db,p_cross_db,is_los\n";
        for (const TruthPath &p : link.truth)
            out << format_compact(p.tau_s * 1e9) << "," << format_compact(p.phi_deg) << ","
                << format_db(p.l_ex_db) << "," << format_db(p.xpr_db) << ","
                << format_db(p.p_main_db) << "," << format_db(p.p_cross_db) << ","
                << (p.is_los ? 1 : 0) << "\n";
    }
    atomic_write_file(path, out.str());
}

} // namespace xpr
