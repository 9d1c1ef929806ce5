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

#include "xpr/detect.hpp"

#include "xpr/textio.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace xpr
{

namespace
{

constexpr double blanked_db = -std::numeric_limits<double>::infinity();

// Azimuth neighbourhoods wrap modulo the grid when it spans the full
// circle; sector measurements clamp at the edges instead.
struct AngleIndexer
{
    std::ptrdiff_t n;
    bool wrap;

    // Collects the azimuth indices within +/- extent of center
    void neighbourhood(std::ptrdiff_t center, int extent, std::vector<std::size_t> &out) const
    {
        out.clear();
        if (wrap && 2 * extent + 1 >= n)
        {
            for (std::ptrdiff_t j = 0; j < n; ++j)
                out.push_back(std::size_t(j));
            return;
        }
        for (std::ptrdiff_t d = -extent; d <= extent; ++d)
        {
            std::ptrdiff_t j = center + d;
            if (wrap)
                j = (j % n + n) % n;
            else if (j < 0 || j >= n)
                continue;
            out.push_back(std::size_t(j));
        }
    }
};

} // namespace

void DetectionConfig::validate() const
{
    if (window_half_width < 1 || removal_half_extent < 1 || pairing_tolerance < 1)
        throw std::invalid_argument("detection extents must be >= 1");
    if (pairing_tolerance > removal_half_extent)
        throw std::invalid_argument("pairing_tolerance must not exceed removal_half_extent");
}

std::vector<double> delay_profile(const PowerGrid &main_db, const PowerGrid &cross_db)
{
    if (!main_db.same_shape(cross_db))
        throw std::invalid_argument("delay_profile: main and cross grids have different dimensions");
    std::vector<double> profile(main_db.n_delay, blanked_db);
    for (std::size_t i = 0; i < main_db.n_delay; ++i)
    {
        double best = blanked_db;
        for (std::size_t j = 0; j < main_db.n_angle; ++j)
            best = std::max(best, std::max(main_db.at(i, j), cross_db.at(i, j)));
        profile[i] = best;
    }
    return profile;
}

std::vector<double> delay_profile(const Padp &padp)
{
    return delay_profile(padp.main_db(), padp.cross_db());
}

std::vector<std::size_t> find_local_maxima(std::span<const double> profile_db,
                                           std::span<const double> delays_s,
                                           const DetectionConfig &config, double threshold_db)
{
    config.validate();
    if (profile_db.size() != delays_s.size())
        throw std::invalid_argument("find_local_maxima: profile and delay axis lengths differ");

    std::vector<std::size_t> peaks;
    std::size_t n = profile_db.size();
    if (n < 3)
        return peaks;

    double min_delay = -std::numeric_limits<double>::infinity();
    if (config.exclude_before_delay_s && *config.exclude_before_delay_s > 0.0)
    {
        double half_bin = delays_s.size() > 1 ? 0.5 * (delays_s[1] - delays_s[0]) : 0.0;
        min_delay = *config.exclude_before_delay_s + half_bin;
    }

    int w = config.window_half_width;
    for (std::size_t k = 1; k + 1 < n; ++k)
    {
        double v = profile_db[k];
        if (!(v > threshold_db))
            continue;
        if (!(delays_s[k] > min_delay))
            continue;
        if (!(v > profile_db[k - 1]) || !(v > profile_db[k + 1]))
            continue;

        // Local average on linear power over [k-w, k+w], truncated at the
        // edges and renormalized by the actual bin count
        std::size_t lo = k >= std::size_t(w) ? k - std::size_t(w) : 0;
        std::size_t hi = std::min(n - 1, k + std::size_t(w));
        double acc = 0.0;
        for (std::size_t i = lo; i <= hi; ++i)
            acc += std::isfinite(profile_db[i]) ? std::pow(10.0, profile_db[i] / 10.0) : 0.0;
        double mean_db = 10.0 * std::log10(acc / double(hi - lo + 1));
        if (v > mean_db)
            peaks.push_back(k);
    }
    return peaks;
}

namespace
{

struct WindowMax
{
    double value = blanked_db;
    bool found = false;
};

WindowMax grid_window_max(const PowerGrid &g, std::size_t k, std::size_t j, int delay_extent,
                          const AngleIndexer &angles, int angle_extent,
                          std::vector<std::size_t> &scratch)
{
    WindowMax out;
    std::size_t d_lo = k >= std::size_t(delay_extent) ? k - std::size_t(delay_extent) : 0;
    std::size_t d_hi = std::min(g.n_delay - 1, k + std::size_t(delay_extent));
    angles.neighbourhood(std::ptrdiff_t(j), angle_extent, scratch);
    for (std::size_t i = d_lo; i <= d_hi; ++i)
        for (std::size_t jj : scratch)
            if (g.at(i, jj) > out.value)
            {
                out.value = g.at(i, jj);
                out.found = true;
            }
    return out;
}

void blank_window(PowerGrid &g, std::size_t k, std::size_t j, int extent,
                  const AngleIndexer &angles, std::vector<std::size_t> &scratch)
{
    std::size_t d_lo = k >= std::size_t(extent) ? k - std::size_t(extent) : 0;
    std::size_t d_hi = std::min(g.n_delay - 1, k + std::size_t(extent));
    angles.neighbourhood(std::ptrdiff_t(j), extent, scratch);
    for (std::size_t i = d_lo; i <= d_hi; ++i)
        for (std::size_t jj : scratch)
            g.at(i, jj) = blanked_db;
}

} // namespace

std::vector<Mpc> detect_mpcs(const Padp &padp, const DetectionConfig &config_in)
{
    DetectionConfig config = config_in;
    config.validate();
    if (!config.exclude_before_delay_s)
        config.exclude_before_delay_s = padp.meta().direct_path_delay_s();

    const double p_th = padp.meta().noise_threshold_db;
    PowerGrid main_work = padp.main_db();
    PowerGrid cross_work = padp.cross_db();
    AngleIndexer angles{std::ptrdiff_t(padp.n_angle()), padp.full_circle()};
    std::vector<std::size_t> scratch;

    std::vector<Mpc> mpcs;
    while (true)
    {
        std::vector<double> profile = delay_profile(main_work, cross_work);
        std::vector<std::size_t> peaks =
            find_local_maxima(profile, padp.delays_s(), config, p_th);
        if (peaks.empty())
            break;

        for (std::size_t k : peaks)
        {
            // Re-read from the working grids: an earlier peak of this round
            // may have blanked this area already
            double best = blanked_db;
            std::size_t best_j = 0;
            bool main_stronger = true;
            for (std::size_t j = 0; j < padp.n_angle(); ++j)
            {
                double m = main_work.at(k, j);
                double c = cross_work.at(k, j);
                double v = std::max(m, c);
                if (v > best)
                {
                    best = v;
                    best_j = j;
                    main_stronger = m >= c;
                }
            }
            if (!(best > p_th))
                continue;

            const PowerGrid &weaker_grid = main_stronger ? cross_work : main_work;
            WindowMax weaker = grid_window_max(weaker_grid, k, best_j, config.pairing_tolerance,
                                               angles, config.pairing_tolerance, scratch);

            Mpc mpc;
            mpc.tau_s = padp.delays_s()[k];
            mpc.phi_deg = padp.azimuths_deg()[best_j];
            double p_main = main_stronger ? best : weaker.value;
            double p_cross = main_stronger ? weaker.value : best;
            if (p_main > p_th)
                mpc.p_main_db = p_main;
            if (p_cross > p_th)
                mpc.p_cross_db = p_cross;
            if (mpc.p_main_db && mpc.p_cross_db)
                mpc.type = MpcType::type1;
            else if (mpc.p_main_db)
                mpc.type = MpcType::type2;
            else
                mpc.type = MpcType::type3;
            if (mpc.p_main_db)
                mpc.excess_loss_db = excess_loss_db(*mpc.p_main_db, mpc.tau_s, padp.meta());
            mpcs.push_back(mpc);

            blank_window(main_work, k, best_j, config.removal_half_extent, angles, scratch);
            blank_window(cross_work, k, best_j, config.removal_half_extent, angles, scratch);
        }
    }

    std::sort(mpcs.begin(), mpcs.end(), [](const Mpc &a, const Mpc &b) {
        if (a.tau_s != b.tau_s)
            return a.tau_s < b.tau_s;
        return a.phi_deg < b.phi_deg;
    });
    return mpcs;
}

TypeCensus census(std::span<const Mpc> mpcs)
{
    TypeCensus c;
    for (const Mpc &m : mpcs)
    {
        switch (m.type)
        {
        case MpcType::type1: ++c.n_type1; break;
        case MpcType::type2: ++c.n_type2; break;
        case MpcType::type3: ++c.n_type3; break;
        }
    }
    return c;
}

namespace
{

std::string opt_field(const std::optional<double> &v)
{
    return v ? format_db(*v) : std::string("NA");
}

} // namespace

void write_mpcs(const std::filesystem::path &path, const Link &link)
{
    const CampaignMeta &m = link.meta;
    std::ostringstream out;
    out << "# xprkit MPC list\n";
    out << "# link_id = " << link.link_id << "\n";
    out << "# campaign_id = " << m.campaign_id << "\n";
    out << "# center_frequency_hz = " << format_compact(m.center_frequency_hz) << "\n";
    out << "# bandwidth_hz = " << format_compact(m.bandwidth_hz) << "\n";
    out << "# noise_threshold_db = " << format_compact(m.noise_threshold_db) << "\n";
    out << "# bs_height_m = " << format_compact(m.bs_height_m) << "\n";
    out << "# ms_height_m = " << format_compact(m.ms_height_m) << "\n";
    out << "# link_distance_m = " << format_compact(m.link_distance_m) << "\n";
    out << "tau_ns,phi_deg,p_main_db,p_cross_db,type,excess_loss_db\n";
    for (const Mpc &mpc : link.mpcs)
    {
        out << format_compact(mpc.tau_s * 1e9) << "," << format_compact(mpc.phi_deg) << ","
            << opt_field(mpc.p_main_db) << "," << opt_field(mpc.p_cross_db) << ","
            << int(mpc.type) << "," << opt_field(mpc.excess_loss_db) << "\n";
    }
    atomic_write_file(path, out.str());
}

Link read_mpcs(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw parse_error(path, "cannot open file");

    Link link;
    link.link_id = path.stem().string();
    if (link.link_id.size() > 4 && link.link_id.ends_with(".mpc"))
        link.link_id = link.link_id.substr(0, link.link_id.size() - 4);

    KeyValueBlock meta_kv;
    bool header_seen = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        std::string t = trim(line);
        if (t.empty())
            continue;
        if (t[0] == '#')
        {
            std::string body = trim(t.substr(1));
            std::size_t eq = body.find('=');
            if (eq != std::string::npos)
                meta_kv.set(trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
            continue;
        }
        if (!header_seen)
        {
            if (t != "tau_ns,phi_deg,p_main_db,p_cross_db,type,excess_loss_db")
                throw parse_error(path, line_no, "unexpected CSV header '" + t + "'");
            header_seen = true;
            continue;
        }
        std::vector<std::string> f = split_csv(t);
        if (f.size() != 6)
            throw parse_error(path, line_no,
                              "expected 6 fields, got " + std::to_string(f.size()));
        Mpc mpc;
        mpc.tau_s = parse_double(f[0], path, line_no, "tau_ns") * 1e-9;
        mpc.phi_deg = parse_double(f[1], path, line_no, "phi_deg");
        if (f[2] != "NA")
            mpc.p_main_db = parse_double(f[2], path, line_no, "p_main_db");
        if (f[3] != "NA")
            mpc.p_cross_db = parse_double(f[3], path, line_no, "p_cross_db");
        if (f[4] == "1")
            mpc.type = MpcType::type1;
        else if (f[4] == "2")
            mpc.type = MpcType::type2;
        else if (f[4] == "3")
            mpc.type = MpcType::type3;
        else
            throw parse_error(path, line_no, "type must be 1, 2 or 3, got '" + f[4] + "'");
        if (f[5] != "NA")
            mpc.excess_loss_db = parse_double(f[5], path, line_no, "excess_loss_db");
        link.mpcs.push_back(mpc);
    }

    auto opt_meta = [&](const char *key, double &dst) {
        if (meta_kv.contains(key))
            dst = meta_kv.get_double(key);
    };
    if (meta_kv.contains("link_id"))
        link.link_id = meta_kv.get("link_id");
    if (meta_kv.contains("campaign_id"))
        link.meta.campaign_id = meta_kv.get("campaign_id");
    opt_meta("center_frequency_hz", link.meta.center_frequency_hz);
    opt_meta("bandwidth_hz", link.meta.bandwidth_hz);
    opt_meta("noise_threshold_db", link.meta.noise_threshold_db);
    opt_meta("bs_height_m", link.meta.bs_height_m);
    opt_meta("ms_height_m", link.meta.ms_height_m);
    opt_meta("link_distance_m", link.meta.link_distance_m);
    return link;
}

} // namespace xpr
