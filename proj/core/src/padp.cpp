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

#include "xpr/padp.hpp"

#include "xpr/textio.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace xpr
{

namespace
{

// Checks a strictly increasing uniform grid; returns the step
double uniform_step(const std::vector<double> &grid, const char *name)
{
    if (grid.size() < 2)
        return 0.0;
    double step = grid[1] - grid[0];
    if (step <= 0.0)
        throw std::invalid_argument(std::string(name) + " grid is not strictly increasing");
    for (std::size_t i = 1; i + 1 < grid.size(); ++i)
    {
        double d = grid[i + 1] - grid[i];
        if (d <= 0.0)
            throw std::invalid_argument(std::string(name) + " grid is not strictly increasing");
        if (std::abs(d - step) > grid_uniformity_tol * std::abs(step))
            throw std::invalid_argument(std::string(name) + " grid spacing is not uniform");
    }
    return step;
}

void check_finite(const PowerGrid &g, const char *name)
{
    for (double v : g.db)
        if (!std::isfinite(v))
            throw std::invalid_argument(std::string(name) + " grid contains non-finite values");
}

} // namespace

void CampaignMeta::validate() const
{
    if (!(center_frequency_hz > 0.0))
        throw std::invalid_argument("center_frequency_hz must be > 0");
    if (!(bandwidth_hz > 0.0))
        throw std::invalid_argument("bandwidth_hz must be > 0");
    if (!(link_distance_m > 0.0))
        throw std::invalid_argument("link_distance_m must be > 0");
}

Padp::Padp(std::vector<double> delays_s, std::vector<double> azimuths_deg, PowerGrid main_db,
           PowerGrid cross_db, CampaignMeta meta)
    : delays_s_(std::move(delays_s)), azimuths_deg_(std::move(azimuths_deg)),
      main_db_(std::move(main_db)), cross_db_(std::move(cross_db)), meta_(std::move(meta))
{
    meta_.validate();
    if (delays_s_.empty() || azimuths_deg_.empty())
        throw std::invalid_argument("PADP grids must be non-empty");
    if (!main_db_.same_shape(cross_db_))
        throw std::invalid_argument("main and cross grids have different dimensions");
    if (main_db_.n_delay != delays_s_.size() || main_db_.n_angle != azimuths_deg_.size())
        throw std::invalid_argument("grid dimensions do not match delay/azimuth axes");
    if (delays_s_.front() < 0.0)
        throw std::invalid_argument("delay grid must start at tau >= 0");
    delta_tau_s_ = uniform_step(delays_s_, "delay");
    delta_phi_deg_ = uniform_step(azimuths_deg_, "azimuth");
    check_finite(main_db_, "main");
    check_finite(cross_db_, "cross");
    double span = delta_phi_deg_ * double(azimuths_deg_.size());
    full_circle_ = std::abs(span - 360.0) <= 1e-6 * 360.0;
}

double fspl_at_delay_db(double tau_s, double center_frequency_hz)
{
    if (!(tau_s > 0.0))
        throw std::domain_error("fspl_at_delay_db: tau must be > 0");
    if (!(center_frequency_hz > 0.0))
        throw std::domain_error("fspl_at_delay_db: center frequency must be > 0");
    // 4 pi d / lambda = 4 pi (c tau) / (c / f) = 4 pi tau f
    return 20.0 * std::log10(4.0 * std::numbers::pi * tau_s * center_frequency_hz);
}

double excess_loss_db(double p_main_db, double tau_s, const CampaignMeta &meta)
{
    return -p_main_db - fspl_at_delay_db(tau_s, meta.center_frequency_hz);
}

namespace
{

constexpr const char *pol_names[2] = {"main", "cross"};

std::filesystem::path grid_path(const std::filesystem::path &base, int pol)
{
    std::filesystem::path p = base;
    p += std::string(".") + pol_names[pol] + ".padp";
    return p;
}

// Strips a trailing ".main.padp" / ".cross.padp" so callers may pass either
// the bare base or one of the pair
std::filesystem::path normalize_base(std::filesystem::path base)
{
    std::string s = base.string();
    for (int pol = 0; pol < 2; ++pol)
    {
        std::string suffix = std::string(".") + pol_names[pol] + ".padp";
        if (s.size() > suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0)
            return std::filesystem::path(s.substr(0, s.size() - suffix.size()));
    }
    return base;
}

struct GridFile
{
    CampaignMeta meta;
    std::vector<double> delays_s;
    std::vector<double> azimuths_deg;
    PowerGrid grid;
    std::string polarization;
};

GridFile read_grid_file(const std::filesystem::path &file)
{
    std::ifstream in(file);
    if (!in)
        throw parse_error(file, "cannot open file");

    std::size_t line_no = 0;
    KeyValueBlock hdr = read_key_values(in, file, line_no);

    GridFile out;
    auto need = [&](const char *key) -> const std::string & {
        if (!hdr.contains(key))
            throw parse_error(file, "missing header field '" + std::string(key) + "'");
        return hdr.get(key);
    };
    auto need_double = [&](const char *key) {
        const std::string &v = need(key);
        char *end = nullptr;
        double x = std::strtod(v.c_str(), &end);
        if (end == v.c_str() || *end != '\0')
            throw parse_error(file, "header field '" + std::string(key) +
                                        "' is not a number: '" + v + "'");
        return x;
    };
    auto need_uint = [&](const char *key) -> std::size_t {
        double x = need_double(key);
        if (!(x > 0.0) || x != std::floor(x))
            throw parse_error(file, "header field '" + std::string(key) +
                                        "' must be a positive integer");
        return std::size_t(x);
    };

    out.meta.campaign_id = need("campaign_id");
    out.meta.center_frequency_hz = need_double("center_frequency_hz");
    out.meta.bandwidth_hz = need_double("bandwidth_hz");
    out.meta.noise_threshold_db = need_double("noise_threshold_db");
    out.meta.bs_height_m = need_double("bs_height_m");
    out.meta.ms_height_m = need_double("ms_height_m");
    out.meta.link_distance_m = need_double("link_distance_m");
    out.polarization = need("polarization");
    if (out.polarization != "main" && out.polarization != "cross")
        throw parse_error(file, "polarization must be 'main' or 'cross', got '" +
                                    out.polarization + "'");

    double delta_tau_ns = need_double("delta_tau_ns");
    double delta_phi_deg = need_double("delta_phi_deg");
    std::size_t n_delay = need_uint("n_delay");
    std::size_t n_angle = need_uint("n_angle");
    // a step is only meaningful when the axis has at least two samples
    if (n_delay > 1 && !(delta_tau_ns > 0.0))
        throw parse_error(file, "delta_tau_ns must be positive");
    if (n_angle > 1 && !(delta_phi_deg > 0.0))
        throw parse_error(file, "delta_phi_deg must be positive");

    // Azimuth grid: explicit vector if present, else j * delta_phi from 0
    if (hdr.contains("azimuths_deg"))
    {
        for (const std::string &t : split_ws(hdr.get("azimuths_deg")))
        {
            char *end = nullptr;
            double a = std::strtod(t.c_str(), &end);
            if (end == t.c_str() || *end != '\0')
                throw parse_error(file, "azimuths_deg entry is not a number: '" + t + "'");
            out.azimuths_deg.push_back(a);
        }
        if (out.azimuths_deg.size() != n_angle)
            throw parse_error(file, "azimuths_deg lists " +
                                        std::to_string(out.azimuths_deg.size()) +
                                        " angles but n_angle = " + std::to_string(n_angle));
    }
    else
    {
        for (std::size_t j = 0; j < n_angle; ++j)
            out.azimuths_deg.push_back(double(j) * delta_phi_deg);
    }

    out.grid = PowerGrid(n_delay, n_angle);
    out.delays_s.reserve(n_delay);

    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        if (row >= n_delay)
            throw parse_error(file, line_no, "more data rows than n_delay = " +
                                                 std::to_string(n_delay));
        std::vector<std::string> tok = split_ws(t);
        if (tok.size() != n_angle + 1)
            throw parse_error(file, line_no,
                              "row " + std::to_string(row) + " has " + std::to_string(tok.size()) +
                                  " fields, expected delay plus " + std::to_string(n_angle) +
                                  " values");
        double tau = parse_double(tok[0], file, line_no, "delay_s");
        out.delays_s.push_back(tau);
        for (std::size_t j = 0; j < n_angle; ++j)
            out.grid.at(row, j) = parse_double(tok[j + 1], file, line_no, "power_db");
        ++row;
    }
    if (row != n_delay)
        throw parse_error(file, "file ends after " + std::to_string(row) +
                                    " rows, expected n_delay = " + std::to_string(n_delay));

    // Cross-check the delay column against the declared step
    for (std::size_t i = 0; i + 1 < out.delays_s.size(); ++i)
    {
        double d_ns = (out.delays_s[i + 1] - out.delays_s[i]) * 1e9;
        if (d_ns <= 0.0)
            throw parse_error(file, "delay column is not strictly increasing at row " +
                                        std::to_string(i + 1));
        if (std::abs(d_ns - delta_tau_ns) > grid_uniformity_tol * delta_tau_ns)
            throw parse_error(file, "delay grid is not uniform at row " + std::to_string(i + 1) +
                                        ": step " + format_compact(d_ns) + " ns vs delta_tau_ns = " +
                                        format_compact(delta_tau_ns));
    }
    return out;
}

void write_grid_file(const std::filesystem::path &file, const Padp &padp, int pol)
{
    const PowerGrid &g = pol == 0 ? padp.main_db() : padp.cross_db();
    const CampaignMeta &m = padp.meta();

    std::ostringstream out;
    out << "# xprkit power angular delay profile\n";
    out << "campaign_id = " << m.campaign_id << "\n";
    out << "center_frequency_hz = " << format_compact(m.center_frequency_hz) << "\n";
    out << "bandwidth_hz = " << format_compact(m.bandwidth_hz) << "\n";
    out << "noise_threshold_db = " << format_compact(m.noise_threshold_db) << "\n";
    out << "bs_height_m = " << format_compact(m.bs_height_m) << "\n";
    out << "ms_height_m = " << format_compact(m.ms_height_m) << "\n";
    out << "link_distance_m = " << format_compact(m.link_distance_m) << "\n";
    out << "delta_tau_ns = " << format_compact(padp.delta_tau_s() * 1e9) << "\n";
    out << "delta_phi_deg = " << format_compact(padp.delta_phi_deg()) << "\n";
    out << "n_delay = " << padp.n_delay() << "\n";
    out << "n_angle = " << padp.n_angle() << "\n";
    out << "azimuths_deg =";
    for (double a : padp.azimuths_deg())
        out << " " << format_compact(a);
    out << "\n";
    out << "polarization = " << pol_names[pol] << "\n";
    for (std::size_t i = 0; i < padp.n_delay(); ++i)
    {
        out << format_compact(padp.delays_s()[i]);
        for (std::size_t j = 0; j < padp.n_angle(); ++j)
            out << " " << format_db(g.at(i, j));
        out << "\n";
    }
    atomic_write_file(file, out.str());
}

} // namespace

Padp read_padp(const std::filesystem::path &base_in)
{
    std::filesystem::path base = normalize_base(base_in);
    GridFile main_file = read_grid_file(grid_path(base, 0));
    GridFile cross_file = read_grid_file(grid_path(base, 1));
    if (main_file.polarization != "main")
        throw parse_error(grid_path(base, 0), "expected polarization = main");
    if (cross_file.polarization != "cross")
        throw parse_error(grid_path(base, 1), "expected polarization = cross");
    if (!main_file.grid.same_shape(cross_file.grid))
        throw parse_error(grid_path(base, 1), "main and cross grids have different dimensions");
    return Padp(std::move(main_file.delays_s), std::move(main_file.azimuths_deg),
                std::move(main_file.grid), std::move(cross_file.grid), std::move(main_file.meta));
}

void write_padp(const Padp &padp, const std::filesystem::path &base_in)
{
    std::filesystem::path base = normalize_base(base_in);
    write_grid_file(grid_path(base, 0), padp, 0);
    write_grid_file(grid_path(base, 1), padp, 1);
}

} // namespace xpr
