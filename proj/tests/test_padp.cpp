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

#include "xpr/rng.hpp"
#include "xpr/textio.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <fstream>

using namespace xpr;
using namespace xpr::test;

TEST_SUITE_BEGIN("padp");

TEST_CASE("fspl is zero at d = lambda / 4 pi")
{
    double f = 60e9;
    double lambda = speed_of_light_m_s / f;
    double d = lambda / (4.0 * std::numbers::pi);
    CHECK(std::abs(fspl_at_delay_db(d / speed_of_light_m_s, f)) < 1e-9);
}

TEST_CASE("fspl at 60 GHz and 1 m")
{
    double tau = 1.0 / speed_of_light_m_s; // 3.3356 ns
    double v = fspl_at_delay_db(tau, 60e9);
    CHECK(std::abs(v - 68.0) <= 0.1);
    CHECK(v == doctest::Approx(68.0108082296).epsilon(1e-9));
}

TEST_CASE("doubling the delay adds 20 log10(2)")
{
    for (double tau : {1e-9, 7.3e-9, 210e-9})
    {
        double step = fspl_at_delay_db(2.0 * tau, 28e9) - fspl_at_delay_db(tau, 28e9);
        CHECK(step == doctest::Approx(6.02059991328).epsilon(1e-10));
    }
}

TEST_CASE("fspl monotone in delay and frequency")
{
    Rng rng(11);
    for (int i = 0; i < 200; ++i)
    {
        double tau = std::pow(10.0, rng.uniform(-9.5, -6.0));
        double f = std::pow(10.0, rng.uniform(9.0, 11.0));
        CHECK(fspl_at_delay_db(tau * 1.01, f) > fspl_at_delay_db(tau, f));
        CHECK(fspl_at_delay_db(tau, f * 1.01) > fspl_at_delay_db(tau, f));
    }
}

TEST_CASE("fspl domain errors")
{
    CHECK_THROWS_AS(fspl_at_delay_db(0.0, 60e9), std::domain_error);
    CHECK_THROWS_AS(fspl_at_delay_db(-1e-9, 60e9), std::domain_error);
    CHECK_THROWS_AS(fspl_at_delay_db(1e-9, 0.0), std::domain_error);
    CHECK_THROWS_AS(fspl_at_delay_db(1e-9, -5.0), std::domain_error);
}

TEST_CASE("excess loss definition and linearity")
{
    CampaignMeta meta = basic_meta();
    double tau = 50e-9;
    double fs = fspl_at_delay_db(tau, meta.center_frequency_hz);

    // a path exactly at free-space level has zero excess loss
    CHECK(std::abs(excess_loss_db(-fs, tau, meta)) < 1e-12);
    // 10 dB weaker than free space -> 10 dB excess loss
    CHECK(excess_loss_db(-fs - 10.0, tau, meta) == doctest::Approx(10.0).epsilon(1e-12));

    Rng rng(5);
    for (int i = 0; i < 50; ++i)
    {
        double p = rng.uniform(-140.0, -60.0);
        double x = rng.uniform(-20.0, 20.0);
        CHECK(excess_loss_db(p + x, tau, meta) ==
              doctest::Approx(excess_loss_db(p, tau, meta) - x).epsilon(1e-12));
    }
}

TEST_CASE("campaign metadata validation")
{
    CampaignMeta meta = basic_meta();
    CHECK_NOTHROW(meta.validate());
    CampaignMeta bad = meta;
    bad.center_frequency_hz = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = meta;
    bad.bandwidth_hz = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = meta;
    bad.link_distance_m = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("padp constructor enforces the grid invariants")
{
    CampaignMeta meta = basic_meta();
    std::vector<double> delays{0.0, 1e-9, 2e-9};
    std::vector<double> azimuths{0.0, 120.0, 240.0};

    CHECK_THROWS_AS(Padp(delays, azimuths, PowerGrid(2, 3, -90.0), PowerGrid(3, 3, -90.0), meta),
                    std::invalid_argument);
    CHECK_THROWS_AS(Padp(delays, azimuths, PowerGrid(3, 2, -90.0), PowerGrid(3, 2, -90.0), meta),
                    std::invalid_argument);

    std::vector<double> bad_delays{0.0, 1e-9, 2.5e-9};
    CHECK_THROWS_AS(
        Padp(bad_delays, azimuths, PowerGrid(3, 3, -90.0), PowerGrid(3, 3, -90.0), meta),
        std::invalid_argument);

    PowerGrid nan_grid(3, 3, -90.0);
    nan_grid.at(1, 1) = std::nan("");
    CHECK_THROWS_AS(Padp(delays, azimuths, nan_grid, PowerGrid(3, 3, -90.0), meta),
                    std::invalid_argument);

    Padp ok(delays, azimuths, PowerGrid(3, 3, -90.0), PowerGrid(3, 3, -90.0), meta);
    CHECK(ok.delta_tau_s() == doctest::Approx(1e-9));
    CHECK(ok.full_circle());

    // 140-degree sector does not wrap
    std::vector<double> sector{0.0, 70.0, 140.0};
    Padp sec(delays, sector, PowerGrid(3, 3, -90.0), PowerGrid(3, 3, -90.0), meta);
    CHECK_FALSE(sec.full_circle());
}

namespace
{

Padp random_padp(Rng &rng, std::size_t n_delay, std::size_t n_angle)
{
    CampaignMeta meta = basic_meta();
    meta.campaign_id = "round trip id";
    meta.link_distance_m = rng.uniform(1.0, 100.0);
    double delta_tau = rng.uniform(0.1e-9, 2e-9);
    double tau0 = rng.uniform(0.0, 10e-9);
    std::vector<double> delays(n_delay), azimuths(n_angle);
    for (std::size_t i = 0; i < n_delay; ++i)
        delays[i] = tau0 + double(i) * delta_tau;
    for (std::size_t j = 0; j < n_angle; ++j)
        azimuths[j] = double(j) * (360.0 / double(n_angle));
    PowerGrid main_g(n_delay, n_angle), cross_g(n_delay, n_angle);
    for (double &v : main_g.db)
        v = rng.uniform(-200.0, 50.0);
    for (double &v : cross_g.db)
        v = rng.uniform(-200.0, 50.0);
    return Padp(delays, azimuths, main_g, cross_g, meta);
}

} // namespace

TEST_CASE("file round trip reproduces grids bit-exactly")
{
    TempDir dir("padp_roundtrip");
    Rng rng(77);
    int idx = 0;
    for (auto [nd, na] : {std::pair<std::size_t, std::size_t>{2, 2}, {17, 5}, {1, 4}, {40, 9}})
    {
        Padp p = random_padp(rng, nd, na);
        auto base = dir.path() / ("grid" + std::to_string(idx++));
        write_padp(p, base);
        Padp q = read_padp(base);

        REQUIRE(q.n_delay() == p.n_delay());
        REQUIRE(q.n_angle() == p.n_angle());
        CHECK(q.main_db().db == p.main_db().db);   // bit-exact
        CHECK(q.cross_db().db == p.cross_db().db); // bit-exact
        CHECK(q.delays_s() == p.delays_s());
        CHECK(q.azimuths_deg() == p.azimuths_deg());
        CHECK(q.meta().campaign_id == p.meta().campaign_id);
        CHECK(q.meta().center_frequency_hz == p.meta().center_frequency_hz);
        CHECK(q.meta().bandwidth_hz == p.meta().bandwidth_hz);
        CHECK(q.meta().noise_threshold_db == p.meta().noise_threshold_db);
        CHECK(q.meta().bs_height_m == p.meta().bs_height_m);
        CHECK(q.meta().ms_height_m == p.meta().ms_height_m);
        CHECK(q.meta().link_distance_m == p.meta().link_distance_m);
    }
}

TEST_CASE("reader accepts either file of the pair as the base path")
{
    TempDir dir("padp_base");
    Rng rng(78);
    Padp p = random_padp(rng, 3, 4);
    write_padp(p, dir.path() / "link0");
    Padp a = read_padp(dir.path() / "link0");
    Padp b = read_padp(dir.path() / "link0.main.padp");
    Padp c = read_padp(dir.path() / "link0.cross.padp");
    CHECK(a.main_db().db == b.main_db().db);
    CHECK(a.main_db().db == c.main_db().db);
}

namespace
{

// A minimal well-formed header for hand-built files
std::string test_header(std::size_t n_delay, std::size_t n_angle, const char *pol)
{
    std::string h;
    h += "campaign_id = T\n";
    h += "center_frequency_hz = 61e9\n";
    h += "bandwidth_hz = 4e9\n";
    h += "noise_threshold_db = -110\n";
    h += "bs_height_m = 2\n";
    h += "ms_height_m = 2\n";
    h += "link_distance_m = 10\n";
    h += "delta_tau_ns = 1\n";
    h += "delta_phi_deg = 120\n";
    h += "n_delay = " + std::to_string(n_delay) + "\n";
    h += "n_angle = " + std::to_string(n_angle) + "\n";
    h += std::string("polarization = ") + pol + "\n";
    return h;
}

void write_pair(const std::filesystem::path &base, const std::string &main_text,
                const std::string &cross_text)
{
    atomic_write_file(base.string() + ".main.padp", main_text);
    atomic_write_file(base.string() + ".cross.padp", cross_text);
}

} // namespace

TEST_CASE("ragged row is a parse error naming the row")
{
    TempDir dir("padp_ragged");
    std::string good = test_header(2, 3, "cross") + "0 -90 -90 -90\n1e-9 -90 -90 -90\n";
    std::string bad = test_header(2, 3, "main") + "0 -90 -90 -90\n1e-9 -90 -90\n";
    write_pair(dir.path() / "x", bad, good);
    CHECK_THROWS_WITH_AS(read_padp(dir.path() / "x"),
                         doctest::Contains("row 1 has 3 fields"), parse_error);
}

TEST_CASE("non-uniform delay column is a grid-uniformity error")
{
    TempDir dir("padp_nonuniform");
    std::string good = test_header(3, 3, "cross") + "0 -90 -90 -90\n1e-9 -90 -90 -90\n2e-9 -90 -90 -90\n";
    std::string bad = test_header(3, 3, "main") +
                      "0 -90 -90 -90\n1e-9 -90 -90 -90\n2.1e-9 -90 -90 -90\n";
    write_pair(dir.path() / "x", bad, good);
    CHECK_THROWS_WITH_AS(read_padp(dir.path() / "x"), doctest::Contains("not uniform"),
                         parse_error);
}

TEST_CASE("missing header field and bad polarization are parse errors")
{
    TempDir dir("padp_header");
    std::string no_bw = test_header(1, 3, "main");
    no_bw.erase(no_bw.find("bandwidth_hz"), no_bw.find("noise_threshold_db") -
                                                no_bw.find("bandwidth_hz"));
    no_bw += "0 -90 -90 -90\n";
    std::string good = test_header(1, 3, "cross") + "0 -90 -90 -90\n";
    write_pair(dir.path() / "x", no_bw, good);
    CHECK_THROWS_WITH_AS(read_padp(dir.path() / "x"), doctest::Contains("bandwidth_hz"),
                         parse_error);

    std::string wrong_pol = test_header(1, 3, "cross") + "0 -90 -90 -90\n";
    write_pair(dir.path() / "y", wrong_pol, good);
    CHECK_THROWS_WITH_AS(read_padp(dir.path() / "y"),
                         doctest::Contains("expected polarization = main"), parse_error);

    CHECK_THROWS_AS(read_padp(dir.path() / "does_not_exist"), parse_error);
}

TEST_CASE("dB values are written with at least four decimals")
{
    TempDir dir("padp_format");
    Rng rng(79);
    Padp p = random_padp(rng, 2, 2);
    write_padp(p, dir.path() / "fmt");
    std::ifstream in(dir.path() / "fmt.main.padp");
    std::string line, last;
    while (std::getline(in, line))
        last = line;
    auto tokens = split_ws(last);
    REQUIRE(tokens.size() == 3);
    for (std::size_t t = 1; t < tokens.size(); ++t)
    {
        auto dot = tokens[t].find('.');
        REQUIRE(dot != std::string::npos);
        CHECK(tokens[t].size() - dot - 1 >= 4);
    }
}

TEST_SUITE_END();
