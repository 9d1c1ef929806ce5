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

#include "xpr/validate.hpp"

#include "xpr/detect.hpp"
#include "xpr/synthgen.hpp"
#include "xpr/textio.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace xpr;
using namespace xpr::test;

TEST_SUITE_BEGIN("validate");

namespace
{

Mpc make_mpc(double tau_ns, double phi, std::optional<double> p_main,
             std::optional<double> p_cross, double l_ex = 10.0)
{
    Mpc m;
    m.tau_s = tau_ns * 1e-9;
    m.phi_deg = phi;
    m.p_main_db = p_main;
    m.p_cross_db = p_cross;
    if (p_main && p_cross)
        m.type = MpcType::type1;
    else if (p_main)
        m.type = MpcType::type2;
    else
        m.type = MpcType::type3;
    if (p_main)
        m.excess_loss_db = l_ex;
    return m;
}

// Detected links of one model-2 campaign at the given dynamic range
std::vector<Link> detected_links(std::uint64_t seed, double dynamic_range_db, int n_links = 20)
{
    GenConfig cfg;
    cfg.seed = seed;
    cfg.n_links = n_links;
    cfg.paths_per_link_mean = 50;
    set_dynamic_range(cfg, dynamic_range_db);
    GeneratedCampaign camp = generate_campaign(cfg);
    std::vector<Link> links;
    for (const auto &gl : camp.links)
        links.push_back(Link{gl.link_id, gl.padp.meta(), detect_mpcs(gl.padp)});
    return links;
}

} // namespace

TEST_CASE("total cross power sums detectable cross amplitudes")
{
    std::vector<Mpc> two{make_mpc(10, 0, -70.0, -80.0), make_mpc(30, 40, -75.0, -80.0)};
    CrossPowerObservation c = total_cross_power(two, "L");
    CHECK_FALSE(c.censored);
    CHECK(c.c_tot_db == doctest::Approx(-76.9897000434).epsilon(1e-9));
    CHECK(c.link_id == "L");

    std::vector<Mpc> none{make_mpc(10, 0, -70.0, std::nullopt)};
    CHECK(total_cross_power(none).censored);
    CHECK(total_cross_power({}).censored);
}

TEST_CASE("total cross power is permutation invariant and monotone")
{
    Rng rng(1);
    std::vector<Mpc> mpcs;
    for (int i = 0; i < 25; ++i)
        mpcs.push_back(make_mpc(10.0 + i * 5.0, i * 7.0, -70.0, rng.uniform(-110.0, -80.0)));
    double base = total_cross_power(mpcs).c_tot_db;

    std::mt19937 shuffler(3);
    for (int i = 0; i < 5; ++i)
    {
        std::shuffle(mpcs.begin(), mpcs.end(), shuffler);
        CHECK(total_cross_power(mpcs).c_tot_db == base); // bit-exact
    }

    mpcs.push_back(make_mpc(500, 100, std::nullopt, -95.0));
    CHECK(total_cross_power(mpcs).c_tot_db > base);
}

TEST_CASE("measured total never exceeds the uncensored truth total")
{
    GenConfig cfg;
    cfg.seed = 2;
    cfg.n_links = 4;
    cfg.paths_per_link_mean = 45;
    set_dynamic_range(cfg, 44.0);
    GeneratedCampaign camp = generate_campaign(cfg);
    for (const auto &link : camp.links)
    {
        double true_total_lin = 0.0;
        for (const TruthPath &p : link.truth)
            if (!p.is_los)
                true_total_lin += std::pow(10.0, p.p_cross_db / 10.0);
        CrossPowerObservation measured = total_cross_power(ideal_mpcs(link, cfg.p_th_db));
        if (!measured.censored)
            CHECK(measured.c_tot_db <= 10.0 * std::log10(true_total_lin) + 1e-9);
    }
}

TEST_CASE("synthesized cross power: deterministic zero-sigma draw")
{
    std::vector<Mpc> one{make_mpc(10, 0, -70.0, -90.0)};
    XprModel m = Model1{20.0, 0.0};
    Rng rng(5);
    CrossPowerObservation c = synthesize_cross_power(one, m, -110.0, rng);
    CHECK_FALSE(c.censored);
    CHECK(c.c_tot_db == doctest::Approx(-90.0).epsilon(1e-12));

    // every synthesized component below the threshold leaves a censored total
    XprModel lossy = Model1{100.0, 0.0};
    Rng rng2(5);
    CHECK(synthesize_cross_power(one, lossy, -110.0, rng2).censored);
}

TEST_CASE("synthesized cross power keeps measured cross for censored-main components")
{
    // type 3: main absent, cross measured; the branch copies the measurement
    std::vector<Mpc> t3{make_mpc(10, 0, std::nullopt, -95.0)};
    XprModel m = Model1{100.0, 0.0};
    Rng rng(6);
    CrossPowerObservation c = synthesize_cross_power(t3, m, -110.0, rng);
    CHECK_FALSE(c.censored);
    CHECK(c.c_tot_db == doctest::Approx(-95.0).epsilon(1e-12));
}

TEST_CASE("synthesized cross power is reproducible and order invariant")
{
    Rng gen(7);
    std::vector<Mpc> mpcs;
    for (int i = 0; i < 30; ++i)
        mpcs.push_back(make_mpc(10.0 + 5.0 * i, 3.0 * i, gen.uniform(-90.0, -70.0),
                                std::nullopt, gen.uniform(0.0, 30.0)));
    XprModel m = default_model2();

    Rng a(42), b(42);
    double va = synthesize_cross_power(mpcs, m, -110.0, a).c_tot_db;
    double vb = synthesize_cross_power(mpcs, m, -110.0, b).c_tot_db;
    CHECK(va == vb);

    std::mt19937 shuffler(11);
    for (int i = 0; i < 5; ++i)
    {
        std::shuffle(mpcs.begin(), mpcs.end(), shuffler);
        Rng c(42);
        CHECK(synthesize_cross_power(mpcs, m, -110.0, c).c_tot_db == va); // bit-exact
    }
}

TEST_CASE("self-consistency: the generating model reproduces a link's cross power")
{
    GenConfig cfg;
    cfg.seed = 8;
    cfg.n_links = 1;
    cfg.paths_per_link_mean = 60;
    set_dynamic_range(cfg, 50.0);
    GeneratedCampaign camp = generate_campaign(cfg);
    const auto &link = camp.links[0];
    std::vector<Mpc> mpcs = ideal_mpcs(link, cfg.p_th_db);
    CrossPowerObservation measured = total_cross_power(mpcs);
    REQUIRE_FALSE(measured.censored);

    Rng rng(9);
    std::vector<double> synth;
    for (int r = 0; r < 200; ++r)
    {
        CrossPowerObservation c = synthesize_cross_power(mpcs, cfg.truth_model, cfg.p_th_db, rng);
        if (!c.censored)
            synth.push_back(c.c_tot_db);
    }
    REQUIRE(synth.size() > 100);
    CHECK(std::abs(median(synth) - measured.c_tot_db) < 1.5);
}

TEST_CASE("error metric: single link, single realization, both exact")
{
    std::vector<Mpc> mpcs{make_mpc(10, 0, -70.0, -85.0, 2.0),
                          make_mpc(40, 90, -80.0, -99.0, 12.0)};
    Link link{"L0", basic_meta(-120.0), mpcs};
    XprModel m = Model1{15.0, 0.0}; // deterministic synthesis

    Rng rng(10);
    std::vector<Link> links{link};
    ErrorMetricResult r = error_metric(links, m, 1, rng);

    Rng rng2(10);
    CrossPowerObservation synth = synthesize_cross_power(mpcs, m, -120.0, rng2);
    CrossPowerObservation meas = total_cross_power(mpcs);
    CHECK(r.mu_eps_db == doctest::Approx(synth.c_tot_db - meas.c_tot_db).epsilon(1e-12));
    CHECK(r.sigma_eps_db == 0.0);
    CHECK(r.n_eps == 1);
    CHECK(r.n_dropped == 0);
}

TEST_CASE("error metric: doubly censored realizations are dropped")
{
    // measured cross absent and a model so lossy nothing synthesizes
    std::vector<Mpc> mpcs{make_mpc(10, 0, -70.0, std::nullopt, 2.0)};
    Link link{"L0", basic_meta(-110.0), mpcs};
    XprModel lossy = Model1{100.0, 0.0};
    Rng rng(11);
    std::vector<Link> links{link};
    CHECK_THROWS_AS(error_metric(links, lossy, 5, rng), unestimable_error);
}

TEST_CASE("error metric: self-consistency with the generating model")
{
    std::vector<Link> links = detected_links(12, 48.0);
    Rng rng(13);
    ErrorMetricResult r = error_metric(links, default_model2(), 100, rng);
    CHECK(std::abs(r.mu_eps_db) < 1.5);
    CHECK(r.n_links == links.size());
    CHECK(r.n_eps > 0);
}

TEST_CASE("model 1 overestimates the total cross power that model 2 matches")
{
    int wins = 0;
    Rng dr_rng(888);
    for (int c = 0; c < 10; ++c)
    {
        std::vector<Link> links = detected_links(3000 + c, dr_rng.uniform(44.0, 54.0));
        CampaignFitRow fits = fit_campaign(links, WhichModels::both);
        Rng r1(9000 + c), r2(9100 + c);
        ErrorMetricResult m1 = error_metric(links, fits.model1->model, 100, r1);
        ErrorMetricResult m2 = error_metric(links, fits.model2->model, 100, r2);
        CHECK(m2.mu_eps_db <= m1.mu_eps_db);
        wins += m1.mu_eps_db > m2.mu_eps_db;
        CHECK(std::abs(m2.mu_eps_db) < 2.0);
    }
    CHECK(wins == 10);
}

TEST_CASE("validation report file")
{
    TempDir dir("val_report");
    ValidationRow row;
    row.campaign_id = "C";
    row.model = 2;
    row.metric.mu_eps_db = -0.25;
    row.metric.sigma_eps_db = 3.5;
    row.metric.n_links = 7;
    row.metric.n_dropped = 3;
    std::vector<ValidationRow> rows{row};
    write_validation_report(dir.path() / "validation.csv", rows);
    std::string text = read_whole_file(dir.path() / "validation.csv");
    CHECK(text == "campaign_id,model,mu_eps_db,sigma_eps_db,n_links,n_dropped\nC,2,-0.25,3.5,7,3\n");
}

TEST_SUITE_END();
