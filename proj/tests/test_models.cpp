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

#include "xpr/models.hpp"

#include "xpr/stats.hpp"
#include "xpr/textio.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace xpr;
using namespace xpr::test;

TEST_SUITE_BEGIN("models");

TEST_CASE("excess-loss dependent mean")
{
    XprModel m = Model2{-0.5, 28.0, 6.0};
    CHECK(mean_xpr_db(m, 0.0) == 28.0);
    CHECK(mean_xpr_db(m, 56.0) == 0.0);  // clipping boundary -beta/alpha
    CHECK(mean_xpr_db(m, 100.0) == 0.0); // clipped
    CHECK(mean_xpr_db(m, 20.0) == doctest::Approx(18.0).epsilon(1e-14));

    // parameters reported for an open-square measurement
    XprModel sq = Model2{-0.57, 33.0, 6.8};
    CHECK(mean_xpr_db(sq, 10.0) == doctest::Approx(27.3).epsilon(1e-9));

    XprModel m1 = Model1{17.5, 9.0};
    for (double l : {0.0, 10.0, 80.0})
        CHECK(mean_xpr_db(m1, l) == 17.5);

    // degenerate slope keeps the intercept everywhere
    XprModel flat = Model2{0.0, 12.0, 3.0};
    CHECK(mean_xpr_db(flat, 50.0) == 12.0);
}

TEST_CASE("model-2 mean is continuous, non-increasing and non-negative for negative slope")
{
    XprModel m = Model2{-0.73, 31.0, 5.0};
    double prev = mean_xpr_db(m, -5.0);
    for (double l = -5.0; l <= 120.0; l += 0.25)
    {
        double v = mean_xpr_db(m, l);
        CHECK(v >= 0.0);
        CHECK(v <= prev + 1e-12);
        prev = v;
    }
    // continuity across the clip point
    double lc = 31.0 / 0.73;
    CHECK(mean_xpr_db(m, lc - 1e-9) == doctest::Approx(mean_xpr_db(m, lc + 1e-9)).scale(1.0).epsilon(1e-6));
}

TEST_CASE("sampling: zero-sigma limit returns the mean exactly")
{
    Rng rng(1);
    XprModel m = Model2{-0.5, 28.0, 0.0};
    for (double l : {0.0, 13.0, 60.0})
        CHECK(sample_xpr_db(m, l, rng) == mean_xpr_db(m, l));
}

TEST_CASE("sampling: moments and distribution at 1e5 draws")
{
    Rng rng(42);
    XprModel m = default_model2();
    const int n = 100000;
    std::vector<double> draws;
    draws.reserve(n);
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i)
    {
        double x = sample_xpr_db(m, 0.0, rng);
        draws.push_back(x);
        s += x;
        s2 += x * x;
    }
    double mean = s / n;
    double stddev = std::sqrt(s2 / n - mean * mean);
    CHECK(std::abs(mean - 28.0) < 0.1);
    CHECK(std::abs(stddev - 6.0) < 0.1);

    double d = ks_distance(draws, [&](double x) { return norm_cdf((x - 28.0) / 6.0); });
    CHECK(d < 0.01);
}

TEST_CASE("sampling is reproducible bit-exactly at a fixed seed")
{
    XprModel m = default_model2();
    Rng a(99), b(99);
    for (int i = 0; i < 50; ++i)
        CHECK(sample_xpr_db(m, 7.0, a) == sample_xpr_db(m, 7.0, b));
}

TEST_CASE("rotation-angle relation")
{
    CHECK(std::abs(xpr_from_rotation_db(std::numbers::pi / 4.0)) < 1e-12);

    // small-angle form agrees with the exact relation within 0.01 dB
    double gamma = std::pow(10.0, -28.0 / 20.0);
    CHECK(std::abs(xpr_from_rotation_db(gamma) - 28.0) <= 0.01);

    CHECK(rotation_from_model_rad(-0.5, 28.0, 0.0) ==
          doctest::Approx(std::pow(10.0, -28.0 / 20.0)).epsilon(1e-15));

    CHECK_THROWS_AS(xpr_from_rotation_db(0.0), std::domain_error);
    CHECK_THROWS_AS(xpr_from_rotation_db(-0.1), std::domain_error);
    CHECK_THROWS_AS(xpr_from_rotation_db(std::numbers::pi / 2.0), std::domain_error);
}

TEST_CASE("composition identity holds in the linear regime")
{
    double alpha = -0.5, beta = 28.0;
    for (double l = 0.0; l <= 40.0; l += 2.5)
    {
        double gamma = rotation_from_model_rad(alpha, beta, l);
        if (gamma >= 0.15)
            continue;
        double err = xpr_from_rotation_db(gamma) - (alpha * l + beta);
        CHECK(std::abs(err) < 0.1);
        // the error is exactly the small-angle correction
        CHECK(err == doctest::Approx(-20.0 * std::log10(std::tan(gamma) / gamma)).epsilon(1e-9));
    }
}

TEST_CASE("linear_xpr")
{
    CHECK(linear_xpr(20.0) == 100.0);
    CHECK(linear_xpr(0.0) == 1.0);
    CHECK(linear_xpr(-10.0) == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("model parameter files round trip and validate")
{
    TempDir dir("models_io");

    XprModel m2 = Model2{-0.57, 33.0, 6.8};
    write_model_file(m2, dir.path() / "m2.txt");
    XprModel r2 = read_model_file(dir.path() / "m2.txt");
    CHECK(std::get<Model2>(r2).alpha2 == std::get<Model2>(m2).alpha2);
    CHECK(std::get<Model2>(r2).beta2_db == std::get<Model2>(m2).beta2_db);
    CHECK(std::get<Model2>(r2).sigma2_db == std::get<Model2>(m2).sigma2_db);

    XprModel m1 = Model1{17.0, 8.5};
    write_model_file(m1, dir.path() / "m1.txt");
    XprModel r1 = read_model_file(dir.path() / "m1.txt");
    CHECK(std::get<Model1>(r1).mu1_db == 17.0);
    CHECK(std::get<Model1>(r1).sigma1_db == 8.5);

    atomic_write_file(dir.path() / "bad.txt", "model = 3\n");
    CHECK_THROWS_AS(read_model_file(dir.path() / "bad.txt"), parse_error);
    atomic_write_file(dir.path() / "bad2.txt", "model = 2\nalpha2 = -0.5\nbeta2_db = 28\n");
    CHECK_THROWS_WITH_AS(read_model_file(dir.path() / "bad2.txt"),
                         doctest::Contains("sigma2_db"), parse_error);
    atomic_write_file(dir.path() / "bad3.txt", "model = 1\nmu1_db = 10\nsigma1_db = 0\n");
    CHECK_THROWS_AS(read_model_file(dir.path() / "bad3.txt"), parse_error);
}

TEST_CASE("shipped defaults are the campaign averages")
{
    const Model2 &m = std::get<Model2>(default_model2());
    CHECK(m.alpha2 == -0.5);
    CHECK(m.beta2_db == 28.0);
    CHECK(m.sigma2_db == 6.0);
}

TEST_SUITE_END();
