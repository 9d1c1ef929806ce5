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

#include "xpr/gscm.hpp"

#include "xpr/textio.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace xpr;
using namespace xpr::test;

TEST_SUITE_BEGIN("gscm");

TEST_CASE("deterministic magnitudes at zero sigma")
{
    Rng rng(1);
    PolarizationMatrix m = sample_matrix(Model1{20.0, 0.0}, 0.0, rng);
    CHECK(std::abs(m.a_vv) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(m.a_hh) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(m.a_vh) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(std::abs(m.a_hv) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(m.xpr_db == 20.0);

    PolarizationMatrix u = sample_matrix(Model1{0.0, 0.0}, 0.0, rng);
    CHECK(std::abs(u.a_vh) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(u.a_hv) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("co- and cross-polar ratios carry the same XPR in every sample")
{
    Rng rng(2);
    XprModel model = default_model2();
    for (int i = 0; i < 2000; ++i)
    {
        PolarizationMatrix m = sample_matrix(model, rng.uniform(0.0, 40.0), rng);
        double r_v = std::norm(m.a_vv) / std::norm(m.a_hv);
        double r_h = std::norm(m.a_hh) / std::norm(m.a_vh);
        CHECK(std::abs(r_v - r_h) <= 1e-12 * std::max(r_v, r_h));
        // and both equal the drawn XPR
        double kappa = linear_xpr(m.xpr_db);
        CHECK(r_v == doctest::Approx(kappa).epsilon(1e-12));
    }
}

TEST_CASE("draw statistics at the default model")
{
    Rng rng(3);
    XprModel model = default_model2();
    const int n = 10000;
    double s = 0.0;
    std::vector<double> phases_vv, phases_vh;
    for (int i = 0; i < n; ++i)
    {
        PolarizationMatrix m = sample_matrix(model, 0.0, rng);
        s += 10.0 * std::log10(linear_xpr(m.xpr_db));
        double p1 = std::arg(m.a_vv);
        double p2 = std::arg(m.a_vh);
        phases_vv.push_back(p1 < 0.0 ? p1 + 2.0 * std::numbers::pi : p1);
        phases_vh.push_back(p2 < 0.0 ? p2 + 2.0 * std::numbers::pi : p2);
    }
    CHECK(std::abs(s / n - 28.0) < 0.2);

    auto uniform_cdf = [](double x) { return x / (2.0 * std::numbers::pi); };
    CHECK(ks_distance(phases_vv, uniform_cdf) < 0.02);
    CHECK(ks_distance(phases_vh, uniform_cdf) < 0.02);
}

TEST_CASE("phases are in [0, 2 pi) by construction and independent per entry")
{
    Rng rng(4);
    PolarizationMatrix a = sample_matrix(default_model2(), 5.0, rng);
    PolarizationMatrix b = sample_matrix(default_model2(), 5.0, rng);
    CHECK(std::arg(a.a_vv) != std::arg(a.a_hh));
    CHECK(std::arg(a.a_vv) != std::arg(b.a_vv));
}

TEST_CASE("sampling is reproducible at a fixed seed")
{
    Rng a(77), b(77);
    PolarizationMatrix ma = sample_matrix(default_model2(), 3.0, a);
    PolarizationMatrix mb = sample_matrix(default_model2(), 3.0, b);
    CHECK(ma.a_vv == mb.a_vv);
    CHECK(ma.a_vh == mb.a_vh);
    CHECK(ma.a_hv == mb.a_hv);
    CHECK(ma.a_hh == mb.a_hh);
    CHECK(ma.xpr_db == mb.xpr_db);
}

TEST_CASE("matrix batch export")
{
    TempDir dir("gscm_io");
    Rng rng(5);
    std::vector<PolarizationMatrix> ms;
    for (int i = 0; i < 10; ++i)
        ms.push_back(sample_matrix(default_model2(), 2.0, rng));
    write_matrix_batch(dir.path() / "matrices.csv", ms);

    std::string text = read_whole_file(dir.path() / "matrices.csv");
    CHECK(text.find("a_vv_re,a_vv_im,a_vh_re,a_vh_im,a_hv_re,a_hv_im,a_hh_re,a_hh_im,"
                    "l_ex_db,xpr_db") == 0);
    std::size_t lines = std::count(text.begin(), text.end(), '\n');
    CHECK(lines == 11); // header + 10 rows

    // first data row reparses to the first matrix
    std::size_t p1 = text.find('\n') + 1;
    std::vector<std::string> fields = split_csv(text.substr(p1, text.find('\n', p1) - p1));
    REQUIRE(fields.size() == 10);
    CHECK(std::stod(fields[0]) == ms[0].a_vv.real());
    CHECK(std::stod(fields[9]) == ms[0].xpr_db);
}

TEST_SUITE_END();
