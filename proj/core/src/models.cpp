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

#include "xpr/textio.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace xpr
{

double model_sigma_db(const XprModel &model)
{
    if (const auto *m1 = std::get_if<Model1>(&model))
        return m1->sigma1_db;
    return std::get<Model2>(model).sigma2_db;
}

double mean_xpr_db(const XprModel &model, double l_ex_db)
{
    if (const auto *m1 = std::get_if<Model1>(&model))
        return m1->mu1_db;
    const Model2 &m2 = std::get<Model2>(model);
    if (m2.alpha2 == 0.0)
        return m2.beta2_db;
    if (l_ex_db <= -m2.beta2_db / m2.alpha2)
        return m2.alpha2 * l_ex_db + m2.beta2_db;
    return 0.0;
}

double sample_xpr_db(const XprModel &model, double l_ex_db, Rng &rng)
{
    return mean_xpr_db(model, l_ex_db) + model_sigma_db(model) * rng.standard_normal();
}

double linear_xpr(double xpr_db) { return std::pow(10.0, xpr_db / 10.0); }

double xpr_from_rotation_db(double gamma_rad)
{
    if (!(gamma_rad > 0.0) || !(gamma_rad < std::numbers::pi / 2.0))
        throw std::domain_error("xpr_from_rotation_db: gamma must lie in (0, pi/2)");
    return 20.0 * std::log10(1.0 / std::tan(gamma_rad));
}

double rotation_from_model_rad(double alpha2, double beta2_db, double l_ex_db)
{
    return std::pow(10.0, -beta2_db / 20.0) *
           std::pow(std::pow(10.0, l_ex_db / 10.0), -alpha2 / 2.0);
}

XprModel read_model_file(const std::filesystem::path &path)
{
    KeyValueBlock kv = read_key_value_file(path);
    if (!kv.contains("model"))
        throw parse_error(path, "missing 'model' field");
    const std::string &which = kv.get("model");
    auto need = [&](const char *key) {
        if (!kv.contains(key))
            throw parse_error(path, "missing field '" + std::string(key) + "' for model " + which);
        return kv.get_double(key);
    };
    if (which == "1")
    {
        Model1 m{need("mu1_db"), need("sigma1_db")};
        if (!(m.sigma1_db > 0.0))
            throw parse_error(path, "sigma1_db must be > 0");
        return m;
    }
    if (which == "2")
    {
        Model2 m{need("alpha2"), need("beta2_db"), need("sigma2_db")};
        if (!(m.sigma2_db > 0.0))
            throw parse_error(path, "sigma2_db must be > 0");
        return m;
    }
    throw parse_error(path, "model must be 1 or 2, got '" + which + "'");
}

void write_model_file(const XprModel &model, const std::filesystem::path &path)
{
    std::ostringstream out;
    if (const auto *m1 = std::get_if<Model1>(&model))
    {
        out << "model = 1\n";
        out << "mu1_db = " << format_compact(m1->mu1_db) << "\n";
        out << "sigma1_db = " << format_compact(m1->sigma1_db) << "\n";
    }
    else
    {
        const Model2 &m2 = std::get<Model2>(model);
        out << "model = 2\n";
        out << "alpha2 = " << format_compact(m2.alpha2) << "\n";
        out << "beta2_db = " << format_compact(m2.beta2_db) << "\n";
        out << "sigma2_db = " << format_compact(m2.sigma2_db) << "\n";
    }
    atomic_write_file(path, out.str());
}

} // namespace xpr
