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

#include <cmath>
#include <numbers>
#include <sstream>

namespace xpr
{

PolarizationMatrix sample_matrix(const XprModel &model, double l_ex_db, Rng &rng)
{
    PolarizationMatrix out;
    out.l_ex_db = l_ex_db;
    out.xpr_db = sample_xpr_db(model, l_ex_db, rng);
    double cross_mag = 1.0 / std::sqrt(linear_xpr(out.xpr_db));

    auto phase = [&rng]() { return rng.uniform01() * 2.0 * std::numbers::pi; };
    out.a_vv = std::polar(1.0, phase());
    out.a_vh = std::polar(cross_mag, phase());
    out.a_hv = std::polar(cross_mag, phase());
    out.a_hh = std::polar(1.0, phase());
    return out;
}

void write_matrix_batch(const std::filesystem::path &path,
                        std::span<const PolarizationMatrix> matrices)
{
    std::ostringstream out;
    out << "a_vv_re,a_vv_im,a_vh_re,a_vh_im,a_hv_re,a_hv_im,a_hh_re,a_hh_im,l_ex_db,xpr_db\n";
    for (const PolarizationMatrix &m : matrices)
    {
        out << format_compact(m.a_vv.real()) << "," << format_compact(m.a_vv.imag()) << ","
            << format_compact(m.a_vh.real()) << "," << format_compact(m.a_vh.imag()) << ","
            << format_compact(m.a_hv.real()) << "," << format_compact(m.a_hv.imag()) << ","
            << format_compact(m.a_hh.real()) << "," << format_compact(m.a_hh.imag()) << ","
            << format_compact(m.l_ex_db) << "," << format_compact(m.xpr_db) << "\n";
    }
    atomic_write_file(path, out.str());
}

} // namespace xpr
