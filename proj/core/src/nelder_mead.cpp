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

#include "xpr/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace xpr
{

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)> &f,
                             std::span<const double> x0, std::span<const double> step,
                             const NelderMeadOptions &options)
{
    const std::size_t dim = x0.size();
    if (dim == 0 || step.size() != dim)
        throw std::invalid_argument("nelder_mead: bad start point or step sizes");

    std::vector<std::vector<double>> verts(dim + 1, std::vector<double>(x0.begin(), x0.end()));
    for (std::size_t i = 0; i < dim; ++i)
        verts[i + 1][i] += step[i] != 0.0 ? step[i] : 1e-3;
    std::vector<double> fv(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i)
        fv[i] = f(verts[i]);

    std::vector<std::size_t> order(dim + 1);
    std::vector<double> centroid(dim), xr(dim), xe(dim), xc(dim);

    NelderMeadResult result;
    int iter = 0;
    for (; iter < options.max_iterations; ++iter)
    {
        std::iota(order.begin(), order.end(), std::size_t(0));
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });

        std::size_t best = order[0], worst = order[dim], second_worst = order[dim - 1];

        double param_spread = 0.0;
        for (std::size_t i = 0; i <= dim; ++i)
            for (std::size_t d = 0; d < dim; ++d)
                param_spread = std::max(param_spread, std::abs(verts[i][d] - verts[best][d]));
        double fn_spread = fv[worst] - fv[best];
        if (param_spread <= options.param_tol && fn_spread <= options.fn_tol)
        {
            result.converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= dim; ++i)
            if (i != worst)
                for (std::size_t d = 0; d < dim; ++d)
                    centroid[d] += verts[i][d];
        for (std::size_t d = 0; d < dim; ++d)
            centroid[d] /= double(dim);

        for (std::size_t d = 0; d < dim; ++d)
            xr[d] = centroid[d] + (centroid[d] - verts[worst][d]);
        double fr = f(xr);

        if (fr < fv[best])
        {
            for (std::size_t d = 0; d < dim; ++d)
                xe[d] = centroid[d] + 2.0 * (centroid[d] - verts[worst][d]);
            double fe = f(xe);
            if (fe < fr)
            {
                verts[worst] = xe;
                fv[worst] = fe;
            }
            else
            {
                verts[worst] = xr;
                fv[worst] = fr;
            }
            continue;
        }
        if (fr < fv[second_worst])
        {
            verts[worst] = xr;
            fv[worst] = fr;
            continue;
        }

        // Contraction towards the better of the worst vertex and reflection
        bool outside = fr < fv[worst];
        const std::vector<double> &towards = outside ? xr : verts[worst];
        for (std::size_t d = 0; d < dim; ++d)
            xc[d] = centroid[d] + 0.5 * (towards[d] - centroid[d]);
        double fc = f(xc);
        if (fc < (outside ? fr : fv[worst]))
        {
            verts[worst] = xc;
            fv[worst] = fc;
            continue;
        }

        // Shrink towards the best vertex
        for (std::size_t i = 0; i <= dim; ++i)
        {
            if (i == best)
                continue;
            for (std::size_t d = 0; d < dim; ++d)
                verts[i][d] = verts[best][d] + 0.5 * (verts[i][d] - verts[best][d]);
            fv[i] = f(verts[i]);
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= dim; ++i)
        if (fv[i] < fv[best])
            best = i;
    result.x = verts[best];
    result.fx = fv[best];
    result.iterations = iter;
    return result;
}

} // namespace xpr
