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

#ifndef xprkit_nelder_mead_H
#define xprkit_nelder_mead_H

#include <functional>
#include <span>
#include <vector>

namespace xpr
{

struct NelderMeadOptions
{
    int max_iterations = 2000;
    // Converged when the simplex collapses below both tolerances
    double param_tol = 1e-4;
    double fn_tol = 1e-8;
};

struct NelderMeadResult
{
    std::vector<double> x;
    double fx = 0.0;
    bool converged = false;
    int iterations = 0;
};

// Downhill simplex minimization (reflection 1, expansion 2, contraction 0.5,
// shrink 0.5). The initial simplex is x0 plus one vertex per dimension offset
// by step[i] along axis i.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)> &f,
                             std::span<const double> x0, std::span<const double> step,
                             const NelderMeadOptions &options = {});

} // namespace xpr

#endif
