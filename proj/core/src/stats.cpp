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

#include "xpr/stats.hpp"

#include <cmath>
#include <numbers>

namespace xpr
{

namespace
{
constexpr double log_sqrt_2pi = 0.918938533204672741780329736406;
constexpr double inv_sqrt_2 = 0.707106781186547524400844362105;
} // namespace

double norm_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

double norm_cdf(double z) { return 0.5 * std::erfc(-z * inv_sqrt_2); }

double log_norm_pdf(double z) { return -0.5 * z * z - log_sqrt_2pi; }

double log_norm_cdf(double z)
{
    if (z >= 0.0)
    {
        // Phi in [0.5, 1]; log1p keeps precision as Phi -> 1
        return std::log1p(-0.5 * std::erfc(z * inv_sqrt_2));
    }
    if (z > -36.0)
    {
        // erfc(|z|/sqrt(2)) is representable down to about z = -37
        return std::log(0.5 * std::erfc(-z * inv_sqrt_2));
    }
    // Deep tail: log Phi(z) = -z^2/2 - log(-z sqrt(2 pi)) + log(1 + s),
    // s = -1/z^2 + 3/z^4 - 15/z^6 + 105/z^8 - 945/z^10 + ...
    double r = 1.0 / (z * z);
    double s = r * (-1.0 + r * (3.0 + r * (-15.0 + r * (105.0 - r * 945.0))));
    return -0.5 * z * z - std::log(-z) - log_sqrt_2pi + std::log1p(s);
}

double log_norm_sf(double z) { return log_norm_cdf(-z); }

} // namespace xpr
