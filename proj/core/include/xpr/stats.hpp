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

#ifndef xprkit_stats_H
#define xprkit_stats_H

namespace xpr
{

// Standard normal density, CDF and their logarithms. The log variants stay
// finite and accurate far into the tails (|z| in the hundreds), which the
// censored likelihood needs when the optimizer probes bad parameter points.

double norm_pdf(double z);
double norm_cdf(double z);

// log phi(z) = -z^2/2 - log(sqrt(2 pi))
double log_norm_pdf(double z);

// log Phi(z); erfc in the mid range, asymptotic tail series below z = -36
double log_norm_cdf(double z);

// log(1 - Phi(z)) = log Phi(-z)
double log_norm_sf(double z);

} // namespace xpr

#endif
