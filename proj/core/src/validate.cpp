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

#include "xpr/textio.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace xpr
{

namespace
{

// Order-independent linear-power sum: contributions are sorted before
// accumulating, so the total does not depend on MPC list order
double sum_db(std::vector<double> &linear_terms)
{
    std::sort(linear_terms.begin(), linear_terms.end());
    double acc = 0.0;
    for (double v : linear_terms)
        acc += v;
    return 10.0 * std::log10(acc);
}

std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Per-MPC substream keyed on the component's delay and azimuth, so the
// synthesized draw belongs to the MPC rather than to its list position
Rng mpc_stream(std::uint64_t base, const Mpc &m)
{
    std::uint64_t h = mix64(base ^ std::bit_cast<std::uint64_t>(m.tau_s));
    h = mix64(h ^ std::bit_cast<std::uint64_t>(m.phi_deg));
    return Rng(h);
}

} // namespace

CrossPowerObservation total_cross_power(std::span<const Mpc> mpcs, const std::string &link_id)
{
    std::vector<double> terms;
    for (const Mpc &m : mpcs)
        if (m.p_cross_db)
            terms.push_back(std::pow(10.0, *m.p_cross_db / 10.0));
    CrossPowerObservation out;
    out.link_id = link_id;
    if (terms.empty())
    {
        out.censored = true;
        return out;
    }
    out.c_tot_db = sum_db(terms);
    return out;
}

CrossPowerObservation synthesize_cross_power(std::span<const Mpc> mpcs, const XprModel &model,
                                             double p_th_db, Rng &rng,
                                             const std::string &link_id)
{
    const std::uint64_t base = rng.next_u64();
    std::vector<double> terms;
    for (const Mpc &m : mpcs)
    {
        double p_c;
        if (m.p_main_db && *m.p_main_db > p_th_db)
        {
            double l_ex = m.excess_loss_db ? *m.excess_loss_db : 0.0;
            Rng stream = mpc_stream(base, m);
            p_c = *m.p_main_db - sample_xpr_db(model, l_ex, stream);
        }
        else if (m.p_cross_db)
        {
            // Main amplitude censored: keep the measured cross amplitude
            p_c = *m.p_cross_db;
        }
        else
        {
            continue;
        }
        if (p_c > p_th_db)
            terms.push_back(std::pow(10.0, p_c / 10.0));
    }
    CrossPowerObservation out;
    out.link_id = link_id;
    if (terms.empty())
    {
        out.censored = true;
        return out;
    }
    out.c_tot_db = sum_db(terms);
    return out;
}

ErrorMetricResult error_metric(std::span<const Link> links, const XprModel &model,
                               int n_realizations, Rng &rng)
{
    if (links.empty())
        throw std::invalid_argument("error_metric: no links");
    if (n_realizations < 1)
        throw std::invalid_argument("error_metric: need at least one realization per link");

    ErrorMetricResult result;
    result.n_links = links.size();

    std::vector<CensoredObservation> eps;
    for (const Link &link : links)
    {
        const double p_th = link.meta.noise_threshold_db;
        CrossPowerObservation measured = total_cross_power(link.mpcs, link.link_id);
        for (int r = 0; r < n_realizations; ++r)
        {
            CrossPowerObservation synth =
                synthesize_cross_power(link.mpcs, model, p_th, rng, link.link_id);
            CensoredObservation obs;
            if (!synth.censored && !measured.censored)
            {
                obs.kind = Censoring::exact;
                obs.value_db = synth.c_tot_db - measured.c_tot_db;
            }
            else if (!synth.censored)
            {
                // measured below threshold: eps > C~tot - P_th
                obs.kind = Censoring::right_censored;
                obs.value_db = synth.c_tot_db - p_th;
            }
            else if (!measured.censored)
            {
                // synthesized below threshold: eps < P_th - C_tot
                obs.kind = Censoring::left_censored;
                obs.value_db = p_th - measured.c_tot_db;
            }
            else
            {
                ++result.n_dropped;
                continue;
            }
            eps.push_back(obs);
        }
    }
    if (eps.empty())
        throw unestimable_error("error_metric: every realization was doubly censored");
    result.n_eps = eps.size();

    bool any_exact = false, any_censored = false;
    for (const CensoredObservation &o : eps)
        (o.kind == Censoring::exact ? any_exact : any_censored) = true;
    if (!any_exact)
        throw unestimable_error("error_metric: no exactly measured epsilon observation");

    if (!any_censored)
    {
        // Plain Gaussian MLE; also covers the single-observation case
        double mean = 0.0;
        for (const CensoredObservation &o : eps)
            mean += o.value_db;
        mean /= double(eps.size());
        double ss = 0.0;
        for (const CensoredObservation &o : eps)
            ss += (o.value_db - mean) * (o.value_db - mean);
        result.mu_eps_db = mean;
        result.sigma_eps_db = std::sqrt(ss / double(eps.size()));
        return result;
    }

    // The epsilon mean is near zero for a good model and may be negative,
    // so the XPR search box does not apply here
    FitOptions options;
    options.mu_lo = -80.0;
    options.mu_hi = 80.0;
    options.sigma_lo = 1e-3;
    FitResult fit = fit_model1(eps, options);
    const Model1 &m1 = std::get<Model1>(fit.model);
    result.mu_eps_db = m1.mu1_db;
    result.sigma_eps_db = m1.sigma1_db;
    return result;
}

void write_validation_report(const std::filesystem::path &path,
                             std::span<const ValidationRow> rows)
{
    std::ostringstream out;
    out << "campaign_id,model,mu_eps_db,sigma_eps_db,n_links,n_dropped\n";
    for (const ValidationRow &r : rows)
        out << r.campaign_id << "," << r.model << "," << format_report(r.metric.mu_eps_db) << ","
            << format_report(r.metric.sigma_eps_db) << "," << r.metric.n_links << ","
            << r.metric.n_dropped << "\n";
    atomic_write_file(path, out.str());
}

} // namespace xpr
