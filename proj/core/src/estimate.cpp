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

#include "xpr/estimate.hpp"

#include "xpr/nelder_mead.hpp"
#include "xpr/rng.hpp"
#include "xpr/stats.hpp"
#include "xpr/textio.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace xpr
{

std::vector<CensoredObservation> observations_from_mpcs(std::span<const Mpc> mpcs,
                                                        const CampaignMeta &meta, Type3Mode mode)
{
    const double p_th = meta.noise_threshold_db;
    std::vector<CensoredObservation> out;
    out.reserve(mpcs.size());
    for (const Mpc &m : mpcs)
    {
        CensoredObservation obs;
        switch (m.type)
        {
        case MpcType::type1:
            obs.kind = Censoring::exact;
            obs.value_db = *m.p_main_db - *m.p_cross_db;
            break;
        case MpcType::type2:
            obs.kind = Censoring::right_censored;
            obs.value_db = *m.p_main_db - p_th;
            break;
        case MpcType::type3:
            obs.kind = Censoring::left_censored;
            obs.value_db = p_th - *m.p_cross_db;
            break;
        }
        if (m.excess_loss_db)
            obs.l_ex_db = *m.excess_loss_db;
        else if (m.p_main_db)
            obs.l_ex_db = excess_loss_db(*m.p_main_db, m.tau_s, meta);
        else if (mode == Type3Mode::bound)
        {
            // Main amplitude is censored, so the excess loss is only known
            // to exceed (-P_th) - FSPL(tau); evaluate the mean at that bound
            obs.l_ex_db = -p_th - fspl_at_delay_db(m.tau_s, meta.center_frequency_hz);
        }
        out.push_back(obs);
    }
    return out;
}

double log_likelihood(const XprModel &model, std::span<const CensoredObservation> observations)
{
    const double sigma = model_sigma_db(model);
    if (!(sigma > 0.0))
        throw std::domain_error("log_likelihood: sigma must be > 0");
    const bool is_model2 = std::holds_alternative<Model2>(model);

    double total = 0.0;
    for (const CensoredObservation &obs : observations)
    {
        if (is_model2 && !obs.has_l_ex())
            throw std::invalid_argument(
                "log_likelihood: model 2 requires an excess loss per observation");
        double mu = mean_xpr_db(model, obs.l_ex_db);
        double z = (obs.value_db - mu) / sigma;
        switch (obs.kind)
        {
        case Censoring::exact:
            total += -std::log(sigma) + log_norm_pdf(z);
            break;
        case Censoring::right_censored:
            total += log_norm_sf(z);
            break;
        case Censoring::left_censored:
            total += log_norm_cdf(z);
            break;
        }
    }
    return total;
}

namespace
{

struct ObsCounts
{
    std::size_t n_exact = 0, n_right = 0, n_left = 0;
};

ObsCounts count_kinds(std::span<const CensoredObservation> obs)
{
    ObsCounts c;
    for (const CensoredObservation &o : obs)
    {
        if (o.kind == Censoring::exact)
            ++c.n_exact;
        else if (o.kind == Censoring::right_censored)
            ++c.n_right;
        else
            ++c.n_left;
    }
    return c;
}

struct ExactMoments
{
    double mean = 0.0;
    double stddev = 0.0; // ML (biased, /N) standard deviation
    std::size_t n = 0;
};

ExactMoments exact_moments(std::span<const CensoredObservation> obs)
{
    ExactMoments m;
    for (const CensoredObservation &o : obs)
        if (o.kind == Censoring::exact)
        {
            m.mean += o.value_db;
            ++m.n;
        }
    if (m.n == 0)
        return m;
    m.mean /= double(m.n);
    double ss = 0.0;
    for (const CensoredObservation &o : obs)
        if (o.kind == Censoring::exact)
            ss += (o.value_db - m.mean) * (o.value_db - m.mean);
    m.stddev = std::sqrt(ss / double(m.n));
    return m;
}

double clamp(double v, double lo, double hi) { return std::min(hi, std::max(lo, v)); }

// Internal seed for the start-point jitter; fits take no seed so that they
// are a pure function of their observations
constexpr std::uint64_t fit_jitter_seed = 0x1D2B5A8C3F7E9406ull;

struct Candidate
{
    std::vector<double> x;
    double negloglik = 0.0;
    bool converged = false;
};

// Runs one simplex search per start and keeps the feasible winner; among
// candidates tied within the likelihood tolerance the one with the smallest
// sigma (last parameter) wins.
Candidate multi_start(const std::function<double(std::span<const double>)> &objective,
                      const std::vector<std::vector<double>> &starts,
                      const std::vector<double> &step, const FitOptions &options)
{
    NelderMeadOptions nm_options;
    nm_options.max_iterations = options.max_iterations;
    nm_options.param_tol = options.param_tol;
    nm_options.fn_tol = options.loglik_tol;

    std::vector<Candidate> candidates;
    for (const std::vector<double> &x0 : starts)
    {
        NelderMeadResult r = nelder_mead(objective, x0, step, nm_options);
        candidates.push_back(Candidate{std::move(r.x), r.fx, r.converged});
    }

    double best_f = candidates[0].negloglik;
    for (const Candidate &c : candidates)
        best_f = std::min(best_f, c.negloglik);
    double tie = std::max(options.loglik_tol, 1e-12 * std::abs(best_f));

    const Candidate *winner = nullptr;
    for (const Candidate &c : candidates)
    {
        if (c.negloglik > best_f + tie)
            continue;
        if (!winner || c.x.back() < winner->x.back())
            winner = &c;
    }
    return *winner;
}

} // namespace

FitResult fit_model1(std::span<const CensoredObservation> observations, const FitOptions &options)
{
    ObsCounts counts = count_kinds(observations);
    if (observations.size() < 2)
        throw unidentifiable_error("fit_model1: need at least 2 observations");
    if (counts.n_exact == 0)
        throw unidentifiable_error("fit_model1: no exactly measured XPR observation");

    FitResult result;
    result.n_exact = counts.n_exact;
    result.n_right_censored = counts.n_right;
    result.n_left_censored = counts.n_left;

    if (counts.n_right == 0 && counts.n_left == 0)
    {
        // Uncensored likelihood peaks at the sample moments; no search needed
        ExactMoments m = exact_moments(observations);
        Model1 fitted{m.mean, std::max(m.stddev, 1e-9)};
        result.model = fitted;
        result.loglik = log_likelihood(result.model, observations);
        result.converged = true;
        result.n_restarts_used = 0;
        return result;
    }

    auto objective = [&](std::span<const double> p) -> double {
        double mu = p[0], sigma = p[1];
        double viol = 0.0;
        viol += std::max(0.0, options.mu_lo - mu) + std::max(0.0, mu - options.mu_hi);
        viol += std::max(0.0, options.sigma_lo - sigma) + std::max(0.0, sigma - options.sigma_hi);
        if (viol > 0.0)
            return 1e12 * (1.0 + viol);
        return -log_likelihood(Model1{mu, sigma}, observations);
    };

    ExactMoments m = exact_moments(observations);
    double mu0 = clamp(m.mean, options.mu_lo, options.mu_hi);
    double sigma0 = clamp(m.stddev, options.sigma_lo, options.sigma_hi);

    Rng jitter(fit_jitter_seed);
    std::vector<std::vector<double>> starts;
    starts.push_back({mu0, sigma0});
    while (int(starts.size()) < std::max(options.n_starts, 2))
    {
        double mu = clamp(mu0 + jitter.uniform(-6.0, 6.0), options.mu_lo, options.mu_hi);
        double sigma = clamp(sigma0 * std::exp(jitter.uniform(-0.7, 0.7)), options.sigma_lo,
                             options.sigma_hi);
        starts.push_back({mu, sigma});
    }

    Candidate best = multi_start(objective, starts, {1.0, 0.5}, options);
    result.model = Model1{best.x[0], best.x[1]};
    result.loglik = -best.negloglik;
    result.converged = best.converged;
    result.n_restarts_used = int(starts.size());
    return result;
}

FitResult fit_model2(std::span<const CensoredObservation> observations, const FitOptions &options)
{
    // Observations without an excess loss cannot inform the excess-loss
    // dependent mean; Type3Mode::drop produces exactly these
    std::vector<CensoredObservation> used;
    used.reserve(observations.size());
    for (const CensoredObservation &o : observations)
        if (o.has_l_ex())
            used.push_back(o);

    ObsCounts counts = count_kinds(used);
    if (counts.n_exact == 0)
        throw unidentifiable_error("fit_model2: no exactly measured XPR observation");
    if (used.size() < 3)
        throw ill_conditioned_error("fit_model2: need at least 3 observations with excess loss");

    double l_min = std::numeric_limits<double>::infinity();
    double l_max = -std::numeric_limits<double>::infinity();
    double l_mean = 0.0, x_mean = 0.0;
    for (const CensoredObservation &o : used)
        if (o.kind == Censoring::exact)
        {
            l_min = std::min(l_min, o.l_ex_db);
            l_max = std::max(l_max, o.l_ex_db);
            l_mean += o.l_ex_db;
            x_mean += o.value_db;
        }
    l_mean /= double(counts.n_exact);
    x_mean /= double(counts.n_exact);
    if (!(l_max - l_min >= 5.0))
        throw ill_conditioned_error(
            "fit_model2: excess-loss spread of exact observations is below 5 dB");

    FitResult result;
    result.n_exact = counts.n_exact;
    result.n_right_censored = counts.n_right;
    result.n_left_censored = counts.n_left;

    auto objective = [&](std::span<const double> p) -> double {
        double alpha = p[0], beta = p[1], sigma = p[2];
        double viol = 0.0;
        viol += std::max(0.0, options.alpha_lo - alpha) + std::max(0.0, alpha - options.alpha_hi);
        viol += std::max(0.0, options.mu_lo - beta) + std::max(0.0, beta - options.mu_hi);
        viol += std::max(0.0, options.sigma_lo - sigma) + std::max(0.0, sigma - options.sigma_hi);
        if (viol > 0.0)
            return 1e12 * (1.0 + viol);
        return -log_likelihood(Model2{alpha, beta, sigma}, used);
    };

    // Least-squares line through the exact (l_ex, xpr) pairs
    double sxx = 0.0, sxy = 0.0;
    for (const CensoredObservation &o : used)
        if (o.kind == Censoring::exact)
        {
            sxx += (o.l_ex_db - l_mean) * (o.l_ex_db - l_mean);
            sxy += (o.l_ex_db - l_mean) * (o.value_db - x_mean);
        }
    double alpha0 = sxx > 0.0 ? sxy / sxx : 0.0;
    double beta0 = x_mean - alpha0 * l_mean;
    double rss = 0.0;
    for (const CensoredObservation &o : used)
        if (o.kind == Censoring::exact)
        {
            double r = o.value_db - (alpha0 * o.l_ex_db + beta0);
            rss += r * r;
        }
    double sigma0 = std::sqrt(rss / double(counts.n_exact));

    alpha0 = clamp(alpha0, options.alpha_lo, options.alpha_hi);
    beta0 = clamp(beta0, options.mu_lo, options.mu_hi);
    sigma0 = clamp(sigma0, options.sigma_lo, options.sigma_hi);

    std::vector<std::vector<double>> starts;
    starts.push_back({alpha0, beta0, sigma0});

    // The constant-mean solution embeds as alpha = 0; seeding with it makes
    // the model-2 likelihood at least as good as model 1 on the same data
    try
    {
        FitResult m1 = fit_model1(used, options);
        const Model1 &f = std::get<Model1>(m1.model);
        starts.push_back({0.0, clamp(f.mu1_db, options.mu_lo, options.mu_hi),
                          clamp(f.sigma1_db, options.sigma_lo, options.sigma_hi)});
    }
    catch (const std::runtime_error &)
    {
        // fall through: jittered starts still give >= n_starts
    }

    Rng jitter(fit_jitter_seed ^ 0x9E3779B97F4A7C15ull);
    while (int(starts.size()) < std::max(options.n_starts, 2))
    {
        double a = clamp(alpha0 + jitter.uniform(-0.2, 0.2), options.alpha_lo, options.alpha_hi);
        double b = clamp(beta0 + jitter.uniform(-6.0, 6.0), options.mu_lo, options.mu_hi);
        double s =
            clamp(sigma0 * std::exp(jitter.uniform(-0.7, 0.7)), options.sigma_lo, options.sigma_hi);
        starts.push_back({a, b, s});
    }

    Candidate best = multi_start(objective, starts, {0.05, 1.0, 0.5}, options);
    result.model = Model2{best.x[0], best.x[1], best.x[2]};
    result.loglik = -best.negloglik;
    result.converged = best.converged;
    result.n_restarts_used = int(starts.size());
    return result;
}

CampaignFitRow fit_campaign(std::span<const Link> links, WhichModels which, Type3Mode type3_mode,
                            const FitOptions &options)
{
    std::vector<Mpc> pooled;
    std::vector<CensoredObservation> observations;
    for (const Link &link : links)
    {
        pooled.insert(pooled.end(), link.mpcs.begin(), link.mpcs.end());
        std::vector<CensoredObservation> obs =
            observations_from_mpcs(link.mpcs, link.meta, type3_mode);
        observations.insert(observations.end(), obs.begin(), obs.end());
    }
    if (pooled.empty())
        throw std::invalid_argument("fit_campaign: campaign has no MPCs");

    CampaignFitRow row;
    const CampaignMeta &meta = links.front().meta;
    row.campaign_id = meta.campaign_id;
    row.center_frequency_hz = meta.center_frequency_hz;
    row.bandwidth_hz = meta.bandwidth_hz;
    row.bs_height_m = meta.bs_height_m;
    row.ms_height_m = meta.ms_height_m;
    row.n_links = links.size();
    row.d_min_m = std::numeric_limits<double>::infinity();
    row.d_max_m = -std::numeric_limits<double>::infinity();
    for (const Link &link : links)
    {
        row.d_min_m = std::min(row.d_min_m, link.meta.link_distance_m);
        row.d_max_m = std::max(row.d_max_m, link.meta.link_distance_m);
    }
    double max_amp = -std::numeric_limits<double>::infinity();
    for (const Mpc &m : pooled)
        if (m.p_main_db)
            max_amp = std::max(max_amp, *m.p_main_db);
    row.dynamic_range_db =
        std::isfinite(max_amp) ? max_amp - meta.noise_threshold_db : 0.0;
    row.counts = census(pooled);

    if (which == WhichModels::model1 || which == WhichModels::both)
        row.model1 = fit_model1(observations, options);
    if (which == WhichModels::model2 || which == WhichModels::both)
        row.model2 = fit_model2(observations, options);
    return row;
}

namespace
{

std::string field_or_na(const std::optional<FitResult> &fit,
                        double (*proj)(const FitResult &))
{
    if (!fit)
        return "NA";
    return format_report(proj(*fit));
}

} // namespace

void write_fit_table(const std::filesystem::path &path, std::span<const CampaignFitRow> rows)
{
    std::ostringstream out;
    out << "campaign_id,center_frequency_ghz,bandwidth_ghz,bs_height_m,ms_height_m,"
           "d_min_m,d_max_m,dynamic_range_db,n_links,n_type1,n_type2,n_type3,"
           "mu1_db,sigma1_db,alpha2,beta2_db,sigma2_db\n";
    for (const CampaignFitRow &r : rows)
    {
        out << r.campaign_id << "," << format_report(r.center_frequency_hz / 1e9) << ","
            << format_report(r.bandwidth_hz / 1e9) << "," << format_report(r.bs_height_m) << ","
            << format_report(r.ms_height_m) << "," << format_report(r.d_min_m) << ","
            << format_report(r.d_max_m) << "," << format_report(r.dynamic_range_db) << ","
            << r.n_links << "," << r.counts.n_type1 << "," << r.counts.n_type2 << ","
            << r.counts.n_type3;
        out << "," << field_or_na(r.model1, [](const FitResult &f) {
            return std::get<Model1>(f.model).mu1_db;
        });
        out << "," << field_or_na(r.model1, [](const FitResult &f) {
            return std::get<Model1>(f.model).sigma1_db;
        });
        out << "," << field_or_na(r.model2, [](const FitResult &f) {
            return std::get<Model2>(f.model).alpha2;
        });
        out << "," << field_or_na(r.model2, [](const FitResult &f) {
            return std::get<Model2>(f.model).beta2_db;
        });
        out << "," << field_or_na(r.model2, [](const FitResult &f) {
            return std::get<Model2>(f.model).sigma2_db;
        });
        out << "\n";
    }
    atomic_write_file(path, out.str());
}

namespace
{

void write_one_detail(std::ostringstream &out, const std::string &campaign_id,
                      const FitResult &fit, Type3Mode type3_mode)
{
    out << "[fit]\n";
    out << "campaign_id = " << campaign_id << "\n";
    if (const auto *m1 = std::get_if<Model1>(&fit.model))
    {
        out << "model = 1\n";
        out << "mu1_db = " << format_compact(m1->mu1_db) << "\n";
        out << "sigma1_db = " << format_compact(m1->sigma1_db) << "\n";
    }
    else
    {
        const Model2 &m2 = std::get<Model2>(fit.model);
        out << "model = 2\n";
        out << "alpha2 = " << format_compact(m2.alpha2) << "\n";
        out << "beta2_db = " << format_compact(m2.beta2_db) << "\n";
        out << "sigma2_db = " << format_compact(m2.sigma2_db) << "\n";
    }
    out << "type3_mode = " << (type3_mode == Type3Mode::bound ? "bound" : "drop") << "\n";
    out << "loglik = " << format_compact(fit.loglik) << "\n";
    out << "converged = " << (fit.converged ? 1 : 0) << "\n";
    out << "n_restarts_used = " << fit.n_restarts_used << "\n";
    out << "n_exact = " << fit.n_exact << "\n";
    out << "n_right_censored = " << fit.n_right_censored << "\n";
    out << "n_left_censored = " << fit.n_left_censored << "\n";
    out << "\n";
}

} // namespace

void write_fit_details(const std::filesystem::path &path, std::span<const CampaignFitRow> rows,
                       Type3Mode type3_mode)
{
    std::ostringstream out;
    for (const CampaignFitRow &r : rows)
    {
        if (r.model1)
            write_one_detail(out, r.campaign_id, *r.model1, type3_mode);
        if (r.model2)
            write_one_detail(out, r.campaign_id, *r.model2, type3_mode);
    }
    atomic_write_file(path, out.str());
}

} // namespace xpr
