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

#include "xpr/cli.hpp"

#include "xpr/gscm.hpp"
#include "xpr/textio.hpp"
#include "xpr/validate.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <sstream>

namespace xpr::cli
{

namespace fs = std::filesystem;

namespace
{

int fail(const std::string &message)
{
    std::cerr << "xprtool: " << message << "\n";
    return 1;
}

std::string strip_suffix(std::string s, const std::string &suffix)
{
    if (s.size() > suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0)
        return s.substr(0, s.size() - suffix.size());
    return s;
}

} // namespace

std::vector<fs::path> scan_padp_bases(std::span<const fs::path> inputs)
{
    std::vector<fs::path> bases;
    for (const fs::path &input : inputs)
    {
        if (fs::is_directory(input))
        {
            for (const auto &entry : fs::directory_iterator(input))
            {
                std::string name = entry.path().filename().string();
                if (name.size() > 10 && name.ends_with(".main.padp"))
                    bases.push_back(entry.path().parent_path() /
                                    name.substr(0, name.size() - 10));
            }
        }
        else
        {
            std::string s = strip_suffix(strip_suffix(input.string(), ".main.padp"), ".cross.padp");
            bases.emplace_back(s);
        }
    }
    std::sort(bases.begin(), bases.end());
    bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
    return bases;
}

std::vector<fs::path> scan_mpc_files(std::span<const fs::path> inputs)
{
    std::vector<fs::path> files;
    for (const fs::path &input : inputs)
    {
        if (fs::is_directory(input))
        {
            for (const auto &entry : fs::directory_iterator(input))
                if (entry.path().filename().string().ends_with(".mpc.csv"))
                    files.push_back(entry.path());
        }
        else
        {
            files.push_back(input);
        }
    }
    std::sort(files.begin(), files.end());
    files.erase(std::unique(files.begin(), files.end()), files.end());
    return files;
}

int cmd_gen(const GenOptions &options)
{
    try
    {
        GeneratedCampaign campaign = generate_campaign(options.config);
        fs::create_directories(options.out_dir);
        for (const GeneratedLink &link : campaign.links)
        {
            write_padp(link.padp, options.out_dir / link.link_id);
            Link ideal{link.link_id, link.padp.meta(),
                       ideal_mpcs(link, options.config.p_th_db)};
            write_mpcs(options.out_dir / "truth_mpc" / (link.link_id + ".mpc.csv"), ideal);
        }
        write_truth(options.out_dir / "truth.txt", campaign);
        return 0;
    }
    catch (const std::exception &e)
    {
        return fail(std::string("gen: ") + e.what());
    }
}

namespace
{

void write_link_plots(const fs::path &plots_dir, const Link &link, const Padp &padp)
{
    std::vector<double> profile = delay_profile(padp);
    std::ostringstream prof;
    prof << "tau_ns,p_db\n";
    for (std::size_t i = 0; i < profile.size(); ++i)
        prof << format_compact(padp.delays_s()[i] * 1e9) << "," << format_db(profile[i]) << "\n";
    atomic_write_file(plots_dir / (link.link_id + "_delay_profile.csv"), prof.str());

    std::ostringstream marks;
    marks << "tau_ns,phi_deg,p_db,type\n";
    for (const Mpc &m : link.mpcs)
    {
        double amp = m.p_main_db ? *m.p_main_db : *m.p_cross_db;
        if (m.p_main_db && m.p_cross_db)
            amp = std::max(*m.p_main_db, *m.p_cross_db);
        marks << format_compact(m.tau_s * 1e9) << "," << format_compact(m.phi_deg) << ","
              << format_db(amp) << "," << int(m.type) << "\n";
    }
    atomic_write_file(plots_dir / (link.link_id + "_markers.csv"), marks.str());
}

// Scatter of measured XPRs and censoring bounds against excess loss, plus
// the model mean with mu +/- 2 sigma band sampled over the observed range
void write_xpr_plots(const fs::path &plots_dir, std::span<const Link> links,
                     const XprModel &model, Type3Mode type3_mode)
{
    std::ostringstream scatter;
    scatter << "l_ex_db,xpr_db,kind\n";
    double l_lo = 0.0, l_hi = 0.0;
    bool have_range = false;
    for (const Link &link : links)
    {
        std::vector<CensoredObservation> obs =
            observations_from_mpcs(link.mpcs, link.meta, type3_mode);
        for (const CensoredObservation &o : obs)
        {
            if (!o.has_l_ex())
                continue;
            const char *kind = o.kind == Censoring::exact
                                   ? "exact"
                                   : (o.kind == Censoring::right_censored ? "lower_bound"
                                                                          : "upper_bound");
            scatter << format_db(o.l_ex_db) << "," << format_db(o.value_db) << "," << kind << "\n";
            if (!have_range)
            {
                l_lo = l_hi = o.l_ex_db;
                have_range = true;
            }
            l_lo = std::min(l_lo, o.l_ex_db);
            l_hi = std::max(l_hi, o.l_ex_db);
        }
    }
    atomic_write_file(plots_dir / "xpr_scatter.csv", scatter.str());

    if (!have_range)
    {
        l_lo = 0.0;
        l_hi = 60.0;
    }
    double sigma = model_sigma_db(model);
    std::ostringstream band;
    band << "l_ex_db,mean_xpr_db,lo_db,hi_db\n";
    const int n_pts = 121;
    for (int i = 0; i < n_pts; ++i)
    {
        double l = l_lo + (l_hi - l_lo) * double(i) / double(n_pts - 1);
        double mu = mean_xpr_db(model, l);
        band << format_db(l) << "," << format_db(mu) << "," << format_db(mu - 2.0 * sigma) << ","
             << format_db(mu + 2.0 * sigma) << "\n";
    }
    atomic_write_file(plots_dir / "xpr_model_band.csv", band.str());
}

} // namespace

int cmd_detect(const DetectOptions &options)
{
    try
    {
        std::vector<fs::path> bases = scan_padp_bases(options.inputs);
        if (bases.empty())
            return fail("detect: no PADP inputs found");

        XprModel band_model =
            options.model_file ? read_model_file(*options.model_file) : default_model2();

        fs::create_directories(options.out_dir);
        fs::path plots_dir = options.out_dir / "plots";
        std::vector<Link> links;
        for (const fs::path &base : bases)
        {
            Padp padp = read_padp(base);
            Link link;
            link.link_id = base.filename().string();
            link.meta = padp.meta();
            link.mpcs = detect_mpcs(padp, options.detection);
            write_mpcs(options.out_dir / (link.link_id + ".mpc.csv"), link);
            write_link_plots(plots_dir, link, padp);
            links.push_back(std::move(link));
        }
        write_xpr_plots(plots_dir, links, band_model, Type3Mode::bound);
        return 0;
    }
    catch (const std::exception &e)
    {
        return fail(std::string("detect: ") + e.what());
    }
}

namespace
{

// Links grouped by campaign label, in deterministic file order
std::map<std::string, std::vector<Link>> load_campaigns(std::span<const fs::path> files)
{
    std::map<std::string, std::vector<Link>> campaigns;
    for (const fs::path &file : files)
    {
        Link link = read_mpcs(file);
        if (link.mpcs.empty())
            throw std::runtime_error("'" + file.string() + "' contains no MPC records");
        campaigns[link.meta.campaign_id].push_back(std::move(link));
    }
    return campaigns;
}

std::string model_file_name(const std::string &campaign_id, int model)
{
    return campaign_id + ".model" + std::to_string(model) + ".txt";
}

} // namespace

int cmd_fit(const FitOptions_Cmd &options)
{
    try
    {
        std::vector<fs::path> files = scan_mpc_files(options.inputs);
        if (files.empty())
            return fail("fit: no MPC files found");
        std::map<std::string, std::vector<Link>> campaigns = load_campaigns(files);

        fs::create_directories(options.out_dir);
        std::vector<CampaignFitRow> rows;
        for (const auto &[campaign_id, links] : campaigns)
        {
            CampaignFitRow row = fit_campaign(links, options.which, options.type3_mode);
            if (row.model1)
                write_model_file(row.model1->model,
                                 options.out_dir / model_file_name(campaign_id, 1));
            if (row.model2)
                write_model_file(row.model2->model,
                                 options.out_dir / model_file_name(campaign_id, 2));
            rows.push_back(std::move(row));
        }
        write_fit_table(options.out_dir / "fits.csv", rows);
        write_fit_details(options.out_dir / "fits_detail.txt", rows, options.type3_mode);
        return 0;
    }
    catch (const std::exception &e)
    {
        return fail(std::string("fit: ") + e.what());
    }
}

int cmd_validate(const ValidateOptions &options)
{
    try
    {
        std::vector<fs::path> files = scan_mpc_files(options.inputs);
        if (files.empty())
            return fail("validate: no MPC files found");
        std::map<std::string, std::vector<Link>> campaigns = load_campaigns(files);

        fs::create_directories(options.out_dir);
        Rng rng(options.seed);
        std::vector<ValidationRow> rows;
        std::uint64_t stream = 0;
        for (const auto &[campaign_id, links] : campaigns)
        {
            std::vector<std::pair<int, XprModel>> to_validate;
            if (options.model_file)
            {
                XprModel model = read_model_file(*options.model_file);
                to_validate.emplace_back(std::holds_alternative<Model1>(model) ? 1 : 2, model);
            }
            else
            {
                CampaignFitRow fits = fit_campaign(links, options.which, options.type3_mode);
                if (fits.model1)
                    to_validate.emplace_back(1, fits.model1->model);
                if (fits.model2)
                    to_validate.emplace_back(2, fits.model2->model);
            }
            for (const auto &[which, model] : to_validate)
            {
                Rng metric_rng = rng.fork(stream++);
                ValidationRow row;
                row.campaign_id = campaign_id;
                row.model = which;
                row.metric = error_metric(links, model, options.n_realizations, metric_rng);
                rows.push_back(std::move(row));
            }
        }
        write_validation_report(options.out_dir / "validation.csv", rows);
        return 0;
    }
    catch (const std::exception &e)
    {
        return fail(std::string("validate: ") + e.what());
    }
}

int cmd_sample(const SampleOptions &options)
{
    try
    {
        XprModel model =
            options.model_file ? read_model_file(*options.model_file) : default_model2();
        Rng rng(options.seed);
        std::vector<PolarizationMatrix> matrices;
        matrices.reserve(options.n);
        for (std::size_t i = 0; i < options.n; ++i)
            matrices.push_back(sample_matrix(model, options.l_ex_db, rng));
        fs::create_directories(options.out_dir);
        write_matrix_batch(options.out_dir / "matrices.csv", matrices);
        return 0;
    }
    catch (const std::exception &e)
    {
        return fail(std::string("sample: ") + e.what());
    }
}

} // namespace xpr::cli
