// SPDX-License-Identifier: Apache-2.0
//
// jamcov: receive jamming covariance matrix estimation for IRS-aided
// directional modulation links
// Copyright (C) 2026 jamcov contributors
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

#include "jamcov/harness.hpp"

#include <atomic>
#include <chrono>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "jamcov/rng.hpp"

namespace jamcov
{

namespace
{

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double now_seconds()
{
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::string fmt9(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

} // namespace

std::string_view sweep_name(Sweep s)
{
    switch (s)
    {
    case Sweep::jnr:
        return "jnr";
    case Sweep::n_b:
        return "n_b";
    case Sweep::snr:
        return "snr";
    case Sweep::convergence:
        return "convergence";
    case Sweep::crlb:
        return "crlb";
    }
    return "?";
}

Sweep sweep_from_string(const std::string &s)
{
    if (s == "jnr")
        return Sweep::jnr;
    if (s == "n_b" || s == "nb")
        return Sweep::n_b;
    if (s == "snr")
        return Sweep::snr;
    if (s == "convergence")
        return Sweep::convergence;
    if (s == "crlb")
        return Sweep::crlb;
    throw std::invalid_argument("unknown sweep: " + s);
}

Method method_from_string(const std::string &s)
{
    if (s == "SCM" || s == "scm")
        return Method::SCM;
    if (s == "EVD" || s == "evd")
        return Method::EVD;
    if (s == "PEM_GD" || s == "pem_gd" || s == "PEM-GD")
        return Method::PEM_GD;
    if (s == "PEM_AO" || s == "pem_ao" || s == "PEM-AO")
        return Method::PEM_AO;
    throw std::invalid_argument("unknown method: " + s);
}

std::vector<double> ExperimentPlan::effective_values() const
{
    if (!sweep_values.empty())
        return sweep_values;
    switch (sweep)
    {
    case Sweep::jnr:
    case Sweep::crlb:
        return {-5.0, -2.5, 0.0, 2.5, 5.0, 7.5, 10.0, 12.5, 15.0};
    case Sweep::n_b:
        return {4, 6, 8, 10, 12};
    case Sweep::snr:
        return {-5.0, -2.5, 0.0, 2.5, 5.0, 7.5, 10.0, 12.5, 15.0};
    case Sweep::convergence:
        return {static_cast<double>(scenario.jnr_db)};
    }
    return {};
}

void ExperimentPlan::validate() const
{
    scenario.validate();
    if (trials < 1)
        throw std::invalid_argument("trials must be at least 1");
    const auto vals = effective_values();
    if (vals.empty())
        throw std::invalid_argument("sweep_values must be nonempty");
    for (std::size_t i = 1; i < vals.size(); ++i)
        if (vals[i] <= vals[i - 1])
            throw std::invalid_argument("sweep_values must be strictly increasing");
    if (parallel < 0)
        throw std::invalid_argument("parallel must be nonnegative");
}

std::uint64_t trial_seed(std::uint64_t base, double sweep_value, int trial)
{
    std::uint64_t bits = 0;
    std::memcpy(&bits, &sweep_value, sizeof bits);
    std::uint64_t h = splitmix64(base ^ splitmix64(bits));
    return splitmix64(h ^ static_cast<std::uint64_t>(trial));
}

namespace
{

// Everything shared by the estimators within one Monte-Carlo trial.
struct TrialContext
{
    ChannelSet channels;
    TransmitSide tx;
    Calibration cal;
    JcmTruth truth;
    ObservationBatch batch;
    MatC R_scm;
    double sigma_used = 0.0; // noise variance subtracted to form S
    MatC S;
    JcmEstimate evd; // shared between the EVD method and the S construction
};

ScenarioConfig swept_config(const ExperimentPlan &plan, double value)
{
    ScenarioConfig cfg = plan.scenario;
    switch (plan.sweep)
    {
    case Sweep::jnr:
    case Sweep::crlb:
        cfg.jnr_db = value;
        break;
    case Sweep::snr:
        cfg.snr_db = value;
        break;
    case Sweep::n_b:
        cfg.N_B = static_cast<int>(value);
        break;
    case Sweep::convergence:
        break;
    }
    return cfg;
}

TrialContext make_trial(const ExperimentPlan &plan, double value, int trial)
{
    const std::uint64_t ts = trial_seed(plan.scenario.seed, value, trial);
    const ScenarioConfig cfg = swept_config(plan, value);

    TrialContext ctx;
    ctx.channels = build_channels(cfg, mix_seed(ts, 1));
    ctx.tx = make_transmit_side(ctx.channels, cfg, mix_seed(ts, 2));

    if (plan.sweep == Sweep::n_b && cfg.N_B != plan.scenario.N_B)
    {
        // The physical powers are fixed by the reference array size; a larger
        // Bob array then sees the same jamming spread over more antennas.
        ChannelSet ref_ch = build_channels(plan.scenario, mix_seed(ts, 1));
        TransmitSide ref_tx = make_transmit_side(ref_ch, plan.scenario, mix_seed(ts, 2));
        ctx.cal = calibrate(ref_ch, ref_tx, plan.scenario);
    }
    else
    {
        ctx.cal = calibrate(ctx.channels, ctx.tx, cfg);
    }

    ctx.truth = ideal_jcm(ctx.channels, ctx.tx, ctx.cal.P_M_scaled, ctx.cal.sigma_B2);
    ctx.batch = sample_observations(ctx.truth, cfg.K, mix_seed(ts, 3));
    ctx.R_scm = scm(ctx.batch).R_hat;
    ctx.evd = evd_estimate(ctx.R_scm, 2);
    ctx.sigma_used = cfg.noise_source == NoiseSource::evd_estimate ? *ctx.evd.sigma_hat2
                                                                   : ctx.cal.sigma_B2;
    ctx.S = ctx.R_scm - ctx.sigma_used * MatC::Identity(cfg.N_B, cfg.N_B);
    return ctx;
}

JcmEstimate run_method(const TrialContext &ctx, const ExperimentPlan &plan, Method method,
                       std::uint64_t ts)
{
    switch (method)
    {
    case Method::SCM:
    {
        // Recomputed here (not reused from the context) so the reported
        // runtime reflects the estimator itself.
        JcmEstimate est = scm(ctx.batch);
        const Eigen::Index n = est.R_hat.rows();
        est.R_hat -= ctx.sigma_used * MatC::Identity(n, n);
        return est;
    }
    case Method::EVD:
        return evd_estimate(ctx.R_scm, 2);
    case Method::PEM_GD:
    {
        PemOptions o = plan.pem;
        o.seed = mix_seed(ts, 4);
        if (o.surrogate_dim == 0)
            o.surrogate_dim = ctx.channels.config.surrogate_dim;
        return pem_gd(ctx.S, ctx.channels, o);
    }
    case Method::PEM_AO:
    {
        PemOptions o = plan.pem;
        o.seed = mix_seed(ts, 5);
        return pem_ao(ctx.S, ctx.channels, o);
    }
    }
    throw std::logic_error("unreachable method");
}

TrialRecord evaluate_method(const TrialContext &ctx, const ExperimentPlan &plan, Method method,
                            double value, int trial)
{
    const std::uint64_t ts = trial_seed(plan.scenario.seed, value, trial);
    const ScenarioConfig &cfg = ctx.channels.config;

    TrialRecord rec;
    rec.sweep_name = std::string(sweep_name(plan.sweep));
    rec.sweep_value = value;
    rec.trial = trial;
    rec.method = std::string(method_name(method));
    rec.nmse = kNaN;
    rec.sr_bits = kNaN;

    const double t0 = now_seconds();
    try
    {
        const JcmEstimate est = run_method(ctx, plan, method, ts);
        rec.iterations = est.iterations;
        rec.sigma_hat2 = est.sigma_hat2;
        if (method == Method::EVD && ctx.evd.sigma_hat2)
            rec.sigma_hat2 = ctx.evd.sigma_hat2;
        rec.converged = est.converged;
        rec.nmse = nmse(est.R_hat, ctx.truth.R_i);
        const RbfSolution rbf =
            nsp_max_wfrp(est.R_hat, ctx.channels.H_A1, ctx.tx.v, cfg.rank_tol, cfg.nullspace_mode);
        rec.sr_bits = secrecy_rate(ctx.channels, ctx.tx, rbf.v_BR, ctx.truth, cfg.eav_model);
    }
    catch (const std::exception &)
    {
        rec.converged = false;
    }
    if (plan.measure_runtime)
        rec.runtime_s = now_seconds() - t0;
    return rec;
}

TrialRecord crlb_record(const TrialContext &ctx, const ExperimentPlan &plan, double value,
                        int trial)
{
    TrialRecord rec;
    rec.sweep_name = std::string(sweep_name(plan.sweep));
    rec.sweep_value = value;
    rec.trial = trial;
    rec.method = "CRLB";
    rec.sr_bits = kNaN;
    const double t0 = now_seconds();
    try
    {
        rec.nmse = crlb_sum(ctx.truth, ctx.channels.config.K).value;
    }
    catch (const std::exception &)
    {
        rec.nmse = kNaN;
        rec.converged = false;
    }
    if (plan.measure_runtime)
        rec.runtime_s = now_seconds() - t0;
    return rec;
}

} // namespace

std::vector<TrialRecord> run_plan(const ExperimentPlan &plan)
{
    plan.validate();
    if (plan.sweep == Sweep::convergence)
        throw std::invalid_argument("use convergence_trace for the convergence sweep");

    const std::vector<double> values = plan.effective_values();
    const bool crlb_only = plan.sweep == Sweep::crlb;
    const bool with_crlb = crlb_only || plan.include_crlb;
    const std::vector<Method> methods = crlb_only ? std::vector<Method>{} : plan.methods;

    const int rows_per_trial = static_cast<int>(methods.size()) + (with_crlb ? 1 : 0);
    const int n_work = static_cast<int>(values.size()) * plan.trials;
    std::vector<TrialRecord> records(static_cast<std::size_t>(n_work) * rows_per_trial);

    auto work = [&](int w)
    {
        const int vi = w / plan.trials;
        const int trial = w % plan.trials;
        const double value = values[static_cast<std::size_t>(vi)];
        std::size_t base = static_cast<std::size_t>(w) * rows_per_trial;
        try
        {
            const TrialContext ctx = make_trial(plan, value, trial);
            std::size_t k = base;
            for (Method m : methods)
                records[k++] = evaluate_method(ctx, plan, m, value, trial);
            if (with_crlb)
                records[k++] = crlb_record(ctx, plan, value, trial);
        }
        catch (const std::exception &)
        {
            // Scenario-level failure: mark every row of the trial.
            std::size_t k = base;
            for (Method m : methods)
            {
                TrialRecord rec;
                rec.sweep_name = std::string(sweep_name(plan.sweep));
                rec.sweep_value = value;
                rec.trial = trial;
                rec.method = std::string(method_name(m));
                rec.nmse = kNaN;
                rec.sr_bits = kNaN;
                rec.converged = false;
                records[k++] = rec;
            }
            if (with_crlb)
            {
                TrialRecord rec;
                rec.sweep_name = std::string(sweep_name(plan.sweep));
                rec.sweep_value = value;
                rec.trial = trial;
                rec.method = "CRLB";
                rec.nmse = kNaN;
                rec.sr_bits = kNaN;
                rec.converged = false;
                records[k++] = rec;
            }
        }
    };

    const int workers = std::max(1, plan.parallel);
    if (workers <= 1)
    {
        for (int w = 0; w < n_work; ++w)
            work(w);
    }
    else
    {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t)
            pool.emplace_back(
                [&]
                {
                    for (int w = next.fetch_add(1); w < n_work; w = next.fetch_add(1))
                        work(w);
                });
        for (auto &th : pool)
            th.join();
    }
    return records; // already canonical: sorted by (sweep_value, trial, method order)
}

// ---------------------------------------------------------------------------
// Emission.
// ---------------------------------------------------------------------------

namespace
{

struct AggregateKey
{
    double sweep_value;
    std::string method;
    bool operator<(const AggregateKey &o) const
    {
        if (sweep_value != o.sweep_value)
            return sweep_value < o.sweep_value;
        return method < o.method;
    }
};

struct AggregateAcc
{
    std::string sweep_name;
    int total = 0;
    int failures = 0;
    std::vector<double> nmse;
    std::vector<double> sr;
};

double vec_mean(const std::vector<double> &v)
{
    if (v.empty())
        return kNaN;
    double s = 0;
    for (double x : v)
        s += x;
    return s / static_cast<double>(v.size());
}

double vec_stderr(const std::vector<double> &v)
{
    if (v.size() < 2)
        return kNaN;
    const double m = vec_mean(v);
    double s = 0;
    for (double x : v)
        s += (x - m) * (x - m);
    return std::sqrt(s / (static_cast<double>(v.size()) - 1.0) /
                     static_cast<double>(v.size()));
}

std::map<AggregateKey, AggregateAcc> aggregate(const std::vector<TrialRecord> &records)
{
    std::map<AggregateKey, AggregateAcc> agg;
    for (const auto &r : records)
    {
        auto &a = agg[{r.sweep_value, r.method}];
        a.sweep_name = r.sweep_name;
        ++a.total;
        if (!r.converged || std::isnan(r.nmse))
        {
            ++a.failures;
            continue;
        }
        a.nmse.push_back(r.nmse);
        if (!std::isnan(r.sr_bits))
            a.sr.push_back(r.sr_bits);
    }
    return agg;
}

void write_file(const std::string &path, const std::string &content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    out << content;
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

} // namespace

std::string aggregate_path(const std::string &path)
{
    const auto dot = path.find_last_of('.');
    const auto slash = path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + ".agg";
    return path.substr(0, dot) + ".agg" + path.substr(dot);
}

void emit_results(const std::vector<TrialRecord> &records, OutputFormat format,
                  const std::string &path)
{
    if (records.empty())
        throw std::invalid_argument("no records to emit");

    const auto agg = aggregate(records);

    if (format == OutputFormat::csv)
    {
        std::ostringstream os;
        os << "sweep_name,sweep_value,trial,method,nmse,sr_bits,sigma_hat2,iterations,"
              "runtime_s,converged\n";
        for (const auto &r : records)
        {
            os << r.sweep_name << ',' << fmt9(r.sweep_value) << ',' << r.trial << ',' << r.method
               << ',' << fmt9(r.nmse) << ',' << fmt9(r.sr_bits) << ','
               << (r.sigma_hat2 ? fmt9(*r.sigma_hat2) : "nan") << ',' << r.iterations << ','
               << fmt9(r.runtime_s) << ',' << (r.converged ? "true" : "false") << '\n';
        }
        write_file(path, os.str());

        std::ostringstream as;
        as << "sweep_name,sweep_value,method,trials,failures,failure_rate,nmse_mean,nmse_se,"
              "sr_mean,sr_se\n";
        for (const auto &[key, a] : agg)
        {
            as << a.sweep_name << ',' << fmt9(key.sweep_value) << ',' << key.method << ','
               << a.total << ',' << a.failures << ','
               << fmt9(static_cast<double>(a.failures) / std::max(1, a.total)) << ','
               << fmt9(vec_mean(a.nmse)) << ',' << fmt9(vec_stderr(a.nmse)) << ','
               << fmt9(vec_mean(a.sr)) << ',' << fmt9(vec_stderr(a.sr)) << '\n';
        }
        write_file(aggregate_path(path), as.str());
        return;
    }

    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto &r : records)
    {
        nlohmann::ordered_json j;
        j["sweep_name"] = r.sweep_name;
        j["sweep_value"] = r.sweep_value;
        j["trial"] = r.trial;
        j["method"] = r.method;
        j["nmse"] = std::isnan(r.nmse) ? nlohmann::ordered_json() : nlohmann::ordered_json(r.nmse);
        j["sr_bits"] =
            std::isnan(r.sr_bits) ? nlohmann::ordered_json() : nlohmann::ordered_json(r.sr_bits);
        if (r.sigma_hat2)
            j["sigma_hat2"] = *r.sigma_hat2;
        else
            j["sigma_hat2"] = nullptr;
        j["iterations"] = r.iterations;
        j["runtime_s"] = r.runtime_s;
        j["converged"] = r.converged;
        rows.push_back(j);
    }
    write_file(path, rows.dump(2) + "\n");

    nlohmann::ordered_json arows = nlohmann::ordered_json::array();
    for (const auto &[key, a] : agg)
    {
        nlohmann::ordered_json j;
        j["sweep_name"] = a.sweep_name;
        j["sweep_value"] = key.sweep_value;
        j["method"] = key.method;
        j["trials"] = a.total;
        j["failures"] = a.failures;
        j["failure_rate"] = static_cast<double>(a.failures) / std::max(1, a.total);
        auto opt = [](double v)
        { return std::isnan(v) ? nlohmann::ordered_json() : nlohmann::ordered_json(v); };
        j["nmse_mean"] = opt(vec_mean(a.nmse));
        j["nmse_se"] = opt(vec_stderr(a.nmse));
        j["sr_mean"] = opt(vec_mean(a.sr));
        j["sr_se"] = opt(vec_stderr(a.sr));
        arows.push_back(j);
    }
    write_file(aggregate_path(path), arows.dump(2) + "\n");
}

ConvergenceTrace convergence_trace(const ExperimentPlan &plan)
{
    plan.scenario.validate();
    ExperimentPlan p = plan;
    p.sweep = Sweep::jnr;
    const double value = plan.scenario.jnr_db;
    const TrialContext ctx = make_trial(p, value, 0);
    const std::uint64_t ts = trial_seed(plan.scenario.seed, value, 0);

    PemOptions og = plan.pem;
    og.seed = mix_seed(ts, 4);
    PemOptions oa = plan.pem;
    oa.seed = mix_seed(ts, 5);

    ConvergenceTrace trace;
    trace.pem_gd = pem_gd(ctx.S, ctx.channels, og).objective_trace;
    trace.pem_ao = pem_ao(ctx.S, ctx.channels, oa).objective_trace;
    return trace;
}

void emit_trace(const ConvergenceTrace &trace, const std::string &path)
{
    std::ostringstream os;
    os << "iteration,pem_gd,pem_ao\n";
    const std::size_t n = std::max(trace.pem_gd.size(), trace.pem_ao.size());
    for (std::size_t i = 0; i < n; ++i)
    {
        os << i << ',';
        if (i < trace.pem_gd.size())
            os << fmt9(trace.pem_gd[i]);
        os << ',';
        if (i < trace.pem_ao.size())
            os << fmt9(trace.pem_ao[i]);
        os << '\n';
    }
    write_file(path, os.str());
}

std::vector<BenchmarkRow> benchmark(const ExperimentPlan &plan)
{
    ExperimentPlan p = plan;
    p.sweep = Sweep::n_b;
    if (p.sweep_values.empty())
        p.sweep_values = {4, 6, 8, 10, 12};
    p.measure_runtime = true;
    p.validate();

    std::vector<BenchmarkRow> rows;
    for (double nb : p.sweep_values)
    {
        std::map<std::string, std::vector<double>> times;
        for (int trial = 0; trial < p.trials; ++trial)
        {
            const TrialContext ctx = make_trial(p, nb, trial);
            for (Method m : p.methods)
            {
                const auto rec = evaluate_method(ctx, p, m, nb, trial);
                if (rec.converged || !std::isnan(rec.nmse))
                    times[rec.method].push_back(rec.runtime_s);
            }
        }
        for (Method m : p.methods)
        {
            auto &v = times[std::string(method_name(m))];
            BenchmarkRow row;
            row.n_b = nb;
            row.method = std::string(method_name(m));
            row.trials = static_cast<int>(v.size());
            if (!v.empty())
            {
                std::sort(v.begin(), v.end());
                row.median_runtime_s = v[v.size() / 2];
            }
            rows.push_back(row);
        }
    }
    return rows;
}

void emit_benchmark(const std::vector<BenchmarkRow> &rows, const std::string &path)
{
    std::ostringstream os;
    os << "n_b,method,median_runtime_s,trials\n";
    for (const auto &r : rows)
        os << fmt9(r.n_b) << ',' << r.method << ',' << fmt9(r.median_runtime_s) << ',' << r.trials
           << '\n';
    write_file(path, os.str());
}

// ---------------------------------------------------------------------------
// Config file.
// ---------------------------------------------------------------------------

namespace
{

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

Eigen::Vector2d parse_pos(const std::string &v, const std::string &key)
{
    const auto comma = v.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("config key " + key + " needs \"x,y\"");
    return {std::stod(trim(v.substr(0, comma))), std::stod(trim(v.substr(comma + 1)))};
}

std::vector<double> parse_list(const std::string &v)
{
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        item = trim(item);
        if (!item.empty())
            out.push_back(std::stod(item));
    }
    return out;
}

} // namespace

ScenarioConfig load_config_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path);

    ScenarioConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));

        if (key == "N_A")
            cfg.N_A = std::stoi(val);
        else if (key == "N_B")
            cfg.N_B = std::stoi(val);
        else if (key == "N_M")
            cfg.N_M = std::stoi(val);
        else if (key == "M")
            cfg.M = std::stoi(val);
        else if (key == "alice_pos")
            cfg.layout.alice = parse_pos(val, key);
        else if (key == "irs_pos")
            cfg.layout.irs = parse_pos(val, key);
        else if (key == "bob_pos")
            cfg.layout.bob = parse_pos(val, key);
        else if (key == "mallory_pos")
            cfg.layout.mallory = parse_pos(val, key);
        else if (key == "P_A")
            cfg.P_A = std::stod(val);
        else if (key == "P_M")
            cfg.P_M = std::stod(val);
        else if (key == "beta")
            cfg.beta = std::stod(val);
        else if (key == "N_J")
            cfg.N_J = std::stoi(val);
        else if (key == "K")
            cfg.K = std::stoi(val);
        else if (key == "jnr_db")
            cfg.jnr_db = std::stod(val);
        else if (key == "snr_db")
            cfg.snr_db = std::stod(val);
        else if (key == "seed")
            cfg.seed = std::stoull(val);
        else if (key == "path_exponent")
            cfg.path_exponent = std::stod(val);
        else if (key == "ref_distance")
            cfg.ref_distance = std::stod(val);
        else if (key == "wavelength")
            cfg.wavelength = std::stod(val);
        else if (key == "irs_mode")
        {
            if (val == "random")
                cfg.irs_mode = IrsMode::random;
            else if (val == "aligned")
                cfg.irs_mode = IrsMode::aligned;
            else if (val == "fixed")
                cfg.irs_mode = IrsMode::fixed;
            else
                throw std::invalid_argument("unknown irs_mode: " + val);
        }
        else if (key == "irs_fixed_phases")
            cfg.irs_fixed_phases = parse_list(val);
        else if (key == "surrogate_dim")
            cfg.surrogate_dim = std::stoi(val);
        else if (key == "noise_source")
        {
            if (val == "evd" || val == "evd_estimate")
                cfg.noise_source = NoiseSource::evd_estimate;
            else if (val == "truth" || val == "ground_truth")
                cfg.noise_source = NoiseSource::ground_truth;
            else
                throw std::invalid_argument("unknown noise_source: " + val);
        }
        else if (key == "eav_model")
        {
            if (val == "none")
                cfg.eav_model = EavModel::none;
            else if (val == "mrc")
                cfg.eav_model = EavModel::mrc;
            else
                throw std::invalid_argument("unknown eav_model: " + val);
        }
        else if (key == "rank_tol")
            cfg.rank_tol = std::stod(val);
        else if (key == "nullspace_mode")
        {
            if (val == "tolerance")
                cfg.nullspace_mode = NullspaceMode::tolerance;
            else if (val == "fixed_dim")
                cfg.nullspace_mode = NullspaceMode::fixed_dim;
            else
                throw std::invalid_argument("unknown nullspace_mode: " + val);
        }
        else
            throw std::invalid_argument("unknown config key: " + key);
    }
    cfg.validate();
    return cfg;
}

} // namespace jamcov
