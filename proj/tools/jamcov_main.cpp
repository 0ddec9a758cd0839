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

#include <iostream>

#include <CLI11.hpp>

#include "jamcov/harness.hpp"

int main(int argc, char **argv)
{
    CLI::App app{"jamcov: Monte-Carlo harness for jamming covariance estimation"};

    std::string config_path;
    std::string sweep = "jnr";
    std::string values;
    int trials = 100;
    std::string methods = "SCM,EVD,PEM_GD,PEM_AO";
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string out = "results.csv";
    std::string format = "csv";
    int parallel = 1;
    bool run_benchmark = false;
    bool include_crlb = false;
    bool no_timing = false;

    app.add_option("--config", config_path, "scenario config file (key = value)");
    app.add_option("--sweep", sweep, "jnr | n_b | snr | convergence | crlb")
        ->check(CLI::IsMember({"jnr", "n_b", "snr", "convergence", "crlb"}));
    app.add_option("--values", values, "comma-separated sweep grid (default per sweep)");
    app.add_option("--trials", trials, "Monte-Carlo trials per sweep point");
    app.add_option("--methods", methods, "comma-separated subset of SCM,EVD,PEM_GD,PEM_AO");
    auto *seed_opt = app.add_option("--seed", seed, "base seed (overrides config)");
    app.add_option("--out", out, "output path");
    app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--parallel", parallel, "worker threads (1 = serial)");
    app.add_flag("--benchmark", run_benchmark, "emit per-method median runtimes over an N_B grid");
    app.add_flag("--crlb", include_crlb, "add CRLB benchmark rows to the sweep");
    app.add_flag("--no-timing", no_timing, "report runtime_s as 0 for byte-stable outputs");

    CLI11_PARSE(app, argc, argv);
    seed_set = seed_opt->count() > 0;

    try
    {
        jamcov::ExperimentPlan plan;
        if (!config_path.empty())
            plan.scenario = jamcov::load_config_file(config_path);
        if (seed_set)
            plan.scenario.seed = seed;
        plan.sweep = jamcov::sweep_from_string(sweep);
        plan.trials = trials;
        plan.parallel = parallel;
        plan.include_crlb = include_crlb;
        plan.measure_runtime = !no_timing;
        plan.output_path = out;
        plan.format = format == "json" ? jamcov::OutputFormat::json : jamcov::OutputFormat::csv;

        if (!values.empty())
        {
            plan.sweep_values.clear();
            std::stringstream ss(values);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty())
                    plan.sweep_values.push_back(std::stod(item));
        }
        {
            plan.methods.clear();
            std::stringstream ss(methods);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty())
                    plan.methods.push_back(jamcov::method_from_string(item));
        }

        if (run_benchmark)
        {
            const auto rows = jamcov::benchmark(plan);
            jamcov::emit_benchmark(rows, out);
            std::cout << "benchmark written to " << out << "\n";
        }
        else if (plan.sweep == jamcov::Sweep::convergence)
        {
            const auto trace = jamcov::convergence_trace(plan);
            jamcov::emit_trace(trace, out);
            std::cout << "trace written to " << out << " (" << trace.pem_gd.size() << " / "
                      << trace.pem_ao.size() << " iterations)\n";
        }
        else
        {
            plan.validate();
            const auto records = jamcov::run_plan(plan);
            jamcov::emit_results(records, plan.format, out);
            std::cout << records.size() << " records written to " << out << " (aggregate: "
                      << jamcov::aggregate_path(out) << ")\n";
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
