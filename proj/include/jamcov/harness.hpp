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

#pragma once

#include <string>

#include "jamcov/estimators.hpp"
#include "jamcov/metrics.hpp"

namespace jamcov
{

enum class Sweep
{
    jnr,
    n_b,
    snr,
    convergence,
    crlb,
};

enum class OutputFormat
{
    csv,
    json,
};

std::string_view sweep_name(Sweep s);
Sweep sweep_from_string(const std::string &s);
Method method_from_string(const std::string &s);

struct ExperimentPlan
{
    ScenarioConfig scenario{};
    Sweep sweep = Sweep::jnr;
    std::vector<double> sweep_values; // empty selects the default grid
    int trials = 1;
    std::vector<Method> methods{Method::SCM, Method::EVD, Method::PEM_GD, Method::PEM_AO};
    std::string output_path;
    OutputFormat format = OutputFormat::csv;
    int parallel = 1;         // worker threads; results are order-canonical
    bool include_crlb = false; // add CRLB benchmark rows to jnr/n_b sweeps
    bool measure_runtime = true; // false pins runtime_s to 0 for byte-stable output
    PemOptions pem{};

    std::vector<double> effective_values() const; // sweep_values or default grid
    void validate() const;
};

// One row per (sweep value, trial, method).
struct TrialRecord
{
    std::string sweep_name;
    double sweep_value = 0.0;
    int trial = 0;
    std::string method;
    double nmse = 0.0;
    double sr_bits = 0.0;
    std::optional<double> sigma_hat2;
    int iterations = 0;
    double runtime_s = 0.0;
    bool converged = true;
};

// Per-trial seed: a stable 64-bit mix of the base seed, the sweep value bits
// and the trial index, so execution order and method selection never perturb
// the sample streams.
std::uint64_t trial_seed(std::uint64_t base, double sweep_value, int trial);

// Runs the full sweep. Estimator failures mark the record converged = false
// (metrics NaN) without aborting. For the n_b sweep the physical powers are
// calibrated once at the reference N_B of the scenario and then held fixed,
// so growing the array genuinely dilutes the per-antenna jamming ratio.
std::vector<TrialRecord> run_plan(const ExperimentPlan &plan);

// Writes the records plus an aggregate companion file (mean, standard error
// and failure rate per sweep value and method) next to the main output.
void emit_results(const std::vector<TrialRecord> &records, OutputFormat format,
                  const std::string &path);

std::string aggregate_path(const std::string &path);

struct ConvergenceTrace
{
    std::vector<double> pem_gd;
    std::vector<double> pem_ao;
};

// Per-iteration objective values of both parametric estimators on one seeded
// instance at the plan's defaults.
ConvergenceTrace convergence_trace(const ExperimentPlan &plan);

void emit_trace(const ConvergenceTrace &trace, const std::string &path);

struct BenchmarkRow
{
    double n_b = 0.0;
    std::string method;
    double median_runtime_s = 0.0;
    int trials = 0;
};

// Median wall-clock per estimator at each swept Bob array size.
std::vector<BenchmarkRow> benchmark(const ExperimentPlan &plan);

void emit_benchmark(const std::vector<BenchmarkRow> &rows, const std::string &path);

// key = value scenario file; keys mirror the ScenarioConfig field names.
ScenarioConfig load_config_file(const std::string &path);

} // namespace jamcov
