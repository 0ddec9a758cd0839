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

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "jamcov/types.hpp"

namespace jamcov
{

// Uniform linear array along the global x-axis.
struct ArraySpec
{
    int num_antennas = 1;
    double element_spacing = 0.5; // meters
    double wavelength = 1.0;      // meters

    // Default spacing is half a wavelength.
    static ArraySpec half_wavelength(int n, double lambda = 1.0)
    {
        return ArraySpec{n, 0.5 * lambda, lambda};
    }

    void validate() const
    {
        if (num_antennas < 1 || element_spacing <= 0.0 || wavelength <= 0.0)
            throw std::invalid_argument("invalid array spec");
    }
};

// 2-D node coordinates in meters.
struct NodeLayout
{
    Eigen::Vector2d alice{0.0, 0.0};
    Eigen::Vector2d irs{50.0, 50.0};
    Eigen::Vector2d bob{500.0, 0.0};
    Eigen::Vector2d mallory{400.0, -50.0};
};

enum class IrsMode
{
    random,  // i.i.d. uniform phases from the seed
    aligned, // co-phase the cascaded Alice-IRS-Bob path
    fixed,   // user-supplied phases
};

// Source of the noise variance subtracted from the SCM before fitting.
enum class NoiseSource
{
    evd_estimate,
    ground_truth,
};

enum class EavModel
{
    none, // rate-only: report Bob's rate
    mrc,  // maximal-ratio combining eavesdropper at Mallory
};

enum class NullspaceMode
{
    tolerance, // eigenvalues below rank_tol * lambda_max count as null
    fixed_dim, // always keep the N_B - 2 weakest eigendirections
};

// Full physical-layer scenario. Field names double as the keys of the
// key-value config file understood by the harness.
struct ScenarioConfig
{
    int N_A = 8;
    int N_B = 8;
    int N_M = 8;
    int M = 16;

    NodeLayout layout{};

    double P_A = 1.0;  // watts
    double P_M = 1.0;  // watts (pre-calibration)
    double beta = 0.9; // power allocation factor, confidential share
    int N_J = 4;       // jammer stream count, in [1, N_M - 1]
    int K = 5;         // silent-period sample count

    double jnr_db = 5.0;
    double snr_db = 10.0;

    std::uint64_t seed = 1;

    // Path loss (d0 / d)^alpha; cascaded IRS links multiply the hop gains.
    double path_exponent = 2.0;
    double ref_distance = 1.0;

    double wavelength = 1.0;

    IrsMode irs_mode = IrsMode::random;
    std::vector<double> irs_fixed_phases; // used when irs_mode == fixed

    int surrogate_dim = 0; // PEM-GD beta/nu dimension; 0 means N_B

    NoiseSource noise_source = NoiseSource::evd_estimate;
    EavModel eav_model = EavModel::mrc;

    double rank_tol = 1e-6;
    NullspaceMode nullspace_mode = NullspaceMode::tolerance;

    ArraySpec alice_array() const { return ArraySpec::half_wavelength(N_A, wavelength); }
    ArraySpec bob_array() const { return ArraySpec::half_wavelength(N_B, wavelength); }
    ArraySpec mallory_array() const { return ArraySpec::half_wavelength(N_M, wavelength); }
    ArraySpec irs_array() const { return ArraySpec::half_wavelength(M, wavelength); }

    void validate() const
    {
        if (N_A < 1 || N_B < 1 || N_M < 1 || M < 1)
            throw std::invalid_argument("antenna counts must be positive");
        if (beta < 0.0 || beta > 1.0)
            throw std::invalid_argument("beta must lie in [0, 1]");
        if (N_J < 1 || N_J > N_M - 1)
            throw std::invalid_argument("N_J must lie in [1, N_M - 1]");
        if (K < 1)
            throw std::invalid_argument("K must be at least 1");
        if (P_A < 0.0 || P_M < 0.0)
            throw std::invalid_argument("powers must be nonnegative");
        if (path_exponent < 0.0 || ref_distance <= 0.0)
            throw std::invalid_argument("invalid path loss parameters");
        if (irs_mode == IrsMode::fixed && static_cast<int>(irs_fixed_phases.size()) != M)
            throw std::invalid_argument("fixed IRS mode needs M phases");
    }
};

} // namespace jamcov
