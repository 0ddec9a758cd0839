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
#include <map>

#include "jamcov/config.hpp"

namespace jamcov
{

// IRS phase configuration. The induced reflection matrix is
// diag(exp(j phi_1), ..., exp(j phi_M)), unitary by construction.
struct IrsPhases
{
    std::vector<double> phases; // each in [0, 2*pi)
    IrsMode mode = IrsMode::random;

    // Diagonal of the reflection matrix as a vector of unit phasors.
    VecC unit_diagonal() const;
};

enum class Link
{
    alice_irs,
    irs_bob,
    alice_bob,
    mallory_irs,
    mallory_bob,
};

// Departure angle at the source, arrival angle at the destination. With all
// arrays parallel to the x-axis and angles measured from the positive x-axis
// of the forward displacement, the two coincide per link.
struct LinkAngles
{
    double theta_t;
    double theta_r;
};

// All five physical channels plus the derived equivalent channels.
struct ChannelSet
{
    MatC H_IB_h; // N_B x M
    MatC H_AI_h; // M x N_A
    MatC H_AB_h; // N_B x N_A
    MatC H_MI_h; // M x N_M
    MatC H_MB_h; // N_B x N_M

    double g_AIB = 0.0;
    double g_AB = 0.0;
    double g_MIB = 0.0;
    double g_MB = 0.0;

    IrsPhases theta;

    MatC H_A1; // N_B x N_A
    MatC H_M1; // N_B x N_M

    // Arrival steering vector at Bob for the IRS-to-Bob link; the anchor of
    // the reduced parametric estimator.
    VecC h_ib_r;

    // Configuration the set was built from (consumed by the eavesdropper
    // model, which needs the Alice-to-Mallory geometry).
    ScenarioConfig config;

    // Equivalent channel of the jamming link seen at Bob.
    MatC equivalent_mallory_channel() const { return H_M1; }
};

// Normalized ULA steering vector; entry n carries the phase
// -(n - (N+1)/2) * d cos(theta) / lambda turns.
VecC steering_vector(double theta, const ArraySpec &array);

// Unit-Frobenius rank-1 channel h(theta_r) h(theta_t)^H.
MatC rank1_channel(double theta_r, double theta_t, const ArraySpec &rx_array,
                   const ArraySpec &tx_array);

// Angle of the segment from -> to against the x-axis, mapped into [0, pi].
// Throws "degenerate geometry" on coincident nodes.
double link_angle(const Eigen::Vector2d &from, const Eigen::Vector2d &to);

std::map<Link, LinkAngles> angles_from_layout(const NodeLayout &layout);

// Power-law path gain (d0 / d)^alpha.
double path_gain(double distance, double exponent, double ref_distance);

double node_distance(const Eigen::Vector2d &a, const Eigen::Vector2d &b);

// Builds every channel matrix, the path gains, the IRS phases for the
// configured mode and the equivalent channels. Pure function of
// (config, seed).
ChannelSet build_channels(const ScenarioConfig &config, std::uint64_t seed);

} // namespace jamcov
