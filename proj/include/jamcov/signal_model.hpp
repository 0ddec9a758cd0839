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

#include "jamcov/scenario.hpp"

namespace jamcov
{

// Alice's confidential beamformer and artificial-noise projection, plus
// Mallory's jamming projection.
struct TransmitSide
{
    VecC v;      // N_A, unit norm
    MatC T_A_AN; // N_A x N_A, tr(T T^H) = 1, kills both AN-visible channels
    MatC T_M_AN; // N_M x N_J, tr(T T^H) = 1

    double cm_power = 0.0; // beta * P_A
    double an_power = 0.0; // (1 - beta) * P_A
};

// Ground-truth jamming covariance at Bob together with its factor.
struct JcmTruth
{
    MatC R_i;            // N_B x N_B Hermitian PSD, rank <= 2
    MatC F;              // N_B x N_J, R_i = F F^H
    double sigma_B2 = 0; // receive noise variance, watts
};

// K silent-period snapshots at Bob, one column per sample.
struct ObservationBatch
{
    MatC samples; // N_B x K
    int K = 0;
    double sigma_B2_true = 0.0;
};

struct Calibration
{
    double sigma_B2;   // noise variance hitting the SNR target
    double P_M_scaled; // jammer power hitting the JNR target
};

// v is the dominant right singular vector of H_A1; T_A_AN projects onto the
// null space of the stacked [H_AI^H; H_AB^H]; T_M_AN is a seeded random
// semi-unitary. Throws "AN infeasible" when the stack leaves no null space.
TransmitSide make_transmit_side(const ChannelSet &channels, const ScenarioConfig &config,
                                std::uint64_t seed);

// F = sqrt(P_M) H_M1 T_M_AN, R_i = F F^H.
JcmTruth ideal_jcm(const ChannelSet &channels, const TransmitSide &tx, double P_M,
                   double sigma_B2);

// Per-receive-antenna average power targets:
//   SNR = beta P_A |H_A1 v|^2 / (N_B sigma_B^2),  JNR = tr(R_i) / (N_B sigma_B^2).
Calibration calibrate(const ChannelSet &channels, const TransmitSide &tx,
                      const ScenarioConfig &config);

// K i.i.d. draws y = F z + n, z ~ CN(0, I), n ~ CN(0, sigma_B^2 I).
ObservationBatch sample_observations(const JcmTruth &truth, int K, std::uint64_t seed);

} // namespace jamcov
