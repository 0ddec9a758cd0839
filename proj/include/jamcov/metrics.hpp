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

#include "jamcov/signal_model.hpp"

namespace jamcov
{

struct RbfSolution
{
    VecC v_BR;                      // unit receive beamformer
    double residual_jam_power = 0;  // v^H R_used v against the nulled matrix
    double achieved_signal_power = 0; // |v^H H_A1 v_tx|^2 per unit symbol power
    int null_dim = 0;
};

// Null-space-projection receive beamformer: project the matched filter
// H_A1 v onto the numerical null space of the estimated JCM and normalize.
// The nulled matrix is the PSD-clamped estimate; eigendirections whose
// (clamped) eigenvalue is at most rank_tol * lambda_max count as null, or the
// N_B - 2 weakest directions in fixed_dim mode.
// Throws "jamming occupies full space" (no null direction) and
// "signal orthogonal to null space" (vanishing projection).
RbfSolution nsp_max_wfrp(const MatC &R_est, const MatC &H_A1, const VecC &v,
                         double rank_tol = 1e-6,
                         NullspaceMode mode = NullspaceMode::tolerance);

// |R_est - R_truth|_F^2 / |R_truth|_F^2. Throws on a zero truth.
double nmse(const MatC &R_est, const MatC &R_truth);

// Bob's rate log2(1 + SINR_B) minus the eavesdropper rate, clamped at zero.
// The artificial noise vanishes at Bob by the null-space construction. With
// EavModel::none the function reports Bob's rate alone (rate-only mode);
// with EavModel::mrc Mallory combines the Alice-to-Mallory equivalent channel
// by maximal-ratio combining, receives Alice's AN in full over the direct
// path and has no self-interference. sigma_M^2 = sigma_B^2.
double secrecy_rate(const ChannelSet &channels, const TransmitSide &tx, const VecC &v_BR,
                    const JcmTruth &truth, EavModel eav_model);

struct CrlbResult
{
    double value = 0.0;
    bool pseudo_inverse_used = false;
};

// Sum of per-parameter Cramer-Rao variance bounds for the unstructured
// Hermitian parameterization of R (N_B diagonal reals plus real and
// imaginary off-diagonal parts, N_B^2 real parameters in total), normalized
// by |R_i|_F^2. Fisher entries are K tr(C^-1 dC_k C^-1 dC_l) with
// C = R_i + sigma_B^2 I. The truncated variant sums only the first N_B
// diagonal entries of the inverse Fisher matrix.
CrlbResult crlb_sum(const JcmTruth &truth, int K, bool truncated = false);

} // namespace jamcov
