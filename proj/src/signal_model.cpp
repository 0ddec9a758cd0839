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

#include "jamcov/signal_model.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include "jamcov/rng.hpp"

namespace jamcov
{

TransmitSide make_transmit_side(const ChannelSet &channels, const ScenarioConfig &config,
                                std::uint64_t seed)
{
    TransmitSide tx;
    tx.cm_power = config.beta * config.P_A;
    tx.an_power = (1.0 - config.beta) * config.P_A;

    // Confidential beamformer: dominant right singular vector of H_A1.
    Eigen::JacobiSVD<MatC> svd(channels.H_A1, Eigen::ComputeThinV);
    tx.v = svd.matrixV().col(0);
    tx.v /= tx.v.norm();

    // AN projection: orthogonal projector onto the null space of the stacked
    // [H_AI^H; H_AB^H], so the noise vanishes at both the IRS and Bob.
    MatC stack(channels.H_AI_h.rows() + channels.H_AB_h.rows(), config.N_A);
    stack << channels.H_AI_h, channels.H_AB_h;
    Eigen::JacobiSVD<MatC> nsvd(stack, Eigen::ComputeFullV);
    const auto &sv = nsvd.singularValues();
    const double thresh = sv.size() > 0 ? 1e-10 * sv[0] : 0.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] > thresh)
            ++rank;
    const int null_dim = config.N_A - rank;
    if (null_dim < 1)
        throw std::runtime_error("AN infeasible: stacked channel has no null space");
    const MatC Vnull = nsvd.matrixV().rightCols(null_dim);
    // tr(P P^H) = tr(P) = null_dim for a projector, so scale by 1/sqrt(dim).
    tx.T_A_AN = (Vnull * Vnull.adjoint()) / std::sqrt(static_cast<double>(null_dim));

    // Jamming projection: seeded random orthonormal columns, trace one.
    Rng rng(mix_seed(seed, 0x7A4Du));
    const MatC Gm = rng.cgauss_matrix(config.N_M, config.N_J);
    Eigen::HouseholderQR<MatC> qr(Gm);
    const MatC Q = MatC(qr.householderQ()).leftCols(config.N_J);
    tx.T_M_AN = Q / std::sqrt(static_cast<double>(config.N_J));
    return tx;
}

JcmTruth ideal_jcm(const ChannelSet &channels, const TransmitSide &tx, double P_M,
                   double sigma_B2)
{
    JcmTruth truth;
    truth.F = std::sqrt(P_M) * channels.H_M1 * tx.T_M_AN;
    truth.R_i = truth.F * truth.F.adjoint();
    truth.sigma_B2 = sigma_B2;
    return truth;
}

Calibration calibrate(const ChannelSet &channels, const TransmitSide &tx,
                      const ScenarioConfig &config)
{
    const double snr = std::pow(10.0, config.snr_db / 10.0);
    const double jnr = std::pow(10.0, config.jnr_db / 10.0);
    const double sig = config.beta * config.P_A * (channels.H_A1 * tx.v).squaredNorm();
    if (sig <= 0.0)
        throw std::runtime_error("calibration infeasible: zero equivalent channel");
    Calibration cal;
    cal.sigma_B2 = sig / (config.N_B * snr);

    const JcmTruth ref = ideal_jcm(channels, tx, config.P_M, 0.0);
    const double tr0 = ref.R_i.trace().real();
    if (tr0 <= 0.0)
        throw std::runtime_error("calibration infeasible: zero jamming channel");
    cal.P_M_scaled = config.P_M * jnr * config.N_B * cal.sigma_B2 / tr0;
    return cal;
}

ObservationBatch sample_observations(const JcmTruth &truth, int K, std::uint64_t seed)
{
    if (K < 1)
        throw std::invalid_argument("K must be at least 1");
    const Eigen::Index n_b = truth.F.rows();
    const Eigen::Index n_j = truth.F.cols();
    const double sigma = std::sqrt(truth.sigma_B2);

    ObservationBatch batch;
    batch.K = K;
    batch.sigma_B2_true = truth.sigma_B2;
    batch.samples.resize(n_b, K);
    Rng rng(mix_seed(seed, 0x0B5Eu));
    for (int k = 0; k < K; ++k)
    {
        const VecC z = rng.cgauss_vector(n_j);
        const VecC n = sigma * rng.cgauss_vector(n_b);
        batch.samples.col(k) = truth.F * z + n;
    }
    return batch;
}

} // namespace jamcov
