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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "jamcov/rng.hpp"
#include "jamcov/signal_model.hpp"

using namespace jamcov;

namespace
{
std::pair<ChannelSet, TransmitSide> default_setup(std::uint64_t seed = 3)
{
    ScenarioConfig cfg;
    auto ch = build_channels(cfg, seed);
    auto tx = make_transmit_side(ch, cfg, seed);
    return {std::move(ch), std::move(tx)};
}
} // namespace

TEST_CASE("transmit side: normalizations and null-space property")
{
    ScenarioConfig cfg;
    const auto [ch, tx] = default_setup();

    CHECK(std::abs(tx.v.norm() - 1.0) < 1e-12);
    CHECK(std::abs((tx.T_A_AN * tx.T_A_AN.adjoint()).trace().real() - 1.0) < 1e-10);
    CHECK(std::abs((tx.T_M_AN * tx.T_M_AN.adjoint()).trace().real() - 1.0) < 1e-10);

    CHECK((ch.H_AI_h * tx.T_A_AN).norm() < 1e-10);
    CHECK((ch.H_AB_h * tx.T_A_AN).norm() < 1e-10);
    // The AN also dies at Bob through the full equivalent channel.
    CHECK((ch.H_A1 * tx.T_A_AN).norm() < 1e-10);

    // Orthonormal columns scaled by 1/sqrt(N_J).
    const MatC gram = tx.T_M_AN.adjoint() * tx.T_M_AN;
    CHECK((gram - MatC::Identity(cfg.N_J, cfg.N_J) / static_cast<double>(cfg.N_J)).norm() <
          1e-10);
}

TEST_CASE("transmit side: infeasible AN when the stack fills the space")
{
    ScenarioConfig cfg;
    cfg.N_A = 2; // stacked rank-1 + rank-1 channels fill C^2
    cfg.N_J = 2;
    const auto ch = build_channels(cfg, 1);
    CHECK_THROWS_WITH_AS(make_transmit_side(ch, cfg, 1), doctest::Contains("AN infeasible"),
                         std::runtime_error);
}

TEST_CASE("ideal JCM: power scaling and rank structure")
{
    const auto [ch, tx] = default_setup();

    CHECK(ideal_jcm(ch, tx, 0.0, 0.0).R_i.norm() == 0.0);

    const auto truth = ideal_jcm(ch, tx, 1.0, 0.0);
    CHECK((truth.R_i - truth.F * truth.F.adjoint()).norm() == 0.0);
    CHECK((truth.R_i - truth.R_i.adjoint()).norm() < 1e-10 * truth.R_i.norm());

    Eigen::SelfAdjointEigenSolver<MatC> eig(hermitian_part(truth.R_i));
    const auto &lam = eig.eigenvalues();
    const Eigen::Index n = lam.size();
    CHECK(lam[0] > -1e-10 * lam[n - 1]); // PSD
    CHECK(lam[n - 3] <= 1e-10 * lam[n - 1]); // rank <= 2
    CHECK(lam[n - 2] > 1e-12 * lam[n - 1]);  // both paths active: rank exactly 2

    // Killing the IRS path leaves a rank-1 matrix.
    ChannelSet direct = ch;
    direct.g_MIB = 0.0;
    const MatC Theta = direct.theta.unit_diagonal().asDiagonal();
    direct.H_M1 = std::sqrt(direct.g_MB) * direct.H_MB_h;
    const auto t1 = ideal_jcm(direct, tx, 1.0, 0.0);
    Eigen::SelfAdjointEigenSolver<MatC> e1(hermitian_part(t1.R_i));
    CHECK(e1.eigenvalues()[n - 2] <= 1e-12 * e1.eigenvalues()[n - 1]);
}

TEST_CASE("ideal JCM: invariant under unitary rotation of the jamming projection")
{
    ScenarioConfig cfg;
    const auto [ch, tx] = default_setup();
    const auto truth = ideal_jcm(ch, tx, 1.0, 0.0);

    Rng rng(11);
    const MatC A = rng.cgauss_matrix(cfg.N_J, cfg.N_J);
    Eigen::HouseholderQR<MatC> qr(A);
    const MatC U = MatC(qr.householderQ()).leftCols(cfg.N_J);

    TransmitSide rotated = tx;
    rotated.T_M_AN = tx.T_M_AN * U;
    const auto truth2 = ideal_jcm(ch, rotated, 1.0, 0.0);
    CHECK((truth.R_i - truth2.R_i).norm() < 1e-12 * truth.R_i.norm());
}

TEST_CASE("calibration hits both targets")
{
    ScenarioConfig cfg;
    cfg.jnr_db = 5.0;
    cfg.snr_db = 10.0;
    const auto ch = build_channels(cfg, 21);
    const auto tx = make_transmit_side(ch, cfg, 21);
    const auto cal = calibrate(ch, tx, cfg);

    const double snr =
        cfg.beta * cfg.P_A * (ch.H_A1 * tx.v).squaredNorm() / (cfg.N_B * cal.sigma_B2);
    CHECK(10.0 * std::log10(snr) == doctest::Approx(10.0).epsilon(1e-10));

    const auto truth = ideal_jcm(ch, tx, cal.P_M_scaled, cal.sigma_B2);
    const double jnr = truth.R_i.trace().real() / (cfg.N_B * cal.sigma_B2);
    CHECK(10.0 * std::log10(jnr) == doctest::Approx(5.0).epsilon(1e-10));

    // JNR = 0 dB exactly when tr(R_i) = N_B sigma^2; doubling P_M adds 3.0103 dB.
    const auto t0 = ideal_jcm(ch, tx, cal.P_M_scaled, cal.sigma_B2);
    const auto t2 = ideal_jcm(ch, tx, 2.0 * cal.P_M_scaled, cal.sigma_B2);
    const double j0 = t0.R_i.trace().real() / (cfg.N_B * cal.sigma_B2);
    const double j2 = t2.R_i.trace().real() / (cfg.N_B * cal.sigma_B2);
    CHECK(10.0 * std::log10(j2 / j0) == doctest::Approx(3.0103).epsilon(1e-4));
}

TEST_CASE("observations: reproducible, zero-noise samples live in col(F)")
{
    const auto [ch, tx] = default_setup();
    const auto cal = calibrate(ch, tx, ScenarioConfig{});
    auto truth = ideal_jcm(ch, tx, cal.P_M_scaled, cal.sigma_B2);

    const auto b1 = sample_observations(truth, 16, 5);
    const auto b2 = sample_observations(truth, 16, 5);
    CHECK(b1.samples == b2.samples);
    const auto b3 = sample_observations(truth, 16, 6);
    CHECK(b1.samples != b3.samples);

    truth.sigma_B2 = 0.0;
    const auto noiseless = sample_observations(truth, 8, 9);
    // Columns must lie in the column space of F: project and compare.
    Eigen::JacobiSVD<MatC> svd(truth.F, Eigen::ComputeThinU);
    const MatC U = svd.matrixU().leftCols(2); // rank-2 factor
    for (int k = 0; k < noiseless.K; ++k)
    {
        const VecC y = noiseless.samples.col(k);
        CHECK((y - U * (U.adjoint() * y)).norm() < 1e-10 * y.norm());
    }
}

TEST_CASE("observations: large-sample mean and covariance match the model")
{
    const auto [ch, tx] = default_setup(17);
    ScenarioConfig cfg;
    const auto cal = calibrate(ch, tx, cfg);
    const auto truth = ideal_jcm(ch, tx, cal.P_M_scaled, cal.sigma_B2);

    const int K = 1000000;
    const auto batch = sample_observations(truth, K, 123);

    const VecC mean = batch.samples.rowwise().mean();
    const MatC C = truth.R_i + truth.sigma_B2 * MatC::Identity(cfg.N_B, cfg.N_B);
    // Each component has variance C_ii / K; 5 standard errors overall.
    double bound2 = 0.0;
    for (int i = 0; i < cfg.N_B; ++i)
        bound2 += 25.0 * std::real(C(i, i)) / K;
    CHECK(mean.squaredNorm() < bound2);

    const MatC Rhat = (batch.samples * batch.samples.adjoint()) / static_cast<double>(K);
    CHECK((Rhat - C).norm() / C.norm() < 0.01);
}
