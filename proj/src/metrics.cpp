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

#include "jamcov/metrics.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace jamcov
{

RbfSolution nsp_max_wfrp(const MatC &R_est, const MatC &H_A1, const VecC &v, double rank_tol,
                         NullspaceMode mode)
{
    const Eigen::Index n = R_est.rows();
    Eigen::SelfAdjointEigenSolver<MatC> eig(hermitian_part(R_est));
    const auto &lam = eig.eigenvalues(); // ascending
    const auto &U = eig.eigenvectors();

    // Clamp the spectrum at zero: the null space is judged against the PSD
    // part, so indefinite inputs (noise-subtracted SCM) behave sensibly.
    Eigen::VectorXd lam_psd = lam.cwiseMax(0.0);
    const double lam_max = lam_psd[n - 1];

    Eigen::Index null_dim = 0;
    if (mode == NullspaceMode::fixed_dim)
    {
        null_dim = std::max<Eigen::Index>(n - 2, 0);
    }
    else if (lam_max <= 0.0)
    {
        null_dim = n;
    }
    else
    {
        const double thresh = rank_tol * lam_max;
        while (null_dim < n && lam_psd[null_dim] <= thresh)
            ++null_dim;
    }
    if (null_dim == 0)
        throw std::runtime_error("jamming occupies full space: no null direction");

    const MatC N = U.leftCols(null_dim);
    const VecC target = H_A1 * v;
    const VecC projected = N * (N.adjoint() * target);
    if (projected.norm() <= 1e-12 * target.norm())
        throw std::runtime_error("signal orthogonal to null space");

    RbfSolution sol;
    sol.v_BR = projected / projected.norm();
    sol.null_dim = static_cast<int>(null_dim);

    MatC R_used = MatC::Zero(n, n);
    for (Eigen::Index i = null_dim; i < n; ++i)
        R_used += lam_psd[i] * (U.col(i) * U.col(i).adjoint());
    sol.residual_jam_power = std::real(sol.v_BR.dot(R_used * sol.v_BR));
    sol.achieved_signal_power = std::norm(sol.v_BR.dot(target));
    return sol;
}

double nmse(const MatC &R_est, const MatC &R_truth)
{
    const double denom = R_truth.squaredNorm();
    if (denom == 0.0)
        throw std::invalid_argument("nmse: zero truth matrix");
    return (R_est - R_truth).squaredNorm() / denom;
}

double secrecy_rate(const ChannelSet &channels, const TransmitSide &tx, const VecC &v_BR,
                    const JcmTruth &truth, EavModel eav_model)
{
    const Eigen::Index n_b = v_BR.size();
    const double sig = tx.cm_power * std::norm(v_BR.dot(channels.H_A1 * tx.v));
    const double denom =
        std::real(v_BR.dot((truth.R_i + truth.sigma_B2 * MatC::Identity(n_b, n_b)) * v_BR));
    const double rate_bob = std::log2(1.0 + sig / denom);
    if (eav_model == EavModel::none)
        return rate_bob;

    // MRC eavesdropper over the Alice-to-Mallory equivalent channel. The AN
    // leaks to Mallory only through the direct path (the IRS-routed component
    // dies in H_AI^H T_A_AN = 0); self-interference is zero and
    // sigma_M^2 = sigma_B^2.
    const ScenarioConfig &cfg = channels.config;
    const auto &ly = cfg.layout;
    const double th_am = link_angle(ly.alice, ly.mallory);
    const double th_im = link_angle(ly.irs, ly.mallory);
    const ArraySpec mal = cfg.mallory_array();
    const ArraySpec irs = cfg.irs_array();
    const MatC H_AM_h = rank1_channel(th_am, th_am, mal, cfg.alice_array());
    const MatC H_IM_h = rank1_channel(th_im, th_im, mal, irs);
    const double g_aim = path_gain(node_distance(ly.alice, ly.irs), cfg.path_exponent,
                                   cfg.ref_distance) *
                         path_gain(node_distance(ly.irs, ly.mallory), cfg.path_exponent,
                                   cfg.ref_distance);
    const double g_am =
        path_gain(node_distance(ly.alice, ly.mallory), cfg.path_exponent, cfg.ref_distance);
    const MatC Theta = channels.theta.unit_diagonal().asDiagonal();
    const MatC H_A2 =
        std::sqrt(g_aim) * H_IM_h * Theta * channels.H_AI_h + std::sqrt(g_am) * H_AM_h;

    const VecC h_sig = H_A2 * tx.v;
    const double sig_e = tx.cm_power * h_sig.squaredNorm(); // MRC combining gain
    const VecC v_mr = h_sig.normalized();
    const double an_e = tx.an_power * (v_mr.adjoint() * H_A2 * tx.T_A_AN).squaredNorm();
    const double rate_eve = std::log2(1.0 + sig_e / (an_e + truth.sigma_B2));
    return std::max(0.0, rate_bob - rate_eve);
}

CrlbResult crlb_sum(const JcmTruth &truth, int K, bool truncated)
{
    if (K < 1)
        throw std::invalid_argument("crlb_sum: K must be at least 1");
    const Eigen::Index n = truth.R_i.rows();
    const MatC C = hermitian_part(truth.R_i) + truth.sigma_B2 * MatC::Identity(n, n);
    const MatC Cinv = C.inverse();

    // Real coordinates of a Hermitian matrix: n diagonal entries, then the
    // real and imaginary parts of the upper triangle.
    const Eigen::Index np = n * n;
    std::vector<MatC> A;
    A.reserve(np);
    auto push = [&](const MatC &B) { A.push_back(Cinv * B); };
    for (Eigen::Index p = 0; p < n; ++p)
    {
        MatC B = MatC::Zero(n, n);
        B(p, p) = 1.0;
        push(B);
    }
    for (Eigen::Index p = 0; p < n; ++p)
        for (Eigen::Index q = p + 1; q < n; ++q)
        {
            MatC B = MatC::Zero(n, n);
            B(p, q) = 1.0;
            B(q, p) = 1.0;
            push(B);
        }
    for (Eigen::Index p = 0; p < n; ++p)
        for (Eigen::Index q = p + 1; q < n; ++q)
        {
            MatC B = MatC::Zero(n, n);
            B(p, q) = cxd(0.0, 1.0);
            B(q, p) = cxd(0.0, -1.0);
            push(B);
        }

    Eigen::MatrixXd fisher(np, np);
    for (Eigen::Index k = 0; k < np; ++k)
        for (Eigen::Index l = k; l < np; ++l)
        {
            const double val = static_cast<double>(K) *
                               std::real((A[static_cast<std::size_t>(k)].transpose()
                                              .cwiseProduct(A[static_cast<std::size_t>(l)]))
                                             .sum()); // tr(A_k A_l)
            fisher(k, l) = val;
            fisher(l, k) = val;
        }

    CrlbResult out;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(fisher);
    Eigen::MatrixXd finv;
    if (ldlt.info() == Eigen::Success && ldlt.isPositive() &&
        ldlt.vectorD().minCoeff() > 1e-12 * ldlt.vectorD().maxCoeff())
    {
        finv = ldlt.solve(Eigen::MatrixXd::Identity(np, np));
    }
    else
    {
        // Singular Fisher matrix: Moore-Penrose pseudo-inverse.
        out.pseudo_inverse_used = true;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(fisher);
        const auto &d = eig.eigenvalues();
        const double cut = 1e-12 * std::max(d.maxCoeff(), 0.0);
        Eigen::VectorXd dinv = Eigen::VectorXd::Zero(np);
        for (Eigen::Index i = 0; i < np; ++i)
            if (d[i] > cut)
                dinv[i] = 1.0 / d[i];
        finv = eig.eigenvectors() * dinv.asDiagonal() * eig.eigenvectors().transpose();
    }

    const Eigen::Index limit = truncated ? n : np;
    out.value = finv.diagonal().head(limit).sum() / truth.R_i.squaredNorm();
    return out;
}

} // namespace jamcov
