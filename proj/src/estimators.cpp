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

#include "jamcov/estimators.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "jamcov/rng.hpp"

namespace jamcov
{

std::string_view method_name(Method m)
{
    switch (m)
    {
    case Method::SCM:
        return "SCM";
    case Method::EVD:
        return "EVD";
    case Method::PEM_GD:
        return "PEM_GD";
    case Method::PEM_AO:
        return "PEM_AO";
    }
    return "?";
}

JcmEstimate scm(const ObservationBatch &batch)
{
    if (batch.K < 1 || batch.samples.cols() != batch.K)
        throw std::invalid_argument("empty observation batch");
    JcmEstimate est;
    est.method = Method::SCM;
    est.R_hat = (batch.samples * batch.samples.adjoint()) / static_cast<double>(batch.K);
    return est;
}

JcmEstimate evd_estimate(const MatC &R_scm, int rank)
{
    const Eigen::Index n = R_scm.rows();
    if (n <= rank)
        throw std::invalid_argument("insufficient dimension: need N_B > rank");
    Eigen::SelfAdjointEigenSolver<MatC> eig(hermitian_part(R_scm));
    const auto &lam = eig.eigenvalues(); // ascending
    const auto &U = eig.eigenvectors();

    const Eigen::Index noise_dims = n - rank;
    const double sigma_hat2 = lam.head(noise_dims).sum() / static_cast<double>(noise_dims);

    JcmEstimate est;
    est.method = Method::EVD;
    est.sigma_hat2 = sigma_hat2;
    est.R_hat = MatC::Zero(n, n);
    for (Eigen::Index i = noise_dims; i < n; ++i)
    {
        // Clamp at zero: a noisy eigenvalue below the noise estimate must not
        // break positive semidefiniteness.
        const double w = std::max(lam[i] - sigma_hat2, 0.0);
        if (w > 0.0)
            est.R_hat += w * (U.col(i) * U.col(i).adjoint());
    }
    return est;
}

// ---------------------------------------------------------------------------
// Line search and cubic roots.
// ---------------------------------------------------------------------------

LineSearchResult backtracking_search(const std::function<double(const VecC &)> &objective,
                                     const VecC &point, const VecC &direction, double init_step,
                                     double shrink, double slope_frac, int max_shrinks)
{
    const double f0 = objective(point);
    const double d2 = direction.squaredNorm();
    double t = init_step;
    for (int n = 0; n <= max_shrinks; ++n)
    {
        if (objective(point + t * direction) <= f0 - slope_frac * t * d2)
            return {t, false};
        t *= shrink;
    }
    return {0.0, true};
}

std::vector<double> real_cubic_roots(double l1, double l2, double l3)
{
    // Depress v = t - l1/3, then Cardano / trigonometric branches.
    const double shift = -l1 / 3.0;
    const double p = l2 - l1 * l1 / 3.0;
    const double q = 2.0 * l1 * l1 * l1 / 27.0 - l1 * l2 / 3.0 + l3;

    std::vector<double> roots;
    const double disc = 0.25 * q * q + p * p * p / 27.0;
    if (p == 0.0 && q == 0.0)
    {
        roots.push_back(shift);
    }
    else if (disc > 0.0)
    {
        const double s = std::sqrt(disc);
        roots.push_back(std::cbrt(-0.5 * q + s) + std::cbrt(-0.5 * q - s) + shift);
    }
    else
    {
        // Three real roots (p < 0 here).
        const double r = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(1.5 * q / p * std::sqrt(-3.0 / p), -1.0, 1.0);
        const double phi = std::acos(arg);
        for (int k = 0; k < 3; ++k)
            roots.push_back(r * std::cos((phi - 2.0 * M_PI * k) / 3.0) + shift);
    }

    auto poly = [&](double v) { return ((v + l1) * v + l2) * v + l3; };
    auto dpoly = [&](double v) { return (3.0 * v + 2.0 * l1) * v + l2; };
    for (auto &v : roots)
    {
        const double d = dpoly(v);
        if (std::abs(d) > 1e-30)
            v -= poly(v) / d;
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double a, double b)
                            { return std::abs(a - b) <= 1e-7 * (1.0 + std::abs(a)); }),
                roots.end());
    return roots;
}

// ---------------------------------------------------------------------------
// PEM-GD.
// ---------------------------------------------------------------------------

MatC pem_gd_reconstruct(const PemGdState &state, const MatC &G)
{
    const MatC W = (G * state.alpha) * state.beta.adjoint() + state.omega * state.nu.adjoint();
    return W * W.adjoint();
}

double pem_gd_objective(const PemGdState &state, const MatC &S, const MatC &G)
{
    return (pem_gd_reconstruct(state, G) - S).squaredNorm();
}

PemGdGradients pem_gd_gradients(const PemGdState &state, const MatC &S, const MatC &G)
{
    const MatC W = (G * state.alpha) * state.beta.adjoint() + state.omega * state.nu.adjoint();
    const MatC E = W * W.adjoint() - S; // Hermitian residual
    const MatC EW = E * W;
    PemGdGradients g;
    g.alpha = 4.0 * (G.adjoint() * (EW * state.beta));
    g.beta = 4.0 * (EW.adjoint() * (G * state.alpha));
    g.omega = 4.0 * (EW * state.nu);
    g.nu = 4.0 * (EW.adjoint() * state.omega);
    return g;
}

namespace
{

// Shared stop logic for the iterative estimators.
struct StallTracker
{
    double tol;
    int window;
    int count = 0;

    bool update(double f_prev, double f_cur)
    {
        const double rel = (f_prev - f_cur) / std::max(f_prev, 1e-300);
        count = rel < tol ? count + 1 : 0;
        return count >= window;
    }
};

void rebalance_pair(VecC &left, VecC &right)
{
    const double nl = left.norm();
    const double nr = right.norm();
    if (nl <= 0.0 || nr <= 0.0)
        return;
    // Real gauge factor keeps the outer product (and the objective) intact.
    const double c = std::sqrt(nr / nl);
    left *= c;
    right /= c;
}

} // namespace

JcmEstimate pem_gd(const MatC &S, const ChannelSet &channels, const PemOptions &opts)
{
    const Eigen::Index n_b = S.rows();
    const Eigen::Index m = channels.H_IB_h.cols();
    const Eigen::Index nt = opts.surrogate_dim > 0 ? opts.surrogate_dim : n_b;

    JcmEstimate est;
    est.method = Method::PEM_GD;

    const double scale = S.norm();
    if (scale == 0.0)
    {
        est.R_hat = MatC::Zero(n_b, n_b);
        est.objective_trace = {0.0};
        return est;
    }
    // The fit runs on the unit-Frobenius problem so step sizes and stopping
    // thresholds are scale-free; the estimate is scaled back at the end.
    const MatC Sn = S / scale;
    const double s2 = scale * scale;
    const MatC G = channels.H_IB_h * MatC(channels.theta.unit_diagonal().asDiagonal());

    Rng rng(opts.seed);
    PemGdState st;
    st.alpha = rng.cgauss_vector(m);
    st.beta = rng.cgauss_vector(nt);
    st.omega = rng.cgauss_vector(n_b);
    st.nu = rng.cgauss_vector(nt);

    double f = pem_gd_objective(st, Sn, G);
    est.objective_trace.push_back(f * s2);
    StallTracker stall{opts.tol, opts.stall_window};
    est.converged = false;

    for (int it = 0; it < opts.max_iters; ++it)
    {
        const double f_prev = f;
        bool all_stalled = true;
        for (int block = 0; block < 4; ++block)
        {
            VecC *x = block == 0   ? &st.alpha
                      : block == 1 ? &st.beta
                      : block == 2 ? &st.omega
                                   : &st.nu;
            const PemGdGradients g = pem_gd_gradients(st, Sn, G);
            const VecC *gb = block == 0 ? &g.alpha : block == 1 ? &g.beta : block == 2 ? &g.omega : &g.nu;
            auto block_obj = [&](const VecC &cand)
            {
                PemGdState probe = st;
                (block == 0   ? probe.alpha
                 : block == 1 ? probe.beta
                 : block == 2 ? probe.omega
                              : probe.nu) = cand;
                return pem_gd_objective(probe, Sn, G);
            };
            const LineSearchResult ls = backtracking_search(block_obj, *x, -*gb);
            if (!ls.stalled)
            {
                *x -= ls.step * *gb;
                all_stalled = false;
            }
        }
        rebalance_pair(st.alpha, st.beta);
        rebalance_pair(st.omega, st.nu);

        f = pem_gd_objective(st, Sn, G);
        est.objective_trace.push_back(f * s2);
        est.iterations = it + 1;
        if (all_stalled)
            break; // converged stays false: no block could move
        if (opts.objective_floor > 0.0 && f * s2 <= opts.objective_floor)
        {
            est.converged = true;
            break;
        }
        if (stall.update(f_prev, f))
        {
            est.converged = true;
            break;
        }
    }

    est.R_hat = hermitian_part(scale * pem_gd_reconstruct(st, G));
    return est;
}

// ---------------------------------------------------------------------------
// PEM-AO.
// ---------------------------------------------------------------------------

double pem_ao_c_objective(double c1, cxd c2, const CSubproblemInputs &in)
{
    const cxd a = in.a;
    const cxd g = in.gamma;
    const cxd c2c = std::conj(c2);
    return std::real(c1 * c1 + 2.0 * c2c * c2c * a * a + 4.0 * c1 * c2c * a +
                     2.0 * c1 * a * std::conj(a) + 2.0 * c2 * c2c * in.e + 4.0 * c2c * a * in.e -
                     2.0 * c1 * in.tau - 4.0 * c2 * g);
}

namespace
{

bool c_feasible(double c1, cxd c2)
{
    const double q = std::norm(c2);
    return c1 >= q - 1e-9 * std::max(1.0, std::abs(c1) + q);
}

// Coarse grid plus projected-gradient polish over (c1, Re c2, Im c2). Only
// reached when the closed form degenerates.
CSubproblemSolution c_subproblem_numeric(const CSubproblemInputs &in)
{
    const double span =
        4.0 * std::max({1e-12, std::abs(in.tau), in.e, std::norm(in.a), std::abs(in.gamma)});
    CSubproblemSolution best;
    best.used_fallback = true;
    double fbest = pem_ao_c_objective(0.0, cxd(0, 0), in);
    const int n = 25;
    for (int i = 0; i <= n; ++i)
    {
        const double c1 = span * i / n;
        for (int jr = -n; jr <= n; ++jr)
            for (int ji = -n; ji <= n; ++ji)
            {
                const cxd c2(span * jr / n, span * ji / n);
                if (c1 < std::norm(c2))
                    continue;
                const double f = pem_ao_c_objective(c1, c2, in);
                const double eps = 1e-12 * (1.0 + std::abs(fbest));
                // Ties break toward the smaller solution so flat directions
                // (omega orthogonal to everything) settle at c2 = 0.
                const bool better = f < fbest - eps;
                const bool tied_smaller = std::abs(f - fbest) <= eps &&
                                          std::norm(c2) + std::abs(c1) <
                                              std::norm(best.c2) + std::abs(best.c1);
                if (better || tied_smaller)
                {
                    fbest = f;
                    best.c1 = c1;
                    best.c2 = c2;
                }
            }
    }
    double step = 0.1 * span;
    double c1 = best.c1;
    cxd c2 = best.c2;
    for (int it = 0; it < 800 && step > 1e-15 * span; ++it)
    {
        const cxd a = in.a;
        const double g1 = 2.0 * c1 + 4.0 * std::real(std::conj(c2) * a) +
                          2.0 * std::norm(a) - 2.0 * in.tau;
        const cxd g2 = 2.0 * (2.0 * a * a * std::conj(c2) + 2.0 * c1 * a + 2.0 * in.e * c2 +
                              2.0 * in.e * a - 2.0 * std::conj(in.gamma));
        double c1n = c1 - step * g1;
        cxd c2n = c2 - step * g2;
        c1n = std::max(c1n, std::norm(c2n)); // feasibility restoration
        const double fn = pem_ao_c_objective(c1n, c2n, in);
        if (fn < fbest)
        {
            fbest = fn;
            c1 = c1n;
            c2 = c2n;
        }
        else
        {
            step *= 0.5;
        }
    }
    best.c1 = c1;
    best.c2 = c2;
    return best;
}

} // namespace

CSubproblemSolution pem_ao_c_subproblem(const CSubproblemInputs &in)
{
    const double aa = std::norm(in.a);
    const double e = in.e;
    const double tau = in.tau;
    const double l1 = 4.0 * e + 2.0 * tau - 4.0 * aa;
    const double l2 = 4.0 * aa * aa - 8.0 * aa * e - 8.0 * aa * tau + 4.0 * e * e + 8.0 * e * tau;
    const double l3 = 8.0 * aa * aa * tau - 16.0 * aa * e * tau - 8.0 * aa * tau * tau +
                      16.0 * std::real(in.gamma * in.a) * tau + 8.0 * e * e * tau -
                      8.0 * std::norm(in.gamma);

    auto stationary_point = [&](double v, CSubproblemSolution &out)
    {
        const double m = aa - e - 0.5 * v;
        if (std::abs(m) < 1e-12)
            return false;
        out.c2 = ((tau - m) * in.a - std::conj(in.gamma)) / m;
        out.c1 = tau + 0.5 * v - aa - 2.0 * std::real(std::conj(out.c2) * in.a);
        out.v = v;
        return true;
    };

    std::vector<CSubproblemSolution> cands;
    auto add = [&](double v)
    {
        CSubproblemSolution s;
        if (stationary_point(v, s))
            cands.push_back(s);
    };
    std::vector<double> roots;
    if (l3 >= 0.0)
    {
        add(0.0);
    }
    else
    {
        roots = real_cubic_roots(l1, l2, l3);
        for (double r : roots)
            if (r > 0.0)
                add(r);
    }

    auto pick_feasible = [&]() -> const CSubproblemSolution *
    {
        const CSubproblemSolution *best = nullptr;
        double fbest = 0.0;
        for (const auto &c : cands)
        {
            if (!c_feasible(c.c1, c.c2))
                continue;
            const double f = pem_ao_c_objective(c.c1, c.c2, in);
            if (!best || f < fbest)
            {
                best = &c;
                fbest = f;
            }
        }
        return best;
    };

    const CSubproblemSolution *best = pick_feasible();
    if (!best)
    {
        // Rescue pass with the other branch's candidates before giving up on
        // the closed form.
        if (l3 >= 0.0)
            for (double r : real_cubic_roots(l1, l2, l3))
            {
                if (r > 0.0)
                    add(r);
            }
        else
            add(0.0);
        best = pick_feasible();
    }
    if (!best)
        return c_subproblem_numeric(in);
    return *best;
}

MatC pem_ao_reconstruct(double c1, cxd c2, const VecC &omega, const VecC &h)
{
    return c1 * (h * h.adjoint()) + std::conj(c2) * (h * omega.adjoint()) +
           c2 * (omega * h.adjoint()) + omega * omega.adjoint();
}

VecC pem_ao_omega_gradient(double c1, cxd c2, const VecC &omega, const VecC &h, const MatC &S)
{
    const MatC E = pem_ao_reconstruct(c1, c2, omega, h) - S;
    return 4.0 * (E * (std::conj(c2) * h + omega));
}

JcmEstimate pem_ao(const MatC &S, const ChannelSet &channels, const PemOptions &opts)
{
    const Eigen::Index n_b = S.rows();
    JcmEstimate est;
    est.method = Method::PEM_AO;

    const double scale = S.norm();
    if (scale == 0.0)
    {
        est.R_hat = MatC::Zero(n_b, n_b);
        est.objective_trace = {0.0};
        return est;
    }
    const MatC Sn = S / scale;
    const double s2 = scale * scale;
    const VecC &h = channels.h_ib_r;
    const VecC Sh = Sn * h;
    const double tau = std::real(h.dot(Sh)); // h^H Sn h

    Rng rng(opts.seed);
    VecC omega = rng.cgauss_vector(n_b);
    double c1 = 0.0;
    cxd c2(0.0, 0.0);

    auto objective = [&](double rc1, cxd rc2, const VecC &w)
    { return (pem_ao_reconstruct(rc1, rc2, w, h) - Sn).squaredNorm(); };

    double f = objective(c1, c2, omega);
    est.objective_trace.push_back(f * s2);
    StallTracker outer_stall{opts.tol, opts.stall_window};
    est.converged = false;

    for (int it = 0; it < opts.max_outer; ++it)
    {
        const double f_prev = f;

        CSubproblemInputs in;
        in.a = omega.dot(h); // omega^H h
        in.e = omega.squaredNorm();
        in.gamma = h.dot(Sn * omega); // h^H Sn omega
        in.tau = tau;
        const CSubproblemSolution sol = pem_ao_c_subproblem(in);
        // The closed form minimizes up to roundoff; at the numerical floor it
        // may wobble by an ulp, so keep the previous point unless it improves.
        if (objective(sol.c1, sol.c2, omega) <= f)
        {
            c1 = sol.c1;
            c2 = sol.c2;
        }

        auto omega_obj = [&](const VecC &w) { return objective(c1, c2, w); };
        double f_in = omega_obj(omega);
        StallTracker inner_stall{opts.tol, opts.stall_window};
        for (int j = 0; j < opts.max_inner; ++j)
        {
            const VecC g = pem_ao_omega_gradient(c1, c2, omega, h, Sn);
            const LineSearchResult ls = backtracking_search(omega_obj, omega, -g);
            if (ls.stalled)
                break;
            omega -= ls.step * g;
            const double f_new = omega_obj(omega);
            const bool done = inner_stall.update(f_in, f_new);
            f_in = f_new;
            if (done)
                break;
        }

        f = f_in;
        est.objective_trace.push_back(f * s2);
        est.iterations = it + 1;
        if (opts.objective_floor > 0.0 && f * s2 <= opts.objective_floor)
        {
            est.converged = true;
            break;
        }
        if (outer_stall.update(f_prev, f))
        {
            est.converged = true;
            break;
        }
    }

    est.R_hat = hermitian_part(scale * pem_ao_reconstruct(c1, c2, omega, h));
    return est;
}

} // namespace jamcov
