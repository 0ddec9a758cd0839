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

#include <functional>
#include <optional>
#include <string_view>

#include "jamcov/signal_model.hpp"

namespace jamcov
{

enum class Method
{
    SCM,
    EVD,
    PEM_GD,
    PEM_AO,
};

std::string_view method_name(Method m);

struct JcmEstimate
{
    MatC R_hat;
    Method method = Method::SCM;
    std::optional<double> sigma_hat2;
    int iterations = 0;
    std::vector<double> objective_trace; // nonincreasing for the PEM methods
    bool converged = true;
};

// Sample covariance (1/K) sum y y^H. Estimates R_i + sigma^2 I jointly; the
// harness subtracts the configured noise variance before comparing to R_i.
JcmEstimate scm(const ObservationBatch &batch);

// Rank-constrained eigendecomposition estimate. The trailing eigenvalues of
// the SCM estimate the noise variance, the leading ones (noise-subtracted and
// clamped at zero) rebuild the JCM.
JcmEstimate evd_estimate(const MatC &R_scm, int rank = 2);

// ---------------------------------------------------------------------------
// Parametric estimators.
//
// Gradient convention throughout: for a real objective f of a complex vector
// x, grad = df/dRe(x) + j df/dIm(x), i.e. the plain gradient of f seen as a
// function of the stacked real coordinates. Descent steps move along
// -grad and the Armijo slope term is |grad|^2.
// ---------------------------------------------------------------------------

// Factor state of the four-vector parameterization. The fitted matrix is
// R = W W^H with W = G alpha beta^H + omega nu^H and G the known
// IRS-to-Bob factor H_IB^H Theta.
struct PemGdState
{
    VecC alpha; // M
    VecC beta;  // surrogate_dim
    VecC omega; // N_B
    VecC nu;    // surrogate_dim
};

struct PemGdGradients
{
    VecC alpha;
    VecC beta;
    VecC omega;
    VecC nu;
};

MatC pem_gd_reconstruct(const PemGdState &state, const MatC &G);
double pem_gd_objective(const PemGdState &state, const MatC &S, const MatC &G);
PemGdGradients pem_gd_gradients(const PemGdState &state, const MatC &S, const MatC &G);

struct PemOptions
{
    int max_iters = 2000; // PEM-GD iterations
    int max_outer = 200;  // PEM-AO alternations
    int max_inner = 50;   // PEM-AO omega descent steps per alternation
    double tol = 1e-8;    // relative objective decrease
    int stall_window = 5; // consecutive sub-tol decreases before stopping
    std::uint64_t seed = 1;
    int surrogate_dim = 0;       // 0 means N_B
    double objective_floor = 0.0; // absolute early-exit target, 0 disables
};

JcmEstimate pem_gd(const MatC &S, const ChannelSet &channels, const PemOptions &opts);
JcmEstimate pem_ao(const MatC &S, const ChannelSet &channels, const PemOptions &opts);

// ---------------------------------------------------------------------------
// Shared numerical machinery.
// ---------------------------------------------------------------------------

struct LineSearchResult
{
    double step = 0.0;
    bool stalled = false;
};

// Largest step t = init_step * shrink^n satisfying
//   f(x + t d) <= f(x) - slope_frac * t * |d|^2.
// Returns step 0 and the stall flag after max_shrinks rejections.
LineSearchResult backtracking_search(const std::function<double(const VecC &)> &objective,
                                     const VecC &point, const VecC &direction,
                                     double init_step = 1.0, double shrink = 0.5,
                                     double slope_frac = 0.3, int max_shrinks = 60);

// All real roots of v^3 + l1 v^2 + l2 v + l3, ascending, each polished by one
// Newton step. Near-coincident roots are merged.
std::vector<double> real_cubic_roots(double l1, double l2, double l3);

// Cached inner products of the scalar subproblem, for fixed omega:
//   a = omega^H h,  e = omega^H omega,  gamma = h^H S omega,  tau = h^H S h.
struct CSubproblemInputs
{
    cxd a;
    double e;
    cxd gamma;
    double tau;
};

struct CSubproblemSolution
{
    double c1 = 0.0;
    cxd c2{0.0, 0.0};
    double v = 0.0; // Lagrange multiplier of c1 >= |c2|^2
    bool used_fallback = false;
};

// The scalar objective f(c1, c2) minimized by the subproblem (constant terms
// in omega dropped).
double pem_ao_c_objective(double c1, cxd c2, const CSubproblemInputs &in);

// KKT solution of  min f(c1, c2)  s.t.  c1 >= |c2|^2.  The multiplier is 0
// when l3 >= 0 and a positive real root of the cubic otherwise; with several
// admissible roots the feasible minimizer of f wins. Falls back to a grid
// plus polish search when the closed form degenerates (m near 0).
CSubproblemSolution pem_ao_c_subproblem(const CSubproblemInputs &in);

// Reduced-form reconstruction c1 h h^H + c2* h w^H + c2 w h^H + w w^H and the
// descent gradient of |R - S|_F^2 in omega.
MatC pem_ao_reconstruct(double c1, cxd c2, const VecC &omega, const VecC &h);
VecC pem_ao_omega_gradient(double c1, cxd c2, const VecC &omega, const VecC &h, const MatC &S);

// Central-difference gradient oracle in the convention above: every real and
// imaginary coordinate is perturbed separately and the two slopes are
// reassembled as dRe + j dIm.
template <typename F> VecC finite_difference_gradient(F &&objective, const VecC &point, double step)
{
    VecC grad = VecC::Zero(point.size());
    VecC x = point;
    for (Eigen::Index i = 0; i < point.size(); ++i)
    {
        const cxd orig = x[i];
        x[i] = orig + step;
        double fp = objective(x);
        x[i] = orig - step;
        double fm = objective(x);
        double dre = (fp - fm) / (2.0 * step);
        x[i] = orig + cxd(0.0, step);
        fp = objective(x);
        x[i] = orig - cxd(0.0, step);
        fm = objective(x);
        double dim = (fp - fm) / (2.0 * step);
        x[i] = orig;
        grad[i] = cxd(dre, dim);
    }
    return grad;
}

} // namespace jamcov
