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

#include "jamcov/scenario.hpp"

#include <cmath>

#include "jamcov/rng.hpp"

namespace jamcov
{

VecC IrsPhases::unit_diagonal() const
{
    VecC d(static_cast<Eigen::Index>(phases.size()));
    for (std::size_t i = 0; i < phases.size(); ++i)
        d[static_cast<Eigen::Index>(i)] = std::polar(1.0, phases[i]);
    return d;
}

VecC steering_vector(double theta, const ArraySpec &array)
{
    array.validate();
    const int N = array.num_antennas;
    const double d_over_lam = array.element_spacing / array.wavelength;
    VecC h(N);
    const double scale = 1.0 / std::sqrt(static_cast<double>(N));
    for (int n = 1; n <= N; ++n)
    {
        const double psi = -(n - 0.5 * (N + 1)) * d_over_lam * std::cos(theta);
        h[n - 1] = scale * std::polar(1.0, 2.0 * M_PI * psi);
    }
    return h;
}

MatC rank1_channel(double theta_r, double theta_t, const ArraySpec &rx_array,
                   const ArraySpec &tx_array)
{
    return steering_vector(theta_r, rx_array) * steering_vector(theta_t, tx_array).adjoint();
}

double node_distance(const Eigen::Vector2d &a, const Eigen::Vector2d &b)
{
    return (b - a).norm();
}

double link_angle(const Eigen::Vector2d &from, const Eigen::Vector2d &to)
{
    const Eigen::Vector2d d = to - from;
    if (d.norm() < 1e-9)
        throw std::invalid_argument("degenerate geometry: coincident nodes");
    return std::abs(std::atan2(d.y(), d.x()));
}

std::map<Link, LinkAngles> angles_from_layout(const NodeLayout &layout)
{
    auto both = [](double a) { return LinkAngles{a, a}; };
    std::map<Link, LinkAngles> m;
    m[Link::alice_irs] = both(link_angle(layout.alice, layout.irs));
    m[Link::irs_bob] = both(link_angle(layout.irs, layout.bob));
    m[Link::alice_bob] = both(link_angle(layout.alice, layout.bob));
    m[Link::mallory_irs] = both(link_angle(layout.mallory, layout.irs));
    m[Link::mallory_bob] = both(link_angle(layout.mallory, layout.bob));
    return m;
}

double path_gain(double distance, double exponent, double ref_distance)
{
    if (distance <= 0.0)
        throw std::invalid_argument("degenerate geometry: nonpositive distance");
    return std::pow(ref_distance / distance, exponent);
}

namespace
{

IrsPhases make_irs_phases(const ScenarioConfig &cfg, const std::map<Link, LinkAngles> &angles,
                          std::uint64_t seed)
{
    IrsPhases out;
    out.mode = cfg.irs_mode;
    out.phases.resize(static_cast<std::size_t>(cfg.M));
    switch (cfg.irs_mode)
    {
    case IrsMode::random:
    {
        Rng rng(mix_seed(seed, 0x1185u));
        for (auto &p : out.phases)
            p = 2.0 * M_PI * rng.uniform();
        break;
    }
    case IrsMode::aligned:
    {
        // Co-phase the cascaded Alice-IRS-Bob path: every term of
        // h^H(theta_IB^t) Theta h(theta_AI^r) is rotated onto the real axis,
        // which co-phases the whole cascade at Bob's reference element.
        const ArraySpec irs = cfg.irs_array();
        const VecC dep = steering_vector(angles.at(Link::irs_bob).theta_t, irs);
        const VecC arr = steering_vector(angles.at(Link::alice_irs).theta_r, irs);
        for (int i = 0; i < cfg.M; ++i)
        {
            double phi = -std::arg(std::conj(dep[i]) * arr[i]);
            if (phi < 0.0)
                phi += 2.0 * M_PI;
            out.phases[static_cast<std::size_t>(i)] = phi;
        }
        break;
    }
    case IrsMode::fixed:
        out.phases = cfg.irs_fixed_phases;
        break;
    }
    return out;
}

} // namespace

ChannelSet build_channels(const ScenarioConfig &config, std::uint64_t seed)
{
    config.validate();
    const auto angles = angles_from_layout(config.layout);

    const ArraySpec alice = config.alice_array();
    const ArraySpec bob = config.bob_array();
    const ArraySpec mallory = config.mallory_array();
    const ArraySpec irs = config.irs_array();

    ChannelSet ch;
    ch.config = config;

    ch.H_AI_h = rank1_channel(angles.at(Link::alice_irs).theta_r,
                              angles.at(Link::alice_irs).theta_t, irs, alice);
    ch.H_IB_h = rank1_channel(angles.at(Link::irs_bob).theta_r, angles.at(Link::irs_bob).theta_t,
                              bob, irs);
    ch.H_AB_h = rank1_channel(angles.at(Link::alice_bob).theta_r,
                              angles.at(Link::alice_bob).theta_t, bob, alice);
    ch.H_MI_h = rank1_channel(angles.at(Link::mallory_irs).theta_r,
                              angles.at(Link::mallory_irs).theta_t, irs, mallory);
    ch.H_MB_h = rank1_channel(angles.at(Link::mallory_bob).theta_r,
                              angles.at(Link::mallory_bob).theta_t, bob, mallory);

    const auto &ly = config.layout;
    const double ex = config.path_exponent;
    const double d0 = config.ref_distance;
    const double g_ai = path_gain(node_distance(ly.alice, ly.irs), ex, d0);
    const double g_ib = path_gain(node_distance(ly.irs, ly.bob), ex, d0);
    const double g_mi = path_gain(node_distance(ly.mallory, ly.irs), ex, d0);
    ch.g_AIB = g_ai * g_ib;
    ch.g_AB = path_gain(node_distance(ly.alice, ly.bob), ex, d0);
    ch.g_MIB = g_mi * g_ib;
    ch.g_MB = path_gain(node_distance(ly.mallory, ly.bob), ex, d0);

    ch.theta = make_irs_phases(config, angles, seed);
    const MatC Theta = ch.theta.unit_diagonal().asDiagonal();

    ch.H_A1 = std::sqrt(ch.g_AIB) * ch.H_IB_h * Theta * ch.H_AI_h +
              std::sqrt(ch.g_AB) * ch.H_AB_h;
    ch.H_M1 = std::sqrt(ch.g_MIB) * ch.H_IB_h * Theta * ch.H_MI_h +
              std::sqrt(ch.g_MB) * ch.H_MB_h;

    ch.h_ib_r = steering_vector(angles.at(Link::irs_bob).theta_r, bob);
    return ch;
}

} // namespace jamcov
