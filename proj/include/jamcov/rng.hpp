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
#include <random>

#include "jamcov/types.hpp"

namespace jamcov
{

// SplitMix64 finalizer. Used for deterministic seed derivation; the output
// sequence is fully specified by the constants, independent of platform.
inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Stable mix of a base seed with a salt (stream id, trial index, ...).
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt)
{
    return splitmix64(base ^ splitmix64(salt));
}

// Deterministic random source. std::mt19937_64 output is pinned by the
// standard and Box-Muller uses only libm functions, so identical seeds give
// identical streams on every platform (std::normal_distribution would not).
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Uniform double in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller with a cached spare.
    double gaussian()
    {
        if (has_spare_)
        {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform(); // (0, 1], keeps log() finite
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double phi = 2.0 * M_PI * u2;
        spare_ = r * std::sin(phi);
        has_spare_ = true;
        return r * std::cos(phi);
    }

    // Circularly symmetric complex normal CN(0, 1).
    cxd cgauss()
    {
        double re = gaussian();
        double im = gaussian();
        return cxd(re, im) / std::sqrt(2.0);
    }

    VecC cgauss_vector(Eigen::Index n)
    {
        VecC v(n);
        for (Eigen::Index i = 0; i < n; ++i)
            v[i] = cgauss();
        return v;
    }

    MatC cgauss_matrix(Eigen::Index rows, Eigen::Index cols)
    {
        MatC m(rows, cols);
        for (Eigen::Index j = 0; j < cols; ++j) // column-major draw order
            for (Eigen::Index i = 0; i < rows; ++i)
                m(i, j) = cgauss();
        return m;
    }

  private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace jamcov
