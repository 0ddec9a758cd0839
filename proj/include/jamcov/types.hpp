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

#include <complex>

#include <Eigen/Dense>

namespace jamcov
{

using cxd = std::complex<double>;
using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;

// Squared Frobenius norm of the Hermitian residual A - B.
inline double frob2(const MatC &A) { return A.squaredNorm(); }

// Force exact Hermitian symmetry (numerical hygiene before eigensolves).
inline MatC hermitian_part(const MatC &A) { return 0.5 * (A + A.adjoint()); }

} // namespace jamcov
