// SPDX-License-Identifier: Apache-2.0
//
// masec: movable-antenna secure near-field MIMO beamforming
// Copyright (C) 2026 masec contributors
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

#include "masec/rates.hpp"

#include <stdexcept>

namespace masec {

void BeamformerSet::validate() const {
    constexpr double tol = 1e-9;
    for (Eigen::Index i = 0; i < W_A.rows(); ++i)
        for (Eigen::Index j = 0; j < W_A.cols(); ++j)
            if (std::abs(std::abs(W_A(i, j)) - 1.0) > tol)
                throw std::invalid_argument("BeamformerSet: analog entry is not unit-modulus");
    if (W_A.cols() != W_D.rows())
        throw std::invalid_argument("BeamformerSet: analog/digital dimension mismatch");
    if (effective().squaredNorm() > power_budget * (1.0 + tol))
        throw std::invalid_argument("BeamformerSet: hybrid pair exceeds the power budget");
    if (has_full() && W_full.squaredNorm() > power_budget * (1.0 + tol))
        throw std::invalid_argument("BeamformerSet: fully-digital beamformer exceeds the budget");
}

double achievable_rate(const CMat& channel, const CMat& beamformer, double noise_variance) {
    if (!(noise_variance > 0.0))
        throw std::invalid_argument("achievable_rate: noise variance must be positive");
    if (channel.cols() != beamformer.rows())
        throw std::invalid_argument("achievable_rate: channel/beamformer dimension mismatch");
    if (!channel.allFinite() || !beamformer.allFinite())
        throw std::invalid_argument("achievable_rate: non-finite input");

    const Eigen::Index n_rx = channel.rows();
    if (n_rx == 0)
        return 0.0;

    const CMat g = channel * beamformer; // L x K
    CMat gram = CMat::Identity(n_rx, n_rx) + (g * g.adjoint()) / noise_variance;
    gram = 0.5 * (gram + gram.adjoint().eval());

    Eigen::LLT<CMat> llt(gram);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("achievable_rate: Cholesky factorization failed");
    double log_det = 0.0;
    const CMat l = llt.matrixL();
    for (Eigen::Index i = 0; i < n_rx; ++i)
        log_det += 2.0 * std::log(std::real(l(i, i)));
    return log_det / kLn2;
}

RatePair secrecy_rate(const CMat& user_channel, const CMat& eaves_channel, const CMat& beamformer,
                      double user_noise_variance, double eaves_noise_variance) {
    RatePair out;
    out.user = achievable_rate(user_channel, beamformer, user_noise_variance);
    out.eaves = achievable_rate(eaves_channel, beamformer, eaves_noise_variance);
    out.secrecy = std::max(out.user - out.eaves, 0.0);
    return out;
}

} // namespace masec
