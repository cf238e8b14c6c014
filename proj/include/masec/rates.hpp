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

#ifndef MASEC_RATES_HPP
#define MASEC_RATES_HPP

#include "masec/geometry.hpp"
#include "masec/types.hpp"

namespace masec {

// Transmit beamformers. W_A is M x N with unit-modulus entries, W_D is N x K,
// W_full (optional, may be empty) is the M x K fully-digital reference.
struct BeamformerSet {
    CMat W_full;
    CMat W_A;
    CMat W_D;
    double power_budget = 0.0;

    bool has_full() const { return W_full.size() > 0; }
    CMat effective() const { return W_A * W_D; }

    // Checks unit modulus of W_A (tol 1e-9) and the power constraints (rel tol 1e-9).
    void validate() const;
};

struct RatePair {
    double user = 0.0;    // R_U, bits/s/Hz
    double eaves = 0.0;   // R_E, bits/s/Hz
    double secrecy = 0.0; // [R_U - R_E]^+
};

// log2 det(I + sigma^-2 (H V)(H V)^H), evaluated on the L x L side via Cholesky.
double achievable_rate(const CMat& channel, const CMat& beamformer, double noise_variance);

inline double achievable_rate(const ChannelMatrix& channel, const CMat& beamformer,
                              double noise_variance) {
    return achievable_rate(channel.entries, beamformer, noise_variance);
}

RatePair secrecy_rate(const CMat& user_channel, const CMat& eaves_channel, const CMat& beamformer,
                      double user_noise_variance, double eaves_noise_variance);

} // namespace masec

#endif
