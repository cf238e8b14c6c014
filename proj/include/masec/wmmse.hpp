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

#ifndef MASEC_WMMSE_HPP
#define MASEC_WMMSE_HPP

#include "masec/types.hpp"

#include <vector>

namespace masec {
namespace wmmse {

// Channels are noise-normalized throughout this module: Hs = H / sigma_U and
// Zs = Z / sigma_E. Internal objectives use natural logs; rates are converted
// to bits only where reported.

// Auxiliary-variable block of the weighted-MMSE reformulation.
struct WmmseState {
    CMat receive_filter; // P, L_U x K
    CMat weight_user;    // Q_U, K x K Hermitian PD
    CMat weight_eaves;   // Q_E, L_E x L_E Hermitian PD
    double mu = 0.0;     // dual variable of the power constraint
    CMat precoder;       // W, M x K
};

// (I - P^H Hs W)(I - P^H Hs W)^H + P^H P
CMat mse_matrix(const CMat& receive_filter, const CMat& precoder, const CMat& channel);

// P = (I + Hs W W^H Hs^H)^{-1} Hs W
CMat update_receive_filter(const CMat& channel, const CMat& precoder);

// Q_U = mse_matrix(P, W, Hs)^{-1}, Q_E = (I + Zs W W^H Zs^H)^{-1}
std::pair<CMat, CMat> update_weights(const CMat& receive_filter, const CMat& precoder,
                                     const CMat& channel_user, const CMat& channel_eaves);

// W(mu) = (Hs^H P Q_U P^H Hs + mu I + Zs^H Q_E Zs)^{-1} Hs^H P Q_U^H.
// Throws on a numerically singular system at mu = 0.
CMat solve_w_given_mu(const CMat& receive_filter, const CMat& weight_user,
                      const CMat& weight_eaves, const CMat& channel_user,
                      const CMat& channel_eaves, double mu);

struct DualSolution {
    double mu = 0.0;
    CMat precoder;
};

// Dual bisection for the power constraint: returns mu = 0 when the
// unconstrained minimizer fits the budget, otherwise mu* > 0 with
// | ||W||_F^2 - P_B | <= 1e-8 P_B.
DualSolution bisect_mu(const CMat& receive_filter, const CMat& weight_user,
                       const CMat& weight_eaves, const CMat& channel_user,
                       const CMat& channel_eaves, double power_budget);

// Transformed secrecy objective, natural-log convention:
// lndet(Q_U) - Tr(Q_U E(P,W)) + K + lndet(Q_E) - Tr(Q_E (I + Zs W W^H Zs^H)) + L_E.
double wmmse_objective(const CMat& receive_filter, const CMat& weight_user,
                       const CMat& weight_eaves, const CMat& precoder, const CMat& channel_user,
                       const CMat& channel_eaves);

struct WmmseResult {
    CMat precoder;
    WmmseState state;
    std::vector<double> secrecy_trace_bits;  // per outer iteration
    std::vector<double> objective_trace;     // per block update, natural log
    int iterations = 0;
    bool converged = false;
};

struct WmmseOptions {
    double tolerance = 1e-6;
    int max_iterations = 300;
};

// Matched-filter start: top-K right-singular directions of Hs, scaled to the
// full power budget.
CMat initial_precoder(const CMat& channel_user, int num_streams, double power_budget);

// Stage I block-coordinate descent. initial_precoder_opt may be empty, in
// which case the matched-filter start is used.
WmmseResult wmmse_fully_digital(const CMat& channel_user, const CMat& channel_eaves,
                                double power_budget, const CMat& initial_precoder_opt = CMat(),
                                const WmmseOptions& options = WmmseOptions());

} // namespace wmmse
} // namespace masec

#endif
