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

#ifndef MASEC_HYBRID_HPP
#define MASEC_HYBRID_HPP

#include "masec/types.hpp"

#include <vector>

namespace masec {
namespace hybrid {

// Factorization of a fully-digital M x K precoder W into a unit-modulus
// analog part W_A (M x N) and a digital part W_D (N x K) by alternating least
// squares with a Riemannian conjugate-gradient step on the complex-circle
// manifold for the analog block.
//
// The analog block is handled in vectorized form x = vec(W_A) on
// { x in C^{MN} : |x_i| = 1 }. All f2 algebra uses the M x N matrix shape;
// Kronecker products are never materialized.

// Residual f2 = || W - W_A W_D ||_F^2.
double f2_value(const CMat& analog, const CMat& digital, const CMat& target);

// W_D = (W_A^H W_A)^{-1} W_A^H W; throws when W_A is numerically rank deficient.
CMat ls_digital(const CMat& analog, const CMat& target);

// Euclidean gradient of f2 w.r.t. W_A: 2 (W_A W_D - W) W_D^H.
CMat euclidean_gradient_f2(const CMat& analog, const CMat& digital, const CMat& target);

// Projection onto the tangent space at x: g - Re{g o x*} o x (elementwise).
CMat riemannian_gradient(const CMat& point, const CMat& euclidean_grad);

// Transport of a tangent direction into the tangent space at new_point.
CMat transport(const CMat& direction, const CMat& new_point);

// Polak-Ribiere coefficient, clamped at zero (PR+ restart).
double polak_ribiere(const CMat& grad_new, const CMat& grad_old);

// Elementwise retraction (x_i + beta d_i) / |x_i + beta d_i|. Throws if an
// entry stays at zero after 60 halvings of beta.
CMat retract(const CMat& point, double step, const CMat& direction);

struct MoOptions {
    double gradient_tolerance = 1e-6; // epsilon_1
    int max_iterations = 300;         // t_max^MO
    double armijo_initial_step = 1.0;
    double armijo_shrink = 0.5;
    double armijo_slope = 1e-4;
    int armijo_max_backtracks = 60;
};

struct MoResult {
    CMat analog;
    std::vector<double> f2_trace;
    int iterations = 0;
    double final_gradient_norm = 0.0;
};

// Riemannian conjugate gradient for the analog beamformer with fixed W_D,
// starting from the unit-modulus initial point.
MoResult mo_analog(const CMat& target, const CMat& digital, const CMat& analog_init,
                   const MoOptions& options = MoOptions());

struct FactorizeOptions {
    int num_rf_chains = 0;          // N
    double tolerance = 1e-6;        // relative f2 improvement between sweeps
    int max_outer = 50;
    MoOptions mo;
    // Power target for the final rescale of W_D; the pair is scaled so that
    // ||W_A W_D||_F^2 = min(||W||_F^2, power_budget).
    double power_budget = std::numeric_limits<double>::infinity();
};

struct FactorizeResult {
    CMat analog;
    CMat digital;
    std::vector<double> residual_trace; // f2 after each outer sweep
    int iterations = 0;
};

// Phase start: elementwise phases of the first N columns of a full QR factor
// of the target.
CMat initial_analog(const CMat& target, int num_rf_chains);

FactorizeResult hybrid_factorize(const CMat& target, const FactorizeOptions& options,
                                 const CMat& analog_init_opt = CMat());

} // namespace hybrid
} // namespace masec

#endif
