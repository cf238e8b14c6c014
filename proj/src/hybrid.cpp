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

#include "masec/hybrid.hpp"

#include <cmath>
#include <stdexcept>

namespace masec {
namespace hybrid {

namespace {

// Real inner product Re<A, B> = Re Tr(A^H B), elementwise form.
double real_inner(const CMat& a, const CMat& b) {
    return a.conjugate().cwiseProduct(b).sum().real();
}

} // namespace

double f2_value(const CMat& analog, const CMat& digital, const CMat& target) {
    return (target - analog * digital).squaredNorm();
}

CMat ls_digital(const CMat& analog, const CMat& target) {
    const Eigen::Index n = analog.cols();
    const CMat gram = 0.5 * ((analog.adjoint() * analog).eval() +
                             (analog.adjoint() * analog).adjoint().eval());
    Eigen::SelfAdjointEigenSolver<CMat> eig(gram);
    if (eig.info() != Eigen::Success || eig.eigenvalues()(0) < 1e-12 * eig.eigenvalues()(n - 1))
        throw std::runtime_error("ls_digital: analog beamformer is rank deficient");
    return Eigen::LLT<CMat>(gram).solve(analog.adjoint() * target);
}

CMat euclidean_gradient_f2(const CMat& analog, const CMat& digital, const CMat& target) {
    return 2.0 * (analog * digital - target) * digital.adjoint();
}

CMat riemannian_gradient(const CMat& point, const CMat& euclidean_grad) {
    const RMat radial = euclidean_grad.cwiseProduct(point.conjugate()).real();
    return euclidean_grad - radial.cast<Complex>().cwiseProduct(point);
}

CMat transport(const CMat& direction, const CMat& new_point) {
    const RMat radial = direction.cwiseProduct(new_point.conjugate()).real();
    return direction - radial.cast<Complex>().cwiseProduct(new_point);
}

double polak_ribiere(const CMat& grad_new, const CMat& grad_old) {
    const double denom = grad_old.squaredNorm();
    if (denom == 0.0)
        return 0.0;
    const double pr = real_inner(grad_new, grad_new - grad_old) / denom;
    return std::max(pr, 0.0);
}

CMat retract(const CMat& point, double step, const CMat& direction) {
    double beta = step;
    for (int shrink = 0; shrink <= 60; ++shrink) {
        const CMat moved = point + beta * direction;
        const RMat mags = moved.cwiseAbs();
        if (mags.minCoeff() > 0.0)
            return moved.cwiseQuotient(mags.cast<Complex>());
        beta *= 0.5;
    }
    throw std::runtime_error("retract: step kept a zero-magnitude entry after 60 shrinks");
}

MoResult mo_analog(const CMat& target, const CMat& digital, const CMat& analog_init,
                   const MoOptions& options) {
    CMat x = analog_init;
    if ((x.cwiseAbs().array() - 1.0).abs().maxCoeff() > 1e-9)
        throw std::invalid_argument("mo_analog: initial point is not unit-modulus");

    MoResult result;
    double f = f2_value(x, digital, target);
    result.f2_trace.push_back(f);
    CMat grad = riemannian_gradient(x, euclidean_gradient_f2(x, digital, target));
    CMat dir = -grad;

    int t = 0;
    for (; t < options.max_iterations; ++t) {
        const double grad_norm = grad.norm();
        result.final_gradient_norm = grad_norm;
        if (grad_norm <= options.gradient_tolerance)
            break;

        double slope = real_inner(grad, dir);
        if (slope >= 0.0) { // conjugate direction lost descent, restart
            dir = -grad;
            slope = -grad_norm * grad_norm;
        }

        double beta = options.armijo_initial_step;
        CMat x_new;
        double f_new = f;
        bool accepted = false;
        for (int bt = 0; bt < options.armijo_max_backtracks; ++bt) {
            x_new = retract(x, beta, dir);
            f_new = f2_value(x_new, digital, target);
            if (f_new <= f + options.armijo_slope * beta * slope) {
                accepted = true;
                break;
            }
            beta *= options.armijo_shrink;
        }
        if (!accepted)
            break; // no admissible step at this accuracy

        const CMat grad_new = riemannian_gradient(x_new, euclidean_gradient_f2(x_new, digital, target));
        const double pr = polak_ribiere(grad_new, grad);
        dir = -grad_new + pr * transport(dir, x_new);
        x = x_new;
        grad = grad_new;
        f = f_new;
        result.f2_trace.push_back(f);
        result.final_gradient_norm = grad.norm();
    }

    result.analog = x;
    result.iterations = t;
    return result;
}

CMat initial_analog(const CMat& target, int num_rf_chains) {
    const Eigen::Index m = target.rows();
    if (num_rf_chains < 1 || num_rf_chains > m)
        throw std::invalid_argument("initial_analog: invalid RF chain count");
    Eigen::HouseholderQR<CMat> qr(target);
    CMat q = qr.householderQ() * CMat::Identity(m, num_rf_chains);
    CMat phases(m, num_rf_chains);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < num_rf_chains; ++j) {
            const Complex v = q(i, j);
            phases(i, j) = (std::abs(v) > 0.0) ? v / std::abs(v) : Complex(1.0, 0.0);
        }
    return phases;
}

FactorizeResult hybrid_factorize(const CMat& target, const FactorizeOptions& options,
                                 const CMat& analog_init_opt) {
    const Eigen::Index k = target.cols();
    if (options.num_rf_chains < k)
        throw std::invalid_argument("hybrid_factorize: need at least K RF chains");

    FactorizeResult result;
    result.analog = analog_init_opt.size() > 0 ? analog_init_opt
                                               : initial_analog(target, options.num_rf_chains);

    double prev_f2 = std::numeric_limits<double>::infinity();
    for (int outer = 0; outer < options.max_outer; ++outer) {
        result.digital = ls_digital(result.analog, target);
        MoResult mo = mo_analog(target, result.digital, result.analog, options.mo);
        result.analog = mo.analog;
        const double f2 = f2_value(result.analog, result.digital, target);
        result.residual_trace.push_back(f2);
        result.iterations = outer + 1;

        const double denom = std::max(prev_f2, 1e-300);
        if (outer > 0 && (prev_f2 - f2) / denom < options.tolerance)
            break;
        prev_f2 = f2;
    }
    // Fit digital part once more against the final analog matrix.
    result.digital = ls_digital(result.analog, target);

    // Enforce the transmit power constraint, which the Frobenius fit alone
    // does not.
    const double target_power = std::min(target.squaredNorm(), options.power_budget);
    const double pair_power = (result.analog * result.digital).squaredNorm();
    if (pair_power > 0.0)
        result.digital *= std::sqrt(target_power / pair_power);
    return result;
}

} // namespace hybrid
} // namespace masec
