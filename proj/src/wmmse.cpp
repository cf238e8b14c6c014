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

#include "masec/wmmse.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace masec {
namespace wmmse {

namespace {

double ln_det_pd(const CMat& a) {
    Eigen::LLT<CMat> llt(a);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("wmmse: log-det of a non-PD matrix");
    double out = 0.0;
    const CMat l = llt.matrixL();
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        out += 2.0 * std::log(std::real(l(i, i)));
    return out;
}

CMat hermitize(const CMat& a) { return 0.5 * (a + a.adjoint().eval()); }

// ln-domain secrecy objective of the scaled channels (Eq. 10 form).
double secrecy_objective_ln(const CMat& hs, const CMat& zs, const CMat& w) {
    const CMat gu = hs * w;
    const CMat ge = zs * w;
    const CMat au = CMat::Identity(hs.rows(), hs.rows()) + gu * gu.adjoint();
    const CMat ae = CMat::Identity(zs.rows(), zs.rows()) + ge * ge.adjoint();
    return ln_det_pd(hermitize(au)) - ln_det_pd(hermitize(ae));
}

// Eigendecomposition of the mu-independent part of the W-update system; lets
// the dual power curve ||W(mu)||_F^2 be evaluated in O(M K) per probe.
struct DualCurve {
    CMat basis;       // U, M x M unitary
    RVec eigenvalues; // lambda, clamped at 0
    CMat rhs_rotated; // U^H (Hs^H P Q_U^H)

    double power(double mu) const {
        double p = 0.0;
        for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
            const double row_norm2 = rhs_rotated.row(i).squaredNorm();
            if (row_norm2 == 0.0)
                continue;
            const double denom = eigenvalues(i) + mu;
            if (denom <= 0.0)
                return std::numeric_limits<double>::infinity();
            p += row_norm2 / (denom * denom);
        }
        return p;
    }

    CMat precoder(double mu) const {
        CMat scaled = rhs_rotated;
        for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
            const double denom = eigenvalues(i) + mu;
            if (denom > 0.0)
                scaled.row(i) /= denom;
            else
                scaled.row(i).setZero(); // null direction with zero right-hand side
        }
        return basis * scaled;
    }
};

DualCurve build_dual_curve(const CMat& receive_filter, const CMat& weight_user,
                           const CMat& weight_eaves, const CMat& channel_user,
                           const CMat& channel_eaves) {
    const CMat hp = channel_user.adjoint() * receive_filter; // M x K
    CMat a = hp * weight_user * hp.adjoint();
    if (channel_eaves.rows() > 0)
        a += channel_eaves.adjoint() * weight_eaves * channel_eaves;
    a = hermitize(a);

    Eigen::SelfAdjointEigenSolver<CMat> eig(a);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("wmmse: eigendecomposition of the dual system failed");

    DualCurve curve;
    curve.basis = eig.eigenvectors();
    curve.eigenvalues = eig.eigenvalues().cwiseMax(0.0);
    curve.rhs_rotated = curve.basis.adjoint() * (hp * weight_user.adjoint());

    // Zero out right-hand-side rows living in the numerical null space; the
    // analytic range containment makes them pure rounding noise.
    const double lambda_max = curve.eigenvalues.size() ? curve.eigenvalues.maxCoeff() : 0.0;
    const double lambda_cut = lambda_max * 1e-14;
    for (Eigen::Index i = 0; i < curve.eigenvalues.size(); ++i)
        if (curve.eigenvalues(i) <= lambda_cut) {
            curve.eigenvalues(i) = 0.0;
            curve.rhs_rotated.row(i).setZero();
        }
    return curve;
}

} // namespace

CMat mse_matrix(const CMat& receive_filter, const CMat& precoder, const CMat& channel) {
    const Eigen::Index k = precoder.cols();
    const CMat residual = CMat::Identity(k, k) - receive_filter.adjoint() * channel * precoder;
    return residual * residual.adjoint() + receive_filter.adjoint() * receive_filter;
}

CMat update_receive_filter(const CMat& channel, const CMat& precoder) {
    const CMat g = channel * precoder; // L x K
    const Eigen::Index l = channel.rows();
    const CMat a = hermitize(CMat::Identity(l, l) + g * g.adjoint());
    return Eigen::LLT<CMat>(a).solve(g);
}

std::pair<CMat, CMat> update_weights(const CMat& receive_filter, const CMat& precoder,
                                     const CMat& channel_user, const CMat& channel_eaves) {
    const CMat e = hermitize(mse_matrix(receive_filter, precoder, channel_user));
    const Eigen::Index k = precoder.cols();
    CMat q_user = Eigen::LLT<CMat>(e).solve(CMat::Identity(k, k));

    const Eigen::Index le = channel_eaves.rows();
    const CMat ge = channel_eaves * precoder;
    const CMat ae = hermitize(CMat::Identity(le, le) + ge * ge.adjoint());
    CMat q_eaves = Eigen::LLT<CMat>(ae).solve(CMat::Identity(le, le));
    return {hermitize(q_user), hermitize(q_eaves)};
}

CMat solve_w_given_mu(const CMat& receive_filter, const CMat& weight_user,
                      const CMat& weight_eaves, const CMat& channel_user,
                      const CMat& channel_eaves, double mu) {
    if (mu < 0.0)
        throw std::invalid_argument("solve_w_given_mu: mu must be nonnegative");
    const Eigen::Index m = channel_user.cols();
    const CMat hp = channel_user.adjoint() * receive_filter;
    CMat a = hp * weight_user * hp.adjoint();
    if (channel_eaves.rows() > 0)
        a += channel_eaves.adjoint() * weight_eaves * channel_eaves;
    a = hermitize(a) + mu * CMat::Identity(m, m);
    const CMat rhs = hp * weight_user.adjoint();

    Eigen::LDLT<CMat> ldlt(a);
    const double scale = std::max(std::real(a.trace()) / static_cast<double>(m), 1e-300);
    bool singular = ldlt.info() != Eigen::Success;
    if (!singular) {
        const double d_min = ldlt.vectorD().real().minCoeff();
        singular = d_min <= scale * 1e-13;
    }
    if (singular) {
        if (mu > 0.0)
            throw std::runtime_error("solve_w_given_mu: singular system at positive mu");
        // Ridge fallback: the mu = 0 normal matrix is rank deficient whenever
        // M exceeds L_U + L_E.
        a += (1e-12 * scale) * CMat::Identity(m, m);
        ldlt.compute(a);
        if (ldlt.info() != Eigen::Success)
            throw std::runtime_error("solve_w_given_mu: system needs positive mu");
    }
    return ldlt.solve(rhs);
}

DualSolution bisect_mu(const CMat& receive_filter, const CMat& weight_user,
                       const CMat& weight_eaves, const CMat& channel_user,
                       const CMat& channel_eaves, double power_budget) {
    if (!(power_budget > 0.0))
        throw std::invalid_argument("bisect_mu: power budget must be positive");
    const DualCurve curve =
        build_dual_curve(receive_filter, weight_user, weight_eaves, channel_user, channel_eaves);

    DualSolution out;
    if (curve.power(0.0) <= power_budget) {
        out.mu = 0.0;
        out.precoder = curve.precoder(0.0);
        return out;
    }

    double mu_hi = 1.0;
    int doublings = 0;
    while (curve.power(mu_hi) >= power_budget) {
        mu_hi *= 2.0;
        if (++doublings > 60)
            throw std::runtime_error("bisect_mu: failed to bracket mu after 60 doublings");
    }

    double lo = 0.0, hi = mu_hi;
    const double tol = 1e-8 * power_budget;
    double mu = hi;
    for (int iter = 0; iter < 400; ++iter) {
        mu = 0.5 * (lo + hi);
        const double p = curve.power(mu);
        if (std::abs(p - power_budget) <= tol)
            break;
        if (p > power_budget)
            lo = mu;
        else
            hi = mu;
    }
    if (std::abs(curve.power(mu) - power_budget) > tol)
        throw std::runtime_error("bisect_mu: bisection did not reach the power tolerance");
    out.mu = mu;
    out.precoder = curve.precoder(mu);
    return out;
}

double wmmse_objective(const CMat& receive_filter, const CMat& weight_user,
                       const CMat& weight_eaves, const CMat& precoder, const CMat& channel_user,
                       const CMat& channel_eaves) {
    const Eigen::Index k = precoder.cols();
    const Eigen::Index le = channel_eaves.rows();
    const CMat e = mse_matrix(receive_filter, precoder, channel_user);
    const CMat ge = channel_eaves * precoder;
    const CMat ae = CMat::Identity(le, le) + ge * ge.adjoint();
    double obj = ln_det_pd(hermitize(weight_user)) - std::real((weight_user * e).trace()) +
                 static_cast<double>(k);
    obj += ln_det_pd(hermitize(weight_eaves)) - std::real((weight_eaves * ae).trace()) +
           static_cast<double>(le);
    return obj;
}

CMat initial_precoder(const CMat& channel_user, int num_streams, double power_budget) {
    const Eigen::Index m = channel_user.cols();
    Eigen::JacobiSVD<CMat> svd(channel_user, Eigen::ComputeThinV);
    CMat w0 = CMat::Zero(m, num_streams);
    const int available = static_cast<int>(svd.matrixV().cols());
    const int used = std::min(num_streams, available);
    w0.leftCols(used) = svd.matrixV().leftCols(used);
    if (used > 0)
        w0 *= std::sqrt(power_budget / static_cast<double>(used));
    return w0;
}

WmmseResult wmmse_fully_digital(const CMat& channel_user, const CMat& channel_eaves,
                                double power_budget, const CMat& initial_precoder_opt,
                                const WmmseOptions& options) {
    CMat w = initial_precoder_opt;
    if (w.size() == 0)
        throw std::invalid_argument("wmmse_fully_digital: empty initial precoder");
    const double w0_power = w.squaredNorm();
    if (w0_power > power_budget * (1.0 + 1e-6))
        throw std::invalid_argument("wmmse_fully_digital: initial precoder exceeds the budget");
    if (w0_power > power_budget)
        w *= std::sqrt(power_budget / w0_power); // absorb bisection-level roundoff

    WmmseResult result;
    double prev_obj = -std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < options.max_iterations; ++iter) {
        const CMat p = update_receive_filter(channel_user, w);
        auto [q_user, q_eaves] = update_weights(p, w, channel_user, channel_eaves);
        result.objective_trace.push_back(
            wmmse_objective(p, q_user, q_eaves, w, channel_user, channel_eaves));

        const DualSolution dual =
            bisect_mu(p, q_user, q_eaves, channel_user, channel_eaves, power_budget);
        w = dual.precoder;
        const double w_power = w.squaredNorm();
        if (w_power > power_budget)
            w *= std::sqrt(power_budget / w_power); // keep the iterate strictly feasible
        const double obj =
            wmmse_objective(p, q_user, q_eaves, w, channel_user, channel_eaves);
        result.objective_trace.push_back(obj);

        result.secrecy_trace_bits.push_back(
            std::max(secrecy_objective_ln(channel_user, channel_eaves, w), 0.0) / kLn2);
        result.state = {p, q_user, q_eaves, dual.mu, w};
        result.iterations = iter + 1;

        const double denom = std::max(std::abs(prev_obj), 1e-12);
        if (iter > 0 && std::abs(obj - prev_obj) / denom < options.tolerance) {
            result.converged = true;
            break;
        }
        prev_obj = obj;
    }
    result.precoder = w;
    return result;
}

} // namespace wmmse
} // namespace masec
