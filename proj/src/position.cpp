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

#include "masec/position.hpp"

#include <cmath>
#include <stdexcept>

namespace masec {
namespace position {

namespace {

CMat hermitize(const CMat& a) { return 0.5 * (a + a.adjoint().eval()); }

CVec scaled_column(const Vec2& t, const ReceiverGeometry& geom, double wavelength, double sigma,
                   PropagationModel model) {
    if (geom.num_elements() == 0)
        return CVec(0);
    const Vec3 p(0.0, t.x(), t.y());
    CVec h = (model == PropagationModel::NearField) ? near_field_column(p, geom, wavelength)
                                                    : far_field_column(p, geom, wavelength);
    return h / sigma;
}

struct GammaDerivs {
    double dy = 0.0, dz = 0.0;
    double dyy = 0.0, dyz = 0.0, dzz = 0.0;
};

GammaDerivs gamma_derivs(const PhaseTerm& term, const Vec2& t, PropagationModel model) {
    GammaDerivs d;
    d.dy = -term.s;
    d.dz = -term.c;
    if (model == PropagationModel::FarField)
        return d;
    const double u = t.x() * term.s + t.y() * term.c;
    d.dy += (t.x() - u * term.s) / term.range;
    d.dz += (t.y() - u * term.c) / term.range;
    d.dyy = (1.0 - term.s * term.s) / term.range;
    d.dyz = -term.s * term.c / term.range;
    d.dzz = (1.0 - term.c * term.c) / term.range;
    return d;
}

double gamma_value(const PhaseTerm& term, const Vec2& t, PropagationModel model) {
    const double u = t.x() * term.s + t.y() * term.c;
    double g = term.range - u;
    if (model == PropagationModel::NearField)
        g += (t.squaredNorm() - u * u) / (2.0 * term.range);
    return g;
}

void append_terms(std::vector<PhaseTerm>& out, const CVec& tau, const CVec& anchor_column,
                  const ReceiverGeometry& geom) {
    for (Eigen::Index l = 0; l < tau.size(); ++l) {
        PhaseTerm term;
        term.amplitude = std::abs(tau(l)) * std::abs(anchor_column(l));
        term.phase_offset = std::arg(tau(l));
        term.range = geom.element_polar[l].range;
        term.s = std::sin(geom.element_polar[l].azimuth) * std::sin(geom.element_polar[l].elevation);
        term.c = std::cos(geom.element_polar[l].elevation);
        out.push_back(term);
    }
}

} // namespace

CVec PositionSubproblem::user_column(const Vec2& t) const {
    return scaled_column(t, user, wavelength, sigma_user, model);
}

CVec PositionSubproblem::eaves_column(const Vec2& t) const {
    return scaled_column(t, eaves, wavelength, sigma_eaves, model);
}

PositionSubproblem build_subproblem(const CMat& effective_beamformer, const CMat& channel_user,
                                    const CMat& channel_eaves, const CMat& receive_filter,
                                    const CMat& weight_user, const CMat& weight_eaves,
                                    const AntennaLayout& layout, int antenna,
                                    const ReceiverGeometry& user, const ReceiverGeometry& eaves,
                                    double wavelength, double sigma_user, double sigma_eaves,
                                    PropagationModel model) {
    const CMat& v = effective_beamformer;
    PositionSubproblem sub;
    sub.antenna = antenna;
    sub.anchor = layout.yz(antenna);
    sub.user = user;
    sub.eaves = eaves;
    sub.wavelength = wavelength;
    sub.sigma_user = sigma_user;
    sub.sigma_eaves = sigma_eaves;
    sub.model = model;

    const CVec v_m = v.row(antenna).adjoint(); // K x 1
    const double v_norm2 = v_m.squaredNorm();
    const CMat c_mat = hermitize(receive_filter * weight_user * receive_filter.adjoint());
    sub.d_user = v_norm2 * c_mat;
    sub.d_eaves = v_norm2 * hermitize(weight_eaves);

    // The linear channel term enters the minimization objective with a minus
    // (it rewards the user link); the cross coupling from the other antennas
    // enters with a plus.
    const CMat b = receive_filter * weight_user * v.adjoint(); // L_U x M
    const CMat sum_user = channel_user * v - channel_user.col(antenna) * v.row(antenna);
    sub.r_user = c_mat * (sum_user * v_m) - b.col(antenna);
    if (channel_eaves.rows() > 0) {
        const CMat sum_eaves = channel_eaves * v - channel_eaves.col(antenna) * v.row(antenna);
        sub.r_eaves = weight_eaves * (sum_eaves * v_m);
    } else {
        sub.r_eaves = CVec(0);
    }
    return sub;
}

double f4_value(const PositionSubproblem& sub, const Vec2& t) {
    const CVec h = sub.user_column(t);
    double f = std::real(h.dot(sub.d_user * h)) + 2.0 * std::real(h.dot(sub.r_user));
    if (sub.eaves.num_elements() > 0) {
        const CVec z = sub.eaves_column(t);
        f += std::real(z.dot(sub.d_eaves * z)) + 2.0 * std::real(z.dot(sub.r_eaves));
    }
    return f;
}

double f3_quadratic(const CMat& effective_beamformer, const CMat& channel_user,
                    const CMat& channel_eaves, const CMat& receive_filter,
                    const CMat& weight_user, const CMat& weight_eaves) {
    const CMat& v = effective_beamformer;
    const CMat b = receive_filter * weight_user * v.adjoint();
    const CMat c_mat = receive_filter * weight_user * receive_filter.adjoint();
    const CMat gu = channel_user * v;
    double f = 2.0 * std::real((b * channel_user.adjoint()).trace());
    f -= std::real((gu.adjoint() * c_mat * gu).trace());
    if (channel_eaves.rows() > 0) {
        const CMat ge = channel_eaves * v;
        f -= std::real((ge.adjoint() * weight_eaves * ge).trace());
    }
    return f;
}

double surrogate_phi(const CMat& hermitian) {
    const Eigen::Index n = hermitian.rows();
    if (n == 0)
        return 0.0;
    const double scale = hermitian.cwiseAbs().maxCoeff();
    if (scale == 0.0)
        return 0.0;

    CVec v = CVec::Ones(n);
    v(0) += Complex(0.0, 0.5); // avoid a start orthogonal to the top eigenvector
    v /= v.norm();
    double zeta = 0.0;
    for (int it = 0; it < 200; ++it) {
        CVec w = hermitian * v;
        const double norm = w.norm();
        if (norm == 0.0)
            return 0.0;
        w /= norm;
        const double rayleigh = std::real(w.dot(hermitian * w));
        if (it > 0 && std::abs(rayleigh - zeta) <= 1e-10 * std::max(std::abs(rayleigh), scale))
            return rayleigh;
        zeta = rayleigh;
        v = w;
    }
    return zeta;
}

std::pair<CVec, CVec> tau_vectors(const PositionSubproblem& sub, double zeta_user,
                                  double zeta_eaves, const Vec2& anchor) {
    const CVec h = sub.user_column(anchor);
    const Eigen::Index lu = h.size();
    CVec tau_user = sub.r_user - (zeta_user * CMat::Identity(lu, lu) - sub.d_user) * h;
    CVec tau_eaves(0);
    if (sub.eaves.num_elements() > 0) {
        const CVec z = sub.eaves_column(anchor);
        const Eigen::Index le = z.size();
        tau_eaves = sub.r_eaves - (zeta_eaves * CMat::Identity(le, le) - sub.d_eaves) * z;
    }
    return {tau_user, tau_eaves};
}

PhaseModel make_phase_model(const PositionSubproblem& sub, const CVec& tau_user,
                            const CVec& tau_eaves, const Vec2& anchor) {
    PhaseModel model;
    model.wavelength = sub.wavelength;
    model.model = sub.model;
    model.terms.reserve(static_cast<std::size_t>(tau_user.size() + tau_eaves.size()));
    append_terms(model.terms, tau_user, sub.user_column(anchor), sub.user);
    if (tau_eaves.size() > 0)
        append_terms(model.terms, tau_eaves, sub.eaves_column(anchor), sub.eaves);
    return model;
}

double f5_value(const PhaseModel& model, const Vec2& t) {
    const double k = 2.0 * kPi / model.wavelength;
    double f = 0.0;
    for (const PhaseTerm& term : model.terms)
        f += term.amplitude * std::cos(k * gamma_value(term, t, model.model) + term.phase_offset);
    return 2.0 * f;
}

Vec2 f5_gradient(const PhaseModel& model, const Vec2& t) {
    const double k = 2.0 * kPi / model.wavelength;
    Vec2 g = Vec2::Zero();
    for (const PhaseTerm& term : model.terms) {
        const GammaDerivs d = gamma_derivs(term, t, model.model);
        const double phase = k * gamma_value(term, t, model.model) + term.phase_offset;
        const double w = -2.0 * k * term.amplitude * std::sin(phase);
        g.x() += w * d.dy;
        g.y() += w * d.dz;
    }
    return g;
}

Eigen::Matrix2d f5_hessian(const PhaseModel& model, const Vec2& t) {
    const double k = 2.0 * kPi / model.wavelength;
    Eigen::Matrix2d h = Eigen::Matrix2d::Zero();
    for (const PhaseTerm& term : model.terms) {
        const GammaDerivs d = gamma_derivs(term, t, model.model);
        const double phase = k * gamma_value(term, t, model.model) + term.phase_offset;
        const double wc = -2.0 * k * k * term.amplitude * std::cos(phase);
        const double ws = -2.0 * k * term.amplitude * std::sin(phase);
        h(0, 0) += wc * d.dy * d.dy + ws * d.dyy;
        h(0, 1) += wc * d.dy * d.dz + ws * d.dyz;
        h(1, 1) += wc * d.dz * d.dz + ws * d.dzz;
    }
    h(1, 0) = h(0, 1);
    return h;
}

double delta_bound(const PhaseModel& model, const Vec2& anchor) {
    const double k = 2.0 * kPi / model.wavelength;
    double rho_sum = 0.0;
    double curvature_max = 0.0;
    for (const PhaseTerm& term : model.terms) {
        rho_sum += term.amplitude;
        curvature_max = std::max(curvature_max, 2.0 / term.range);
    }
    double delta = 2.0 * k * k * rho_sum + 2.0 * k * rho_sum * curvature_max;
    if (rho_sum == 0.0)
        return 0.0;

    const Eigen::Matrix2d hess = f5_hessian(model, anchor);
    const double tr = hess.trace();
    const double gap = hess(0, 0) - hess(1, 1);
    const double lambda_max =
        0.5 * (tr + std::sqrt(gap * gap + 4.0 * hess(0, 1) * hess(0, 1)));
    int doublings = 0;
    while (delta < lambda_max) {
        delta *= 2.0;
        if (++doublings > 30)
            throw std::runtime_error("delta_bound: curvature bound failed to dominate");
    }
    return delta;
}

Halfplane linearize_min_distance(const Vec2& t_anchor, const Vec2& t_other, double d_min) {
    const Vec2 diff = t_anchor - t_other;
    const double dist = diff.norm();
    if (!(dist > 0.0))
        throw std::invalid_argument("linearize_min_distance: coincident anchor");
    Halfplane h;
    h.normal = diff / dist;
    h.offset = d_min + h.normal.dot(t_other);
    return h;
}

PositionResult optimize_position_m(const PositionSubproblem& sub, const MovingRegion& region,
                                   double d_min, const std::vector<Vec2>& other_positions,
                                   double epsilon, int max_iterations) {
    PositionResult result;
    Vec2 anchor = sub.anchor;
    const double zeta_user = surrogate_phi(sub.d_user);
    const double zeta_eaves = surrogate_phi(sub.d_eaves);

    double f4_prev = f4_value(sub, anchor);
    result.f4_trace.push_back(f4_prev);

    std::vector<Halfplane> halfplanes(other_positions.size());
    for (int t = 0; t < max_iterations; ++t) {
        result.iterations = t + 1;
        const auto [tau_user, tau_eaves] = tau_vectors(sub, zeta_user, zeta_eaves, anchor);
        const PhaseModel phases = make_phase_model(sub, tau_user, tau_eaves, anchor);
        const double delta = delta_bound(phases, anchor);
        if (delta <= 0.0)
            break; // position has no effect on the surrogate

        const Vec2 grad = f5_gradient(phases, anchor);
        const Vec2 coeff = grad - delta * anchor;
        for (std::size_t i = 0; i < other_positions.size(); ++i)
            halfplanes[i] = linearize_min_distance(anchor, other_positions[i], d_min);

        const Qp2dResult qp = solve_box_qp(delta, coeff, region.half_width, halfplanes);
        if (!qp.feasible) {
            result.qp_feasible = false;
            break;
        }
        const double f4_new = f4_value(sub, qp.point);
        if (f4_new > f4_prev)
            break; // surrogate approximation error; keep the anchor
        result.f4_trace.push_back(f4_new);
        anchor = qp.point;

        const double rel = std::abs(f4_new - f4_prev) / std::max(std::abs(f4_prev), 1e-300);
        f4_prev = f4_new;
        if (rel <= epsilon)
            break;
    }

    result.position = anchor;
    return result;
}

} // namespace position
} // namespace masec
