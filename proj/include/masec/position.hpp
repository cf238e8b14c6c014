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

#ifndef MASEC_POSITION_HPP
#define MASEC_POSITION_HPP

#include "masec/geometry.hpp"
#include "masec/qp2d.hpp"
#include "masec/types.hpp"

#include <vector>

namespace masec {
namespace position {

// Per-antenna majorization-minimization position update. Channels entering
// this module are noise-normalized, matching the WMMSE stage.

enum class PropagationModel { NearField, FarField };

// Data of the single-antenna subproblem
//   min_t  h^H(t) D_U h(t) + z^H(t) D_E z(t) + 2 Re{h^H(t) r_U} + 2 Re{z^H(t) r_E}
// for fixed beamformers, auxiliaries, and the other antennas' positions.
struct PositionSubproblem {
    int antenna = 0;
    CMat d_user;  // D^U_m = ||v_m||^2 * C_mat, Hermitian PSD
    CMat d_eaves; // D^E_m = ||v_m||^2 * Q_E
    CVec r_user;  // r^U_m
    CVec r_eaves; // r^E_m
    Vec2 anchor;  // t_m at build time

    // Scene data needed to evaluate scaled channel columns at candidate points.
    ReceiverGeometry user;
    ReceiverGeometry eaves; // zero elements = no eavesdropper
    double wavelength = 0.0;
    double sigma_user = 1.0;
    double sigma_eaves = 1.0;
    PropagationModel model = PropagationModel::NearField;

    CVec user_column(const Vec2& t) const;
    CVec eaves_column(const Vec2& t) const;
};

// C_mat = P Q_U P^H (named to avoid clashing with the moving region),
// B = P Q_U V^H, cross terms r_m from the other antennas' columns.
PositionSubproblem build_subproblem(const CMat& effective_beamformer, const CMat& channel_user,
                                    const CMat& channel_eaves, const CMat& receive_filter,
                                    const CMat& weight_user, const CMat& weight_eaves,
                                    const AntennaLayout& layout, int antenna,
                                    const ReceiverGeometry& user, const ReceiverGeometry& eaves,
                                    double wavelength, double sigma_user, double sigma_eaves,
                                    PropagationModel model = PropagationModel::NearField);

// Minimization objective of the subproblem at position t (exact channels).
double f4_value(const PositionSubproblem& sub, const Vec2& t);

// Quadratic position objective with fixed auxiliaries,
// 2 Re{Tr(B Hs^H)} - Tr(Hs W_X Hs^H C_mat) - Tr(Zs W_X Zs^H Q_E);
// f4 equals its negative up to a constant in t_m.
double f3_quadratic(const CMat& effective_beamformer, const CMat& channel_user,
                    const CMat& channel_eaves, const CMat& receive_filter,
                    const CMat& weight_user, const CMat& weight_eaves);

// Largest eigenvalue of a Hermitian matrix by power iteration
// (tolerance 1e-10, 200 iterations; inputs are at most L x L).
double surrogate_phi(const CMat& hermitian);

// tau_U = r_U - (zeta_U I - D_U) h(anchor), tau_E = r_E - (zeta_E I - D_E) z(anchor).
std::pair<CVec, CVec> tau_vectors(const PositionSubproblem& sub, double zeta_user,
                                  double zeta_eaves, const Vec2& anchor);

// Phase-only surrogate f5(t) = 2 sum_l rho_l cos(phi_l(t)) with amplitudes
// frozen at the anchor and phi_l(t) = 2pi/lambda * gamma_l(t) + angle(tau_l)
// (gamma from the Fresnel expansion, or linear under the far-field model).
struct PhaseTerm {
    double amplitude = 0.0;    // rho = |tau_l| * |h_l(anchor)|
    double phase_offset = 0.0; // angle(tau_l)
    double range = 0.0;        // r_l
    double s = 0.0;            // sin(theta_l) sin(phi_l)
    double c = 0.0;            // cos(phi_l)
};

struct PhaseModel {
    std::vector<PhaseTerm> terms;
    double wavelength = 0.0;
    PropagationModel model = PropagationModel::NearField;
};

PhaseModel make_phase_model(const PositionSubproblem& sub, const CVec& tau_user,
                            const CVec& tau_eaves, const Vec2& anchor);

double f5_value(const PhaseModel& model, const Vec2& t);
Vec2 f5_gradient(const PhaseModel& model, const Vec2& t);
Eigen::Matrix2d f5_hessian(const PhaseModel& model, const Vec2& t);

// Curvature bound 8pi^2/lambda^2 * sum(rho) + 4pi/lambda * sum(rho) * max_l(2/r_l),
// verified dominant against the exact Hessian at the anchor and doubled on
// violation (at most 30 times).
double delta_bound(const PhaseModel& model, const Vec2& anchor);

// First-order inner approximation of ||t - t_other|| >= d_min, anchored at t_anchor.
Halfplane linearize_min_distance(const Vec2& t_anchor, const Vec2& t_other, double d_min);

struct PositionResult {
    Vec2 position = Vec2::Zero();
    std::vector<double> f4_trace;
    int iterations = 0;
    bool qp_feasible = true;
};

// MM loop for one antenna: surrogate build, QP step, descent-guarded accept,
// until the relative f4 change drops below epsilon or the iteration cap.
PositionResult optimize_position_m(const PositionSubproblem& sub, const MovingRegion& region,
                                   double d_min, const std::vector<Vec2>& other_positions,
                                   double epsilon, int max_iterations);

} // namespace position
} // namespace masec

#endif
