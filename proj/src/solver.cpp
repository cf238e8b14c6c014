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

#include "masec/solver.hpp"

#include "masec/hybrid.hpp"
#include "masec/wmmse.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace masec {

namespace {

using position::PropagationModel;

CVec scaled_column(const Vec3& p, const ReceiverGeometry& geom, double wavelength, double sigma,
                   PropagationModel model) {
    CVec h = (model == PropagationModel::NearField) ? near_field_column(p, geom, wavelength)
                                                    : far_field_column(p, geom, wavelength);
    return h / sigma;
}

struct ScaledChannels {
    CMat user;  // Hs = H / sigma_U
    CMat eaves; // Zs = Z / sigma_E, zero rows when the wiretap link is absent
};

ScaledChannels build_channels(const Scene& scene, const AntennaLayout& layout,
                              PropagationModel model) {
    const double su = std::sqrt(scene.user.noise_variance);
    const double se = std::sqrt(scene.eavesdropper.noise_variance);
    ScaledChannels ch;
    ch.user.resize(scene.user.num_elements(), layout.size());
    ch.eaves.resize(scene.eavesdropper.num_elements(), layout.size());
    for (int m = 0; m < layout.size(); ++m) {
        ch.user.col(m) = scaled_column(layout.positions[m], scene.user, scene.wavelength, su, model);
        if (ch.eaves.rows() > 0)
            ch.eaves.col(m) =
                scaled_column(layout.positions[m], scene.eavesdropper, scene.wavelength, se, model);
    }
    return ch;
}

void update_channel_column(ScaledChannels& ch, const Scene& scene, const AntennaLayout& layout,
                           int m, PropagationModel model) {
    const double su = std::sqrt(scene.user.noise_variance);
    const double se = std::sqrt(scene.eavesdropper.noise_variance);
    ch.user.col(m) = scaled_column(layout.positions[m], scene.user, scene.wavelength, su, model);
    if (ch.eaves.rows() > 0)
        ch.eaves.col(m) =
            scaled_column(layout.positions[m], scene.eavesdropper, scene.wavelength, se, model);
}

// Unclamped secrecy objective R_U - R_E in bits. The reported trace clamps
// at zero; guards and the convergence test use the unclamped value so that
// progress through the negative range is not frozen by the clamp.
double secrecy_objective_bits(const ScaledChannels& ch, const CMat& v) {
    const double ru = achievable_rate(ch.user, v, 1.0);
    const double re = ch.eaves.rows() > 0 ? achievable_rate(ch.eaves, v, 1.0) : 0.0;
    return ru - re;
}

} // namespace

void Scene::validate() const {
    region.validate();
    layout.validate(region);
    user.validate();
    if (eavesdropper.num_elements() > 0)
        eavesdropper.validate();
    if (!(wavelength > 0.0))
        throw std::invalid_argument("Scene: wavelength must be positive");
    if (!(power_budget > 0.0))
        throw std::invalid_argument("Scene: power budget must be positive");
    if (num_streams < 1 || num_rf_chains < num_streams)
        throw std::invalid_argument("Scene: need K >= 1 and N >= K");
}

void SolveConfig::validate() const {
    if (!(outer_tolerance > 0.0) || !(mo_tolerance > 0.0) || !(mm_tolerance > 0.0) ||
        !(wmmse_tolerance > 0.0))
        throw std::invalid_argument("SolveConfig: tolerances must be positive");
    if (max_outer_iterations < 1 || mo_max_iterations < 1 || mm_max_iterations < 1 ||
        wmmse_max_iterations < 1 || hybrid_max_outer < 1)
        throw std::invalid_argument("SolveConfig: iteration caps must be at least 1");
}

AntennaLayout initialize_layout(int num_antennas, const MovingRegion& region, double min_spacing,
                                LayoutInit mode, Rng& rng) {
    region.validate();
    if (num_antennas < 1)
        throw std::invalid_argument("initialize_layout: antenna count must be positive");
    const double a = 2.0 * region.half_width;

    AntennaLayout layout;
    layout.min_spacing = min_spacing;
    layout.positions.reserve(num_antennas);

    if (mode == LayoutInit::Grid) {
        const int n = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(num_antennas))));
        const double spacing = a / n;
        if (num_antennas > 1 && spacing < min_spacing)
            throw std::runtime_error("initialize_layout: grid does not fit the moving region");
        for (int i = 0; i < n && layout.size() < num_antennas; ++i)
            for (int j = 0; j < n && layout.size() < num_antennas; ++j)
                layout.positions.emplace_back(0.0, (j - 0.5 * (n - 1)) * spacing,
                                              (i - 0.5 * (n - 1)) * spacing);
        return layout;
    }

    // Disk-packing bound: more than the hexagonal density cannot fit.
    if (num_antennas > 1 &&
        num_antennas * kPi * min_spacing * min_spacing / 4.0 > 0.9069 * (a + min_spacing) * (a + min_spacing))
        throw std::runtime_error("initialize_layout: antennas cannot be packed into the region");

    int attempts = 0;
    while (layout.size() < num_antennas) {
        if (++attempts > 100000)
            throw std::runtime_error("initialize_layout: random packing exceeded the attempt cap");
        const Vec3 p(0.0, rng.uniform(-region.half_width, region.half_width),
                     rng.uniform(-region.half_width, region.half_width));
        bool ok = true;
        for (const Vec3& q : layout.positions)
            if ((p - q).norm() < min_spacing) {
                ok = false;
                break;
            }
        if (ok)
            layout.positions.push_back(p);
    }
    return layout;
}

SolveResult solve(const Scene& scene, const SolveConfig& config) {
    const auto t_start = std::chrono::steady_clock::now();
    scene.validate();
    config.validate();

    const int num_antennas = scene.layout.size();
    const int k = scene.num_streams;
    const int n = scene.num_rf_chains;
    const bool hybrid_mode = config.mode == BeamformingMode::Hybrid;

    SolveResult result;
    result.layout = scene.layout;
    result.beamformers.power_budget = scene.power_budget;

    ScaledChannels ch = build_channels(scene, result.layout, config.propagation);

    // Initial beamformers: warm start when provided, matched-filter + phase
    // extraction otherwise.
    CMat w_full, w_analog, w_digital;
    if (scene.initial_beamformers.has_full() || scene.initial_beamformers.W_A.size() > 0) {
        w_full = scene.initial_beamformers.W_full;
        w_analog = scene.initial_beamformers.W_A;
        w_digital = scene.initial_beamformers.W_D;
        if (w_full.size() == 0)
            w_full = wmmse::initial_precoder(ch.user, k, scene.power_budget);
    } else {
        w_full = wmmse::initial_precoder(ch.user, k, scene.power_budget);
    }
    if (hybrid_mode && w_analog.size() == 0) {
        w_analog = hybrid::initial_analog(w_full, n);
        w_digital = hybrid::ls_digital(w_analog, w_full);
        const double target = std::min(w_full.squaredNorm(), scene.power_budget);
        const double got = (w_analog * w_digital).squaredNorm();
        if (got > 0.0)
            w_digital *= std::sqrt(target / got);
    }

    CMat v = hybrid_mode ? CMat(w_analog * w_digital) : w_full;
    double current = secrecy_objective_bits(ch, v);
    result.secrecy_trace_bits.push_back(std::max(current, 0.0));

    wmmse::WmmseOptions wopt{config.wmmse_tolerance, config.wmmse_max_iterations};
    hybrid::FactorizeOptions fopt;
    fopt.num_rf_chains = n;
    fopt.tolerance = config.mo_tolerance;
    fopt.max_outer = config.hybrid_max_outer;
    fopt.mo.gradient_tolerance = config.mo_tolerance;
    fopt.mo.max_iterations = config.mo_max_iterations;
    fopt.power_budget = scene.power_budget;

    try {
        double prev_unclamped = current;
        for (int outer = 1; outer <= config.max_outer_iterations; ++outer) {
            // Stage I + II: fully-digital WMMSE, then factorization.
            const wmmse::WmmseResult stage1 =
                wmmse::wmmse_fully_digital(ch.user, ch.eaves, scene.power_budget, w_full, wopt);
            CMat cand_full = stage1.precoder;
            CMat cand_analog = w_analog, cand_digital = w_digital;
            CMat cand_v;
            if (hybrid_mode) {
                const hybrid::FactorizeResult fact =
                    hybrid::hybrid_factorize(cand_full, fopt, w_analog);
                cand_analog = fact.analog;
                cand_digital = fact.digital;
                cand_v = cand_analog * cand_digital;
            } else {
                cand_v = cand_full;
            }

            // The factorization gap can make the hybrid candidate worse than
            // the incumbent; keep whichever scores higher.
            const double cand_secrecy = secrecy_objective_bits(ch, cand_v);
            if (cand_secrecy >= current) {
                w_full = cand_full;
                w_analog = cand_analog;
                w_digital = cand_digital;
                v = cand_v;
                current = cand_secrecy;
            }

            // Per-antenna MM sweep with rollback of moves that lower the
            // true objective. Moves gaining less than M * eps_3 * |F| are
            // also rolled back: the isotropic curvature bound cripples the
            // step length along the receivers' low-curvature axis, and the
            // resulting micro-drift would otherwise hold every sweep just
            // above the outer tolerance. With this floor, any accepted move
            // by itself keeps the sweep above the tolerance, and a sweep of
            // rejected moves terminates the loop.
            if (config.optimize_positions) {
                const double move_deadband = config.outer_tolerance * num_antennas *
                                             std::max(std::abs(current), 1.0);
                std::vector<Vec2> others(num_antennas - 1);
                for (int m = 0; m < num_antennas; ++m) {
                    const CMat p = wmmse::update_receive_filter(ch.user, v);
                    const auto [q_user, q_eaves] =
                        wmmse::update_weights(p, v, ch.user, ch.eaves);
                    const position::PositionSubproblem sub = position::build_subproblem(
                        v, ch.user, ch.eaves, p, q_user, q_eaves, result.layout, m, scene.user,
                        scene.eavesdropper, scene.wavelength, std::sqrt(scene.user.noise_variance),
                        std::sqrt(scene.eavesdropper.noise_variance), config.propagation);
                    int idx = 0;
                    for (int j = 0; j < num_antennas; ++j)
                        if (j != m)
                            others[idx++] = result.layout.yz(j);

                    const position::PositionResult move = position::optimize_position_m(
                        sub, scene.region, result.layout.min_spacing, others, config.mm_tolerance,
                        config.mm_max_iterations);

                    const Vec2 old_pos = result.layout.yz(m);
                    if ((move.position - old_pos).norm() == 0.0)
                        continue;
                    result.layout.set_yz(m, move.position);
                    update_channel_column(ch, scene, result.layout, m, config.propagation);
                    const double moved_secrecy = secrecy_objective_bits(ch, v);
                    if (moved_secrecy >= current + move_deadband) {
                        current = moved_secrecy;
                    } else {
                        result.layout.set_yz(m, old_pos);
                        update_channel_column(ch, scene, result.layout, m, config.propagation);
                    }
                }
            }

            result.secrecy_trace_bits.push_back(std::max(current, 0.0));
            result.iterations = outer;
            const std::size_t n_trace = result.secrecy_trace_bits.size();
            const double prev_rate = result.secrecy_trace_bits[n_trace - 2];
            const double rate_change =
                std::abs(result.secrecy_trace_bits[n_trace - 1] - prev_rate) / (prev_rate + 1e-12);
            // While both iterates are clamped at zero, keep going as long as
            // the unclamped objective still moves.
            const double obj_change =
                std::abs(current - prev_unclamped) / (std::abs(prev_unclamped) + 1e-12);
            if (rate_change <= config.outer_tolerance && obj_change <= config.outer_tolerance) {
                result.converged = true;
                break;
            }
            prev_unclamped = current;
        }
    } catch (const std::exception& ex) {
        result.error = ex.what();
    }

    result.beamformers.W_full = w_full;
    result.beamformers.W_A = w_analog;
    result.beamformers.W_D = w_digital;
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return result;
}

} // namespace masec
