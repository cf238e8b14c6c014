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

#ifndef MASEC_SOLVER_HPP
#define MASEC_SOLVER_HPP

#include "masec/geometry.hpp"
#include "masec/position.hpp"
#include "masec/rates.hpp"
#include "masec/types.hpp"

#include <string>
#include <vector>

namespace masec {

// Problem instance: transmit array, receivers, and power budget.
struct Scene {
    MovingRegion region;
    AntennaLayout layout; // initial positions, feasible
    ReceiverGeometry user;
    ReceiverGeometry eavesdropper; // zero elements disables the wiretap link
    double wavelength = 0.0;
    double power_budget = 0.0; // watts
    int num_rf_chains = 0;     // N
    int num_streams = 0;       // K

    // Optional warm start; empty matrices mean the default initialization.
    BeamformerSet initial_beamformers;

    void validate() const;
};

enum class BeamformingMode { Hybrid, FullyDigital };

struct SolveConfig {
    double outer_tolerance = 1e-6; // epsilon_3
    int max_outer_iterations = 300;
    double mo_tolerance = 1e-6; // epsilon_1
    int mo_max_iterations = 300;
    double mm_tolerance = 1e-6; // epsilon_2
    int mm_max_iterations = 300;
    double wmmse_tolerance = 1e-6;
    int wmmse_max_iterations = 300;
    int hybrid_max_outer = 50;
    std::uint64_t rng_seed = 0;

    BeamformingMode mode = BeamformingMode::Hybrid;
    bool optimize_positions = true;
    // Channel model assumed by the optimizer; evaluation against the true
    // near-field channel is the caller's concern.
    position::PropagationModel propagation = position::PropagationModel::NearField;

    void validate() const;
};

struct SolveResult {
    BeamformerSet beamformers;
    AntennaLayout layout;
    std::vector<double> secrecy_trace_bits; // [0] = initial configuration
    int iterations = 0;                     // outer iterations performed
    bool converged = false;
    double wall_seconds = 0.0;
    std::string error; // nonempty when an inner stage failed; trace is partial

    double final_secrecy() const {
        return secrecy_trace_bits.empty() ? 0.0 : secrecy_trace_bits.back();
    }
};

enum class LayoutInit { Grid, Random };

// Grid mode: centered ceil(sqrt(M)) x ceil(sqrt(M)) lattice with spacing A/n.
// Random mode: rejection sampling until pairwise feasible (at most 1e5 draws).
AntennaLayout initialize_layout(int num_antennas, const MovingRegion& region, double min_spacing,
                                LayoutInit mode, Rng& rng);

// Alternating optimization: WMMSE fully-digital stage, hybrid factorization,
// then a per-antenna MM sweep, until the relative secrecy change falls below
// the outer tolerance. The secrecy trace never decreases: beamformer updates
// and antenna moves that would lower the objective are rolled back.
SolveResult solve(const Scene& scene, const SolveConfig& config);

} // namespace masec

#endif
