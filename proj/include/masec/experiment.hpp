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

#ifndef MASEC_EXPERIMENT_HPP
#define MASEC_EXPERIMENT_HPP

#include "masec/solver.hpp"
#include "masec/types.hpp"

#include <string>
#include <vector>

namespace masec {

enum class Scheme { Proposed, FullyDigital, Rpa, Fpaf, Fpah, FarField };

std::string scheme_name(Scheme scheme);
Scheme parse_scheme(const std::string& name); // proposed|fd|rpa|fpaf|fpah|ff

// Simulation setup. Defaults reproduce the full-scale configuration; the
// desk preset shrinks it to laptop-sized runs.
struct ExperimentConfig {
    int num_antennas = 64; // M
    int num_rf_chains = 4; // N
    int num_streams = 2;   // K
    int user_elements = 4; // L_U
    int eaves_elements = 4;
    double wavelength = 0.01;             // meters
    double region_wavelengths = 100.0;    // A / lambda
    double min_spacing_wavelengths = 0.5; // d_min / lambda
    double power_dbm = 20.0;              // P_B
    double noise_dbm = -80.0;             // sigma^2, both receivers
    double user_range = 15.0;             // meters
    double user_azimuth = kPi / 4.0;      // radians
    double eaves_range = 10.0;
    double eaves_azimuth = kPi / 4.0;

    std::vector<Scheme> schemes = {Scheme::Proposed};
    std::string sweep_axis; // "", eav_distance, eav_azimuth, region_size, power, num_antennas
    std::vector<double> sweep_values;
    int trials = 500;
    std::uint64_t seed = 1;
    int jobs = 0; // worker threads; 0 = hardware concurrency

    double tolerance = 1e-6;       // epsilon_1 = epsilon_2 = epsilon_3
    int max_outer_iterations = 300; // T_max
    int max_inner_iterations = 300; // t_max^MO = t_max^MM

    double region_half_width() const { return 0.5 * region_wavelengths * wavelength; }
    double min_spacing() const { return min_spacing_wavelengths * wavelength; }
    double power_watt() const { return dbm_to_watt(power_dbm); }
    double noise_watt() const { return dbm_to_watt(noise_dbm); }

    void validate() const;
    static ExperimentConfig desk_preset();
    static ExperimentConfig paper_preset();
};

// Applies the keys present in the JSON file on top of the base config.
ExperimentConfig load_config_json(const std::string& path,
                                  const ExperimentConfig& base = ExperimentConfig());
void apply_preset(ExperimentConfig& config, const std::string& preset); // desk|paper

struct TrialResult {
    int trial = 0;
    double secrecy_bits = 0.0; // near-field evaluation
    int iterations = 0;
    double seconds = 0.0;
};

struct ExperimentRecord {
    std::string scheme;
    double axis_value = 0.0;
    std::vector<TrialResult> trials;
    double mean = 0.0;
    double stddev = 0.0;
};

// Scene/solver setup for one scheme (layout init consumes the trial rng).
Scene make_scene(const ExperimentConfig& config, Scheme scheme, Rng& rng);
SolveConfig make_solve_config(const ExperimentConfig& config, Scheme scheme);

// One Monte Carlo trial: solve under the scheme's model, then evaluate the
// secrecy rate under the true near-field channel.
TrialResult run_scheme_trial(const ExperimentConfig& config, Scheme scheme, Rng& trial_rng);

// All trials of one scheme at one sweep point, distributed over the worker
// pool; per-trial seeds derive from (seed, lane, trial).
ExperimentRecord run_scheme(const ExperimentConfig& config, Scheme scheme, double axis_value,
                            std::uint64_t lane);

// Applies each sweep value to a copy of the config and runs every scheme.
std::vector<ExperimentRecord> sweep(const ExperimentConfig& config);

struct HeatmapGrid {
    double x0 = 0.0, x1 = 20.0;
    double y0 = 0.0, y1 = 20.0;
    int resolution = 200;
};

struct Heatmap {
    HeatmapGrid grid;
    RMat values; // values(iy, ix), normalized to [0, 1]; -1 marks skipped cells
};

// Received power ||h_p^H V||^2 of a single-antenna probe swept over the x-y
// plane, normalized by the grid maximum.
Heatmap beam_heatmap(const AntennaLayout& layout, const CMat& effective_beamformer,
                     double wavelength, const HeatmapGrid& grid);

void write_heatmap_csv(const Heatmap& map, const std::string& path);

// CSV columns: scheme, axis_value, trial, secrecy_bps_hz, iterations, seconds.
// Values are printed with 12 significant digits, UTF-8, LF endings.
void emit_csv(const std::vector<ExperimentRecord>& records, const std::string& path);
void emit_json(const std::vector<ExperimentRecord>& records, const std::string& path);
std::string render_csv(const std::vector<ExperimentRecord>& records);
std::vector<ExperimentRecord> parse_csv_string(const std::string& text);

} // namespace masec

#endif
