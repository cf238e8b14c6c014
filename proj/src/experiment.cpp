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

#include "masec/experiment.hpp"

#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace masec {

namespace {

using nlohmann::json;

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

double round12(double v) { return std::strtod(fmt12(v).c_str(), nullptr); }

// Centered rows x cols lattice in the y-z plane with the given spacing.
AntennaLayout lattice_layout(int num_antennas, double spacing, double min_spacing) {
    const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(num_antennas))));
    const int rows = (num_antennas + cols - 1) / cols;
    AntennaLayout layout;
    layout.min_spacing = min_spacing;
    layout.positions.reserve(num_antennas);
    for (int i = 0; i < rows && layout.size() < num_antennas; ++i)
        for (int j = 0; j < cols && layout.size() < num_antennas; ++j)
            layout.positions.emplace_back(0.0, (j - 0.5 * (cols - 1)) * spacing,
                                          (i - 0.5 * (rows - 1)) * spacing);
    return layout;
}

void aggregate(ExperimentRecord& record) {
    const std::size_t n = record.trials.size();
    double sum = 0.0;
    for (const TrialResult& t : record.trials)
        sum += t.secrecy_bits;
    record.mean = n ? sum / static_cast<double>(n) : 0.0;
    double var = 0.0;
    for (const TrialResult& t : record.trials)
        var += (t.secrecy_bits - record.mean) * (t.secrecy_bits - record.mean);
    record.stddev = n > 1 ? std::sqrt(var / static_cast<double>(n - 1)) : 0.0;
}

} // namespace

std::string scheme_name(Scheme scheme) {
    switch (scheme) {
    case Scheme::Proposed: return "proposed";
    case Scheme::FullyDigital: return "fd";
    case Scheme::Rpa: return "rpa";
    case Scheme::Fpaf: return "fpaf";
    case Scheme::Fpah: return "fpah";
    case Scheme::FarField: return "ff";
    }
    return "unknown";
}

Scheme parse_scheme(const std::string& name) {
    if (name == "proposed") return Scheme::Proposed;
    if (name == "fd") return Scheme::FullyDigital;
    if (name == "rpa") return Scheme::Rpa;
    if (name == "fpaf") return Scheme::Fpaf;
    if (name == "fpah") return Scheme::Fpah;
    if (name == "ff") return Scheme::FarField;
    throw std::invalid_argument("unknown scheme: " + name);
}

void ExperimentConfig::validate() const {
    if (num_antennas < 1 || num_rf_chains < 1 || num_streams < 1)
        throw std::invalid_argument("config: array sizes must be positive");
    if (num_rf_chains < num_streams)
        throw std::invalid_argument("config: need N >= K");
    if (user_elements < 2 || eaves_elements < 2)
        throw std::invalid_argument("config: receivers need at least 2 elements");
    if (!(wavelength > 0.0) || !(region_wavelengths > 0.0) || !(min_spacing_wavelengths > 0.0))
        throw std::invalid_argument("config: geometry scales must be positive");
    if (!(user_range > 0.0) || !(eaves_range > 0.0))
        throw std::invalid_argument("config: receiver ranges must be positive");
    if (trials < 1)
        throw std::invalid_argument("config: need at least one trial");
    if (!sweep_axis.empty() && sweep_values.empty())
        throw std::invalid_argument("config: sweep axis given without values");
    if (!sweep_axis.empty() && sweep_axis != "eav_distance" && sweep_axis != "eav_azimuth" &&
        sweep_axis != "region_size" && sweep_axis != "power" && sweep_axis != "num_antennas")
        throw std::invalid_argument("config: unknown sweep axis " + sweep_axis);
    if (schemes.empty())
        throw std::invalid_argument("config: no schemes selected");
    if (!(tolerance > 0.0) || max_outer_iterations < 1 || max_inner_iterations < 1)
        throw std::invalid_argument("config: bad solver settings");
}

ExperimentConfig ExperimentConfig::desk_preset() {
    ExperimentConfig c;
    c.num_antennas = 16;
    c.region_wavelengths = 20.0;
    c.trials = 50;
    c.user_elements = 2;
    c.eaves_elements = 2;
    return c;
}

ExperimentConfig ExperimentConfig::paper_preset() { return ExperimentConfig{}; }

void apply_preset(ExperimentConfig& config, const std::string& preset) {
    if (preset == "desk")
        config = ExperimentConfig::desk_preset();
    else if (preset == "paper")
        config = ExperimentConfig::paper_preset();
    else
        throw std::invalid_argument("unknown preset: " + preset);
}

ExperimentConfig load_config_json(const std::string& path, const ExperimentConfig& base) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& ex) {
        throw std::invalid_argument("config parse error in " + path + ": " + ex.what());
    }

    ExperimentConfig c = base;
    c.num_antennas = j.value("num_antennas", c.num_antennas);
    c.num_rf_chains = j.value("num_rf_chains", c.num_rf_chains);
    c.num_streams = j.value("num_streams", c.num_streams);
    c.user_elements = j.value("user_elements", c.user_elements);
    c.eaves_elements = j.value("eaves_elements", c.eaves_elements);
    c.wavelength = j.value("wavelength_m", c.wavelength);
    c.region_wavelengths = j.value("region_wavelengths", c.region_wavelengths);
    c.min_spacing_wavelengths = j.value("min_spacing_wavelengths", c.min_spacing_wavelengths);
    c.power_dbm = j.value("power_dbm", c.power_dbm);
    c.noise_dbm = j.value("noise_dbm", c.noise_dbm);
    if (j.contains("user")) {
        c.user_range = j["user"].value("range_m", c.user_range);
        c.user_azimuth = j["user"].value("azimuth_rad", c.user_azimuth);
    }
    if (j.contains("eavesdropper")) {
        c.eaves_range = j["eavesdropper"].value("range_m", c.eaves_range);
        c.eaves_azimuth = j["eavesdropper"].value("azimuth_rad", c.eaves_azimuth);
    }
    if (j.contains("schemes")) {
        c.schemes.clear();
        for (const auto& s : j["schemes"])
            c.schemes.push_back(parse_scheme(s.get<std::string>()));
    } else if (j.contains("scheme")) {
        c.schemes = {parse_scheme(j["scheme"].get<std::string>())};
    }
    c.sweep_axis = j.value("sweep_axis", c.sweep_axis);
    if (j.contains("sweep_values"))
        c.sweep_values = j["sweep_values"].get<std::vector<double>>();
    c.trials = j.value("trials", c.trials);
    c.seed = j.value("seed", c.seed);
    c.jobs = j.value("jobs", c.jobs);
    c.tolerance = j.value("tolerance", c.tolerance);
    c.max_outer_iterations = j.value("max_outer_iterations", c.max_outer_iterations);
    c.max_inner_iterations = j.value("max_inner_iterations", c.max_inner_iterations);
    return c;
}

Scene make_scene(const ExperimentConfig& config, Scheme scheme, Rng& rng) {
    Scene scene;
    scene.region.half_width = config.region_half_width();
    scene.wavelength = config.wavelength;
    scene.power_budget = config.power_watt();
    scene.num_rf_chains = config.num_rf_chains;
    scene.num_streams = config.num_streams;
    scene.user = make_upa_receiver(ReceiverRole::User, config.user_range, config.user_azimuth,
                                   kPi / 2.0, config.user_elements, config.wavelength,
                                   config.noise_watt());
    scene.eavesdropper =
        make_upa_receiver(ReceiverRole::Eavesdropper, config.eaves_range, config.eaves_azimuth,
                          kPi / 2.0, config.eaves_elements, config.wavelength, config.noise_watt());

    const double d_min = config.min_spacing();
    switch (scheme) {
    case Scheme::Proposed:
    case Scheme::FullyDigital:
    case Scheme::FarField:
    case Scheme::Rpa:
        scene.layout =
            initialize_layout(config.num_antennas, scene.region, d_min, LayoutInit::Random, rng);
        break;
    case Scheme::Fpaf: {
        const int n =
            static_cast<int>(std::ceil(std::sqrt(static_cast<double>(config.num_antennas))));
        const double spacing = n > 1 ? 2.0 * scene.region.half_width / (n - 1) : 0.0;
        if (config.num_antennas > 1 && spacing < d_min)
            throw std::invalid_argument("fpaf: full-aperture lattice violates minimum spacing");
        scene.layout = lattice_layout(config.num_antennas, spacing, d_min);
        break;
    }
    case Scheme::Fpah: {
        const double spacing = config.wavelength / 2.0;
        scene.layout = lattice_layout(config.num_antennas, spacing, d_min);
        std::string why;
        if (!scene.layout.is_feasible(scene.region, &why))
            throw std::invalid_argument("fpah: half-wavelength lattice infeasible: " + why);
        break;
    }
    }
    return scene;
}

SolveConfig make_solve_config(const ExperimentConfig& config, Scheme scheme) {
    SolveConfig sc;
    sc.outer_tolerance = config.tolerance;
    sc.mo_tolerance = config.tolerance;
    sc.mm_tolerance = config.tolerance;
    sc.wmmse_tolerance = config.tolerance;
    sc.max_outer_iterations = config.max_outer_iterations;
    sc.mo_max_iterations = config.max_inner_iterations;
    sc.mm_max_iterations = config.max_inner_iterations;
    sc.wmmse_max_iterations = config.max_inner_iterations;
    // The fd benchmark reports the stage-I fully-digital precoder of the
    // proposed run, so that it upper-bounds the hybrid result trial by trial.
    sc.mode = BeamformingMode::Hybrid;
    sc.optimize_positions = scheme == Scheme::Proposed || scheme == Scheme::FullyDigital ||
                            scheme == Scheme::FarField;
    sc.propagation = scheme == Scheme::FarField ? position::PropagationModel::FarField
                                                : position::PropagationModel::NearField;
    return sc;
}

TrialResult run_scheme_trial(const ExperimentConfig& config, Scheme scheme, Rng& trial_rng) {
    const Scene scene = make_scene(config, scheme, trial_rng);
    const SolveConfig sc = make_solve_config(config, scheme);
    const SolveResult result = solve(scene, sc);
    if (!result.error.empty())
        throw std::runtime_error("solver failure (" + scheme_name(scheme) + "): " + result.error);

    // Evaluation under the true near-field channel regardless of the model
    // the scheme optimized against.
    const ChannelMatrix h = near_field_channel(result.layout, scene.user, scene.wavelength);
    const ChannelMatrix z = near_field_channel(result.layout, scene.eavesdropper, scene.wavelength);
    const CMat v = scheme == Scheme::FullyDigital ? result.beamformers.W_full
                                                  : result.beamformers.effective();
    const RatePair rp = secrecy_rate(h.entries, z.entries, v, scene.user.noise_variance,
                                     scene.eavesdropper.noise_variance);

    TrialResult out;
    out.secrecy_bits = rp.secrecy;
    out.iterations = result.iterations;
    out.seconds = result.wall_seconds;
    return out;
}

ExperimentRecord run_scheme(const ExperimentConfig& config, Scheme scheme, double axis_value,
                            std::uint64_t lane) {
    config.validate();
    ExperimentRecord record;
    record.scheme = scheme_name(scheme);
    record.axis_value = axis_value;
    record.trials.resize(config.trials);

    int workers = config.jobs > 0 ? config.jobs
                                  : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min(workers, config.trials));

    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::string first_error;
    std::mutex error_mutex;

    const auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= config.trials || failed.load())
                return;
            try {
                Rng rng(derive_seed(config.seed, lane, static_cast<std::uint64_t>(i)));
                record.trials[i] = run_scheme_trial(config, scheme, rng);
                record.trials[i].trial = i;
            } catch (const std::exception& ex) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!failed.exchange(true))
                    first_error = ex.what();
            }
        }
    };

    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(worker);
        for (std::thread& t : pool)
            t.join();
    }
    if (failed.load())
        throw std::runtime_error(first_error);

    aggregate(record);
    return record;
}

std::vector<ExperimentRecord> sweep(const ExperimentConfig& config) {
    config.validate();
    std::vector<ExperimentRecord> records;

    const bool swept = !config.sweep_axis.empty();
    const std::vector<double> values = swept ? config.sweep_values : std::vector<double>{0.0};
    for (std::size_t vi = 0; vi < values.size(); ++vi) {
        ExperimentConfig point = config;
        if (swept) {
            const double v = values[vi];
            if (config.sweep_axis == "eav_distance")
                point.eaves_range = v;
            else if (config.sweep_axis == "eav_azimuth")
                point.eaves_azimuth = v;
            else if (config.sweep_axis == "region_size")
                point.region_wavelengths = v;
            else if (config.sweep_axis == "power")
                point.power_dbm = v;
            else if (config.sweep_axis == "num_antennas")
                point.num_antennas = static_cast<int>(v);
        }
        for (Scheme scheme : config.schemes)
            records.push_back(run_scheme(point, scheme, values[vi], vi));
    }
    return records;
}

Heatmap beam_heatmap(const AntennaLayout& layout, const CMat& effective_beamformer,
                     double wavelength, const HeatmapGrid& grid) {
    if (grid.resolution < 1 || !(grid.x1 > grid.x0) || !(grid.y1 > grid.y0))
        throw std::invalid_argument("beam_heatmap: bad grid spec");
    Heatmap map;
    map.grid = grid;
    map.values.resize(grid.resolution, grid.resolution);

    const double dx = (grid.x1 - grid.x0) / grid.resolution;
    const double dy = (grid.y1 - grid.y0) / grid.resolution;
    const double k = 2.0 * kPi / wavelength;
    const int m = layout.size();

    // Beam-focusing pattern: the probe keeps the spherical-wave phases but not
    // the path loss, otherwise the 1/d amplitude swamps the focusing gain and
    // the map just glows next to the array.
    double peak = 0.0;
    for (int iy = 0; iy < grid.resolution; ++iy) {
        const double y = grid.y0 + (iy + 0.5) * dy;
        for (int ix = 0; ix < grid.resolution; ++ix) {
            const double x = grid.x0 + (ix + 0.5) * dx;
            const Vec3 probe(x, y, 0.0);
            bool singular = false;
            CVec h(m);
            for (int a = 0; a < m; ++a) {
                const double d = (probe - layout.positions[a]).norm();
                if (d < 1e-9) {
                    singular = true;
                    break;
                }
                h(a) = std::polar(1.0, -k * d);
            }
            if (singular) {
                map.values(iy, ix) = -1.0;
                continue;
            }
            const double power = (h.transpose() * effective_beamformer).squaredNorm();
            map.values(iy, ix) = power;
            peak = std::max(peak, power);
        }
    }
    if (peak > 0.0)
        for (int iy = 0; iy < grid.resolution; ++iy)
            for (int ix = 0; ix < grid.resolution; ++ix)
                if (map.values(iy, ix) >= 0.0)
                    map.values(iy, ix) /= peak;
    return map;
}

void write_heatmap_csv(const Heatmap& map, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write heatmap to " + path);
    for (int iy = 0; iy < map.values.rows(); ++iy) {
        for (int ix = 0; ix < map.values.cols(); ++ix) {
            if (ix)
                out << ',';
            out << fmt12(map.values(iy, ix));
        }
        out << '\n';
    }
    if (!out)
        throw std::runtime_error("write failure on " + path);
}

std::string render_csv(const std::vector<ExperimentRecord>& records) {
    std::ostringstream out;
    out << "scheme,axis_value,trial,secrecy_bps_hz,iterations,seconds\n";
    for (const ExperimentRecord& r : records)
        for (const TrialResult& t : r.trials)
            out << r.scheme << ',' << fmt12(r.axis_value) << ',' << t.trial << ','
                << fmt12(t.secrecy_bits) << ',' << t.iterations << ',' << fmt12(t.seconds) << '\n';
    return out.str();
}

void emit_csv(const std::vector<ExperimentRecord>& records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write records to " + path);
    out << render_csv(records);
    if (!out)
        throw std::runtime_error("write failure on " + path);
}

void emit_json(const std::vector<ExperimentRecord>& records, const std::string& path) {
    json root = json::array();
    for (const ExperimentRecord& r : records) {
        json jr;
        jr["scheme"] = r.scheme;
        jr["axis_value"] = round12(r.axis_value);
        jr["mean_secrecy_bps_hz"] = round12(r.mean);
        jr["stddev_secrecy_bps_hz"] = round12(r.stddev);
        jr["trials"] = json::array();
        for (const TrialResult& t : r.trials) {
            json jt;
            jt["trial"] = t.trial;
            jt["secrecy_bps_hz"] = round12(t.secrecy_bits);
            jt["iterations"] = t.iterations;
            jt["seconds"] = round12(t.seconds);
            jr["trials"].push_back(jt);
        }
        root.push_back(jr);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write records to " + path);
    out << root.dump(2) << '\n';
    if (!out)
        throw std::runtime_error("write failure on " + path);
}

std::vector<ExperimentRecord> parse_csv_string(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "scheme,axis_value,trial,secrecy_bps_hz,iterations,seconds")
        throw std::invalid_argument("parse_csv: missing or malformed header");

    std::vector<ExperimentRecord> records;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream row(line);
        std::string field;
        TrialResult t;
        std::string scheme;
        double axis = 0.0;
        std::getline(row, scheme, ',');
        std::getline(row, field, ',');
        axis = std::strtod(field.c_str(), nullptr);
        std::getline(row, field, ',');
        t.trial = std::atoi(field.c_str());
        std::getline(row, field, ',');
        t.secrecy_bits = std::strtod(field.c_str(), nullptr);
        std::getline(row, field, ',');
        t.iterations = std::atoi(field.c_str());
        std::getline(row, field, ',');
        t.seconds = std::strtod(field.c_str(), nullptr);

        if (records.empty() || records.back().scheme != scheme ||
            records.back().axis_value != axis) {
            ExperimentRecord r;
            r.scheme = scheme;
            r.axis_value = axis;
            records.push_back(r);
        }
        records.back().trials.push_back(t);
    }
    for (ExperimentRecord& r : records)
        aggregate(r);
    return records;
}

} // namespace masec
