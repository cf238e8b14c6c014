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

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericalError = 3;

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(item);
    return out;
}

struct RunArgs {
    std::string config_path;
    std::string scheme_list;
    std::string sweep_axis;
    std::string values_list;
    std::string preset;
    std::string out_path = "results.csv";
    std::string format = "csv";
    int trials = -1;
    long long seed = -1;
    int jobs = -1;
};

// Layering order: defaults, then preset, then config file, then CLI flags.
masec::ExperimentConfig build_config(const RunArgs& args) {
    masec::ExperimentConfig config;
    if (!args.preset.empty())
        masec::apply_preset(config, args.preset);
    if (!args.config_path.empty())
        config = masec::load_config_json(args.config_path, config);
    if (!args.scheme_list.empty()) {
        config.schemes.clear();
        for (const std::string& s : split_commas(args.scheme_list))
            config.schemes.push_back(masec::parse_scheme(s));
    }
    if (!args.sweep_axis.empty())
        config.sweep_axis = args.sweep_axis;
    if (!args.values_list.empty()) {
        config.sweep_values.clear();
        for (const std::string& s : split_commas(args.values_list))
            config.sweep_values.push_back(std::strtod(s.c_str(), nullptr));
    }
    if (args.trials >= 0)
        config.trials = args.trials;
    if (args.seed >= 0)
        config.seed = static_cast<std::uint64_t>(args.seed);
    if (args.jobs >= 0)
        config.jobs = args.jobs;
    return config;
}

int cmd_run(const RunArgs& args) {
    masec::ExperimentConfig config;
    try {
        config = build_config(args);
        config.validate();
        if (args.format != "csv" && args.format != "json")
            throw std::invalid_argument("unknown output format: " + args.format);
    } catch (const std::exception& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return kExitConfigError;
    }

    try {
        const std::vector<masec::ExperimentRecord> records = masec::sweep(config);
        if (args.format == "csv")
            masec::emit_csv(records, args.out_path);
        else
            masec::emit_json(records, args.out_path);
        for (const masec::ExperimentRecord& r : records)
            std::printf("%-9s axis=%-10g mean=%.4f bps/Hz stddev=%.4f (%zu trials)\n",
                        r.scheme.c_str(), r.axis_value, r.mean, r.stddev, r.trials.size());
        std::printf("wrote %s\n", args.out_path.c_str());
        return kExitOk;
    } catch (const std::exception& ex) {
        std::cerr << "run failed: " << ex.what() << "\n";
        return kExitNumericalError;
    }
}

struct HeatmapArgs {
    std::string config_path;
    std::string preset;
    std::string scheme = "proposed";
    std::string grid_spec;
    std::string out_path = "heatmap.csv";
    long long seed = -1;
};

int cmd_heatmap(const HeatmapArgs& args) {
    masec::ExperimentConfig config;
    masec::HeatmapGrid grid;
    masec::Scheme scheme;
    try {
        RunArgs base;
        base.config_path = args.config_path;
        base.preset = args.preset;
        base.seed = args.seed;
        config = build_config(base);
        config.validate();
        scheme = masec::parse_scheme(args.scheme);
        if (!args.grid_spec.empty()) {
            const std::vector<std::string> parts = split_commas(args.grid_spec);
            if (parts.size() != 5)
                throw std::invalid_argument("grid spec must be X0,X1,Y0,Y1,RES");
            grid.x0 = std::strtod(parts[0].c_str(), nullptr);
            grid.x1 = std::strtod(parts[1].c_str(), nullptr);
            grid.y0 = std::strtod(parts[2].c_str(), nullptr);
            grid.y1 = std::strtod(parts[3].c_str(), nullptr);
            grid.resolution = std::atoi(parts[4].c_str());
        }
        if (grid.resolution < 1 || !(grid.x1 > grid.x0) || !(grid.y1 > grid.y0))
            throw std::invalid_argument("bad grid spec");
    } catch (const std::exception& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return kExitConfigError;
    }

    try {
        masec::Rng rng(masec::derive_seed(config.seed, 0, 0));
        const masec::Scene scene = masec::make_scene(config, scheme, rng);
        const masec::SolveConfig sc = masec::make_solve_config(config, scheme);
        const masec::SolveResult result = masec::solve(scene, sc);
        if (!result.error.empty())
            throw std::runtime_error(result.error);
        const masec::CMat v = sc.mode == masec::BeamformingMode::FullyDigital
                                  ? result.beamformers.W_full
                                  : result.beamformers.effective();
        const masec::Heatmap map = masec::beam_heatmap(result.layout, v, scene.wavelength, grid);
        masec::write_heatmap_csv(map, args.out_path);
        std::printf("solved %s: secrecy %.4f bps/Hz after %d iterations; wrote %s\n",
                    masec::scheme_name(scheme).c_str(), result.final_secrecy(), result.iterations,
                    args.out_path.c_str());
        return kExitOk;
    } catch (const std::exception& ex) {
        std::cerr << "heatmap failed: " << ex.what() << "\n";
        return kExitNumericalError;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo experiments for movable-antenna secure near-field beamforming"};
    app.require_subcommand(1);

    RunArgs run_args;
    CLI::App* run = app.add_subcommand("run", "run trials, optionally sweeping a parameter");
    run->add_option("--config", run_args.config_path, "JSON config file");
    run->add_option("--scheme", run_args.scheme_list,
                    "comma list of proposed,fd,rpa,fpaf,fpah,ff");
    run->add_option("--sweep", run_args.sweep_axis,
                    "eav_distance|eav_azimuth|region_size|power|num_antennas");
    run->add_option("--values", run_args.values_list, "comma list of sweep values");
    run->add_option("--trials", run_args.trials, "Monte Carlo trials per point");
    run->add_option("--seed", run_args.seed, "master seed");
    run->add_option("--preset", run_args.preset, "desk|paper");
    run->add_option("--out", run_args.out_path, "output path");
    run->add_option("--format", run_args.format, "csv|json");
    run->add_option("--jobs", run_args.jobs, "worker threads (0 = auto)");

    HeatmapArgs hm_args;
    CLI::App* hm = app.add_subcommand("heatmap", "solve one instance and emit a power grid");
    hm->add_option("--config", hm_args.config_path, "JSON config file");
    hm->add_option("--preset", hm_args.preset, "desk|paper");
    hm->add_option("--scheme", hm_args.scheme, "scheme to solve (default proposed)");
    hm->add_option("--grid", hm_args.grid_spec, "X0,X1,Y0,Y1,RES (default 0,20,0,20,200)");
    hm->add_option("--out", hm_args.out_path, "output path");
    hm->add_option("--seed", hm_args.seed, "master seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    if (run->parsed())
        return cmd_run(run_args);
    return cmd_heatmap(hm_args);
}
