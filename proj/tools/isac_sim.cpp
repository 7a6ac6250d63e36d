// SPDX-License-Identifier: Apache-2.0
//
// thz-isac-sim: gesture-adaptive THz integrated sensing and communication simulator
// Copyright (C) 2026 thz-isac-sim contributors
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

#include <CLI11.hpp>
#include <cstdio>
#include <string>

#include "isac/config.hpp"
#include "isac/runner.hpp"

namespace {

std::string slot_csv_path(const std::string& table_path, isac::RunMode mode,
                          std::uint64_t seed) {
    std::string stem = table_path;
    const auto dot = stem.rfind('.');
    std::string ext = ".csv";
    if (dot != std::string::npos && stem.rfind('/') < dot) {
        ext = stem.substr(dot);
        stem = stem.substr(0, dot);
    } else if (dot != std::string::npos && stem.rfind('/') == std::string::npos) {
        ext = stem.substr(dot);
        stem = stem.substr(0, dot);
    }
    return stem + "_slots_" + isac::to_string(mode) + "_seed" + std::to_string(seed) + ext;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gesture-adaptive THz ISAC simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path = "episode.csv";
    std::string mode_str = "joint";
    std::uint64_t seed_override = 0;
    bool seed_set = false;
    int slots_override = 0;

    auto* run = app.add_subcommand("run", "Run a single episode and emit per-slot CSV records");
    run->add_option("--config", config_path, "JSON config file (defaults built in)");
    run->add_option("--mode", mode_str,
                    "joint | power_only | beam_only | static_no_adapt");
    run->add_option("--out", out_path, "Output CSV path");
    run->add_option("--seed", seed_override, "Scenario RNG seed override")
        ->each([&](const std::string&) { seed_set = true; });
    run->add_option("--slots", slots_override, "Episode length override");

    std::string sweep_out = "sweep.csv";
    std::string kind_str;
    auto* sweep = app.add_subcommand("sweep", "Run an experiment grid and emit a summary CSV");
    sweep->add_option("--config", config_path, "JSON config file (defaults built in)");
    sweep->add_option("--kind", kind_str,
                      "static_pmax_sweep | static_m_sweep | dynamic_episode "
                      "(overrides the config)");
    sweep->add_option("--out", sweep_out, "Summary CSV path");
    sweep->add_option("--seed", seed_override, "Scenario RNG seed override")
        ->each([&](const std::string&) { seed_set = true; });

    CLI11_PARSE(app, argc, argv);

    try {
        isac::AppConfig cfg =
            config_path.empty() ? isac::default_dynamic_config() : isac::load_config(config_path);
        if (seed_set) cfg.scenario.rng_seed = seed_override;

        if (run->parsed()) {
            if (slots_override > 0) cfg.scenario.num_slots = slots_override;
            const isac::Scenario sc = isac::build_scenario(cfg.scenario);
            const isac::RunMode mode = isac::run_mode_from_string(mode_str);
            const isac::EpisodeResult ep = isac::run_episode(sc, mode, cfg.optimizer);
            isac::emit_csv(ep.records, out_path);
            std::fprintf(stderr, "wrote %zu records over %d slots to %s\n", ep.records.size(),
                         ep.slots_run, out_path.c_str());
            return ep.any_internal_error ? 1 : 0;
        }

        // sweep
        if (!kind_str.empty()) {
            if (kind_str == "static_pmax_sweep")
                cfg.experiment = isac::ExperimentSpec::pmax_sweep_defaults();
            else if (kind_str == "static_m_sweep")
                cfg.experiment = isac::ExperimentSpec::m_sweep_defaults();
            else if (kind_str == "dynamic_episode")
                cfg.experiment = isac::ExperimentSpec::dynamic_defaults();
            else
                throw std::invalid_argument("unknown sweep kind: " + kind_str);
        }
        const isac::ExperimentResult res =
            isac::run_experiment(cfg.experiment, cfg.scenario, cfg.optimizer);
        isac::emit_csv(res.table, sweep_out);
        std::fprintf(stderr, "wrote %zu rows to %s\n", res.table.size(), sweep_out.c_str());
        if (cfg.experiment.kind == isac::ExperimentSpec::Kind::dynamic_episode) {
            for (std::size_t i = 0; i < res.table.size(); ++i) {
                const std::string p =
                    slot_csv_path(sweep_out, res.table[i].mode, res.table[i].seed);
                isac::emit_csv(res.episodes[i].records, p);
                std::fprintf(stderr, "wrote per-slot records to %s\n", p.c_str());
            }
        }
        return res.any_internal_error ? 1 : 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
