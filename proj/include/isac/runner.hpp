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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "isac/optimizer.hpp"
#include "isac/scenario.hpp"
#include "isac/tracker.hpp"

namespace isac {

enum class RunMode { joint, power_only, beam_only, static_no_adapt };

std::string to_string(RunMode m);
RunMode run_mode_from_string(const std::string& s);

/// Runner-level optimization settings (powers in watts).
struct OptimizerConfig {
    double p_max_w = dbm_to_watts(36.0);
    double sinr_high = 5.0;
    double sinr_low = 1.0;
    AoOptions ao;
};

/// One per-user row of the episode log. Slot-level quantities (sum SINR,
/// powers, iterations, status, wall time) repeat on each user row.
struct SlotRecord {
    int slot = 0;
    int user = 0;
    double true_d = 0, true_theta = 0, true_h = 0;
    double est_d = 0, est_theta = 0, est_h = 0;
    GesturePhase gesture = GesturePhase::idle;
    int delta = 0;
    double gamma_req = 0;
    double comm_sinr = 0;  // true channels, recovered beams
    double sens_sinr = 0;  // true channels, recovered beams
    double sum_sens_sinr = 0;
    double p_user = 0;
    double p_sense = 0;
    int ao_iterations = 0;
    std::string status;
    double wall_time_s = 0;
};

struct EpisodeResult {
    std::vector<SlotRecord> records;            // num_slots * num_users rows
    std::vector<SlotSolution> solutions;        // one per executed slot
    std::vector<SlotInputs> inputs;             // optimization inputs per slot
    std::vector<std::vector<int>> detection_slot;  // [user] -> slots where a
                                                   // gesture state change fired
    bool any_internal_error = false;
    int slots_run = 0;
};

/// Runs the per-slot pipeline: filter prediction, gesture decision and QoS
/// update, joint (or baseline) optimization, then the filter update from a
/// fresh echo measurement. An infeasible slot keeps the previous solution
/// and is logged, not fatal.
EpisodeResult run_episode(const Scenario& sc, RunMode mode, const OptimizerConfig& ocfg,
                          const SlotSolution* warm0 = nullptr);

struct ExperimentSpec {
    enum class Kind { static_pmax_sweep, static_m_sweep, dynamic_episode };
    Kind kind = Kind::dynamic_episode;
    std::vector<double> axis;  // dBm values or antenna counts; unused for dynamic
    std::vector<RunMode> modes;
    std::vector<std::uint64_t> seeds;  // defaults to the scenario seed
    int static_slots = 1;              // episode length for the static kinds

    static ExperimentSpec pmax_sweep_defaults();
    static ExperimentSpec m_sweep_defaults();
    static ExperimentSpec dynamic_defaults();
};

struct SweepRow {
    double axis_value = 0;
    RunMode mode = RunMode::joint;
    std::uint64_t seed = 0;
    double final_sum_sens = 0;
    double mean_sum_sens = 0;
    std::string status;
};

struct ExperimentResult {
    std::vector<SweepRow> table;
    // Per-slot logs for every (axis point, mode, seed) episode, in table order.
    std::vector<EpisodeResult> episodes;
    bool any_internal_error = false;
};

/// Executes the experiment grid against the base scenario config. The static
/// kinds pin mid-gesture geometry with the QoS pattern given as prior
/// knowledge; the joint mode falls back to a baseline-warm-started solve
/// when a baseline outperforms it (multi-start for the non-convex design).
ExperimentResult run_experiment(const ExperimentSpec& spec, const ScenarioConfig& base,
                                const OptimizerConfig& ocfg);

/// CSV emission, fixed schemas, LF line endings, 17 significant digits.
void emit_csv(const std::vector<SlotRecord>& records, const std::string& path);
void emit_csv(const std::vector<SweepRow>& table, const std::string& path);

}  // namespace isac
