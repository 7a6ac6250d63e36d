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

#include "isac/config.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace isac {

using nlohmann::json;

AppConfig default_dynamic_config() {
    AppConfig app;
    app.scenario.num_slots = 20;
    app.scenario.gestures = {
        {0, 0, GestureKind::put_down, 10},
        {1, 0, GestureKind::put_down, 10},
        {2, 0, GestureKind::put_down, 10},
        {3, 0, GestureKind::pick_up, 10},
    };
    return app;
}

namespace {

Vec3 read_vec3(const json& j) {
    if (!j.is_array() || j.size() != 3)
        throw std::invalid_argument("config: expected a 3-element array");
    return Vec3{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

void parse_scenario(const json& j, ScenarioConfig& cfg) {
    if (j.contains("num_users")) cfg.num_users = j["num_users"].get<int>();
    if (j.contains("num_antennas")) cfg.num_antennas = j["num_antennas"].get<int>();
    if (j.contains("array_spacing_ratio"))
        cfg.array_spacing_ratio = j["array_spacing_ratio"].get<double>();
    if (j.contains("room_dims_m")) cfg.room_dims = read_vec3(j["room_dims_m"]);
    if (j.contains("ap_position_m")) cfg.ap_position = read_vec3(j["ap_position_m"]);
    if (j.contains("user_positions_m")) {
        cfg.user_positions.clear();
        for (const auto& p : j["user_positions_m"]) cfg.user_positions.push_back(read_vec3(p));
    }
    if (j.contains("slot_duration_s")) cfg.slot_duration_s = j["slot_duration_s"].get<double>();
    if (j.contains("num_slots")) cfg.num_slots = j["num_slots"].get<int>();
    if (j.contains("gestures")) {
        cfg.gestures.clear();
        for (const auto& g : j["gestures"]) {
            GestureEvent ev;
            ev.user = g.at("user").get<int>();
            ev.start_slot = g.at("start_slot").get<int>();
            const std::string kind = g.at("kind").get<std::string>();
            if (kind == "pick_up")
                ev.kind = GestureKind::pick_up;
            else if (kind == "put_down")
                ev.kind = GestureKind::put_down;
            else
                throw std::invalid_argument("config: gesture kind must be pick_up/put_down");
            if (g.contains("duration_slots")) ev.duration_slots = g["duration_slots"].get<int>();
            cfg.gestures.push_back(ev);
        }
    }
    if (j.contains("h_pick_m")) cfg.h_pick_m = j["h_pick_m"].get<double>();
    if (j.contains("h_put_m")) cfg.h_put_m = j["h_put_m"].get<double>();
    if (j.contains("rcs")) cfg.rcs = j["rcs"].get<std::vector<double>>();
    if (j.contains("default_rcs")) cfg.default_rcs = j["default_rcs"].get<double>();
    if (j.contains("carrier_frequency_hz"))
        cfg.carrier_frequency_hz = j["carrier_frequency_hz"].get<double>();
    if (j.contains("absorption_coeff_per_m"))
        cfg.absorption_coeff = j["absorption_coeff_per_m"].get<double>();
    if (j.contains("noise_comm_w")) cfg.noise_comm_w = j["noise_comm_w"].get<double>();
    if (j.contains("noise_comm_dbm"))
        cfg.noise_comm_w = dbm_to_watts(j["noise_comm_dbm"].get<double>());
    if (j.contains("noise_radar_w")) cfg.noise_radar_w = j["noise_radar_w"].get<double>();
    if (j.contains("noise_radar_dbm"))
        cfg.noise_radar_w = dbm_to_watts(j["noise_radar_dbm"].get<double>());
    if (j.contains("meas_sigma_tau_s")) cfg.meas_sigma_tau_s = j["meas_sigma_tau_s"].get<double>();
    if (j.contains("meas_sigma_theta_rad"))
        cfg.meas_sigma_theta_rad = j["meas_sigma_theta_rad"].get<double>();
    if (j.contains("proc_sigma_d_m")) cfg.proc_sigma_d_m = j["proc_sigma_d_m"].get<double>();
    if (j.contains("proc_sigma_theta_rad"))
        cfg.proc_sigma_theta_rad = j["proc_sigma_theta_rad"].get<double>();
    if (j.contains("gesture_eps_m")) cfg.gesture_eps_m = j["gesture_eps_m"].get<double>();
    if (j.contains("cumulative_height_delta"))
        cfg.cumulative_height_delta = j["cumulative_height_delta"].get<bool>();
    if (j.contains("coverage_max_range_m"))
        cfg.coverage_max_range_m = j["coverage_max_range_m"].get<double>();
    if (j.contains("initial_delta")) cfg.initial_delta = j["initial_delta"].get<std::vector<int>>();
    if (j.contains("initial_height_m"))
        cfg.initial_height = j["initial_height_m"].get<std::vector<double>>();
    if (j.contains("rng_seed")) cfg.rng_seed = j["rng_seed"].get<std::uint64_t>();
}

void parse_optimizer(const json& j, OptimizerConfig& cfg) {
    if (j.contains("p_max_w")) cfg.p_max_w = j["p_max_w"].get<double>();
    if (j.contains("p_max_dbm")) cfg.p_max_w = dbm_to_watts(j["p_max_dbm"].get<double>());
    if (j.contains("sinr_high")) cfg.sinr_high = j["sinr_high"].get<double>();
    if (j.contains("sinr_low")) cfg.sinr_low = j["sinr_low"].get<double>();
    if (j.contains("ao_rel_tol")) cfg.ao.rel_tol = j["ao_rel_tol"].get<double>();
    if (j.contains("ao_max_iters")) cfg.ao.max_iters = j["ao_max_iters"].get<int>();
    if (j.contains("solver_feas_tol")) cfg.ao.solver.feas_tol = j["solver_feas_tol"].get<double>();
    if (j.contains("solver_kkt_tol")) cfg.ao.solver.kkt_tol = j["solver_kkt_tol"].get<double>();
    if (j.contains("solver_max_iters")) cfg.ao.solver.max_iters = j["solver_max_iters"].get<int>();
}

void parse_experiment(const json& j, ExperimentSpec& spec) {
    if (j.contains("kind")) {
        const std::string kind = j["kind"].get<std::string>();
        if (kind == "static_pmax_sweep") {
            spec = ExperimentSpec::pmax_sweep_defaults();
        } else if (kind == "static_m_sweep") {
            spec = ExperimentSpec::m_sweep_defaults();
        } else if (kind == "dynamic_episode") {
            spec = ExperimentSpec::dynamic_defaults();
        } else {
            throw std::invalid_argument("config: unknown experiment kind " + kind);
        }
    }
    if (j.contains("axis")) spec.axis = j["axis"].get<std::vector<double>>();
    if (j.contains("modes")) {
        spec.modes.clear();
        for (const auto& m : j["modes"])
            spec.modes.push_back(run_mode_from_string(m.get<std::string>()));
    }
    if (j.contains("seeds")) spec.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
    if (j.contains("static_slots")) spec.static_slots = j["static_slots"].get<int>();
}

}  // namespace

AppConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("config: parse error in " + path + ": " + e.what());
    }
    AppConfig app = default_dynamic_config();
    if (j.contains("scenario")) parse_scenario(j["scenario"], app.scenario);
    if (j.contains("optimizer")) parse_optimizer(j["optimizer"], app.optimizer);
    if (j.contains("experiment")) parse_experiment(j["experiment"], app.experiment);
    return app;
}

}  // namespace isac
