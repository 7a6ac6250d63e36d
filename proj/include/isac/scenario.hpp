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

#include "isac/rng.hpp"
#include "isac/types.hpp"

namespace isac {

enum class GestureKind { pick_up, put_down };

enum class GesturePhase { idle, pick_up, put_down };

std::string to_string(GestureKind k);
std::string to_string(GesturePhase p);

/// One scheduled hand gesture. The device height ramps linearly by
/// +-(h_pick - h_put) over `duration_slots`, starting with the transition
/// into slot `start_slot + 1`.
struct GestureEvent {
    int user = 0;
    int start_slot = 0;
    GestureKind kind = GestureKind::pick_up;
    int duration_slots = 10;
};

struct ScenarioConfig {
    int num_users = 4;
    int num_antennas = 12;
    double array_spacing_ratio = 1.0;       // element spacing over wavelength
    Vec3 room_dims{5.0, 5.0, 3.0};          // meters
    Vec3 ap_position{0.0, 0.0, 3.0};        // meters
    std::vector<Vec3> user_positions;       // initial device positions, meters
    double slot_duration_s = 0.1;           // T
    int num_slots = 20;                     // L
    std::vector<GestureEvent> gestures;
    double h_pick_m = 1.5;                  // device height after pick-up
    double h_put_m = 1.2;                   // device height after put-down
    std::vector<double> rcs;                // beta_k, one per user (or empty -> default_rcs)
    double default_rcs = 5.0e4;
    double carrier_frequency_hz = 0.3e12;
    double absorption_coeff = 0.02;         // K(f), 1/m
    double noise_comm_w = 1e-12;            // sigma_n^2
    double noise_radar_w = 1e-12;           // sigma_r^2
    double meas_sigma_tau_s = 1e-10;        // delay measurement noise
    double meas_sigma_theta_rad = deg_to_rad(0.5);
    double proc_sigma_d_m = 0.005;          // process noise on range
    double proc_sigma_theta_rad = deg_to_rad(0.2);
    double gesture_eps_m = 0.1;             // epsilon_h
    bool cumulative_height_delta = true;    // height delta vs last confirmed reference
    double coverage_max_range_m = 10.0;
    std::vector<int> initial_delta;         // optional per-user override (0/1)
    std::vector<double> initial_height;     // optional per-user override, meters
    std::uint64_t rng_seed = 1;

    /// Default four-user layout: device positions spread in range so the
    /// height-feature angles are as separated as the room allows.
    static ScenarioConfig defaults();
};

/// Per-user kinematic ground truth at one slot.
struct KinematicTruth {
    double d = 0.0;        // range, meters
    double theta = 0.0;    // feature angle, radians (cos(theta) = h/d)
    double v_r = 0.0;      // radial velocity over this slot, m/s
    double v_t = 0.0;      // tangential velocity over this slot, m/s
    double h = 0.0;        // device height feature, meters
    GesturePhase phase = GesturePhase::idle;
};

struct Measurement {
    double tau = 0.0;         // round-trip delay, seconds
    double theta_meas = 0.0;  // measured angle, radians
};

/// Immutable realization of the configured episode: per-user, per-slot
/// ground truth. Safe to share read-only across threads.
class Scenario {
  public:
    const ScenarioConfig& config() const { return cfg_; }
    int num_users() const { return cfg_.num_users; }
    int num_slots() const { return cfg_.num_slots; }

    /// Ground truth for `user` at `slot`; throws std::out_of_range outside [0, L).
    const KinematicTruth& truth(int user, int slot) const;

    /// All users at one slot.
    std::vector<KinematicTruth> truths_at(int slot) const;

    /// Per-user initial QoS indicator delta (0/1).
    const std::vector<int>& initial_delta() const { return delta0_; }

    double rcs(int user) const;

  private:
    friend Scenario build_scenario(const ScenarioConfig&);
    ScenarioConfig cfg_;
    std::vector<std::vector<KinematicTruth>> truth_;  // [user][slot]
    std::vector<int> delta0_;
};

/// Validates the config and realizes the deterministic ground-truth episode.
Scenario build_scenario(const ScenarioConfig& cfg);

/// Synthesizes a noisy (tau, theta) measurement from ground truth.
/// tau = 2 d / c + n_tau, theta_meas = theta + n_theta, independent Gaussians.
Measurement synth_measurement(const KinematicTruth& truth, double sigma_tau, double sigma_theta,
                              RngStream& rng);

}  // namespace isac
