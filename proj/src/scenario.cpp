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

#include "isac/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isac {

std::string to_string(GestureKind k) {
    return k == GestureKind::pick_up ? "pick_up" : "put_down";
}

std::string to_string(GesturePhase p) {
    switch (p) {
        case GesturePhase::idle: return "idle";
        case GesturePhase::pick_up: return "pick_up";
        case GesturePhase::put_down: return "put_down";
    }
    return "idle";
}

ScenarioConfig ScenarioConfig::defaults() {
    ScenarioConfig cfg;
    // Ranges 1.7 / 2.0 / 2.3 / 4.0 m. Feature angles then stay pairwise
    // separated over the whole height ramp of any gesture mix, so no pair
    // of users becomes collinear for the array mid-episode.
    cfg.user_positions = {
        Vec3{0.289, 0.289, 1.35},
        Vec3{0.799, 0.799, 1.35},
        Vec3{1.133, 1.133, 1.35},
        Vec3{2.577, 2.577, 1.35},
    };
    return cfg;
}

namespace {

void validate(const ScenarioConfig& cfg) {
    if (cfg.num_users < 1) throw std::invalid_argument("scenario: num_users must be >= 1");
    if (cfg.num_antennas < 1) throw std::invalid_argument("scenario: num_antennas must be >= 1");
    if (!(cfg.slot_duration_s > 0.0))
        throw std::invalid_argument("scenario: slot_duration_s must be positive");
    if (cfg.num_slots < 1) throw std::invalid_argument("scenario: num_slots must be >= 1");
    if (!(cfg.h_pick_m > cfg.h_put_m))
        throw std::invalid_argument("scenario: h_pick_m must exceed h_put_m");
    if (cfg.noise_comm_w < 0 || cfg.noise_radar_w < 0 || cfg.meas_sigma_tau_s < 0 ||
        cfg.meas_sigma_theta_rad < 0 || cfg.proc_sigma_d_m < 0 || cfg.proc_sigma_theta_rad < 0)
        throw std::invalid_argument("scenario: noise parameters must be nonnegative");
    if (!(cfg.gesture_eps_m > 0.0))
        throw std::invalid_argument("scenario: gesture_eps_m must be positive");
    if (static_cast<int>(cfg.user_positions.size()) != cfg.num_users)
        throw std::invalid_argument("scenario: user_positions size must equal num_users");
    if (!cfg.rcs.empty() && static_cast<int>(cfg.rcs.size()) != cfg.num_users)
        throw std::invalid_argument("scenario: rcs size must equal num_users (or be empty)");
    if (!cfg.initial_delta.empty() &&
        static_cast<int>(cfg.initial_delta.size()) != cfg.num_users)
        throw std::invalid_argument("scenario: initial_delta size must equal num_users");
    if (!cfg.initial_height.empty() &&
        static_cast<int>(cfg.initial_height.size()) != cfg.num_users)
        throw std::invalid_argument("scenario: initial_height size must equal num_users");
    for (const auto& p : cfg.user_positions) {
        for (int i = 0; i < 3; ++i) {
            if (p[i] < 0.0 || p[i] > cfg.room_dims[i])
                throw std::invalid_argument("scenario: user position outside room");
        }
    }
    for (const auto& g : cfg.gestures) {
        if (g.user < 0 || g.user >= cfg.num_users)
            throw std::invalid_argument("scenario: gesture user index out of range");
        if (g.duration_slots < 1)
            throw std::invalid_argument("scenario: gesture duration must be >= 1 slot");
        if (g.start_slot < 0)
            throw std::invalid_argument("scenario: gesture start_slot must be >= 0");
        if (g.start_slot + g.duration_slots > cfg.num_slots - 1)
            throw std::invalid_argument("scenario: gesture extends past the episode");
    }
}

}  // namespace

const KinematicTruth& Scenario::truth(int user, int slot) const {
    if (user < 0 || user >= num_users()) throw std::out_of_range("scenario: user out of range");
    if (slot < 0 || slot >= num_slots()) throw std::out_of_range("scenario: slot out of range");
    return truth_[user][slot];
}

std::vector<KinematicTruth> Scenario::truths_at(int slot) const {
    std::vector<KinematicTruth> out;
    out.reserve(num_users());
    for (int k = 0; k < num_users(); ++k) out.push_back(truth(k, slot));
    return out;
}

double Scenario::rcs(int user) const {
    if (user < 0 || user >= num_users()) throw std::out_of_range("scenario: user out of range");
    return cfg_.rcs.empty() ? cfg_.default_rcs : cfg_.rcs[user];
}

Scenario build_scenario(const ScenarioConfig& cfg) {
    validate(cfg);

    const int K = cfg.num_users;
    const int L = cfg.num_slots;
    const double T = cfg.slot_duration_s;

    // Sorted per-user gesture lists; overlaps are rejected.
    std::vector<std::vector<GestureEvent>> by_user(K);
    for (const auto& g : cfg.gestures) by_user[g.user].push_back(g);
    for (auto& list : by_user) {
        std::sort(list.begin(), list.end(),
                  [](const GestureEvent& a, const GestureEvent& b) {
                      return a.start_slot < b.start_slot;
                  });
        for (std::size_t i = 1; i < list.size(); ++i) {
            if (list[i].start_slot < list[i - 1].start_slot + list[i - 1].duration_slots)
                throw std::invalid_argument("scenario: overlapping gestures for one user");
        }
    }

    Scenario sc;
    sc.cfg_ = cfg;
    sc.truth_.assign(K, std::vector<KinematicTruth>(L));
    sc.delta0_.assign(K, 0);

    for (int k = 0; k < K; ++k) {
        // Hold state at slot 0 follows from the first scheduled gesture:
        // a user about to put the device down is holding it (height h_pick,
        // high QoS), a user about to pick it up starts at h_put.
        double h0 = cfg.h_put_m;
        int delta0 = 0;
        if (!by_user[k].empty()) {
            if (by_user[k].front().kind == GestureKind::put_down) {
                h0 = cfg.h_pick_m;
                delta0 = 1;
            } else {
                h0 = cfg.h_put_m;
                delta0 = 0;
            }
        }
        if (!cfg.initial_height.empty()) {
            h0 = cfg.initial_height[k];
            if (!by_user[k].empty())
                throw std::invalid_argument(
                    "scenario: initial_height override requires a gesture-free user");
        }
        if (!cfg.initial_delta.empty()) delta0 = cfg.initial_delta[k] ? 1 : 0;
        sc.delta0_[k] = delta0;

        // Height trajectory: linear ramps of (h_pick - h_put)/D per slot.
        std::vector<double> h(L, h0);
        std::vector<GesturePhase> phase(L, GesturePhase::idle);
        double level = h0;
        for (const auto& g : by_user[k]) {
            const double target =
                g.kind == GestureKind::pick_up ? cfg.h_pick_m : cfg.h_put_m;
            const double from = g.kind == GestureKind::pick_up ? cfg.h_put_m : cfg.h_pick_m;
            if (std::abs(level - from) > 1e-9)
                throw std::invalid_argument(
                    "scenario: gesture kind inconsistent with current device height");
            const double delta = (target - from) / g.duration_slots;
            for (int l = g.start_slot; l < g.start_slot + g.duration_slots && l < L; ++l)
                phase[l] = g.kind == GestureKind::pick_up ? GesturePhase::pick_up
                                                          : GesturePhase::put_down;
            for (int l = g.start_slot + 1; l < L; ++l) {
                const int steps = std::min(l - g.start_slot, g.duration_slots);
                h[l] = level + delta * steps;
            }
            level = target;
        }

        const Vec3 rel = cfg.user_positions[k] - cfg.ap_position;
        const double d0 = rel.norm();
        if (!(d0 > 0.0)) throw std::invalid_argument("scenario: user coincides with the AP");
        if (h0 > d0)
            throw std::invalid_argument(
                "scenario: initial height exceeds range; feature angle undefined");

        // The feature angle is defined through the height relation
        // h = d cos(theta). A gesture moves the device vertically, so the
        // horizontal range rho = d sin(theta) stays fixed; (d, theta) per
        // slot follow from the height ramp.
        const double rho2 = d0 * d0 - h0 * h0;
        std::vector<double> d(L), theta(L);
        for (int l = 0; l < L; ++l) {
            d[l] = std::sqrt(rho2 + h[l] * h[l]);
            theta[l] = std::acos(std::clamp(h[l] / d[l], -1.0, 1.0));
        }

        for (int l = 0; l < L; ++l) {
            KinematicTruth t;
            t.d = d[l];
            t.theta = theta[l];
            t.h = h[l];
            t.phase = phase[l];
            if (l + 1 < L) {
                // Velocities defined so that the constant-velocity recursion
                // d_{l+1} = d_l - v_r T, theta_{l+1} = theta_l + v_t T / d_l
                // reproduces the next slot exactly.
                t.v_r = (d[l] - d[l + 1]) / T;
                t.v_t = (theta[l + 1] - theta[l]) * d[l] / T;
            }
            sc.truth_[k][l] = t;
        }
    }
    return sc;
}

Measurement synth_measurement(const KinematicTruth& truth, double sigma_tau, double sigma_theta,
                              RngStream& rng) {
    if (sigma_tau < 0 || sigma_theta < 0)
        throw std::invalid_argument("synth_measurement: sigmas must be nonnegative");
    const double n_tau = rng.normal();
    const double n_theta = rng.normal();
    Measurement m;
    m.tau = 2.0 * truth.d / kSpeedOfLight + sigma_tau * n_tau;
    m.theta_meas = truth.theta + sigma_theta * n_theta;
    return m;
}

}  // namespace isac
