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

#include "isac/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "isac/channel.hpp"

namespace isac {

std::string to_string(RunMode m) {
    switch (m) {
        case RunMode::joint: return "joint";
        case RunMode::power_only: return "power_only";
        case RunMode::beam_only: return "beam_only";
        case RunMode::static_no_adapt: return "static_no_adapt";
    }
    return "joint";
}

RunMode run_mode_from_string(const std::string& s) {
    if (s == "joint") return RunMode::joint;
    if (s == "power_only") return RunMode::power_only;
    if (s == "beam_only") return RunMode::beam_only;
    if (s == "static_no_adapt") return RunMode::static_no_adapt;
    throw std::invalid_argument("unknown run mode: " + s);
}

namespace {

SlotInputs make_inputs(const ScenarioConfig& cfg, const Scenario& sc,
                       const std::vector<TrackState>& states, const VecX& gamma, int slot,
                       double p_max) {
    const ArrayGeometry geom{cfg.num_antennas, cfg.array_spacing_ratio};
    const int K = cfg.num_users;
    SlotInputs in;
    in.h.resize(K);
    in.G.resize(K);
    for (int k = 0; k < K; ++k) {
        const double d = states[k].estimate[0];
        const double theta = states[k].estimate[1];
        in.h[k] = los_channel(cfg.carrier_frequency_hz, d, cfg.absorption_coeff, theta, geom);
        in.G[k] = reflection_channel(cfg.carrier_frequency_hz, d, cfg.absorption_coeff,
                                     sc.rcs(k), sc.truth(k, slot).v_r,
                                     slot * cfg.slot_duration_s, theta, geom);
    }
    in.gamma_req = gamma;
    in.p_max = p_max;
    in.sigma_n2 = cfg.noise_comm_w;
    in.sigma_r2 = cfg.noise_radar_w;
    return in;
}

}  // namespace

EpisodeResult run_episode(const Scenario& sc, RunMode mode, const OptimizerConfig& ocfg,
                          const SlotSolution* warm0) {
    const ScenarioConfig& cfg = sc.config();
    const int K = cfg.num_users;
    const int L = cfg.num_slots;
    const ArrayGeometry geom{cfg.num_antennas, cfg.array_spacing_ratio};
    const NoiseModel noise =
        NoiseModel::from_sigmas(cfg.proc_sigma_d_m, cfg.proc_sigma_theta_rad,
                                cfg.meas_sigma_tau_s, cfg.meas_sigma_theta_rad);

    std::vector<TrackState> states(K);
    for (int k = 0; k < K; ++k) {
        const KinematicTruth& t0 = sc.truth(k, 0);
        states[k] = init_track(t0.d, t0.theta, sc.initial_delta()[k]);
    }
    const std::vector<int> frozen_delta = sc.initial_delta();

    EpisodeResult out;
    out.detection_slot.assign(K, {});
    SlotSolution effective;  // last usable solution, applied when a slot fails
    bool have_effective = false;

    for (int l = 0; l < L; ++l) {
        out.slots_run = l + 1;

        if (l > 0) {
            for (int k = 0; k < K; ++k) {
                const KinematicTruth& prev = sc.truth(k, l - 1);
                predict(states[k], prev.v_r, prev.v_t, cfg.slot_duration_s, noise.process);
            }
            for (int k = 0; k < K; ++k) {
                detect_gesture(states[k], states[k].height(), cfg.gesture_eps_m,
                               cfg.cumulative_height_delta);
                if (mode == RunMode::static_no_adapt) states[k].delta = frozen_delta[k];
                if (states[k].gesture != GesturePhase::idle)
                    out.detection_slot[k].push_back(l);
            }
        }

        VecX gamma(K);
        for (int k = 0; k < K; ++k)
            gamma[k] = qos_threshold(states[k].delta, ocfg.sinr_high, ocfg.sinr_low);

        const SlotInputs in = make_inputs(cfg, sc, states, gamma, l, ocfg.p_max_w);

        const auto t_start = std::chrono::steady_clock::now();
        SlotSolution sol;
        const SlotSolution* warm =
            (l == 0) ? warm0 : (have_effective ? &effective : nullptr);
        switch (mode) {
            case RunMode::joint:
            case RunMode::static_no_adapt:
                sol = ao_solve(in, ocfg.ao, warm);
                break;
            case RunMode::power_only:
                sol = baseline_power_only(in, ocfg.ao);
                break;
            case RunMode::beam_only:
                sol = baseline_beam_only(in, ocfg.ao);
                break;
        }
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

        if (sol.status == SlotStatus::internal_error) out.any_internal_error = true;

        const bool usable = sol.status == SlotStatus::feasible;
        std::string status_str = to_string(sol.status);
        const SlotSolution* applied = nullptr;
        if (usable) {
            effective = sol;
            have_effective = true;
            applied = &effective;
        } else if (have_effective) {
            applied = &effective;
            status_str += "(kept_previous)";
        }

        VecX comm = VecX::Zero(K), sens = VecX::Zero(K);
        if (applied != nullptr) {
            for (int k = 0; k < K; ++k) {
                const KinematicTruth& tr = sc.truth(k, l);
                const VecXc h_true = los_channel(cfg.carrier_frequency_hz, tr.d,
                                                 cfg.absorption_coeff, tr.theta, geom);
                const MatXc G_true = reflection_channel(
                    cfg.carrier_frequency_hz, tr.d, cfg.absorption_coeff, sc.rcs(k), tr.v_r,
                    l * cfg.slot_duration_s, tr.theta, geom);
                comm[k] = comm_sinr(k, h_true, applied->beams, applied->powers, cfg.noise_comm_w);
                sens[k] = sens_sinr(k, G_true, applied->beams, applied->powers, cfg.noise_radar_w);
            }
        }
        const double sum_sens = sens.sum();

        for (int k = 0; k < K; ++k) {
            SlotRecord r;
            r.slot = l;
            r.user = k;
            const KinematicTruth& tr = sc.truth(k, l);
            r.true_d = tr.d;
            r.true_theta = tr.theta;
            r.true_h = tr.h;
            r.est_d = states[k].estimate[0];
            r.est_theta = states[k].estimate[1];
            r.est_h = states[k].height();
            r.gesture = states[k].gesture;
            r.delta = states[k].delta;
            r.gamma_req = gamma[k];
            r.comm_sinr = comm[k];
            r.sens_sinr = sens[k];
            r.sum_sens_sinr = sum_sens;
            r.p_user = applied != nullptr ? applied->powers.per_user[k] : 0.0;
            r.p_sense = applied != nullptr ? applied->powers.sense : 0.0;
            r.ao_iterations = sol.iterations;
            r.status = status_str;
            r.wall_time_s = wall;
            out.records.push_back(std::move(r));
        }
        out.solutions.push_back(std::move(sol));
        out.inputs.push_back(in);

        // Echo measurement and filter update close the slot.
        if (l >= 1) {
            for (int k = 0; k < K; ++k) {
                RngStream rng(substream_seed(cfg.rng_seed, static_cast<std::uint64_t>(k),
                                             static_cast<std::uint64_t>(l)));
                const Measurement z = synth_measurement(sc.truth(k, l), cfg.meas_sigma_tau_s,
                                                        cfg.meas_sigma_theta_rad, rng);
                update(states[k], z, noise.measurement);
            }
        }

        bool covered = true;
        for (int k = 0; k < K; ++k)
            if (states[k].estimate[0] > cfg.coverage_max_range_m) covered = false;
        if (!covered) break;
    }
    return out;
}

ExperimentSpec ExperimentSpec::pmax_sweep_defaults() {
    ExperimentSpec s;
    s.kind = Kind::static_pmax_sweep;
    s.axis = {30, 32, 34, 36, 38};
    s.modes = {RunMode::joint, RunMode::power_only, RunMode::beam_only};
    return s;
}

ExperimentSpec ExperimentSpec::m_sweep_defaults() {
    ExperimentSpec s;
    s.kind = Kind::static_m_sweep;
    s.axis = {8, 10, 12, 14, 16};
    s.modes = {RunMode::joint, RunMode::power_only, RunMode::beam_only};
    return s;
}

ExperimentSpec ExperimentSpec::dynamic_defaults() {
    ExperimentSpec s;
    s.kind = Kind::dynamic_episode;
    s.axis = {};
    s.modes = {RunMode::joint, RunMode::static_no_adapt};
    return s;
}

namespace {

double mean_sum_sens(const EpisodeResult& ep, int K) {
    if (ep.records.empty()) return 0.0;
    double acc = 0.0;
    int slots = 0;
    for (std::size_t i = 0; i < ep.records.size(); i += K) {
        acc += ep.records[i].sum_sens_sinr;
        ++slots;
    }
    return acc / std::max(1, slots);
}

std::string episode_status(const EpisodeResult& ep) {
    if (ep.any_internal_error) return "internal_error";
    for (const auto& s : ep.solutions)
        if (s.status != SlotStatus::feasible) return "infeasible_slots";
    return "ok";
}

const SlotSolution* last_feasible(const EpisodeResult& ep) {
    for (auto it = ep.solutions.rbegin(); it != ep.solutions.rend(); ++it)
        if (it->status == SlotStatus::feasible) return &*it;
    return nullptr;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec, const ScenarioConfig& base,
                                const OptimizerConfig& ocfg) {
    if (!spec.axis.empty()) {
        for (std::size_t i = 1; i < spec.axis.size(); ++i)
            if (!(spec.axis[i] > spec.axis[i - 1]))
                throw std::invalid_argument("experiment: axis values must strictly increase");
    }
    if (spec.modes.empty()) throw std::invalid_argument("experiment: at least one mode required");
    const bool dynamic = spec.kind == ExperimentSpec::Kind::dynamic_episode;
    std::vector<double> axis = spec.axis;
    if (dynamic) axis = {0.0};
    if (axis.empty()) throw std::invalid_argument("experiment: axis values required for sweeps");
    std::vector<std::uint64_t> seeds = spec.seeds;
    if (seeds.empty()) seeds = {base.rng_seed};

    ExperimentResult out;
    for (const std::uint64_t seed : seeds) {
        for (const double ax : axis) {
            ScenarioConfig scfg = base;
            OptimizerConfig oc = ocfg;
            scfg.rng_seed = seed;
            if (!dynamic) {
                scfg.gestures.clear();
                scfg.initial_height.assign(scfg.num_users,
                                           0.5 * (scfg.h_pick_m + scfg.h_put_m));
                std::vector<int> delta(scfg.num_users, 0);
                if (!delta.empty()) delta[0] = 1;
                scfg.initial_delta = delta;
                scfg.num_slots = spec.static_slots;
                if (spec.kind == ExperimentSpec::Kind::static_pmax_sweep)
                    oc.p_max_w = dbm_to_watts(ax);
                else
                    scfg.num_antennas = static_cast<int>(std::lround(ax));
            }
            const Scenario sc = build_scenario(scfg);

            // Baselines first so the joint mode can multi-start from them.
            std::vector<RunMode> order = spec.modes;
            std::stable_sort(order.begin(), order.end(), [](RunMode a, RunMode b) {
                auto rank = [](RunMode m) {
                    return (m == RunMode::joint || m == RunMode::static_no_adapt) ? 1 : 0;
                };
                return rank(a) < rank(b);
            });

            std::vector<std::pair<RunMode, EpisodeResult>> runs;
            double best_baseline = -1.0;
            const SlotSolution* baseline_sol = nullptr;
            for (const RunMode mode : order) {
                EpisodeResult ep = run_episode(sc, mode, oc);
                if (mode == RunMode::power_only || mode == RunMode::beam_only) {
                    const double v =
                        ep.records.empty() ? 0.0 : ep.records.back().sum_sens_sinr;
                    if (v > best_baseline) {
                        best_baseline = v;
                        baseline_sol = last_feasible(ep);
                    }
                }
                if (mode == RunMode::joint && baseline_sol != nullptr &&
                    !ep.records.empty() &&
                    ep.records.back().sum_sens_sinr < best_baseline) {
                    EpisodeResult retry = run_episode(sc, mode, oc, baseline_sol);
                    if (!retry.records.empty() &&
                        retry.records.back().sum_sens_sinr > ep.records.back().sum_sens_sinr)
                        ep = std::move(retry);
                }
                runs.emplace_back(mode, std::move(ep));
            }

            // Emit rows in the caller's mode order.
            for (const RunMode mode : spec.modes) {
                for (auto& [m, ep] : runs) {
                    if (m != mode) continue;
                    SweepRow row;
                    row.axis_value = ax;
                    row.mode = mode;
                    row.seed = seed;
                    row.final_sum_sens =
                        ep.records.empty() ? 0.0 : ep.records.back().sum_sens_sinr;
                    row.mean_sum_sens = mean_sum_sens(ep, scfg.num_users);
                    row.status = episode_status(ep);
                    out.any_internal_error |= ep.any_internal_error;
                    out.table.push_back(row);
                    out.episodes.push_back(std::move(ep));
                    break;
                }
            }
        }
    }
    return out;
}

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_csv(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_csv: cannot open " + path);
    return out;
}

}  // namespace

void emit_csv(const std::vector<SlotRecord>& records, const std::string& path) {
    auto out = open_csv(path);
    out << "slot,user,true_d_m,true_theta_rad,true_h_m,est_d_m,est_theta_rad,est_h_m,"
           "gesture,delta,gamma_req,comm_sinr,sens_sinr,sum_sens_sinr,p_user_w,p_sense_w,"
           "ao_iterations,status,wall_time_s\n";
    for (const auto& r : records) {
        out << r.slot << ',' << r.user << ',' << fmt(r.true_d) << ',' << fmt(r.true_theta)
            << ',' << fmt(r.true_h) << ',' << fmt(r.est_d) << ',' << fmt(r.est_theta) << ','
            << fmt(r.est_h) << ',' << to_string(r.gesture) << ',' << r.delta << ','
            << fmt(r.gamma_req) << ',' << fmt(r.comm_sinr) << ',' << fmt(r.sens_sinr) << ','
            << fmt(r.sum_sens_sinr) << ',' << fmt(r.p_user) << ',' << fmt(r.p_sense) << ','
            << r.ao_iterations << ',' << r.status << ',' << fmt(r.wall_time_s) << '\n';
    }
    if (!out.good()) throw std::runtime_error("emit_csv: write failed for " + path);
}

void emit_csv(const std::vector<SweepRow>& table, const std::string& path) {
    auto out = open_csv(path);
    out << "axis,mode,seed,final_sum_sens_sinr,mean_sum_sens_sinr,status\n";
    for (const auto& r : table) {
        out << fmt(r.axis_value) << ',' << to_string(r.mode) << ',' << r.seed << ','
            << fmt(r.final_sum_sens) << ',' << fmt(r.mean_sum_sens) << ',' << r.status << '\n';
    }
    if (!out.good()) throw std::runtime_error("emit_csv: write failed for " + path);
}

}  // namespace isac
