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

#include "isac/tracker.hpp"

#include <cmath>
#include <stdexcept>

namespace isac {

NoiseModel NoiseModel::from_sigmas(double sigma_d, double sigma_theta_proc, double sigma_tau,
                                   double sigma_theta_meas) {
    if (sigma_d < 0 || sigma_theta_proc < 0 || sigma_tau < 0 || sigma_theta_meas < 0)
        throw std::invalid_argument("NoiseModel: sigmas must be nonnegative");
    NoiseModel n;
    n.process.diagonal() << sigma_d * sigma_d, sigma_theta_proc * sigma_theta_proc;
    n.measurement.diagonal() << sigma_tau * sigma_tau, sigma_theta_meas * sigma_theta_meas;
    return n;
}

double height_of(double d, double theta) { return d * std::cos(theta); }

Vec2 transition_fn(const Vec2& x, double v_r, double v_t, double T) {
    return Vec2{x[0] - v_r * T, x[1] + v_t * T / x[0]};
}

Mat2 transition_jacobian(const Vec2& x, double v_t, double T) {
    Mat2 F;
    F << 1.0, 0.0, -v_t * T / (x[0] * x[0]), 1.0;
    return F;
}

Vec2 measurement_fn(const Vec2& x) {
    return Vec2{2.0 * x[0] / kSpeedOfLight, x[1]};
}

Mat2 measurement_jacobian() {
    Mat2 H;
    H << 2.0 / kSpeedOfLight, 0.0, 0.0, 1.0;
    return H;
}

void predict(TrackState& state, double v_r, double v_t, double T, const Mat2& process_noise) {
    if (!(state.estimate[0] > 0.0))
        throw TrackingDivergence("predict: current range estimate is nonpositive");
    const Mat2 F = transition_jacobian(state.estimate, v_t, T);
    state.estimate = transition_fn(state.estimate, v_r, v_t, T);
    if (!(state.estimate[0] > 0.0))
        throw TrackingDivergence("predict: predicted range is nonpositive");
    state.mse = F * state.mse * F.transpose() + process_noise;
}

void update(TrackState& state, const Measurement& z, const Mat2& meas_noise) {
    const Mat2 H = measurement_jacobian();
    const Mat2 Mpred = state.mse;
    const Mat2 S = meas_noise + H * Mpred * H.transpose();
    const Vec2 innovation =
        Vec2{z.tau, z.theta_meas} - measurement_fn(state.estimate);

    // S is 2x2; treat it as singular when its determinant underflows
    // relative to its scale.
    const double scale = S.cwiseAbs().maxCoeff();
    if (!(S.determinant() > 1e-30 * scale * scale) || scale == 0.0) {
        if (innovation.norm() <= 1e-12 * (1.0 + std::abs(z.tau) + std::abs(z.theta_meas)))
            return;  // exact prior, nothing to correct
        throw std::runtime_error("update: degenerate innovation covariance");
    }

    const Mat2 gain = Mpred * H.transpose() * S.inverse();
    state.estimate += gain * innovation;
    state.mse = (Mat2::Identity() - gain * H) * Mpred;
    state.mse = 0.5 * (state.mse + state.mse.transpose().eval());  // keep symmetric
}

void detect_gesture(TrackState& state, double new_height, double eps_h, bool cumulative) {
    if (!(eps_h > 0.0)) throw std::invalid_argument("detect_gesture: eps_h must be positive");
    const double ref = cumulative ? state.height_ref : state.height_prev;
    const double dh = new_height - ref;
    if (std::abs(dh) < eps_h) {
        state.gesture = GesturePhase::idle;  // delta retains its previous value
    } else if (dh > 0.0) {
        state.gesture = GesturePhase::pick_up;
        state.delta = 1;
        state.height_ref = new_height;
    } else {
        state.gesture = GesturePhase::put_down;
        state.delta = 0;
        state.height_ref = new_height;
    }
    state.height_prev = new_height;
}

TrackState init_track(double d0, double theta0, int delta0) {
    if (!(d0 > 0.0)) throw std::invalid_argument("init_track: range must be positive");
    TrackState s;
    s.estimate = Vec2{d0, theta0};
    s.mse = Mat2::Zero();
    s.mse.diagonal() << 0.01, deg_to_rad(1.0) * deg_to_rad(1.0);
    s.height_prev = s.height_ref = height_of(d0, theta0);
    s.gesture = GesturePhase::idle;
    s.delta = delta0 ? 1 : 0;
    return s;
}

}  // namespace isac
