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

#include "isac/scenario.hpp"
#include "isac/types.hpp"

namespace isac {

/// Diagonal process / measurement covariances for the (d, theta) filter.
struct NoiseModel {
    Mat2 process = Mat2::Zero();      // Q_s = diag(sigma_d^2, sigma_theta^2)
    Mat2 measurement = Mat2::Zero();  // R_m = diag(sigma_tau^2, sigma_theta^2)

    static NoiseModel from_sigmas(double sigma_d, double sigma_theta_proc, double sigma_tau,
                                  double sigma_theta_meas);
};

/// Device height feature: h = d cos(theta).
double height_of(double d, double theta);

/// Range/angle state with its MSE matrix plus the gesture bookkeeping.
struct TrackState {
    Vec2 estimate = Vec2::Zero();   // (d_hat, theta_hat)
    Mat2 mse = Mat2::Zero();        // M
    double height_prev = 0.0;       // height at the previous slot
    double height_ref = 0.0;        // height at the last confirmed state change
    GesturePhase gesture = GesturePhase::idle;
    int delta = 0;

    double height() const { return height_of(estimate[0], estimate[1]); }
};

/// Constant-velocity transition (d, theta) -> (d - v_r T, theta + v_t T / d).
Vec2 transition_fn(const Vec2& x, double v_r, double v_t, double T);

/// Jacobian of the transition at x: [[1, 0], [-v_t T / d^2, 1]].
Mat2 transition_jacobian(const Vec2& x, double v_t, double T);

/// Measurement map (d, theta) -> (2 d / c, theta).
Vec2 measurement_fn(const Vec2& x);

/// Jacobian of the measurement map; constant [[2/c, 0], [0, 1]].
Mat2 measurement_jacobian();

/// Prediction step: x <- f(x), M <- F M F^T + Q. Throws TrackingDivergence
/// if the predicted range is nonpositive.
void predict(TrackState& state, double v_r, double v_t, double T, const Mat2& process_noise);

/// Gain/track/MSE update with measurement z = (tau, theta). A singular
/// innovation covariance (possible only when R_m and the predicted MSE both
/// vanish) is accepted when the innovation is zero, since the prior then
/// already explains the measurement exactly; otherwise it is an error.
void update(TrackState& state, const Measurement& z, const Mat2& meas_noise);

/// Applies the height-variation decision rule and updates gesture + delta.
/// With `cumulative` (default) the variation is measured against the height
/// at the last confirmed state change, otherwise against the previous slot.
void detect_gesture(TrackState& state, double new_height, double eps_h, bool cumulative = true);

/// State initialization from exact geometry, with the default prior MSE
/// diag(0.01 m^2, (1 deg)^2).
TrackState init_track(double d0, double theta0, int delta0);

}  // namespace isac
