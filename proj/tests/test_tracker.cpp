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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "isac/scenario.hpp"
#include "isac/tracker.hpp"

using namespace isac;

TEST_CASE("stationary prediction only inflates the covariance") {
    TrackState s = init_track(2.0, 0.5, 0);
    const Mat2 M0 = s.mse;
    Mat2 Q = Mat2::Zero();
    Q.diagonal() << 1e-4, 1e-6;
    predict(s, 0.0, 0.0, 0.1, Q);
    CHECK(s.estimate[0] == 2.0);
    CHECK(s.estimate[1] == 0.5);
    CHECK((s.mse - (M0 + Q)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("transition Jacobian matches the closed form") {
    // d = 2, theta = 0.5, v_t = 1, T = 0.1 -> F = [[1,0],[-0.025,1]].
    const Mat2 F = transition_jacobian(Vec2{2.0, 0.5}, 1.0, 0.1);
    CHECK(F(0, 0) == 1.0);
    CHECK(F(0, 1) == 0.0);
    CHECK(F(1, 0) == doctest::Approx(-0.025).epsilon(1e-15));
    CHECK(F(1, 1) == 1.0);
}

TEST_CASE("jacobians match central finite differences") {
    const double eps = 1e-6;
    const double v_r = 0.4, v_t = -0.7, T = 0.1;
    const Vec2 x{2.3, 0.6};
    const Mat2 F = transition_jacobian(x, v_t, T);
    for (int j = 0; j < 2; ++j) {
        Vec2 xp = x, xm = x;
        xp[j] += eps;
        xm[j] -= eps;
        const Vec2 diff = (transition_fn(xp, v_r, v_t, T) - transition_fn(xm, v_r, v_t, T)) /
                          (2.0 * eps);
        for (int i = 0; i < 2; ++i)
            CHECK(F(i, j) == doctest::Approx(diff[i]).epsilon(1e-6));
    }
    const Mat2 H = measurement_jacobian();
    for (int j = 0; j < 2; ++j) {
        Vec2 xp = x, xm = x;
        xp[j] += eps;
        xm[j] -= eps;
        const Vec2 diff = (measurement_fn(xp) - measurement_fn(xm)) / (2.0 * eps);
        for (int i = 0; i < 2; ++i)
            CHECK(H(i, j) == doctest::Approx(diff[i]).epsilon(1e-6));
    }
}

TEST_CASE("measurement map and its constant Jacobian") {
    const Vec2 z = measurement_fn(Vec2{1.5, 0.4});
    CHECK(z[0] == doctest::Approx(1.0007e-8).epsilon(1e-4));
    CHECK(z[1] == 0.4);
    CHECK((measurement_jacobian() - measurement_jacobian()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("zero innovation leaves the state unchanged") {
    TrackState s = init_track(2.0, 0.5, 0);
    Mat2 R = Mat2::Zero();
    R.diagonal() << 1e-20, 1e-6;
    Measurement z;
    z.tau = 2.0 * 2.0 / kSpeedOfLight;
    z.theta_meas = 0.5;
    update(s, z, R);
    CHECK(s.estimate[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(s.estimate[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("perfect measurements collapse the posterior") {
    TrackState s = init_track(2.0, 0.5, 0);
    Measurement z;
    z.tau = 2.0 * 1.9 / kSpeedOfLight;
    z.theta_meas = 0.55;
    update(s, z, Mat2::Zero());
    CHECK(s.estimate[0] == doctest::Approx(1.9).epsilon(1e-9));
    CHECK(s.estimate[1] == doctest::Approx(0.55).epsilon(1e-9));
    CHECK(s.mse.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("update matches a direct two-by-two evaluation") {
    RngStream rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        Mat2 A;
        A << rng.normal(), rng.normal(), rng.normal(), rng.normal();
        const Mat2 Mpred = A * A.transpose() + 0.1 * Mat2::Identity();
        Mat2 R = Mat2::Zero();
        R.diagonal() << std::pow(10, -19 - rng.uniform()), 1e-4 * (0.5 + rng.uniform());

        TrackState s = init_track(2.0 + rng.uniform(), 0.3 + 0.2 * rng.uniform(), 0);
        s.mse = Mpred;
        Measurement z;
        z.tau = 2.0 * (s.estimate[0] + 0.05 * rng.normal()) / kSpeedOfLight;
        z.theta_meas = s.estimate[1] + 0.01 * rng.normal();
        const Vec2 prior = s.estimate;
        update(s, z, R);

        // direct formula with an independent 2x2 inverse
        const Mat2 H = measurement_jacobian();
        const Mat2 S = R + H * Mpred * H.transpose();
        const double det = S(0, 0) * S(1, 1) - S(0, 1) * S(1, 0);
        Mat2 Sinv;
        Sinv << S(1, 1) / det, -S(0, 1) / det, -S(1, 0) / det, S(0, 0) / det;
        const Mat2 G = Mpred * H.transpose() * Sinv;
        const Vec2 innov = Vec2{z.tau, z.theta_meas} - measurement_fn(prior);
        const Vec2 expect = prior + G * innov;
        const Mat2 Mexpect = (Mat2::Identity() - G * H) * Mpred;

        CHECK(s.estimate[0] == doctest::Approx(expect[0]).epsilon(1e-12));
        CHECK(s.estimate[1] == doctest::Approx(expect[1]).epsilon(1e-12));
        CHECK((s.mse - 0.5 * (Mexpect + Mexpect.transpose())).cwiseAbs().maxCoeff() < 1e-12);

        // posterior never exceeds the prior in the Loewner order
        Eigen::SelfAdjointEigenSolver<Mat2> es(Mpred - s.mse);
        CHECK(es.eigenvalues().minCoeff() > -1e-12);
    }
}

TEST_CASE("height feature") {
    CHECK(height_of(1.5, 0.0) == 1.5);
    CHECK(height_of(2.0, M_PI / 2) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(height_of(2.0, std::acos(0.75)) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("gesture decision rule") {
    TrackState s = init_track(2.0, std::acos(0.6), 0);  // height 1.2
    const double h0 = s.height_ref;

    detect_gesture(s, h0 + 0.3, 0.1);
    CHECK(s.gesture == GesturePhase::pick_up);
    CHECK(s.delta == 1);
    CHECK(s.height_ref == doctest::Approx(h0 + 0.3));

    // small variation: inactive, delta retained
    detect_gesture(s, h0 + 0.3, 0.1);
    CHECK(s.gesture == GesturePhase::idle);
    CHECK(s.delta == 1);

    detect_gesture(s, h0 + 0.3 - 0.12, 0.1);
    CHECK(s.gesture == GesturePhase::put_down);
    CHECK(s.delta == 0);
}

TEST_CASE("repeated pick-up detections keep delta at one") {
    TrackState s = init_track(2.0, std::acos(0.6), 0);
    detect_gesture(s, s.height_ref + 0.12, 0.1);
    CHECK(s.delta == 1);
    detect_gesture(s, s.height_ref + 0.12, 0.1);
    CHECK(s.gesture == GesturePhase::pick_up);
    CHECK(s.delta == 1);
}

TEST_CASE("per-slot variation mode uses the previous height") {
    TrackState s = init_track(2.0, std::acos(0.6), 0);
    const double h0 = s.height_prev;
    detect_gesture(s, h0 + 0.05, 0.1, /*cumulative=*/false);
    CHECK(s.gesture == GesturePhase::idle);
    detect_gesture(s, h0 + 0.05 + 0.11, 0.1, false);
    CHECK(s.gesture == GesturePhase::pick_up);
}

TEST_CASE("nonpositive predicted range raises tracking divergence") {
    TrackState s = init_track(0.05, 0.3, 0);
    CHECK_THROWS_AS(predict(s, 10.0, 0.0, 0.1, Mat2::Zero()), TrackingDivergence);
}

TEST_CASE("zero-noise tracking is exact over a full gesture episode") {
    ScenarioConfig cfg = ScenarioConfig::defaults();
    cfg.num_slots = 20;
    cfg.gestures = {{0, 0, GestureKind::pick_up, 10}, {2, 0, GestureKind::put_down, 10}};
    cfg.meas_sigma_tau_s = 0.0;
    cfg.meas_sigma_theta_rad = 0.0;
    const Scenario sc = build_scenario(cfg);
    const Mat2 Q = Mat2::Zero();
    const Mat2 R = Mat2::Zero();
    RngStream rng(1);

    for (int k = 0; k < sc.num_users(); ++k) {
        TrackState s = init_track(sc.truth(k, 0).d, sc.truth(k, 0).theta, 0);
        for (int l = 1; l < sc.num_slots(); ++l) {
            const KinematicTruth& prev = sc.truth(k, l - 1);
            predict(s, prev.v_r, prev.v_t, cfg.slot_duration_s, Q);
            const Measurement z = synth_measurement(sc.truth(k, l), 0.0, 0.0, rng);
            update(s, z, R);
            CHECK(std::abs(s.estimate[0] - sc.truth(k, l).d) < 1e-9);
            CHECK(std::abs(s.estimate[1] - sc.truth(k, l).theta) < 1e-9);
        }
    }
}

TEST_CASE("noise model rejects negative sigmas") {
    CHECK_THROWS_AS(NoiseModel::from_sigmas(-1.0, 0, 0, 0), std::invalid_argument);
}
