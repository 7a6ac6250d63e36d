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

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace isac {

using VecX  = Eigen::VectorXd;
using MatX  = Eigen::MatrixXd;
using VecXc = Eigen::VectorXcd;
using MatXc = Eigen::MatrixXcd;
using Vec2  = Eigen::Vector2d;
using Mat2  = Eigen::Matrix2d;
using Vec3  = Eigen::Vector3d;
using cplx  = std::complex<double>;

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

/// dBm to watts: 36 dBm -> 3.98107 W, -90 dBm -> 1e-12 W.
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

/// Watts to dBm (w > 0).
inline double watts_to_dbm(double w) {
    if (w <= 0.0) throw std::invalid_argument("watts_to_dbm: power must be positive");
    return 10.0 * std::log10(w) + 30.0;
}

inline double deg_to_rad(double deg) { return deg * M_PI / 180.0; }

/// Thrown when the range/angle filter predicts a nonphysical state.
class TrackingDivergence : public std::runtime_error {
  public:
    explicit TrackingDivergence(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace isac
