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

#include "isac/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace isac {

VecXc array_response(double theta, const ArrayGeometry& geom) {
    if (geom.num_antennas < 1)
        throw std::invalid_argument("array_response: num_antennas must be >= 1");
    if (!(geom.spacing_ratio > 0.0))
        throw std::invalid_argument("array_response: spacing_ratio must be positive");
    VecXc a(geom.num_antennas);
    const double phase_step = 2.0 * M_PI * geom.spacing_ratio * std::sin(theta);
    for (int m = 0; m < geom.num_antennas; ++m)
        a[m] = std::polar(1.0, phase_step * m);
    return a;
}

double thz_path_gain(double carrier_hz, double distance_m, double absorption) {
    if (!(carrier_hz > 0.0)) throw std::invalid_argument("thz_path_gain: carrier must be positive");
    if (!(distance_m > 0.0))
        throw std::invalid_argument("thz_path_gain: distance must be positive");
    if (absorption < 0.0) throw std::invalid_argument("thz_path_gain: absorption must be >= 0");
    return kSpeedOfLight / (4.0 * M_PI * carrier_hz * distance_m) *
           std::exp(-0.5 * absorption * distance_m);
}

VecXc los_channel(double carrier_hz, double distance_m, double absorption, double theta,
                  const ArrayGeometry& geom) {
    const double gain = thz_path_gain(carrier_hz, distance_m, absorption);
    return gain * array_response(theta, geom);
}

MatXc reflection_channel(double carrier_hz, double distance_m, double absorption, double rcs,
                         double radial_velocity, double time_s, double theta,
                         const ArrayGeometry& geom) {
    if (!(distance_m > 0.0))
        throw std::invalid_argument("reflection_channel: distance must be positive");
    const double spreading = kSpeedOfLight / (4.0 * M_PI * carrier_hz * distance_m);
    const double two_way = spreading * spreading * std::exp(-absorption * distance_m);
    const cplx doppler =
        std::polar(1.0, -4.0 * M_PI * carrier_hz * radial_velocity * time_s / kSpeedOfLight);
    const VecXc a = array_response(theta, geom);
    return (two_way * rcs * doppler) * (a * a.adjoint());
}

}  // namespace isac
