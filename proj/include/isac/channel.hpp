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

#include "isac/types.hpp"

namespace isac {

struct ArrayGeometry {
    int num_antennas = 12;
    double spacing_ratio = 0.5;  // element spacing over wavelength, d/lambda
};

/// ULA response: entry m = exp(j 2 pi (d/lambda) m sin(theta)), m = 0..M-1.
VecXc array_response(double theta, const ArrayGeometry& geom);

/// One-way THz amplitude gain: (c / (4 pi f d)) * exp(-K(f) d / 2).
double thz_path_gain(double carrier_hz, double distance_m, double absorption);

/// LoS downlink channel: path gain times the array response.
/// Rejects distance_m <= 0.
VecXc los_channel(double carrier_hz, double distance_m, double absorption, double theta,
                  const ArrayGeometry& geom);

/// Target reflection channel:
///   (c/(4 pi f d))^2 exp(-K(f) d) beta exp(-j 4 pi f v t / c) a(theta) a(theta)^H.
/// Two-way spreading is the square of the one-way gain; the absorption
/// exponent is twice the one-way exponent. Rejects distance_m <= 0.
MatXc reflection_channel(double carrier_hz, double distance_m, double absorption, double rcs,
                         double radial_velocity, double time_s, double theta,
                         const ArrayGeometry& geom);

}  // namespace isac
