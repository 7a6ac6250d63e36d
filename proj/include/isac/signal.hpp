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

#include <utility>
#include <vector>

#include "isac/rng.hpp"
#include "isac/types.hpp"

namespace isac {

/// Unit-norm communication and sensing beams, one of each per user.
struct BeamSet {
    std::vector<VecXc> comm;   // w_{c,k}
    std::vector<VecXc> sense;  // w_{r,k}

    int num_users() const { return static_cast<int>(comm.size()); }
};

/// Per-user transmit powers plus the shared sensing power, watts.
struct PowerSet {
    VecX per_user;     // P_k
    double sense = 0;  // P_r, applied uniformly to every sensing beam

    double total(int num_users) const { return per_user.sum() + num_users * sense; }
};

/// Gesture-state dependent SINR requirement:
/// delta * sinr_high + (1 - delta) * sinr_low (linear ratios, not dB).
double qos_threshold(int delta, double sinr_high = 5.0, double sinr_low = 1.0);

/// Transmit covariance of the dual-functional signal:
/// sum_k P_k w_ck w_ck^H + P_r sum_k w_rk w_rk^H.
MatXc transmit_covariance(const PowerSet& powers, const BeamSet& beams);

/// Unit-variance circularly-symmetric symbol streams for the K communication
/// and K sensing waveforms; the two blocks are drawn independently.
std::pair<MatXc, MatXc> sample_symbol_streams(int num_users, int n_samples, RngStream& rng);

/// n_samples transmit snapshots combining the beams with i.i.d. symbols.
/// Column i is W_c s_c[i] + W_r s_r[i] with the powers folded in.
MatXc sample_transmit_symbols(const PowerSet& powers, const BeamSet& beams, int n_samples,
                              RngStream& rng);

/// Downlink SINR of user k with rank-one beams.
double comm_sinr(int k, const VecXc& h_k, const BeamSet& beams, const PowerSet& powers,
                 double noise_comm_w);

/// Downlink SINR of user k with lifted matrices W_c, W_r in place of beams.
double comm_sinr_lifted(int k, const VecXc& h_k, const std::vector<MatXc>& W_c,
                        const std::vector<MatXc>& W_r, const PowerSet& powers,
                        double noise_comm_w);

/// Echo SINR of user k: P_r ||G_k w_rk||^2 / (P_k ||G_k w_ck||^2 + sigma_r^2).
double sens_sinr(int k, const MatXc& G_k, const BeamSet& beams, const PowerSet& powers,
                 double noise_radar_w);

/// Echo SINR of user k with lifted matrices (trace forms).
double sens_sinr_lifted(int k, const MatXc& G_k, const std::vector<MatXc>& W_c,
                        const std::vector<MatXc>& W_r, const PowerSet& powers,
                        double noise_radar_w);

}  // namespace isac
