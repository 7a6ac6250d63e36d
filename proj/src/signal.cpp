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

#include "isac/signal.hpp"

#include <cmath>
#include <stdexcept>

namespace isac {

namespace {

void check_sets(const PowerSet& powers, const BeamSet& beams) {
    const int K = beams.num_users();
    if (K < 1) throw std::invalid_argument("signal: empty beam set");
    if (static_cast<int>(beams.sense.size()) != K)
        throw std::invalid_argument("signal: comm/sense beam counts differ");
    if (powers.per_user.size() != K)
        throw std::invalid_argument("signal: power vector size mismatch");
    const Eigen::Index M = beams.comm.front().size();
    for (int k = 0; k < K; ++k) {
        if (beams.comm[k].size() != M || beams.sense[k].size() != M)
            throw std::invalid_argument("signal: beam dimension mismatch");
    }
}

}  // namespace

double qos_threshold(int delta, double sinr_high, double sinr_low) {
    if (delta != 0 && delta != 1) throw std::invalid_argument("qos_threshold: delta must be 0/1");
    return delta ? sinr_high : sinr_low;
}

MatXc transmit_covariance(const PowerSet& powers, const BeamSet& beams) {
    check_sets(powers, beams);
    const int K = beams.num_users();
    const Eigen::Index M = beams.comm.front().size();
    MatXc R = MatXc::Zero(M, M);
    for (int k = 0; k < K; ++k) {
        R += powers.per_user[k] * (beams.comm[k] * beams.comm[k].adjoint());
        R += powers.sense * (beams.sense[k] * beams.sense[k].adjoint());
    }
    return R;
}

std::pair<MatXc, MatXc> sample_symbol_streams(int num_users, int n_samples, RngStream& rng) {
    if (num_users < 1 || n_samples < 1)
        throw std::invalid_argument("sample_symbol_streams: sizes must be >= 1");
    MatXc Sc(num_users, n_samples), Sr(num_users, n_samples);
    for (int i = 0; i < n_samples; ++i)
        for (int k = 0; k < num_users; ++k) Sc(k, i) = rng.cnormal();
    for (int i = 0; i < n_samples; ++i)
        for (int k = 0; k < num_users; ++k) Sr(k, i) = rng.cnormal();
    return {Sc, Sr};
}

MatXc sample_transmit_symbols(const PowerSet& powers, const BeamSet& beams, int n_samples,
                              RngStream& rng) {
    check_sets(powers, beams);
    const int K = beams.num_users();
    const Eigen::Index M = beams.comm.front().size();
    auto [Sc, Sr] = sample_symbol_streams(K, n_samples, rng);

    MatXc Wc(M, K), Wr(M, K);
    for (int k = 0; k < K; ++k) {
        Wc.col(k) = std::sqrt(std::max(0.0, powers.per_user[k])) * beams.comm[k];
        Wr.col(k) = std::sqrt(std::max(0.0, powers.sense)) * beams.sense[k];
    }
    return Wc * Sc + Wr * Sr;
}

double comm_sinr(int k, const VecXc& h_k, const BeamSet& beams, const PowerSet& powers,
                 double noise_comm_w) {
    check_sets(powers, beams);
    if (!(noise_comm_w > 0.0)) throw std::invalid_argument("comm_sinr: noise must be positive");
    const int K = beams.num_users();
    if (k < 0 || k >= K) throw std::out_of_range("comm_sinr: user index");
    const double desired = powers.per_user[k] * std::norm(h_k.dot(beams.comm[k]));
    double interference = 0.0;
    for (int j = 0; j < K; ++j) {
        if (j != k) interference += powers.per_user[j] * std::norm(h_k.dot(beams.comm[j]));
        interference += powers.sense * std::norm(h_k.dot(beams.sense[j]));
    }
    return desired / (interference + noise_comm_w);
}

double comm_sinr_lifted(int k, const VecXc& h_k, const std::vector<MatXc>& W_c,
                        const std::vector<MatXc>& W_r, const PowerSet& powers,
                        double noise_comm_w) {
    if (!(noise_comm_w > 0.0))
        throw std::invalid_argument("comm_sinr_lifted: noise must be positive");
    const int K = static_cast<int>(W_c.size());
    if (k < 0 || k >= K) throw std::out_of_range("comm_sinr_lifted: user index");
    auto quad = [&](const MatXc& W) { return std::real((h_k.adjoint() * W * h_k)(0, 0)); };
    const double desired = powers.per_user[k] * quad(W_c[k]);
    double interference = 0.0;
    for (int j = 0; j < K; ++j) {
        if (j != k) interference += powers.per_user[j] * quad(W_c[j]);
        interference += powers.sense * quad(W_r[j]);
    }
    return desired / (interference + noise_comm_w);
}

double sens_sinr(int k, const MatXc& G_k, const BeamSet& beams, const PowerSet& powers,
                 double noise_radar_w) {
    check_sets(powers, beams);
    if (!(noise_radar_w > 0.0)) throw std::invalid_argument("sens_sinr: noise must be positive");
    if (k < 0 || k >= beams.num_users()) throw std::out_of_range("sens_sinr: user index");
    const double echo = powers.sense * (G_k * beams.sense[k]).squaredNorm();
    const double leak = powers.per_user[k] * (G_k * beams.comm[k]).squaredNorm();
    return echo / (leak + noise_radar_w);
}

double sens_sinr_lifted(int k, const MatXc& G_k, const std::vector<MatXc>& W_c,
                        const std::vector<MatXc>& W_r, const PowerSet& powers,
                        double noise_radar_w) {
    if (!(noise_radar_w > 0.0))
        throw std::invalid_argument("sens_sinr_lifted: noise must be positive");
    if (k < 0 || k >= static_cast<int>(W_c.size()))
        throw std::out_of_range("sens_sinr_lifted: user index");
    auto gain = [&](const MatXc& W) {
        return std::real((G_k * W * G_k.adjoint()).trace());
    };
    const double echo = powers.sense * gain(W_r[k]);
    const double leak = powers.per_user[k] * gain(W_c[k]);
    return echo / (leak + noise_radar_w);
}

}  // namespace isac
