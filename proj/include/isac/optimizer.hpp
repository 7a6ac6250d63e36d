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

#include <optional>
#include <string>
#include <vector>

#include "isac/signal.hpp"
#include "isac/solver.hpp"
#include "isac/types.hpp"

namespace isac {

/// Everything the per-slot joint design needs.
struct SlotInputs {
    std::vector<VecXc> h;  // per-user LoS channels
    std::vector<MatXc> G;  // per-user reflection matrices
    VecX gamma_req;        // per-user QoS thresholds (> 0)
    double p_max = 0.0;
    double sigma_n2 = 0.0;
    double sigma_r2 = 0.0;

    int num_users() const { return static_cast<int>(h.size()); }
    int num_antennas() const { return h.empty() ? 0 : static_cast<int>(h.front().size()); }
};

struct AoOptions {
    double rel_tol = 1e-4;
    int max_iters = 50;
    int restarts = 0;  // extra seeded random initializations; best run wins
    std::uint64_t restart_seed = 1;
    SolverTolerances solver;
};

enum class SlotStatus { feasible, infeasible, internal_error };

std::string to_string(SlotStatus s);

struct SlotSolution {
    SlotStatus status = SlotStatus::infeasible;
    PowerSet powers;               // final powers (re-optimized for the unit beams)
    BeamSet beams;                 // recovered rank-one unit-norm beams
    std::vector<MatXc> W_c, W_r;   // lifted matrices from the last beam step
    PowerSet powers_lifted;        // powers paired with the lifted matrices
    VecX t;                        // auxiliary variables after the final update
    std::vector<double> objective_trace;  // surrogate value after each sub-step
    VecX comm_sinr_lifted, sens_sinr_lifted;  // lifted matrices + powers_lifted
    VecX comm_sinr_beams, sens_sinr_beams;    // rank-one beams + final powers
    VecX rank_gap_c, rank_gap_r;   // 1 - lambda_max/trace per lifted block
    double fp_objective = 0.0;     // quadratic-transform value at the final point
    double sum_sens_sinr = 0.0;    // sum of sens_sinr_beams
    int iterations = 0;
    std::string detail;
};

/// Closed-form auxiliary update t_k = sqrt(P_r g_r) / (P_k g_c + sigma_r2),
/// the argmax of 2 t A - t^2 B.
VecX update_t_lifted(const PowerSet& powers, const std::vector<MatXc>& W_c,
                     const std::vector<MatXc>& W_r, const std::vector<MatXc>& G,
                     double sigma_r2);
VecX update_t_beams(const PowerSet& powers, const BeamSet& beams, const std::vector<MatXc>& G,
                    double sigma_r2);

/// Quadratic-transform surrogate value at (powers, lifted W, t).
double fp_objective_lifted(const SlotInputs& in, const PowerSet& powers,
                           const std::vector<MatXc>& W_c, const std::vector<MatXc>& W_r,
                           const VecX& t);

/// Sum sensing SINR (the sum-of-ratios objective) with lifted matrices.
double sum_sens_lifted(const SlotInputs& in, const PowerSet& powers,
                       const std::vector<MatXc>& W_c, const std::vector<MatXc>& W_r);

/// One beamforming subproblem solve at fixed powers and t.
SolveReport beamforming_step(const SlotInputs& in, const PowerSet& powers, const VecX& t,
                             const SolverTolerances& tol = {});

/// One power subproblem solve at fixed lifted matrices and t.
PowerResult power_step(const SlotInputs& in, const std::vector<MatXc>& W_c,
                       const std::vector<MatXc>& W_r, const VecX& t,
                       const SolverTolerances& tol = {});

/// Alternating optimization of beams and powers with the quadratic
/// transform; the full per-slot joint design.
SlotSolution ao_solve(const SlotInputs& in, const AoOptions& opts = {},
                      const SlotSolution* warm = nullptr);

/// Power allocation only; beams stay at the steering-vector initialization.
SlotSolution baseline_power_only(const SlotInputs& in, const AoOptions& opts = {});

/// Beamforming only; powers stay at the proportional initialization.
SlotSolution baseline_beam_only(const SlotInputs& in, const AoOptions& opts = {});

}  // namespace isac
