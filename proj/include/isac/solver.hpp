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

#include <string>
#include <utility>
#include <vector>

#include "isac/types.hpp"

namespace isac {

enum class SolveStatus { optimal, infeasible, max_iters };

std::string to_string(SolveStatus s);

struct SolverTolerances {
    double feas_tol = 1e-7;
    double kkt_tol = 1e-6;  // relative duality gap
    int max_iters = 100;
};

/// Maximization over Hermitian PSD blocks W_1..W_B (all of side `block_dim`):
///
///   max  sum_j <L_j, W_j> + sum_i a_i sqrt(<C_i, W_{b_i}>) + constant
///   s.t. W_j >= 0, Tr(W_j) = trace_eq[j],
///        sum over terms of <A, W_b> >= rhs   (one row per inequality).
///
/// Complex Hermitian data; the solver embeds blocks as real symmetric
/// matrices of twice the side internally.
struct ConicProblem {
    int block_dim = 0;
    int num_blocks = 0;
    std::vector<MatXc> linear_obj;  // size num_blocks; zero matrices allowed
    struct SqrtTerm {
        int block = 0;
        double coeff = 0.0;  // a_i >= 0
        MatXc C;             // Hermitian PSD
    };
    std::vector<SqrtTerm> sqrt_terms;
    double objective_constant = 0.0;
    std::vector<double> trace_eq;  // per-block trace targets; defaults to 1
    struct LinearIneq {
        std::vector<std::pair<int, MatXc>> terms;  // (block, Hermitian coefficient)
        double rhs = 0.0;
    };
    std::vector<LinearIneq> ineqs;
};

struct SolveReport {
    SolveStatus status = SolveStatus::max_iters;
    double objective = 0.0;   // maximize-form value evaluated at the blocks
    double dual_bound = 0.0;  // certified upper bound on the optimum
    std::vector<MatXc> blocks;
    std::vector<double> sqrt_values;  // s_i = sqrt(<C_i, W_{b_i}>) at the solution
    double max_violation = 0.0;       // worst scaled constraint violation
    double kkt_primal = 0.0;
    double kkt_dual = 0.0;
    double rel_gap = 0.0;
    int iterations = 0;
    std::string detail;
};

/// Interior-point solve of the PSD-block maximization above.
SolveReport solve_psd(const ConicProblem& problem, const SolverTolerances& tol = {});

/// Power allocation subproblem at fixed beams and auxiliary weights:
///
///   max  sum_k 2 t_k sqrt(P_r g_r[k]) - t_k^2 (P_k g_c[k] + sigma_r2)
///   s.t. K P_r + sum_k P_k <= p_max, P >= 0, P_r >= 0,
///        q(k,k) P_k - gamma_k (sum_{j!=k} q(k,j) P_j + r[k] P_r + sigma_n2) >= 0.
///
/// Solved as a second-order cone program through the substitution
/// u = sqrt(P_r).
struct PowerProblem {
    VecX t;        // auxiliary weights, one per user
    VecX g_r;      // Tr(G_k W_rk G_k^H) >= 0
    VecX g_c;      // Tr(G_k W_ck G_k^H) >= 0
    MatX q;        // q(k, j) = Tr(W_cj h_k h_k^H)
    VecX r;        // r_k = sum_j Tr(W_rj h_k h_k^H)
    VecX gamma;    // per-user QoS thresholds
    double sigma_n2 = 0.0;
    double sigma_r2 = 0.0;
    double p_max = 0.0;
};

struct PowerResult {
    SolveStatus status = SolveStatus::max_iters;
    VecX per_user;        // P_k
    double sense = 0.0;   // P_r
    double objective = 0.0;
    double dual_bound = 0.0;
    double max_violation = 0.0;
    double kkt_primal = 0.0;
    double kkt_dual = 0.0;
    double rel_gap = 0.0;
    int iterations = 0;
    std::string detail;
};

PowerResult solve_power(const PowerProblem& problem, const SolverTolerances& tol = {});

/// Dominant eigenvector of a Hermitian PSD matrix, unit norm with a
/// canonical phase, plus the rank-one gap 1 - lambda_max / Tr(W).
/// Throws on a (numerically) zero matrix.
std::pair<VecXc, double> principal_component(const MatXc& W);

}  // namespace isac
