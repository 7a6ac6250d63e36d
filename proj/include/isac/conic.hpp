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

#include <vector>

#include "isac/types.hpp"

namespace isac::conic {

/// Product cone: leading nonnegative orthant block, then second-order cones,
/// then dense real symmetric PSD blocks (svec-packed, off-diagonals scaled
/// by sqrt(2) so the packed dot product equals the trace inner product).
struct ConeSpec {
    int orthant = 0;
    std::vector<int> soc;  // dims >= 2
    std::vector<int> psd;  // matrix side lengths >= 1

    int vec_dim() const;
    double degree() const;  // barrier parameter nu
};

/// Conic linear program in standard form:
///   minimize c.x  subject to  A x = b,  x in K.
struct ConeProgram {
    MatX A;
    VecX b;
    VecX c;
    ConeSpec cone;
};

struct IpmOptions {
    double feas_tol = 1e-7;
    double rel_gap_tol = 1e-6;
    int max_iters = 100;
    double step_frac = 0.98;
    bool verbose = false;
};

enum class IpmStatus { optimal, primal_infeasible, dual_infeasible, max_iters };

struct IpmResult {
    IpmStatus status = IpmStatus::max_iters;
    VecX x, y, z;  // de-homogenized iterates; infeasibility certificates otherwise
    double primal_obj = 0.0;
    double dual_obj = 0.0;
    double rel_gap = 0.0;
    double primal_res = 0.0;
    double dual_res = 0.0;
    int iterations = 0;
};

/// Homogeneous self-dual Mehrotra predictor-corrector interior-point method
/// with Nesterov-Todd scaling over the product cone. Dense linear algebra;
/// the Schur system is m x m with m = rows(A).
IpmResult ipm_solve(const ConeProgram& prob, const IpmOptions& opts = {});

/// Symmetric matrix <-> packed svec helpers (exposed for tests and the
/// problem assemblers).
VecX svec(const MatX& S);
MatX smat(const VecX& v, int n);
int svec_len(int n);

}  // namespace isac::conic
