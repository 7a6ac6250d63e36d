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

#include "isac/conic.hpp"
#include "isac/rng.hpp"

using namespace isac;
using namespace isac::conic;

TEST_CASE("svec/smat round trip preserves matrices and inner products") {
    RngStream rng(7);
    const int n = 5;
    MatX A(n, n), B(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            A(i, j) = rng.normal();
            B(i, j) = rng.normal();
        }
    A = (0.5 * (A + A.transpose())).eval();
    B = (0.5 * (B + B.transpose())).eval();

    const VecX va = svec(A);
    CHECK(va.size() == svec_len(n));
    CHECK((smat(va, n) - A).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(va.dot(svec(B)) == doctest::Approx((A * B).trace()).epsilon(1e-12));
}

TEST_CASE("linear program over the simplex picks the smallest cost") {
    ConeProgram cp;
    cp.cone.orthant = 4;
    cp.A = MatX::Ones(1, 4);
    cp.b = VecX::Ones(1);
    cp.c = VecX(4);
    cp.c << 0.7, -0.3, 1.2, 0.4;

    const IpmResult res = ipm_solve(cp);
    REQUIRE(res.status == IpmStatus::optimal);
    CHECK(res.primal_obj == doctest::Approx(-0.3).epsilon(1e-6));
    CHECK(res.x[1] == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("infeasible equality system is certified") {
    // x1 + x2 = -1 with x >= 0 has no solution.
    ConeProgram cp;
    cp.cone.orthant = 2;
    cp.A = MatX::Ones(1, 2);
    cp.b = -VecX::Ones(1);
    cp.c = VecX::Ones(2);

    const IpmResult res = ipm_solve(cp);
    CHECK(res.status == IpmStatus::primal_infeasible);
}

TEST_CASE("unbounded problem is certified as dual infeasible") {
    // min -x1 s.t. x1 - x2 = 0, x >= 0: the ray x1 = x2 -> inf.
    ConeProgram cp;
    cp.cone.orthant = 2;
    cp.A = MatX(1, 2);
    cp.A << 1.0, -1.0;
    cp.b = VecX::Zero(1);
    cp.c = VecX(2);
    cp.c << -1.0, 0.0;

    const IpmResult res = ipm_solve(cp);
    CHECK(res.status == IpmStatus::dual_infeasible);
}

TEST_CASE("unit-trace SDP recovers the largest eigenvalue") {
    RngStream rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        const int n = 6;
        MatX C(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) C(i, j) = rng.normal();
        C = (0.5 * (C + C.transpose())).eval();

        ConeProgram cp;
        cp.cone.psd = {n};
        cp.A = svec(MatX::Identity(n, n)).transpose();
        cp.b = VecX::Ones(1);
        cp.c = -svec(C);

        const IpmResult res = ipm_solve(cp);
        REQUIRE(res.status == IpmStatus::optimal);
        Eigen::SelfAdjointEigenSolver<MatX> es(C, Eigen::EigenvaluesOnly);
        CHECK(-res.primal_obj ==
              doctest::Approx(es.eigenvalues().maxCoeff()).epsilon(1e-6));
    }
}

TEST_CASE("second-order cone epigraph gives sqrt of a fixed scalar") {
    // max y2 s.t. y0 - y1 = 1, y0 + y1 = 0.3, (y0, y1, y2) in Q3.
    // Then y2^2 <= y0^2 - y1^2 = 0.3, so y2* = sqrt(0.3).
    ConeProgram cp;
    cp.cone.soc = {3};
    cp.A = MatX(2, 3);
    cp.A << 1.0, -1.0, 0.0, 1.0, 1.0, 0.0;
    cp.b = VecX(2);
    cp.b << 1.0, 0.3;
    cp.c = VecX(3);
    cp.c << 0.0, 0.0, -1.0;

    const IpmResult res = ipm_solve(cp);
    REQUIRE(res.status == IpmStatus::optimal);
    CHECK(-res.primal_obj == doctest::Approx(std::sqrt(0.3)).epsilon(1e-6));
}

TEST_CASE("mixed SDP + SOC epigraph maximizes sqrt of a linear form") {
    // max sqrt(<C, X>) s.t. Tr X = 1, X >= 0 -> sqrt(lambda_max(C)).
    RngStream rng(13);
    const int n = 4;
    MatX G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = rng.normal();
    const MatX C = G * G.transpose();  // PSD data

    ConeProgram cp;
    cp.cone.soc = {3};
    cp.cone.psd = {n};
    const int D = svec_len(n);
    cp.A = MatX::Zero(3, 3 + D);
    cp.b = VecX::Zero(3);
    // Tr X = 1.
    cp.A.row(0).segment(3, D) = svec(MatX::Identity(n, n)).transpose();
    cp.b[0] = 1.0;
    // <C, X> - y0 - y1 = 0.
    cp.A.row(1).segment(3, D) = svec(C).transpose();
    cp.A(1, 0) = -1.0;
    cp.A(1, 1) = -1.0;
    // y0 - y1 = 1.
    cp.A(2, 0) = 1.0;
    cp.A(2, 1) = -1.0;
    cp.b[2] = 1.0;
    cp.c = VecX::Zero(3 + D);
    cp.c[2] = -1.0;

    const IpmResult res = ipm_solve(cp);
    REQUIRE(res.status == IpmStatus::optimal);
    Eigen::SelfAdjointEigenSolver<MatX> es(C, Eigen::EigenvaluesOnly);
    CHECK(-res.primal_obj ==
          doctest::Approx(std::sqrt(es.eigenvalues().maxCoeff())).epsilon(1e-5));
}

TEST_CASE("weak duality holds on random feasible cone programs") {
    RngStream rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        const int n_orth = 3;
        const int n_psd = 3;
        ConeProgram cp;
        cp.cone.orthant = n_orth;
        cp.cone.psd = {n_psd};
        const int n = cp.cone.vec_dim();
        const int m = 3;
        cp.A = MatX(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) cp.A(i, j) = rng.normal();
        // Feasible by construction: b = A * (strictly interior point).
        VecX x0 = VecX::Zero(n);
        x0.head(n_orth).setConstant(0.5);
        MatX P(n_psd, n_psd);
        for (int i = 0; i < n_psd; ++i)
            for (int j = 0; j < n_psd; ++j) P(i, j) = 0.3 * rng.normal();
        x0.tail(svec_len(n_psd)) = svec(MatX(P * P.transpose() + MatX::Identity(n_psd, n_psd)));
        cp.b = cp.A * x0;
        cp.c = VecX(n);
        for (int j = 0; j < n; ++j) cp.c[j] = rng.normal();

        const IpmResult res = ipm_solve(cp);
        if (res.status == IpmStatus::optimal) {
            CHECK(res.dual_obj <= res.primal_obj + 1e-5 * std::max(1.0, std::abs(res.primal_obj)));
            CHECK(res.primal_res < 1e-6);
        }
    }
}

TEST_CASE("zero objective returns a feasible point") {
    ConeProgram cp;
    cp.cone.orthant = 3;
    cp.A = MatX::Ones(1, 3);
    cp.b = VecX::Ones(1);
    cp.c = VecX::Zero(3);

    const IpmResult res = ipm_solve(cp);
    REQUIRE(res.status == IpmStatus::optimal);
    CHECK((cp.A * res.x - cp.b).norm() < 1e-6);
    CHECK(res.x.minCoeff() > -1e-9);
}
