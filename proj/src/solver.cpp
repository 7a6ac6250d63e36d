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

#include "isac/solver.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "isac/conic.hpp"

namespace isac {

namespace {

using conic::svec;
using conic::smat;
using conic::svec_len;

/// Real symmetric embedding of a Hermitian matrix: [[Re, -Im], [Im, Re]].
MatX embed_hermitian(const MatXc& H) {
    const int n = static_cast<int>(H.rows());
    MatX E(2 * n, 2 * n);
    E.topLeftCorner(n, n) = H.real();
    E.bottomRightCorner(n, n) = H.real();
    E.topRightCorner(n, n) = -H.imag();
    E.bottomLeftCorner(n, n) = H.imag();
    return 0.5 * (E + E.transpose().eval());
}

/// Structured projection of a real symmetric 2n x 2n block back to a
/// Hermitian n x n matrix. Preserves inner products against embedded data.
MatXc extract_hermitian(const MatX& X, int n) {
    const MatX re = 0.5 * (X.topLeftCorner(n, n) + X.bottomRightCorner(n, n));
    const MatX im = 0.5 * (X.bottomLeftCorner(n, n) - X.topRightCorner(n, n));
    MatXc W = re.cast<cplx>() + cplx(0, 1) * im.cast<cplx>();
    return 0.5 * (W + W.adjoint().eval());
}

double herm_inner(const MatXc& A, const MatXc& W) {
    return std::real((A.adjoint() * W).trace());
}

SolveStatus map_status(conic::IpmStatus s) {
    switch (s) {
        case conic::IpmStatus::optimal: return SolveStatus::optimal;
        case conic::IpmStatus::primal_infeasible: return SolveStatus::infeasible;
        default: return SolveStatus::max_iters;
    }
}

}  // namespace

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::infeasible: return "infeasible";
        case SolveStatus::max_iters: return "max_iters";
    }
    return "max_iters";
}

SolveReport solve_psd(const ConicProblem& pb, const SolverTolerances& tol) {
    if (pb.block_dim < 1 || pb.num_blocks < 1)
        throw std::invalid_argument("solve_psd: empty block structure");
    const int Mc = pb.block_dim;
    const int Ms = 2 * Mc;
    const int D = svec_len(Ms);
    const int nB = pb.num_blocks;
    const int nS = static_cast<int>(pb.sqrt_terms.size());
    const int nI = static_cast<int>(pb.ineqs.size());

    std::vector<MatXc> lin = pb.linear_obj;
    if (lin.empty()) lin.assign(nB, MatXc::Zero(Mc, Mc));
    if (static_cast<int>(lin.size()) != nB)
        throw std::invalid_argument("solve_psd: linear_obj size mismatch");
    std::vector<double> traces = pb.trace_eq;
    if (traces.empty()) traces.assign(nB, 1.0);
    if (static_cast<int>(traces.size()) != nB)
        throw std::invalid_argument("solve_psd: trace_eq size mismatch");
    for (const auto& t : pb.sqrt_terms) {
        if (t.block < 0 || t.block >= nB)
            throw std::invalid_argument("solve_psd: sqrt term block out of range");
        if (t.coeff < 0.0)
            throw std::invalid_argument("solve_psd: sqrt coefficients must be nonnegative");
        if (t.C.rows() != Mc || t.C.cols() != Mc)
            throw std::invalid_argument("solve_psd: sqrt matrix dimension mismatch");
    }
    for (const auto& q : pb.ineqs)
        for (const auto& [blk, A] : q.terms) {
            if (blk < 0 || blk >= nB)
                throw std::invalid_argument("solve_psd: inequality block out of range");
            if (A.rows() != Mc || A.cols() != Mc)
                throw std::invalid_argument("solve_psd: inequality matrix dimension mismatch");
        }

    // Cone layout: [slacks | soc triples | psd blocks].
    conic::ConeProgram cp;
    cp.cone.orthant = nI;
    cp.cone.soc.assign(nS, 3);
    cp.cone.psd.assign(nB, Ms);
    const int n = cp.cone.vec_dim();
    auto soc_off = [&](int i) { return nI + 3 * i; };
    auto psd_off = [&](int j) { return nI + 3 * nS + j * D; };

    const int m = nB + 2 * nS + nI;
    cp.A = MatX::Zero(m, n);
    cp.b = VecX::Zero(m);
    cp.c = VecX::Zero(n);

    int row = 0;
    const VecX svec_eye = svec(MatX::Identity(Ms, Ms));
    for (int j = 0; j < nB; ++j, ++row) {
        cp.A.row(row).segment(psd_off(j), D) = svec_eye.transpose();
        cp.b[row] = 2.0 * traces[j];
    }

    std::vector<double> nu(nS, 1.0);
    for (int i = 0; i < nS; ++i) {
        const auto& term = pb.sqrt_terms[i];
        nu[i] = std::max(term.C.cwiseAbs().maxCoeff(), 1e-300);
        const MatXc Cs = term.C / nu[i];
        cp.A.row(row).segment(psd_off(term.block), D) =
            0.5 * svec(embed_hermitian(Cs)).transpose();
        cp.A(row, soc_off(i) + 0) = -1.0;
        cp.A(row, soc_off(i) + 1) = -1.0;
        cp.b[row] = 0.0;
        ++row;
        cp.A(row, soc_off(i) + 0) = 1.0;
        cp.A(row, soc_off(i) + 1) = -1.0;
        cp.b[row] = 1.0;
        ++row;
    }

    std::vector<double> row_scale(nI, 1.0);
    for (int q = 0; q < nI; ++q, ++row) {
        const auto& ineq = pb.ineqs[q];
        double s = std::abs(ineq.rhs);
        for (const auto& [blk, A] : ineq.terms) s = std::max(s, A.cwiseAbs().maxCoeff());
        s = std::max(s, 1e-300);
        row_scale[q] = s;
        for (const auto& [blk, A] : ineq.terms)
            cp.A.row(row).segment(psd_off(blk), D) +=
                0.5 * svec(embed_hermitian(A / s)).transpose();
        cp.A(row, q) = -1.0;
        cp.b[row] = ineq.rhs / s;
    }

    for (int j = 0; j < nB; ++j) {
        if (lin[j].cwiseAbs().maxCoeff() > 0.0)
            cp.c.segment(psd_off(j), D) = -0.5 * svec(embed_hermitian(lin[j]));
    }
    for (int i = 0; i < nS; ++i)
        cp.c[soc_off(i) + 2] = -pb.sqrt_terms[i].coeff * std::sqrt(nu[i]);
    double omega = cp.c.cwiseAbs().maxCoeff();
    if (!(omega > 0.0)) omega = 1.0;
    cp.c /= omega;

    conic::IpmOptions opts;
    opts.feas_tol = tol.feas_tol / (1.0 + cp.b.norm());
    opts.rel_gap_tol = tol.kkt_tol;
    opts.max_iters = tol.max_iters;

    const conic::IpmResult res = conic::ipm_solve(cp, opts);

    SolveReport rep;
    rep.status = map_status(res.status);
    rep.iterations = res.iterations;
    rep.kkt_primal = res.primal_res;
    rep.kkt_dual = res.dual_res;
    rep.rel_gap = res.rel_gap;

    if (res.status == conic::IpmStatus::primal_infeasible) {
        rep.detail = "primal infeasibility certificate found";
        return rep;
    }
    if (res.status == conic::IpmStatus::dual_infeasible) {
        rep.status = SolveStatus::max_iters;
        rep.detail = "unboundedness certificate found";
        return rep;
    }

    rep.blocks.resize(nB);
    for (int j = 0; j < nB; ++j)
        rep.blocks[j] = extract_hermitian(smat(res.x.segment(psd_off(j), D), Ms), Mc);

    rep.sqrt_values.resize(nS);
    double obj = pb.objective_constant;
    for (int j = 0; j < nB; ++j) obj += herm_inner(lin[j], rep.blocks[j]);
    for (int i = 0; i < nS; ++i) {
        rep.sqrt_values[i] = res.x[soc_off(i) + 2] * std::sqrt(nu[i]);
        const double inner =
            std::max(0.0, herm_inner(pb.sqrt_terms[i].C, rep.blocks[pb.sqrt_terms[i].block]));
        obj += pb.sqrt_terms[i].coeff * std::sqrt(inner);
    }
    rep.objective = obj;
    rep.dual_bound = -res.dual_obj * omega + pb.objective_constant;

    double viol = 0.0;
    for (int j = 0; j < nB; ++j) {
        const double tr = std::real(rep.blocks[j].trace());
        viol = std::max(viol, std::abs(tr - traces[j]) / std::max(1.0, std::abs(traces[j])));
        Eigen::SelfAdjointEigenSolver<MatXc> es(rep.blocks[j], Eigen::EigenvaluesOnly);
        const double lmin = es.eigenvalues().minCoeff();
        if (lmin < 0.0) viol = std::max(viol, -lmin / std::max(1.0, std::abs(tr)));
    }
    for (int q = 0; q < nI; ++q) {
        double lhs = 0.0;
        for (const auto& [blk, A] : pb.ineqs[q].terms) lhs += herm_inner(A, rep.blocks[blk]);
        viol = std::max(viol, (pb.ineqs[q].rhs - lhs) / row_scale[q]);
    }
    rep.max_violation = std::max(viol, 0.0);
    return rep;
}

PowerResult solve_power(const PowerProblem& pb, const SolverTolerances& tol) {
    const int K = static_cast<int>(pb.t.size());
    if (K < 1) throw std::invalid_argument("solve_power: empty problem");
    if (pb.g_r.size() != K || pb.g_c.size() != K || pb.gamma.size() != K || pb.r.size() != K ||
        pb.q.rows() != K || pb.q.cols() != K)
        throw std::invalid_argument("solve_power: size mismatch");
    if (!(pb.sigma_r2 > 0.0))
        throw std::invalid_argument("solve_power: sigma_r2 must be positive");
    if (pb.p_max < 0.0) throw std::invalid_argument("solve_power: p_max must be nonnegative");

    PowerResult out;
    auto evaluate = [&](const VecX& P, double Pr) {
        double v = 0.0;
        for (int k = 0; k < K; ++k) {
            v += 2.0 * pb.t[k] * std::sqrt(std::max(0.0, Pr * pb.g_r[k]));
            v -= pb.t[k] * pb.t[k] * (P[k] * pb.g_c[k] + pb.sigma_r2);
        }
        return v;
    };

    if (pb.p_max == 0.0) {
        // Degenerate budget: the only candidate point is all-zero powers.
        for (int k = 0; k < K; ++k) {
            if (pb.gamma[k] * pb.sigma_n2 > 0.0) {
                out.status = SolveStatus::infeasible;
                out.detail = "zero budget cannot meet a positive QoS threshold";
                return out;
            }
        }
        out.status = SolveStatus::optimal;
        out.per_user = VecX::Zero(K);
        out.sense = 0.0;
        out.objective = evaluate(out.per_user, 0.0);
        out.dual_bound = out.objective;
        return out;
    }

    // Cone layout: [P_1..P_K, budget slack, K QoS slacks | (y0, y1, y2)].
    conic::ConeProgram cp;
    cp.cone.orthant = 2 * K + 1;
    cp.cone.soc = {3};
    const int y = 2 * K + 1;
    const int n = y + 3;
    const int m = K + 2;
    cp.A = MatX::Zero(m, n);
    cp.b = VecX::Zero(m);
    cp.c = VecX::Zero(n);

    // y0 - y1 = 1 makes y0 + y1 = P_r with y2^2 <= P_r.
    cp.A(0, y + 0) = 1.0;
    cp.A(0, y + 1) = -1.0;
    cp.b[0] = 1.0;

    {
        const double s = std::max({1.0, static_cast<double>(K), pb.p_max});
        for (int k = 0; k < K; ++k) cp.A(1, k) = 1.0 / s;
        cp.A(1, y + 0) = K / s;
        cp.A(1, y + 1) = K / s;
        cp.A(1, K) = 1.0 / s;
        cp.b[1] = pb.p_max / s;
    }

    VecX qos_scale(K);
    for (int k = 0; k < K; ++k) {
        const int row = 2 + k;
        double s = std::abs(pb.gamma[k] * pb.sigma_n2);
        s = std::max(s, std::abs(pb.q(k, k)));
        for (int j = 0; j < K; ++j)
            if (j != k) s = std::max(s, std::abs(pb.gamma[k] * pb.q(k, j)));
        s = std::max(s, std::abs(pb.gamma[k] * pb.r[k]));
        s = std::max(s, 1e-300);
        qos_scale[k] = s;
        cp.A(row, k) = pb.q(k, k) / s;
        for (int j = 0; j < K; ++j)
            if (j != k) cp.A(row, j) = -pb.gamma[k] * pb.q(k, j) / s;
        cp.A(row, y + 0) = -pb.gamma[k] * pb.r[k] / s;
        cp.A(row, y + 1) = -pb.gamma[k] * pb.r[k] / s;
        cp.A(row, K + 1 + k) = -1.0;
        cp.b[row] = pb.gamma[k] * pb.sigma_n2 / s;
    }

    double alpha = 0.0;
    for (int k = 0; k < K; ++k) {
        alpha += 2.0 * pb.t[k] * std::sqrt(std::max(0.0, pb.g_r[k]));
        cp.c[k] = pb.t[k] * pb.t[k] * std::max(0.0, pb.g_c[k]);
    }
    cp.c[y + 2] = -alpha;
    double omega = cp.c.cwiseAbs().maxCoeff();
    if (!(omega > 0.0)) omega = 1.0;
    cp.c /= omega;

    conic::IpmOptions opts;
    opts.feas_tol = tol.feas_tol / (1.0 + cp.b.norm());
    opts.rel_gap_tol = tol.kkt_tol;
    opts.max_iters = tol.max_iters;

    const conic::IpmResult res = conic::ipm_solve(cp, opts);
    out.status = map_status(res.status);
    out.iterations = res.iterations;
    out.kkt_primal = res.primal_res;
    out.kkt_dual = res.dual_res;
    out.rel_gap = res.rel_gap;

    if (res.status == conic::IpmStatus::primal_infeasible) {
        out.detail = "QoS constraints are infeasible at the given beams";
        return out;
    }
    if (res.status == conic::IpmStatus::dual_infeasible) {
        out.status = SolveStatus::max_iters;
        out.detail = "unboundedness certificate found";
        return out;
    }

    out.per_user = res.x.head(K).cwiseMax(0.0);
    out.sense = std::max(0.0, res.x[y + 0] + res.x[y + 1]);
    out.objective = evaluate(out.per_user, out.sense);

    const double sigma_const = [&] {
        double c0 = 0.0;
        for (int k = 0; k < K; ++k) c0 -= pb.t[k] * pb.t[k] * pb.sigma_r2;
        return c0;
    }();
    out.dual_bound = -res.dual_obj * omega + sigma_const;

    double viol = std::max(0.0, (out.per_user.sum() + K * out.sense - pb.p_max) /
                                    std::max(1.0, pb.p_max));
    for (int k = 0; k < K; ++k) {
        double lhs = pb.q(k, k) * out.per_user[k];
        for (int j = 0; j < K; ++j)
            if (j != k) lhs -= pb.gamma[k] * pb.q(k, j) * out.per_user[j];
        lhs -= pb.gamma[k] * pb.r[k] * out.sense;
        viol = std::max(viol, (pb.gamma[k] * pb.sigma_n2 - lhs) / qos_scale[k]);
    }
    out.max_violation = viol;
    return out;
}

std::pair<VecXc, double> principal_component(const MatXc& W) {
    if (W.rows() != W.cols() || W.rows() < 1)
        throw std::invalid_argument("principal_component: matrix must be square");
    const MatXc H = 0.5 * (W + W.adjoint().eval());
    const double scale = H.cwiseAbs().maxCoeff();
    if (!(scale > 0.0))
        throw std::invalid_argument("principal_component: zero matrix has no direction");
    Eigen::SelfAdjointEigenSolver<MatXc> es(H);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("principal_component: eigendecomposition failed");
    const int last = static_cast<int>(H.rows()) - 1;
    const double lmax = es.eigenvalues()[last];
    const double tr = std::real(H.trace());
    if (!(lmax > 0.0) || !(tr > 0.0))
        throw std::invalid_argument("principal_component: matrix is not PSD with positive trace");
    VecXc v = es.eigenvectors().col(last);
    // Canonical phase: largest-magnitude entry made real positive.
    int idx = 0;
    double mag = 0.0;
    for (int i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > mag) {
            mag = std::abs(v[i]);
            idx = i;
        }
    }
    v *= std::conj(v[idx]) / std::abs(v[idx]);
    v.normalize();
    const double gap = std::clamp(1.0 - lmax / tr, 0.0, 1.0);
    return {v, gap};
}

}  // namespace isac
