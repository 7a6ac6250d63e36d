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

#include "isac/conic.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>
#include <stdexcept>

namespace isac::conic {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSqrt2 = 1.4142135623730951;
}  // namespace

int svec_len(int n) { return n * (n + 1) / 2; }

VecX svec(const MatX& S) {
    const int n = static_cast<int>(S.rows());
    VecX v(svec_len(n));
    int idx = 0;
    for (int j = 0; j < n; ++j) {
        v[idx++] = S(j, j);
        for (int i = j + 1; i < n; ++i) v[idx++] = kSqrt2 * 0.5 * (S(i, j) + S(j, i));
    }
    return v;
}

MatX smat(const VecX& v, int n) {
    MatX S(n, n);
    int idx = 0;
    for (int j = 0; j < n; ++j) {
        S(j, j) = v[idx++];
        for (int i = j + 1; i < n; ++i) {
            const double val = v[idx++] / kSqrt2;
            S(i, j) = val;
            S(j, i) = val;
        }
    }
    return S;
}

int ConeSpec::vec_dim() const {
    int d = orthant;
    for (int q : soc) d += q;
    for (int n : psd) d += svec_len(n);
    return d;
}

double ConeSpec::degree() const {
    double nu = orthant;
    nu += static_cast<double>(soc.size());
    for (int n : psd) nu += n;
    return nu;
}

namespace {

// Segment offsets for iterating the packed cone vector.
struct Layout {
    int orthant = 0;
    std::vector<std::pair<int, int>> soc;  // (offset, dim)
    std::vector<std::pair<int, int>> psd;  // (offset, side)
    int total = 0;

    explicit Layout(const ConeSpec& spec) {
        orthant = spec.orthant;
        int off = spec.orthant;
        for (int q : spec.soc) {
            soc.emplace_back(off, q);
            off += q;
        }
        for (int n : spec.psd) {
            psd.emplace_back(off, n);
            off += svec_len(n);
        }
        total = off;
    }
};

VecX cone_identity(const Layout& lay) {
    VecX e = VecX::Zero(lay.total);
    e.head(lay.orthant).setOnes();
    for (auto [off, q] : lay.soc) e[off] = 1.0;
    for (auto [off, n] : lay.psd) e.segment(off, svec_len(n)) = svec(MatX::Identity(n, n));
    return e;
}

// x o y in the Jordan algebra of the product cone.
VecX jordan_product(const Layout& lay, const VecX& x, const VecX& y) {
    VecX r(lay.total);
    r.head(lay.orthant) = x.head(lay.orthant).cwiseProduct(y.head(lay.orthant));
    for (auto [off, q] : lay.soc) {
        const auto xs = x.segment(off, q);
        const auto ys = y.segment(off, q);
        r[off] = xs.dot(ys);
        r.segment(off + 1, q - 1) = xs[0] * ys.tail(q - 1) + ys[0] * xs.tail(q - 1);
    }
    for (auto [off, n] : lay.psd) {
        const MatX X = smat(x.segment(off, svec_len(n)), n);
        const MatX Y = smat(y.segment(off, svec_len(n)), n);
        r.segment(off, svec_len(n)) = svec(0.5 * (X * Y + Y * X));
    }
    return r;
}

// Solves lambda o v = u for v. For PSD blocks lambda is diagonal in the
// scaled frame, so the solve is elementwise over (sigma_i + sigma_j) / 2.
VecX jordan_solve(const Layout& lay, const VecX& lambda, const VecX& u,
                  const std::vector<VecX>& psd_sigmas) {
    VecX v(lay.total);
    v.head(lay.orthant) =
        u.head(lay.orthant).cwiseQuotient(lambda.head(lay.orthant));
    for (auto [off, q] : lay.soc) {
        const auto ls = lambda.segment(off, q);
        const auto us = u.segment(off, q);
        const double l0 = ls[0];
        const double det = l0 * l0 - ls.tail(q - 1).squaredNorm();
        const double v0 = (l0 * us[0] - ls.tail(q - 1).dot(us.tail(q - 1))) / det;
        v[off] = v0;
        v.segment(off + 1, q - 1) = (us.tail(q - 1) - v0 * ls.tail(q - 1)) / l0;
    }
    for (std::size_t i = 0; i < lay.psd.size(); ++i) {
        const auto [off, n] = lay.psd[i];
        const VecX& sig = psd_sigmas[i];
        MatX U = smat(u.segment(off, svec_len(n)), n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) U(r, c) *= 2.0 / (sig[r] + sig[c]);
        v.segment(off, svec_len(n)) = svec(U);
    }
    return v;
}

// Largest alpha with x + alpha dx staying in the cone (+inf if interior
// along the whole ray).
double max_step(const Layout& lay, const VecX& x, const VecX& dx) {
    double alpha = kInf;
    for (int i = 0; i < lay.orthant; ++i) {
        if (dx[i] < 0.0) alpha = std::min(alpha, -x[i] / dx[i]);
    }
    for (auto [off, q] : lay.soc) {
        const auto xs = x.segment(off, q);
        const auto ds = dx.segment(off, q);
        const double a = ds[0] * ds[0] - ds.tail(q - 1).squaredNorm();
        const double b = 2.0 * (xs[0] * ds[0] - xs.tail(q - 1).dot(ds.tail(q - 1)));
        const double c = xs[0] * xs[0] - xs.tail(q - 1).squaredNorm();
        // c > 0 at interior points; find the smallest positive root of
        // a t^2 + b t + c = 0.
        double root = kInf;
        const double disc = b * b - 4.0 * a * c;
        if (std::abs(a) < 1e-300) {
            if (b < 0.0) root = -c / b;
        } else if (disc >= 0.0) {
            const double sq = std::sqrt(disc);
            const double q1 = -0.5 * (b + (b >= 0 ? sq : -sq));
            const double r1 = q1 / a;
            const double r2 = (q1 != 0.0) ? c / q1 : kInf;
            for (double r : {r1, r2})
                if (r > 0.0) root = std::min(root, r);
            if (a < 0.0 && root == kInf) {
                // leaving the cone is certain when the direction is
                // asymptotically outside; guard against rounding
                root = std::max(0.0, std::max(r1, r2));
            }
        }
        alpha = std::min(alpha, root);
    }
    for (auto [off, n] : lay.psd) {
        const MatX X = smat(x.segment(off, svec_len(n)), n);
        const MatX D = smat(dx.segment(off, svec_len(n)), n);
        Eigen::LLT<MatX> llt(X);
        if (llt.info() != Eigen::Success) {
            alpha = std::min(alpha, 0.0);
            continue;
        }
        const MatX L = llt.matrixL();
        MatX C = L.triangularView<Eigen::Lower>().solve(D);
        C = L.triangularView<Eigen::Lower>().solve(C.transpose().eval());
        Eigen::SelfAdjointEigenSolver<MatX> es(0.5 * (C + C.transpose()),
                                               Eigen::EigenvaluesOnly);
        const double m = es.eigenvalues().minCoeff();
        if (m < 0.0) alpha = std::min(alpha, -1.0 / m);
    }
    return alpha;
}

// Nesterov-Todd scaling of the product cone at (x, z).
struct NTScaling {
    const Layout* lay = nullptr;
    VecX orthant_w;                  // sqrt(x / z)
    std::vector<MatX> soc_W, soc_Winv;
    std::vector<MatX> psd_R, psd_Rinv, psd_T, psd_Tinv;
    std::vector<VecX> psd_sigma;
    VecX lambda;

    bool compute(const Layout& layout, const VecX& x, const VecX& z) {
        lay = &layout;
        lambda.resize(layout.total);
        orthant_w.resize(layout.orthant);
        for (int i = 0; i < layout.orthant; ++i) {
            if (!(x[i] > 0.0) || !(z[i] > 0.0)) return false;
            orthant_w[i] = std::sqrt(x[i] / z[i]);
            lambda[i] = std::sqrt(x[i] * z[i]);
        }
        soc_W.clear();
        soc_Winv.clear();
        for (auto [off, q] : layout.soc) {
            const VecX xs = x.segment(off, q);
            const VecX zs = z.segment(off, q);
            auto jnorm2 = [q](const VecX& v) {
                return v[0] * v[0] - v.tail(q - 1).squaredNorm();
            };
            const double xj = jnorm2(xs), zj = jnorm2(zs);
            if (!(xj > 0.0) || !(zj > 0.0) || !(xs[0] > 0.0) || !(zs[0] > 0.0)) return false;
            const VecX xb = xs / std::sqrt(xj);
            const VecX zb = zs / std::sqrt(zj);
            const double gamma = std::sqrt(0.5 * (1.0 + xb.dot(zb)));
            VecX wb = xb;
            wb[0] += zb[0];
            wb.tail(q - 1) -= zb.tail(q - 1);
            wb /= (2.0 * gamma);
            VecX vb = wb;
            vb[0] += 1.0;
            vb /= std::sqrt(2.0 * (wb[0] + 1.0));
            const double eta = std::pow(xj / zj, 0.25);
            MatX J = -MatX::Identity(q, q);
            J(0, 0) = 1.0;
            MatX W = eta * (2.0 * vb * vb.transpose() - J);
            VecX jvb = vb;
            jvb.tail(q - 1) *= -1.0;
            MatX Winv = (1.0 / eta) * (2.0 * jvb * jvb.transpose() - J);
            soc_W.push_back(W);
            soc_Winv.push_back(Winv);
            lambda.segment(off, q) = W * zs;
        }
        psd_R.clear();
        psd_Rinv.clear();
        psd_T.clear();
        psd_Tinv.clear();
        psd_sigma.clear();
        for (auto [off, n] : layout.psd) {
            const MatX X = smat(x.segment(off, svec_len(n)), n);
            const MatX Z = smat(z.segment(off, svec_len(n)), n);
            Eigen::LLT<MatX> lx(X), lz(Z);
            if (lx.info() != Eigen::Success || lz.info() != Eigen::Success) return false;
            const MatX Lx = lx.matrixL();
            const MatX Lz = lz.matrixL();
            Eigen::JacobiSVD<MatX> svd(Lz.transpose() * Lx,
                                       Eigen::ComputeFullU | Eigen::ComputeFullV);
            const VecX sig = svd.singularValues();
            if (!(sig.minCoeff() > 0.0)) return false;
            const MatX R =
                Lx * svd.matrixV() * sig.cwiseSqrt().cwiseInverse().asDiagonal();
            const MatX Rinv = sig.cwiseSqrt().asDiagonal() * svd.matrixV().transpose() *
                              Lx.triangularView<Eigen::Lower>()
                                  .solve(MatX::Identity(n, n));
            psd_R.push_back(R);
            psd_Rinv.push_back(Rinv);
            psd_T.push_back(R * R.transpose());
            psd_Tinv.push_back(Rinv.transpose() * Rinv);
            psd_sigma.push_back(sig);
            lambda.segment(off, svec_len(n)) = svec(MatX(sig.asDiagonal()));
        }
        return true;
    }

    // H = W^T W (conjugation by T for PSD blocks).
    VecX apply_H(const VecX& v) const {
        VecX r(lay->total);
        r.head(lay->orthant) =
            orthant_w.cwiseProduct(orthant_w).cwiseProduct(v.head(lay->orthant));
        for (std::size_t i = 0; i < lay->soc.size(); ++i) {
            const auto [off, q] = lay->soc[i];
            r.segment(off, q) = soc_W[i] * (soc_W[i] * v.segment(off, q));
        }
        for (std::size_t i = 0; i < lay->psd.size(); ++i) {
            const auto [off, n] = lay->psd[i];
            const MatX V = smat(v.segment(off, svec_len(n)), n);
            r.segment(off, svec_len(n)) = svec(psd_T[i] * V * psd_T[i]);
        }
        return r;
    }

    VecX apply_Wt(const VecX& v) const {
        VecX r(lay->total);
        r.head(lay->orthant) = orthant_w.cwiseProduct(v.head(lay->orthant));
        for (std::size_t i = 0; i < lay->soc.size(); ++i) {
            const auto [off, q] = lay->soc[i];
            r.segment(off, q) = soc_W[i] * v.segment(off, q);
        }
        for (std::size_t i = 0; i < lay->psd.size(); ++i) {
            const auto [off, n] = lay->psd[i];
            const MatX V = smat(v.segment(off, svec_len(n)), n);
            r.segment(off, svec_len(n)) = svec(psd_R[i] * V * psd_R[i].transpose());
        }
        return r;
    }

    VecX apply_W(const VecX& v) const {
        VecX r(lay->total);
        r.head(lay->orthant) = orthant_w.cwiseProduct(v.head(lay->orthant));
        for (std::size_t i = 0; i < lay->soc.size(); ++i) {
            const auto [off, q] = lay->soc[i];
            r.segment(off, q) = soc_W[i] * v.segment(off, q);
        }
        for (std::size_t i = 0; i < lay->psd.size(); ++i) {
            const auto [off, n] = lay->psd[i];
            const MatX V = smat(v.segment(off, svec_len(n)), n);
            r.segment(off, svec_len(n)) =
                svec(psd_R[i].transpose() * V * psd_R[i]);
        }
        return r;
    }

    VecX apply_Winv(const VecX& v) const {
        VecX r(lay->total);
        r.head(lay->orthant) = v.head(lay->orthant).cwiseQuotient(orthant_w);
        for (std::size_t i = 0; i < lay->soc.size(); ++i) {
            const auto [off, q] = lay->soc[i];
            r.segment(off, q) = soc_Winv[i] * v.segment(off, q);
        }
        for (std::size_t i = 0; i < lay->psd.size(); ++i) {
            const auto [off, n] = lay->psd[i];
            const MatX V = smat(v.segment(off, svec_len(n)), n);
            r.segment(off, svec_len(n)) =
                svec(psd_Rinv[i].transpose() * V * psd_Rinv[i]);
        }
        return r;
    }

    VecX apply_Winvt(const VecX& v) const {
        VecX r(lay->total);
        r.head(lay->orthant) = v.head(lay->orthant).cwiseQuotient(orthant_w);
        for (std::size_t i = 0; i < lay->soc.size(); ++i) {
            const auto [off, q] = lay->soc[i];
            r.segment(off, q) = soc_Winv[i] * v.segment(off, q);
        }
        for (std::size_t i = 0; i < lay->psd.size(); ++i) {
            const auto [off, n] = lay->psd[i];
            const MatX V = smat(v.segment(off, svec_len(n)), n);
            r.segment(off, svec_len(n)) =
                svec(psd_Rinv[i] * V * psd_Rinv[i].transpose());
        }
        return r;
    }
};

// LLT with escalating diagonal regularization.
struct SchurSolver {
    Eigen::LLT<MatX> llt;
    bool factor(MatX S) {
        const double base = S.diagonal().cwiseAbs().maxCoeff();
        double jitter = 0.0;
        for (int attempt = 0; attempt < 6; ++attempt) {
            llt.compute(S + jitter * MatX::Identity(S.rows(), S.cols()));
            if (llt.info() == Eigen::Success) return true;
            jitter = (jitter == 0.0) ? 1e-14 * std::max(base, 1.0) : jitter * 100.0;
        }
        return false;
    }
    VecX solve(const VecX& r) const { return llt.solve(r); }
};

}  // namespace

IpmResult ipm_solve(const ConeProgram& prob, const IpmOptions& opts) {
    const Layout lay(prob.cone);
    const int n = lay.total;
    const int m = static_cast<int>(prob.A.rows());
    if (prob.A.cols() != n || prob.b.size() != m || prob.c.size() != n)
        throw std::invalid_argument("ipm_solve: dimension mismatch");
    if (m < 1 || n < 1) throw std::invalid_argument("ipm_solve: empty problem");

    const double nu = prob.cone.degree();
    const VecX e = cone_identity(lay);

    VecX x = e, z = e, y = VecX::Zero(m);
    double tau = 1.0, kappa = 1.0;

    const double bnorm = prob.b.norm();
    const double cnorm = prob.c.norm();

    IpmResult best;
    double best_score = kInf;
    int last_improvement = 0;

    IpmResult out;
    for (int iter = 0; iter <= opts.max_iters; ++iter) {
        const VecX rp = prob.A * x - prob.b * tau;
        const VecX rd = prob.c * tau - prob.A.transpose() * y - z;
        const double rg = kappa + prob.c.dot(x) - prob.b.dot(y);

        const double pobj = prob.c.dot(x) / tau;
        const double dobj = prob.b.dot(y) / tau;
        const double pres = rp.norm() / (tau * (1.0 + bnorm));
        const double dres = rd.norm() / (tau * (1.0 + cnorm));
        const double gap = x.dot(z) / (tau * tau);
        const double relgap = gap / std::max(1.0, std::abs(pobj));

        const double score = std::max({pres / opts.feas_tol, dres / opts.feas_tol,
                                       relgap / opts.rel_gap_tol});
        if (score < 0.9 * best_score) last_improvement = iter;
        if (score < best_score) {
            best_score = score;
            best.x = x / tau;
            best.y = y / tau;
            best.z = z / tau;
            best.primal_obj = pobj;
            best.dual_obj = dobj;
            best.rel_gap = relgap;
            best.primal_res = pres;
            best.dual_res = dres;
            best.iterations = iter;
        }

        if (pres <= opts.feas_tol && dres <= opts.feas_tol && relgap <= opts.rel_gap_tol) {
            out = best;
            out.status = IpmStatus::optimal;
            out.iterations = iter;
            return out;
        }

        // Infeasibility certificates from the homogeneous model.
        const double by = prob.b.dot(y);
        if (by > 0.0) {
            const double res = (prob.A.transpose() * (y / by) + z / by).norm();
            if (res <= opts.feas_tol * (1.0 + cnorm)) {
                out.status = IpmStatus::primal_infeasible;
                out.y = y / by;
                out.z = z / by;
                out.iterations = iter;
                return out;
            }
        }
        const double cx = prob.c.dot(x);
        if (cx < 0.0) {
            const double res = (prob.A * (x / (-cx))).norm();
            if (res <= opts.feas_tol * (1.0 + bnorm)) {
                out.status = IpmStatus::dual_infeasible;
                out.x = x / (-cx);
                out.iterations = iter;
                return out;
            }
        }
        if (iter == opts.max_iters) break;
        if (iter - last_improvement > 10) break;  // numerical stall

        NTScaling W;
        if (!W.compute(lay, x, z)) break;
        const double mu = (x.dot(z) + tau * kappa) / (nu + 1.0);
        if (mu < 1e-14) break;

        // Schur complement S = A H A^T.
        MatX AH(m, n);
        for (int i = 0; i < m; ++i) AH.row(i) = W.apply_H(prob.A.row(i).transpose()).transpose();
        MatX S = AH * prob.A.transpose();
        SchurSolver schur;
        if (!schur.factor(0.5 * (S + S.transpose()))) break;

        const VecX Hc = W.apply_H(prob.c);
        const VecX u1 = schur.solve(prob.A * Hc + prob.b);
        const VecX x1 = W.apply_H(prob.A.transpose() * u1 - prob.c);
        const double denom_base = prob.c.dot(x1) - prob.b.dot(u1) - kappa / tau;

        auto solve_direction = [&](const VecX& eta1, const VecX& eta2, double eta3,
                                   const VecX& ds, double dtk, VecX& dx, VecX& dy, VecX& dz,
                                   double& dtau, double& dkappa) -> bool {
            const VecX Heta2 = W.apply_H(eta2);
            const VecX Wtds = W.apply_Wt(ds);
            const VecX u2 = schur.solve(eta1 - prob.A * (Heta2 + Wtds));
            const VecX x2 = Heta2 + Wtds + W.apply_H(prob.A.transpose() * u2);
            if (std::abs(denom_base) < 1e-300) return false;
            dtau = (eta3 - prob.c.dot(x2) + prob.b.dot(u2) - dtk / tau) / denom_base;
            dy = u2 + dtau * u1;
            dx = x2 + dtau * x1;
            // Recover dz and dkappa from the residual equations rather than
            // the scaling relation; this keeps the dual residual contracting
            // even when the scaling is nearly degenerate at convergence.
            dz = prob.c * dtau - prob.A.transpose() * dy - eta2;
            dkappa = eta3 - prob.c.dot(dx) + prob.b.dot(dy);
            return true;
        };

        // Predictor (affine) direction.
        VecX dxa, dya, dza;
        double dtaua = 0.0, dkappaa = 0.0;
        if (!solve_direction(-rp, -rd, -rg, -W.lambda, -tau * kappa, dxa, dya, dza, dtaua,
                             dkappaa))
            break;

        double alpha_aff = std::min(max_step(lay, x, dxa), max_step(lay, z, dza));
        if (dtaua < 0.0) alpha_aff = std::min(alpha_aff, -tau / dtaua);
        if (dkappaa < 0.0) alpha_aff = std::min(alpha_aff, -kappa / dkappaa);
        alpha_aff = std::min(alpha_aff, 1.0);

        const double mu_aff = ((x + alpha_aff * dxa).dot(z + alpha_aff * dza) +
                               (tau + alpha_aff * dtaua) * (kappa + alpha_aff * dkappaa)) /
                              (nu + 1.0);
        double sigma = std::pow(std::clamp(mu_aff / mu, 0.0, 1.0), 3.0);
        sigma = std::clamp(sigma, 1e-8, 1.0 - 1e-8);

        // Mehrotra corrector in the scaled frame.
        const VecX corr =
            jordan_product(lay, W.apply_Winvt(dxa), W.apply_W(dza));
        const VecX rhs_s = sigma * mu * e - jordan_product(lay, W.lambda, W.lambda) - corr;
        const VecX ds = jordan_solve(lay, W.lambda, rhs_s, W.psd_sigma);
        const double dtk = sigma * mu - tau * kappa - dtaua * dkappaa;

        VecX dx, dy, dz;
        double dtau = 0.0, dkappa = 0.0;
        const double r_scale = 1.0 - sigma;
        if (!solve_direction(-r_scale * rp, -r_scale * rd, -r_scale * rg, ds, dtk, dx, dy, dz,
                             dtau, dkappa))
            break;

        double alpha = std::min(max_step(lay, x, dx), max_step(lay, z, dz));
        if (dtau < 0.0) alpha = std::min(alpha, -tau / dtau);
        if (dkappa < 0.0) alpha = std::min(alpha, -kappa / dkappa);
        alpha = std::min(1.0, opts.step_frac * alpha);
        if (!(alpha > 1e-10)) break;

        x += alpha * dx;
        y += alpha * dy;
        z += alpha * dz;
        tau += alpha * dtau;
        kappa += alpha * dkappa;
        if (opts.verbose)
            std::fprintf(stderr,
                         "ipm %3d pres %9.2e dres %9.2e gap %9.2e tau %9.2e kappa %9.2e "
                         "mu %9.2e sigma %6.3f alpha %6.3f\n",
                         iter, pres, dres, relgap, tau, kappa, mu, sigma, alpha);
        if (!(tau > 0.0) || !(kappa > 0.0)) break;
    }

    out = best;
    out.status = IpmStatus::max_iters;
    return out;
}

}  // namespace isac::conic
