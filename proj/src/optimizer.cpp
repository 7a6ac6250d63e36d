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

#include "isac/optimizer.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace isac {

namespace {

double radar_gain(const MatXc& G, const MatXc& W) {
    return std::max(0.0, std::real((G * W * G.adjoint()).trace()));
}

double radar_gain(const MatXc& G, const VecXc& w) { return (G * w).squaredNorm(); }

double quad_form(const VecXc& h, const MatXc& W) {
    return std::max(0.0, std::real((h.adjoint() * W * h)(0, 0)));
}

void validate_inputs(const SlotInputs& in) {
    const int K = in.num_users();
    if (K < 1) throw std::invalid_argument("optimizer: empty inputs");
    if (static_cast<int>(in.G.size()) != K || in.gamma_req.size() != K)
        throw std::invalid_argument("optimizer: per-user data size mismatch");
    const int M = in.num_antennas();
    for (int k = 0; k < K; ++k) {
        if (in.h[k].size() != M || in.G[k].rows() != M || in.G[k].cols() != M)
            throw std::invalid_argument("optimizer: channel dimension mismatch");
        if (!(in.gamma_req[k] > 0.0))
            throw std::invalid_argument("optimizer: QoS thresholds must be positive");
    }
    if (!(in.p_max > 0.0)) throw std::invalid_argument("optimizer: p_max must be positive");
    if (!(in.sigma_n2 > 0.0) || !(in.sigma_r2 > 0.0))
        throw std::invalid_argument("optimizer: noise powers must be positive");
}

struct AoState {
    PowerSet powers;
    std::vector<MatXc> W_c, W_r;
    BeamSet init_beams;
};

AoState initial_state(const SlotInputs& in) {
    const int K = in.num_users();
    AoState s;
    s.powers.per_user = VecX::Constant(K, in.p_max / (2.0 * K));
    s.powers.sense = in.p_max / (2.0 * K);
    s.W_c.resize(K);
    s.W_r.resize(K);
    s.init_beams.comm.resize(K);
    s.init_beams.sense.resize(K);
    for (int k = 0; k < K; ++k) {
        VecXc w = in.h[k];
        const double n = w.norm();
        if (!(n > 0.0)) throw std::invalid_argument("optimizer: zero channel vector");
        w /= n;
        s.init_beams.comm[k] = w;
        s.init_beams.sense[k] = w;
        s.W_c[k] = w * w.adjoint();
        s.W_r[k] = w * w.adjoint();
    }
    return s;
}

VecX gains_r(const std::vector<MatXc>& G, const std::vector<MatXc>& W_r) {
    const int K = static_cast<int>(G.size());
    VecX g(K);
    for (int k = 0; k < K; ++k) g[k] = radar_gain(G[k], W_r[k]);
    return g;
}

VecX gains_c(const std::vector<MatXc>& G, const std::vector<MatXc>& W_c) {
    const int K = static_cast<int>(G.size());
    VecX g(K);
    for (int k = 0; k < K; ++k) g[k] = radar_gain(G[k], W_c[k]);
    return g;
}

double fp_value(const PowerSet& powers, const VecX& g_r, const VecX& g_c, const VecX& t,
                double sigma_r2) {
    double f = 0.0;
    for (int k = 0; k < t.size(); ++k) {
        f += 2.0 * t[k] * std::sqrt(std::max(0.0, powers.sense * g_r[k]));
        f -= t[k] * t[k] * (powers.per_user[k] * g_c[k] + sigma_r2);
    }
    return f;
}

VecX t_from_gains(const PowerSet& powers, const VecX& g_r, const VecX& g_c, double sigma_r2) {
    VecX t(g_r.size());
    for (int k = 0; k < t.size(); ++k) {
        const double num = std::sqrt(std::max(0.0, powers.sense * g_r[k]));
        const double den = powers.per_user[k] * g_c[k] + sigma_r2;
        t[k] = num / den;
    }
    return t;
}

}  // namespace

std::string to_string(SlotStatus s) {
    switch (s) {
        case SlotStatus::feasible: return "feasible";
        case SlotStatus::infeasible: return "infeasible";
        case SlotStatus::internal_error: return "internal_error";
    }
    return "internal_error";
}

VecX update_t_lifted(const PowerSet& powers, const std::vector<MatXc>& W_c,
                     const std::vector<MatXc>& W_r, const std::vector<MatXc>& G,
                     double sigma_r2) {
    return t_from_gains(powers, gains_r(G, W_r), gains_c(G, W_c), sigma_r2);
}

VecX update_t_beams(const PowerSet& powers, const BeamSet& beams, const std::vector<MatXc>& G,
                    double sigma_r2) {
    const int K = static_cast<int>(G.size());
    VecX g_r(K), g_c(K);
    for (int k = 0; k < K; ++k) {
        g_r[k] = radar_gain(G[k], beams.sense[k]);
        g_c[k] = radar_gain(G[k], beams.comm[k]);
    }
    return t_from_gains(powers, g_r, g_c, sigma_r2);
}

double fp_objective_lifted(const SlotInputs& in, const PowerSet& powers,
                           const std::vector<MatXc>& W_c, const std::vector<MatXc>& W_r,
                           const VecX& t) {
    return fp_value(powers, gains_r(in.G, W_r), gains_c(in.G, W_c), t, in.sigma_r2);
}

double sum_sens_lifted(const SlotInputs& in, const PowerSet& powers,
                       const std::vector<MatXc>& W_c, const std::vector<MatXc>& W_r) {
    const VecX g_r = gains_r(in.G, W_r);
    const VecX g_c = gains_c(in.G, W_c);
    double s = 0.0;
    for (int k = 0; k < in.num_users(); ++k)
        s += powers.sense * g_r[k] / (powers.per_user[k] * g_c[k] + in.sigma_r2);
    return s;
}

SolveReport beamforming_step(const SlotInputs& in, const PowerSet& powers, const VecX& t,
                             const SolverTolerances& tol) {
    validate_inputs(in);
    const int K = in.num_users();
    const int M = in.num_antennas();

    ConicProblem pb;
    pb.block_dim = M;
    pb.num_blocks = 2 * K;  // [W_c,0..K-1 | W_r,0..K-1]
    pb.linear_obj.assign(2 * K, MatXc::Zero(M, M));
    pb.trace_eq.assign(2 * K, 1.0);
    double constant = 0.0;
    for (int k = 0; k < K; ++k) {
        const MatXc GtG = in.G[k].adjoint() * in.G[k];
        pb.linear_obj[k] = -t[k] * t[k] * powers.per_user[k] * GtG;
        ConicProblem::SqrtTerm st;
        st.block = K + k;
        st.coeff = 2.0 * t[k] * std::sqrt(std::max(0.0, powers.sense));
        st.C = GtG;
        pb.sqrt_terms.push_back(std::move(st));
        constant -= t[k] * t[k] * in.sigma_r2;
    }
    pb.objective_constant = constant;

    for (int k = 0; k < K; ++k) {
        const MatXc hh = in.h[k] * in.h[k].adjoint();
        ConicProblem::LinearIneq q;
        q.rhs = in.gamma_req[k] * in.sigma_n2;
        q.terms.emplace_back(k, powers.per_user[k] * hh);
        for (int j = 0; j < K; ++j) {
            if (j != k)
                q.terms.emplace_back(j, -in.gamma_req[k] * powers.per_user[j] * hh);
            q.terms.emplace_back(K + j, -in.gamma_req[k] * powers.sense * hh);
        }
        pb.ineqs.push_back(std::move(q));
    }
    return solve_psd(pb, tol);
}

PowerResult power_step(const SlotInputs& in, const std::vector<MatXc>& W_c,
                       const std::vector<MatXc>& W_r, const VecX& t,
                       const SolverTolerances& tol) {
    validate_inputs(in);
    const int K = in.num_users();
    PowerProblem pp;
    pp.t = t;
    pp.g_r = gains_r(in.G, W_r);
    pp.g_c = gains_c(in.G, W_c);
    pp.q = MatX(K, K);
    pp.r = VecX::Zero(K);
    for (int k = 0; k < K; ++k) {
        for (int j = 0; j < K; ++j) {
            pp.q(k, j) = quad_form(in.h[k], W_c[j]);
            pp.r[k] += quad_form(in.h[k], W_r[j]);
        }
    }
    pp.gamma = in.gamma_req;
    pp.sigma_n2 = in.sigma_n2;
    pp.sigma_r2 = in.sigma_r2;
    pp.p_max = in.p_max;
    return solve_power(pp, tol);
}

namespace {

void canonical_phase(VecXc& v) {
    int idx = 0;
    double mag = 0.0;
    for (int i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > mag) {
            mag = std::abs(v[i]);
            idx = i;
        }
    }
    if (mag > 0.0) v *= std::conj(v[idx]) / std::abs(v[idx]);
}

// Rank-one reshape of a lifted block. Tight blocks reduce to the principal
// eigenvector. A block whose optimal face is spread keeps its lifted signal
// alignment on the zero-forced steering direction (no interference toward
// any other user) and parks the surplus trace on a direction orthogonal to
// every user channel, so the reshaped beam reproduces the lifted values.
struct ReshapeBasis {
    std::vector<VecXc> zf_dir;  // per user, unit, orthogonal to other users
    std::vector<double> zf_gain;  // |h_hat^H zf_dir|^2
    VecXc dark;                 // unit, orthogonal to all users
    bool valid = false;
};

ReshapeBasis make_reshape_basis(const std::vector<VecXc>& h) {
    const int K = static_cast<int>(h.size());
    const int M = static_cast<int>(h.front().size());
    ReshapeBasis basis;
    if (M <= K) return basis;
    MatXc H(M, K);
    for (int k = 0; k < K; ++k) H.col(k) = h[k].normalized();
    Eigen::JacobiSVD<MatXc> svd(H, Eigen::ComputeFullU);
    VecXc u = svd.matrixU().col(M - 1);
    canonical_phase(u);
    basis.dark = u.normalized();

    basis.zf_dir.resize(K);
    basis.zf_gain.assign(K, 0.0);
    for (int k = 0; k < K; ++k) {
        MatXc Others(M, K - 1);
        int c = 0;
        for (int j = 0; j < K; ++j)
            if (j != k) Others.col(c++) = H.col(j);
        Eigen::HouseholderQR<MatXc> qr(Others);
        MatXc Q = qr.householderQ() * MatXc::Identity(M, K - 1);
        VecXc v = H.col(k) - Q * (Q.adjoint() * H.col(k));
        const double n2 = v.squaredNorm();
        if (n2 < 1e-12) return basis;  // collinear users; no ZF direction
        basis.zf_gain[k] = n2;         // = |h_hat^H v_hat|^2 for v_hat = v/|v|
        basis.zf_dir[k] = v / std::sqrt(n2);
    }
    basis.valid = true;
    return basis;
}

VecXc reshape_block(const MatXc& W, double gap, const VecXc& h_k, const ReshapeBasis& basis,
                    int k) {
    auto principal = [&] { return principal_component(W).first; };
    if (gap <= 1e-2 || !basis.valid) return principal();
    const VecXc v = h_k.normalized();
    const double q = std::clamp(std::real((v.adjoint() * W * v)(0, 0)), 0.0, 1.0);
    const double alpha = std::min(1.0, q / basis.zf_gain[k]);
    VecXc w = std::sqrt(alpha) * basis.zf_dir[k] +
              std::sqrt(std::max(0.0, 1.0 - alpha)) * basis.dark;
    const double n = w.norm();
    if (!(n > 0.0)) return principal();
    w /= n;
    canonical_phase(w);
    return w;
}

SlotSolution ao_single(const SlotInputs& in, const AoOptions& opts, AoState s,
                       bool optimize_beams, bool optimize_powers) {
    const int K = in.num_users();

    SlotSolution sol;
    sol.detail = "";

    std::vector<double> trace;
    bool feasible = false;
    double f_prev = std::numeric_limits<double>::quiet_NaN();
    VecX t = VecX::Zero(K);
    int iters_done = 0;

    auto fp_here = [&](const PowerSet& P, const std::vector<MatXc>& Wc,
                       const std::vector<MatXc>& Wr, const VecX& tt) {
        return fp_value(P, gains_r(in.G, Wr), gains_c(in.G, Wc), tt, in.sigma_r2);
    };

    for (int it = 0; it < opts.max_iters; ++it) {
        iters_done = it + 1;
        t = update_t_lifted(s.powers, s.W_c, s.W_r, in.G, in.sigma_r2);
        if (feasible) trace.push_back(fp_here(s.powers, s.W_c, s.W_r, t));

        if (optimize_beams) {
            SolveReport rep = beamforming_step(in, s.powers, t, opts.solver);
            if (rep.status == SolveStatus::infeasible && !feasible && optimize_powers) {
                // The initial powers may violate QoS for every beam choice;
                // rebalance powers at the initial beams and retry once.
                PowerResult rescue = power_step(in, s.W_c, s.W_r, t, opts.solver);
                if (rescue.status == SolveStatus::optimal) {
                    s.powers.per_user = rescue.per_user;
                    s.powers.sense = rescue.sense;
                    feasible = true;
                    t = update_t_lifted(s.powers, s.W_c, s.W_r, in.G, in.sigma_r2);
                    rep = beamforming_step(in, s.powers, t, opts.solver);
                }
            }
            if (rep.status == SolveStatus::infeasible) {
                sol.status = SlotStatus::infeasible;
                sol.detail = "beamforming subproblem infeasible: " + rep.detail;
                return sol;
            }
            std::vector<MatXc> newWc(rep.blocks.begin(), rep.blocks.begin() + K);
            std::vector<MatXc> newWr(rep.blocks.begin() + K, rep.blocks.end());
            const double f_new = fp_here(s.powers, newWc, newWr, t);
            const double f_old = fp_here(s.powers, s.W_c, s.W_r, t);
            if (!feasible || f_new >= f_old) {
                s.W_c = std::move(newWc);
                s.W_r = std::move(newWr);
            }
            if (rep.status == SolveStatus::optimal) feasible = true;
            if (feasible) trace.push_back(fp_here(s.powers, s.W_c, s.W_r, t));
        }

        t = update_t_lifted(s.powers, s.W_c, s.W_r, in.G, in.sigma_r2);
        if (feasible) trace.push_back(fp_here(s.powers, s.W_c, s.W_r, t));

        if (optimize_powers) {
            const PowerResult pr = power_step(in, s.W_c, s.W_r, t, opts.solver);
            if (pr.status == SolveStatus::infeasible) {
                if (!feasible) {
                    sol.status = SlotStatus::infeasible;
                    sol.detail = "power subproblem infeasible: " + pr.detail;
                    return sol;
                }
                sol.detail += "power step reported infeasible mid-run; kept previous powers. ";
            } else {
                PowerSet cand;
                cand.per_user = pr.per_user;
                cand.sense = pr.sense;
                const double f_new = fp_here(cand, s.W_c, s.W_r, t);
                const double f_old = fp_here(s.powers, s.W_c, s.W_r, t);
                if (!feasible || f_new >= f_old) s.powers = cand;
                if (pr.status == SolveStatus::optimal) feasible = true;
            }
            if (feasible) trace.push_back(fp_here(s.powers, s.W_c, s.W_r, t));
        }

        if (feasible && !trace.empty()) {
            const double f_now = trace.back();
            if (!std::isnan(f_prev) &&
                std::abs(f_now - f_prev) <= opts.rel_tol * std::max(1.0, std::abs(f_prev)))
                break;
            f_prev = f_now;
        }
    }

    if (!feasible) {
        sol.status = SlotStatus::infeasible;
        sol.detail += "no feasible iterate found";
        return sol;
    }

    sol.objective_trace = trace;
    sol.iterations = iters_done;
    sol.W_c = s.W_c;
    sol.W_r = s.W_r;
    sol.powers_lifted = s.powers;
    sol.t = update_t_lifted(s.powers, s.W_c, s.W_r, in.G, in.sigma_r2);

    // Rank-one recovery with re-normalization.
    sol.beams.comm.resize(K);
    sol.beams.sense.resize(K);
    sol.rank_gap_c = VecX::Zero(K);
    sol.rank_gap_r = VecX::Zero(K);
    const ReshapeBasis basis = make_reshape_basis(in.h);
    for (int k = 0; k < K; ++k) {
        sol.rank_gap_c[k] = principal_component(s.W_c[k]).second;
        sol.rank_gap_r[k] = principal_component(s.W_r[k]).second;
        // Both the LoS channel and the echo run along the same steering
        // direction, so h_k is the signal direction for either block type.
        sol.beams.comm[k] = reshape_block(s.W_c[k], sol.rank_gap_c[k], in.h[k], basis, k);
        sol.beams.sense[k] = reshape_block(s.W_r[k], sol.rank_gap_r[k], in.h[k], basis, k);
    }

    sol.powers = s.powers;
    if (optimize_powers) {
        // Re-optimize powers for the extracted unit-norm beams; the lifted
        // step certified QoS for the matrices, not their principal parts.
        std::vector<MatXc> Wc1(K), Wr1(K);
        for (int k = 0; k < K; ++k) {
            Wc1[k] = sol.beams.comm[k] * sol.beams.comm[k].adjoint();
            Wr1[k] = sol.beams.sense[k] * sol.beams.sense[k].adjoint();
        }
        const VecX t_polish = update_t_lifted(sol.powers, Wc1, Wr1, in.G, in.sigma_r2);
        const PowerResult pr = power_step(in, Wc1, Wr1, t_polish, opts.solver);
        if (pr.status == SolveStatus::optimal) {
            sol.powers.per_user = pr.per_user;
            sol.powers.sense = pr.sense;
        } else {
            sol.detail += "rank-one power polish not optimal (" + to_string(pr.status) + "). ";
        }
    }

    // Final metrics.
    sol.comm_sinr_lifted = VecX::Zero(K);
    sol.sens_sinr_lifted = VecX::Zero(K);
    sol.comm_sinr_beams = VecX::Zero(K);
    sol.sens_sinr_beams = VecX::Zero(K);
    for (int k = 0; k < K; ++k) {
        sol.comm_sinr_lifted[k] =
            comm_sinr_lifted(k, in.h[k], sol.W_c, sol.W_r, sol.powers_lifted, in.sigma_n2);
        sol.sens_sinr_lifted[k] =
            sens_sinr_lifted(k, in.G[k], sol.W_c, sol.W_r, sol.powers_lifted, in.sigma_r2);
        sol.comm_sinr_beams[k] = comm_sinr(k, in.h[k], sol.beams, sol.powers, in.sigma_n2);
        sol.sens_sinr_beams[k] = sens_sinr(k, in.G[k], sol.beams, sol.powers, in.sigma_r2);
    }
    sol.sum_sens_sinr = sol.sens_sinr_beams.sum();
    for (int k = 0; k < K; ++k) {
        if (sol.comm_sinr_beams[k] < in.gamma_req[k] * 0.99) {
            sol.detail += "rank-one QoS gap at user " + std::to_string(k) + " (" +
                          std::to_string(sol.comm_sinr_beams[k]) + " < " +
                          std::to_string(in.gamma_req[k]) + "). ";
        }
    }
    sol.t = update_t_beams(sol.powers, sol.beams, in.G, in.sigma_r2);
    {
        VecX g_r(K), g_c(K);
        for (int k = 0; k < K; ++k) {
            g_r[k] = radar_gain(in.G[k], sol.beams.sense[k]);
            g_c[k] = radar_gain(in.G[k], sol.beams.comm[k]);
        }
        sol.fp_objective = fp_value(sol.powers, g_r, g_c, sol.t, in.sigma_r2);
    }

    sol.status = SlotStatus::feasible;
    for (std::size_t i = 1; i < trace.size(); ++i) {
        if (trace[i] < trace[i - 1] - 1e-6 * std::max(1.0, std::abs(trace[i - 1]))) {
            sol.status = SlotStatus::internal_error;
            sol.detail += "surrogate objective trace decreased beyond tolerance. ";
            break;
        }
    }
    return sol;
}

}  // namespace

namespace {

SlotSolution ao_core(const SlotInputs& in, const AoOptions& opts, const SlotSolution* warm,
                     bool optimize_beams, bool optimize_powers) {
    validate_inputs(in);
    const int K = in.num_users();
    const int M = in.num_antennas();

    AoState s0 = initial_state(in);
    if (warm != nullptr && warm->status == SlotStatus::feasible &&
        static_cast<int>(warm->W_c.size()) == K && warm->W_c.front().rows() == M) {
        s0.W_c = warm->W_c;
        s0.W_r = warm->W_r;
        s0.powers = warm->powers_lifted;
    }
    SlotSolution best = ao_single(in, opts, s0, optimize_beams, optimize_powers);

    // Optional seeded multi-start; only meaningful when both blocks move.
    if (optimize_beams && optimize_powers) {
        for (int r = 1; r <= opts.restarts; ++r) {
            RngStream rng(substream_seed(opts.restart_seed, static_cast<std::uint64_t>(r)));
            AoState s = initial_state(in);
            for (int k = 0; k < K; ++k) {
                VecXc wc(M), wr(M);
                for (int m = 0; m < M; ++m) {
                    wc[m] = rng.cnormal();
                    wr[m] = rng.cnormal();
                }
                wc.normalize();
                wr.normalize();
                s.W_c[k] = wc * wc.adjoint();
                s.W_r[k] = wr * wr.adjoint();
            }
            VecX weights(K + 1);
            for (int i = 0; i <= K; ++i) weights[i] = -std::log(std::max(1e-12, rng.uniform()));
            const double denom = weights.head(K).sum() + K * weights[K];
            s.powers.per_user = 0.9 * in.p_max * weights.head(K) / denom;
            s.powers.sense = 0.9 * in.p_max * weights[K] / denom;

            SlotSolution cand = ao_single(in, opts, s, optimize_beams, optimize_powers);
            if (cand.status == SlotStatus::feasible &&
                (best.status != SlotStatus::feasible ||
                 cand.fp_objective > best.fp_objective))
                best = std::move(cand);
        }
    }
    return best;
}

}  // namespace

SlotSolution ao_solve(const SlotInputs& in, const AoOptions& opts, const SlotSolution* warm) {
    return ao_core(in, opts, warm, true, true);
}

SlotSolution baseline_power_only(const SlotInputs& in, const AoOptions& opts) {
    return ao_core(in, opts, nullptr, false, true);
}

SlotSolution baseline_beam_only(const SlotInputs& in, const AoOptions& opts) {
    return ao_core(in, opts, nullptr, true, false);
}

}  // namespace isac
