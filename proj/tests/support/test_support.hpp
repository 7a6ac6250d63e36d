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

#include <algorithm>
#include <cmath>
#include <vector>

#include "isac/channel.hpp"
#include "isac/optimizer.hpp"
#include "isac/rng.hpp"
#include "isac/signal.hpp"
#include "isac/types.hpp"

namespace isac::testing {

/// Unit vector in C^2 from two angles: (cos a, sin a e^{j p}).
inline VecXc beam2(double a, double p) {
    VecXc w(2);
    w[0] = std::cos(a);
    w[1] = std::polar(std::sin(a), p);
    return w;
}

/// Random K-user, M-antenna slot inputs in the simulator's physical regime.
inline SlotInputs random_inputs(int K, int M, double gamma, RngStream& rng,
                                double p_max = 3.9811) {
    const ArrayGeometry geom{M, 1.0};
    SlotInputs in;
    in.h.resize(K);
    in.G.resize(K);
    in.gamma_req = VecX::Constant(K, gamma);
    in.p_max = p_max;
    in.sigma_n2 = 1e-12;
    in.sigma_r2 = 1e-12;
    for (int k = 0; k < K; ++k) {
        const double d = 1.7 + 2.5 * rng.uniform();
        const double theta = 0.6 + 0.8 * rng.uniform() + 0.25 * k;
        in.h[k] = los_channel(0.3e12, d, 0.02, theta, geom);
        in.G[k] = reflection_channel(0.3e12, d, 0.02, 5.0e4, 0.3 * rng.normal(),
                                     0.1 * (1 + k), theta, geom);
    }
    return in;
}

/// Pareto-frontier lookup over a dense rank-one beam grid in C^2:
/// for each grid beam we tabulate (value, cost); queries return the minimal
/// cost subject to value >= need. Covers the full 2-angle grid exactly.
class FrontierGrid {
  public:
    FrontierGrid(int n_alpha, int n_phi, const MatXc& value_mat, const MatXc& cost_mat) {
        entries_.reserve(static_cast<std::size_t>(n_alpha) * n_phi);
        for (int ia = 0; ia < n_alpha; ++ia) {
            const double a = 0.5 * M_PI * ia / (n_alpha - 1);
            for (int ip = 0; ip < n_phi; ++ip) {
                const double p = 2.0 * M_PI * ip / n_phi;
                const VecXc w = beam2(a, p);
                const double value = std::real((w.adjoint() * value_mat * w)(0, 0));
                const double cost = std::real((w.adjoint() * cost_mat * w)(0, 0));
                entries_.push_back({value, cost, a, p});
            }
        }
        std::sort(entries_.begin(), entries_.end(),
                  [](const Entry& x, const Entry& y) { return x.value > y.value; });
        // prefix minimum of cost over decreasing value
        double best = std::numeric_limits<double>::infinity();
        for (auto& e : entries_) {
            best = std::min(best, e.cost);
            e.prefix_min_cost = best;
        }
    }

    /// Minimal cost among beams with value >= need; +inf if unreachable.
    double min_cost(double need) const {
        // entries_ sorted by value descending; find last index with value >= need.
        int lo = 0, hi = static_cast<int>(entries_.size()) - 1, ans = -1;
        while (lo <= hi) {
            const int mid = (lo + hi) / 2;
            if (entries_[mid].value >= need) {
                ans = mid;
                lo = mid + 1;
            } else {
                hi = mid - 1;
            }
        }
        if (ans < 0) return std::numeric_limits<double>::infinity();
        return entries_[ans].prefix_min_cost;
    }

    struct Entry {
        double value, cost, alpha, phi;
        double prefix_min_cost = 0;
    };
    const std::vector<Entry>& entries() const { return entries_; }

  private:
    std::vector<Entry> entries_;
};

/// Exhaustive oracle for the single-user joint design at M = 2: grid over
/// both beams (via the frontier reduction, equivalent to the full product
/// grid) and the power region. Returns the best sum sensing SINR.
inline double ao_oracle_k1(const SlotInputs& in, int n_beam = 360, int n_power = 160) {
    const MatXc C = in.G[0].adjoint() * in.G[0];
    const MatXc hh = in.h[0] * in.h[0].adjoint();
    // w_c: cost = leakage <C, ww'>, value = |h' w|^2.
    FrontierGrid comm(n_beam, n_beam, hh, C);
    // w_r candidates: all grid beams (value = echo gain, cost = interference).
    FrontierGrid sense(n_beam, n_beam, C, hh);

    double best = -1.0;
    const double gamma = in.gamma_req[0];
    for (int ip = 0; ip <= n_power; ++ip) {
        for (int ir = 0; ir <= n_power; ++ir) {
            const double P1 = in.p_max * ip / n_power;
            const double Pr = in.p_max * ir / n_power;
            if (P1 + Pr > in.p_max * (1 + 1e-12)) continue;
            for (const auto& e : sense.entries()) {
                const double echo = Pr * e.value;
                const double interf = Pr * e.cost;
                if (P1 <= 0.0) continue;
                const double need = gamma * (interf + in.sigma_n2) / P1;
                const double leak = comm.min_cost(need);
                if (!std::isfinite(leak)) continue;
                const double s = echo / (P1 * leak + in.sigma_r2);
                best = std::max(best, s);
            }
        }
    }
    return best;
}

/// Exhaustive oracle for the two-user joint design at M = 2.
///
/// Every objective and constraint term touches a beam only through its
/// alignments with the two steering directions. For a unit vector in C^2,
/// given the own-direction alignment x the cross alignment spans exactly
/// [lo(x), hi(x)] with lo/hi = (sqrt(c x) -/+ sqrt((1-c)(1-x)))^2, where
/// c = |<a1_hat, a2_hat>|^2, and crosses act purely as interference, so the
/// low end is always optimal. The search space therefore reduces exactly to
/// the own alignments (u_1, u_2) of the comm beams, (v_1, v_2) of the sense
/// beams, and the powers; for fixed everything-else the minimal feasible u_2
/// given u_1 is available in closed form over a precomputed lo() grid. Two
/// zoom levels refine the incumbent.
class OracleK2 {
  public:
    explicit OracleK2(const SlotInputs& in) : in_(in) {
        const VecXc a1 = in.h[0].normalized();
        const VecXc a2 = in.h[1].normalized();
        c_ = std::norm(a1.dot(a2));
        for (int k = 0; k < 2; ++k) {
            H_[k] = in.h[k].squaredNorm();
            S_[k] = (in.G[k] * in.h[k].normalized()).squaredNorm();
            gamma_[k] = in.gamma_req[k];
        }
    }

    double lo(double x) const {
        const double r = std::sqrt(c_ * x) - std::sqrt((1.0 - c_) * (1.0 - x));
        return r > 0.0 ? r * r : 0.0;
    }

    double solve(int n_beam = 40, int n_pow = 24, int n_pr = 8, int n_u = 120) {
        double best = -1.0;
        double bv1 = 0.5, bv2 = 0.5, bp1 = in_.p_max / 3, bp2 = in_.p_max / 3,
               bpr = in_.p_max / 6;
        double v_lo1 = 0, v_hi1 = 1, v_lo2 = 0, v_hi2 = 1;
        double p_lo1 = 0, p_hi1 = in_.p_max, p_lo2 = 0, p_hi2 = in_.p_max;
        double r_lo = 0, r_hi = 0.5 * in_.p_max;
        for (int level = 0; level < 2; ++level) {
            for (int iv1 = 0; iv1 <= n_beam; ++iv1) {
                for (int iv2 = 0; iv2 <= n_beam; ++iv2) {
                    const double v1 = v_lo1 + (v_hi1 - v_lo1) * iv1 / n_beam;
                    const double v2 = v_lo2 + (v_hi2 - v_lo2) * iv2 / n_beam;
                    for (int ip1 = 0; ip1 <= n_pow; ++ip1) {
                        for (int ip2 = 0; ip2 <= n_pow; ++ip2) {
                            const double P1 = p_lo1 + (p_hi1 - p_lo1) * ip1 / n_pow;
                            const double P2 = p_lo2 + (p_hi2 - p_lo2) * ip2 / n_pow;
                            if (P1 <= 0 || P2 <= 0) continue;
                            if (P1 + P2 >= in_.p_max) continue;
                            const double pr_cap =
                                std::min(r_hi, 0.5 * (in_.p_max - P1 - P2));
                            for (int ir = 0; ir <= n_pr; ++ir) {
                                const double Pr =
                                    std::max(r_lo, 0.0) +
                                    (pr_cap - std::max(r_lo, 0.0)) * ir / n_pr;
                                if (Pr <= 0) continue;
                                const double val =
                                    best_over_u(v1, v2, P1, P2, Pr, n_u);
                                if (val > best) {
                                    best = val;
                                    bv1 = v1;
                                    bv2 = v2;
                                    bp1 = P1;
                                    bp2 = P2;
                                    bpr = Pr;
                                }
                            }
                        }
                    }
                }
            }
            // zoom onto the incumbent
            auto window = [](double center, double width, double lo, double hi,
                             double& out_lo, double& out_hi) {
                out_lo = std::max(lo, center - width);
                out_hi = std::min(hi, center + width);
            };
            window(bv1, 2.0 / n_beam, 0, 1, v_lo1, v_hi1);
            window(bv2, 2.0 / n_beam, 0, 1, v_lo2, v_hi2);
            window(bp1, 2.0 * in_.p_max / n_pow, 0, in_.p_max, p_lo1, p_hi1);
            window(bp2, 2.0 * in_.p_max / n_pow, 0, in_.p_max, p_lo2, p_hi2);
            window(bpr, 2.0 * 0.5 * in_.p_max / n_pr, 0, 0.5 * in_.p_max, r_lo, r_hi);
        }
        return best;
    }

  private:
    // Best objective over the comm alignments at fixed sense beams and
    // powers. Scans u1; the optimal u2 for each u1 is the smallest value
    // satisfying both users' QoS rows.
    double best_over_u(double v1, double v2, double P1, double P2, double Pr,
                       int n_u) const {
        const double D1 = gamma_[0] * (Pr * v1 + Pr * lo(v2) + in_.sigma_n2 / H_[0]);
        const double D2 = gamma_[1] * (Pr * v2 + Pr * lo(v1) + in_.sigma_n2 / H_[1]);
        double best = -1.0;
        for (int i = 0; i <= n_u; ++i) {
            const double u1 = static_cast<double>(i) / n_u;
            if (P1 * u1 < D1) continue;  // user 1 infeasible even with zero cross
            // user 2's minimal own alignment given u1
            const double u2_min = (gamma_[1] * P1 * lo(u1) + D2) / P2;
            if (u2_min > 1.0) continue;
            // user 1 additionally needs lo(u2) <= z
            const double z = (P1 * u1 - D1) / (gamma_[0] * P2);
            // smallest u2 with lo(u2) <= z: lo decreases on [0, 1-c], so the
            // left crossing is found on that branch (0 if lo(0) <= z).
            double l = 0.0;
            if (lo(0.0) > z) {
                double a = 0.0, b = 1.0 - c_;
                for (int it = 0; it < 60; ++it) {
                    const double m = 0.5 * (a + b);
                    if (lo(m) > z)
                        a = m;
                    else
                        b = m;
                }
                l = b;
            }
            const double u2 = std::max(u2_min, l);
            if (u2 > 1.0) continue;
            // final exact feasibility check at (u1, u2)
            if (P1 * u1 < gamma_[0] * P2 * lo(u2) + D1 - 1e-15) continue;
            if (P2 * u2 < gamma_[1] * P1 * lo(u1) + D2 - 1e-15) continue;
            const double s1 = Pr * S_[0] * v1 / (P1 * S_[0] * u1 + in_.sigma_r2);
            const double s2 = Pr * S_[1] * v2 / (P2 * S_[1] * u2 + in_.sigma_r2);
            best = std::max(best, s1 + s2);
        }
        return best;
    }

    const SlotInputs& in_;
    double c_ = 0;
    double H_[2] = {0, 0}, S_[2] = {0, 0}, gamma_[2] = {0, 0};
};

inline double ao_oracle_k2(const SlotInputs& in) { return OracleK2(in).solve(); }

/// Wilson-Hilferty approximation of the chi-square quantile.
inline double chi2_quantile(double dof, double z) {
    const double t = 1.0 - 2.0 / (9.0 * dof) + z * std::sqrt(2.0 / (9.0 * dof));
    return dof * t * t * t;
}

}  // namespace isac::testing
