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

#include <cstdint>
#include <random>

#include "isac/types.hpp"

namespace isac {

/// Deterministic random stream. Gaussian draws use an explicit Box-Muller
/// transform on top of mt19937_64 so that sequences are identical across
/// standard libraries, which keeps emitted CSV files byte-reproducible.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() {
        return (engine_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal draw.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do { u1 = uniform(); } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    /// Circularly-symmetric complex normal with unit variance (E|x|^2 = 1).
    cplx cnormal() {
        return cplx(normal() * M_SQRT1_2, normal() * M_SQRT1_2);
    }

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Derives an independent substream seed from (master, tags...). SplitMix64
/// mixing; collisions across distinct tag tuples are negligible.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                                    std::uint64_t c = 0) {
    auto mix = [](std::uint64_t v) {
        v += 0x9e3779b97f4a7c15ULL;
        v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
        v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
        return v ^ (v >> 31);
    };
    std::uint64_t s = mix(master);
    s = mix(s ^ mix(a + 0x100));
    s = mix(s ^ mix(b + 0x10000));
    s = mix(s ^ mix(c + 0x1000000));
    return s;
}

}  // namespace isac
