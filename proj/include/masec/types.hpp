// SPDX-License-Identifier: Apache-2.0
//
// masec: movable-antenna secure near-field MIMO beamforming
// Copyright (C) 2026 masec contributors
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

#ifndef MASEC_TYPES_HPP
#define MASEC_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

namespace masec {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kLn2 = 0.69314718055994530942;

// P(W) = 10^((dBm - 30)/10)
inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

// Deterministic, platform-independent RNG stream. The standard distributions
// are implementation-defined, so uniform draws are built from raw 64-bit
// output directly.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // standard normal (Box-Muller)
    double normal() {
        double u1 = 0.0;
        while (u1 <= 0.0)
            u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

    Complex normal_complex() { return Complex(normal(), normal()) / std::sqrt(2.0); }

  private:
    std::uint64_t state_;
};

// Derives an independent stream for (seed, lane, index), e.g. one per trial.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t lane, std::uint64_t index) {
    Rng mix(master ^ (0x6a09e667f3bcc909ULL + lane * 0x9e3779b97f4a7c15ULL));
    mix.next_u64();
    std::uint64_t s = mix.next_u64() ^ (index * 0xd1b54a32d192ed03ULL + 0x2545f4914f6cdd1dULL);
    Rng mix2(s);
    return mix2.next_u64();
}

} // namespace masec

#endif
