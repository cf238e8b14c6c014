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

#ifndef MASEC_QP2D_HPP
#define MASEC_QP2D_HPP

#include "masec/types.hpp"

#include <vector>

namespace masec {

// Linear inequality a . t >= b.
struct Halfplane {
    Vec2 normal;
    double offset = 0.0;

    double slack(const Vec2& t) const { return normal.dot(t) - offset; }
};

struct Qp2dResult {
    Vec2 point = Vec2::Zero();
    double objective = 0.0;
    bool feasible = false;
};

// Exact minimizer of (delta/2) ||t||^2 + c . t over the box
// [-half_width, half_width]^2 intersected with the given halfplanes.
//
// The variable is 2-dimensional, so the KKT system is solved by enumerating
// all active sets of size <= 2 and keeping the best feasible stationary
// point. feasible = false means the constraint set is (numerically) empty.
Qp2dResult solve_box_qp(double delta, const Vec2& linear_coeff, double half_width,
                        const std::vector<Halfplane>& halfplanes);

} // namespace masec

#endif
