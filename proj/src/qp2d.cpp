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

#include "masec/qp2d.hpp"

#include <limits>
#include <stdexcept>

namespace masec {

namespace {

struct Constraint {
    Vec2 a;
    double b;
};

bool feasible_point(const Vec2& t, const std::vector<Constraint>& cons, double tol) {
    for (const Constraint& c : cons)
        if (c.a.dot(t) < c.b - tol)
            return false;
    return true;
}

} // namespace

Qp2dResult solve_box_qp(double delta, const Vec2& linear_coeff, double half_width,
                        const std::vector<Halfplane>& halfplanes) {
    if (!(delta > 0.0))
        throw std::invalid_argument("solve_box_qp: curvature must be positive");
    if (!(half_width > 0.0))
        throw std::invalid_argument("solve_box_qp: box half width must be positive");

    std::vector<Constraint> cons;
    cons.reserve(halfplanes.size() + 4);
    cons.push_back({Vec2(1.0, 0.0), -half_width});
    cons.push_back({Vec2(-1.0, 0.0), -half_width});
    cons.push_back({Vec2(0.0, 1.0), -half_width});
    cons.push_back({Vec2(0.0, -1.0), -half_width});
    for (const Halfplane& h : halfplanes)
        cons.push_back({h.normal, h.offset});

    const double scale = std::max(1.0, half_width) + linear_coeff.norm() / delta;
    const double tol = 1e-11 * scale;

    const auto objective = [&](const Vec2& t) {
        return 0.5 * delta * t.squaredNorm() + linear_coeff.dot(t);
    };

    Qp2dResult best;
    best.objective = std::numeric_limits<double>::infinity();
    const auto consider = [&](const Vec2& t) {
        if (!feasible_point(t, cons, tol))
            return;
        const double f = objective(t);
        if (!best.feasible || f < best.objective) {
            best.feasible = true;
            best.objective = f;
            best.point = t;
        }
    };

    // Unconstrained stationary point.
    const Vec2 t0 = -linear_coeff / delta;
    consider(t0);

    // One active constraint: projection of t0 onto each boundary line (the
    // Hessian is isotropic, so the equality-constrained minimizer is the
    // Euclidean projection).
    const std::size_t n = cons.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double na2 = cons[i].a.squaredNorm();
        const Vec2 t = t0 + cons[i].a * ((cons[i].b - cons[i].a.dot(t0)) / na2);
        consider(t);
    }

    // Two active constraints: boundary-line intersections.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vec2& a1 = cons[i].a;
            const Vec2& a2 = cons[j].a;
            const double det = a1.x() * a2.y() - a1.y() * a2.x();
            if (std::abs(det) < 1e-14 * a1.norm() * a2.norm())
                continue; // parallel boundaries
            const Vec2 t((cons[i].b * a2.y() - cons[j].b * a1.y()) / det,
                         (a1.x() * cons[j].b - a2.x() * cons[i].b) / det);
            consider(t);
        }
    }

    if (best.feasible)
        best.objective = objective(best.point);
    return best;
}

} // namespace masec
