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

#ifndef MASEC_GEOMETRY_HPP
#define MASEC_GEOMETRY_HPP

#include "masec/types.hpp"

#include <string>
#include <vector>

namespace masec {

// Square antenna moving region in the y-O-z plane at x = 0, centered at the
// origin: |y| <= half_width, |z| <= half_width.
struct MovingRegion {
    double half_width = 0.0; // A/2 in meters

    bool contains(const Vec2& yz, double tol = 0.0) const {
        return std::abs(yz.x()) <= half_width + tol && std::abs(yz.y()) <= half_width + tol;
    }
    bool contains(const Vec3& p, double tol = 0.0) const {
        return std::abs(p.x()) <= tol && contains(Vec2(p.y(), p.z()), tol);
    }
    void validate() const;
};

// Transmit array state: element positions plus the minimum spacing they must
// keep. Positions live on the x = 0 plane.
struct AntennaLayout {
    std::vector<Vec3> positions;
    double min_spacing = 0.0; // d_min in meters

    int size() const { return static_cast<int>(positions.size()); }
    Vec2 yz(int m) const { return Vec2(positions[m].y(), positions[m].z()); }
    void set_yz(int m, const Vec2& p) { positions[m] = Vec3(0.0, p.x(), p.y()); }

    // Checks the box and pairwise-distance constraints (spacing tolerance 1e-12).
    bool is_feasible(const MovingRegion& region, std::string* why = nullptr) const;
    void validate(const MovingRegion& region) const;
};

enum class ReceiverRole { User, Eavesdropper };

// Spherical coordinates of one receive element as seen from the array origin.
struct PolarPoint {
    double range = 0.0;     // r in meters
    double azimuth = 0.0;   // theta in radians
    double elevation = 0.0; // phi in radians (pi/2 = in the x-O-y plane)

    Vec3 to_cartesian() const {
        return Vec3(range * std::cos(azimuth) * std::sin(elevation),
                    range * std::sin(azimuth) * std::sin(elevation),
                    range * std::cos(elevation));
    }
};

struct ReceiverGeometry {
    ReceiverRole role = ReceiverRole::User;
    std::vector<PolarPoint> element_polar;
    double noise_variance = 1.0; // sigma^2 in watts

    int num_elements() const { return static_cast<int>(element_polar.size()); }
    void validate() const;
};

// Cartesian positions r_l = [r cos(theta) sin(phi), r sin(theta) sin(phi), r cos(phi)].
std::vector<Vec3> receiver_positions(const ReceiverGeometry& geom);

// Half-wavelength-spaced UPA with num_elements elements, centered at the given
// polar point and facing the array origin. Element count is arranged on a
// near-square grid (4 -> 2x2, 2 -> 1x2).
ReceiverGeometry make_upa_receiver(ReceiverRole role, double range, double azimuth,
                                   double elevation, int num_elements, double wavelength,
                                   double noise_variance);

// Free-space path coefficient lambda / (4 pi d). Throws on coincident points.
double path_gain(const Vec3& antenna, const Vec3& receiver, double wavelength);

// Near-field response vector: element l = exp(+j 2pi/lambda * ||t - r_l||).
CVec nfrv(const Vec3& antenna, const std::vector<Vec3>& receivers, double wavelength);

// Complex L x M channel with per-entry spherical-wave amplitude and phase.
// Entry (l, m) = g_{l,m} * exp(-j 2pi/lambda * ||t_m - r_l||).
struct ChannelMatrix {
    CMat entries;
    double wavelength = 0.0;

    int num_rx() const { return static_cast<int>(entries.rows()); }
    int num_tx() const { return static_cast<int>(entries.cols()); }
};

ChannelMatrix near_field_channel(const AntennaLayout& layout, const ReceiverGeometry& geom,
                                 double wavelength);

// Plane-wave model: entry (l, m) = g_l * exp(-j 2pi/lambda * (r_l - t_m . k_l))
// with k_l the unit direction of element l and g_l the center path gain.
ChannelMatrix far_field_channel(const AntennaLayout& layout, const ReceiverGeometry& geom,
                                double wavelength);

// Single channel column for one antenna position (used by per-antenna updates).
CVec near_field_column(const Vec3& antenna, const ReceiverGeometry& geom, double wavelength);
CVec far_field_column(const Vec3& antenna, const ReceiverGeometry& geom, double wavelength);

// Second-order (Fresnel) expansion of ||t - r_l|| for an in-plane antenna at
// (y, z): gamma = r - y s - z c + (y^2 + z^2 - (y s + z c)^2) / (2 r) with
// s = sin(theta) sin(phi), c = cos(phi).
double fresnel_distance(const Vec2& antenna_yz, const PolarPoint& element);

// Rayleigh distance 2 D^2 / lambda for aperture diagonal D.
double rayleigh_distance(double aperture_diagonal, double wavelength);

} // namespace masec

#endif
