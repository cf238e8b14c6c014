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

#include "masec/geometry.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace masec {

namespace {

constexpr double kSpacingTol = 1e-12;

Vec3 upa_axis_u(const Vec3& boresight) {
    // In-panel horizontal axis, orthogonal to the boresight direction.
    Vec3 u = boresight.cross(Vec3::UnitZ());
    if (u.norm() < 1e-12)
        u = Vec3::UnitX(); // boresight along z, pick x as panel axis
    return u.normalized();
}

} // namespace

void MovingRegion::validate() const {
    if (!(half_width > 0.0))
        throw std::invalid_argument("MovingRegion: half width must be positive");
}

bool AntennaLayout::is_feasible(const MovingRegion& region, std::string* why) const {
    for (int m = 0; m < size(); ++m) {
        if (!region.contains(positions[m], kSpacingTol)) {
            if (why) {
                std::ostringstream os;
                os << "antenna " << m << " outside moving region";
                *why = os.str();
            }
            return false;
        }
    }
    for (int m = 0; m < size(); ++m) {
        for (int n = m + 1; n < size(); ++n) {
            const double d = (positions[m] - positions[n]).norm();
            if (d < min_spacing - kSpacingTol) {
                if (why) {
                    std::ostringstream os;
                    os << "antennas " << m << " and " << n << " at distance " << d
                       << " below minimum spacing " << min_spacing;
                    *why = os.str();
                }
                return false;
            }
        }
    }
    return true;
}

void AntennaLayout::validate(const MovingRegion& region) const {
    std::string why;
    if (!is_feasible(region, &why))
        throw std::invalid_argument("AntennaLayout: " + why);
}

void ReceiverGeometry::validate() const {
    if (num_elements() < 2)
        throw std::invalid_argument("ReceiverGeometry: at least 2 elements required");
    if (!(noise_variance > 0.0))
        throw std::invalid_argument("ReceiverGeometry: noise variance must be positive");
    for (const PolarPoint& p : element_polar)
        if (!(p.range > 0.0))
            throw std::invalid_argument("ReceiverGeometry: element range must be positive");
}

std::vector<Vec3> receiver_positions(const ReceiverGeometry& geom) {
    std::vector<Vec3> out;
    out.reserve(geom.element_polar.size());
    for (const PolarPoint& p : geom.element_polar) {
        if (!(p.range > 0.0))
            throw std::invalid_argument("receiver_positions: range must be positive");
        out.push_back(p.to_cartesian());
    }
    return out;
}

ReceiverGeometry make_upa_receiver(ReceiverRole role, double range, double azimuth,
                                   double elevation, int num_elements, double wavelength,
                                   double noise_variance) {
    if (num_elements < 1)
        throw std::invalid_argument("make_upa_receiver: element count must be positive");
    if (!(range > 0.0))
        throw std::invalid_argument("make_upa_receiver: range must be positive");

    const PolarPoint center{range, azimuth, elevation};
    const Vec3 c = center.to_cartesian();
    const Vec3 k = c.normalized();
    const Vec3 u = upa_axis_u(k);
    const Vec3 v = k.cross(u).normalized();

    const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(num_elements))));
    const int rows = (num_elements + cols - 1) / cols;
    const double spacing = wavelength / 2.0;

    ReceiverGeometry geom;
    geom.role = role;
    geom.noise_variance = noise_variance;
    geom.element_polar.reserve(num_elements);
    int placed = 0;
    for (int i = 0; i < rows && placed < num_elements; ++i) {
        for (int j = 0; j < cols && placed < num_elements; ++j, ++placed) {
            const double du = (j - 0.5 * (cols - 1)) * spacing;
            const double dv = (i - 0.5 * (rows - 1)) * spacing;
            const Vec3 p = c + du * u + dv * v;
            PolarPoint pp;
            pp.range = p.norm();
            pp.azimuth = std::atan2(p.y(), p.x());
            pp.elevation = std::acos(std::clamp(p.z() / pp.range, -1.0, 1.0));
            geom.element_polar.push_back(pp);
        }
    }
    return geom;
}

double path_gain(const Vec3& antenna, const Vec3& receiver, double wavelength) {
    const double d = (antenna - receiver).norm();
    if (!(d > 0.0))
        throw std::domain_error("path_gain: coincident antenna and receiver");
    return wavelength / (4.0 * kPi * d);
}

CVec nfrv(const Vec3& antenna, const std::vector<Vec3>& receivers, double wavelength) {
    const double k = 2.0 * kPi / wavelength;
    CVec a(static_cast<Eigen::Index>(receivers.size()));
    for (std::size_t l = 0; l < receivers.size(); ++l) {
        const double d = (antenna - receivers[l]).norm();
        if (!(d > 0.0))
            throw std::domain_error("nfrv: antenna coincides with a receiver element");
        a(static_cast<Eigen::Index>(l)) = std::polar(1.0, k * d);
    }
    return a;
}

CVec near_field_column(const Vec3& antenna, const ReceiverGeometry& geom, double wavelength) {
    const double k = 2.0 * kPi / wavelength;
    CVec h(geom.num_elements());
    for (int l = 0; l < geom.num_elements(); ++l) {
        const Vec3 r = geom.element_polar[l].to_cartesian();
        const double d = (antenna - r).norm();
        if (!(d > 0.0))
            throw std::domain_error("near_field_column: antenna coincides with receiver element");
        h(l) = std::polar(wavelength / (4.0 * kPi * d), -k * d);
    }
    return h;
}

CVec far_field_column(const Vec3& antenna, const ReceiverGeometry& geom, double wavelength) {
    const double k = 2.0 * kPi / wavelength;
    CVec h(geom.num_elements());
    for (int l = 0; l < geom.num_elements(); ++l) {
        const Vec3 r = geom.element_polar[l].to_cartesian();
        const double range = r.norm();
        if (!(range > 0.0))
            throw std::domain_error("far_field_column: receiver element at the origin");
        const Vec3 dir = r / range;
        const double gain = wavelength / (4.0 * kPi * range);
        h(l) = std::polar(gain, -k * (range - antenna.dot(dir)));
    }
    return h;
}

namespace {

ChannelMatrix assemble_channel(const AntennaLayout& layout, const ReceiverGeometry& geom,
                               double wavelength,
                               CVec (*column)(const Vec3&, const ReceiverGeometry&, double)) {
    ChannelMatrix ch;
    ch.wavelength = wavelength;
    ch.entries.resize(geom.num_elements(), layout.size());
    for (int m = 0; m < layout.size(); ++m)
        ch.entries.col(m) = column(layout.positions[m], geom, wavelength);
    if (!ch.entries.allFinite())
        throw std::runtime_error("channel synthesis produced non-finite entries");
    return ch;
}

} // namespace

ChannelMatrix near_field_channel(const AntennaLayout& layout, const ReceiverGeometry& geom,
                                 double wavelength) {
    return assemble_channel(layout, geom, wavelength, &near_field_column);
}

ChannelMatrix far_field_channel(const AntennaLayout& layout, const ReceiverGeometry& geom,
                                double wavelength) {
    return assemble_channel(layout, geom, wavelength, &far_field_column);
}

double fresnel_distance(const Vec2& antenna_yz, const PolarPoint& element) {
    if (!(element.range > 0.0))
        throw std::invalid_argument("fresnel_distance: range must be positive");
    const double s = std::sin(element.azimuth) * std::sin(element.elevation);
    const double c = std::cos(element.elevation);
    const double y = antenna_yz.x();
    const double z = antenna_yz.y();
    const double u = y * s + z * c;
    return element.range - u + (y * y + z * z - u * u) / (2.0 * element.range);
}

double rayleigh_distance(double aperture_diagonal, double wavelength) {
    if (!(aperture_diagonal > 0.0) || !(wavelength > 0.0))
        throw std::invalid_argument("rayleigh_distance: arguments must be positive");
    return 2.0 * aperture_diagonal * aperture_diagonal / wavelength;
}

} // namespace masec
