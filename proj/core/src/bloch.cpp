// Copyright 2026 The exfree Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "exfree/bloch.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace exfree {

CompositeState bloch_state(double polar, double azimuth, const std::string &name) {
    if (!(polar >= 0 && polar <= std::numbers::pi)) {
        throw std::invalid_argument("polar angle must lie in [0, pi]");
    }
    if (!(azimuth >= 0 && azimuth < 2 * std::numbers::pi)) {
        throw std::invalid_argument("azimuth must lie in [0, 2pi)");
    }
    Eigen::VectorXcd amps(2);
    amps[0] = std::polar(std::sin(polar / 2), azimuth);
    amps[1] = std::cos(polar / 2);
    return {{polarization(name)}, amps};
}

CompositeState bloch_state(const BlochPoint &p, const std::string &name) {
    return bloch_state(p.polar, p.azimuth, name);
}

std::vector<BlochPoint> sphere_sample(int n) {
    if (n < 1) {
        throw std::invalid_argument("sphere_sample needs at least one point");
    }
    const double golden = std::numbers::pi * (3 - std::sqrt(5.0));
    std::vector<BlochPoint> points;
    points.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; i++) {
        double z = 1 - (2.0 * i + 1) / n;
        double az = std::fmod(i * golden, 2 * std::numbers::pi);
        points.push_back({std::acos(z), az});
    }
    return points;
}

}  // namespace exfree
