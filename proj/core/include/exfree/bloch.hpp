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

#ifndef EXFREE_BLOCH_HPP
#define EXFREE_BLOCH_HPP

#include <string>
#include <vector>

#include "exfree/state.hpp"

namespace exfree {

/// Point on the polarization sphere. V sits at the pole (polar = 0), H at polar = pi.
struct BlochPoint {
    double polar = 0;
    double azimuth = 0;
};

/// cos(polar/2)|V> + exp(i azimuth) sin(polar/2)|H>, as a single polarization subsystem.
/// Throws std::invalid_argument outside polar in [0, pi], azimuth in [0, 2pi).
CompositeState bloch_state(double polar, double azimuth, const std::string &name = "photon");
CompositeState bloch_state(const BlochPoint &p, const std::string &name = "photon");

/// Fibonacci lattice with n points: z_i = 1 - (2i + 1)/n and golden-angle azimuths.
std::vector<BlochPoint> sphere_sample(int n);

}  // namespace exfree

#endif
