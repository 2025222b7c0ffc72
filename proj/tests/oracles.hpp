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

#ifndef EXFREE_TESTS_ORACLES_HPP
#define EXFREE_TESTS_ORACLES_HPP

// Reference values computed straight from 2x2 matrix algebra, without the device engine.

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;
using M2 = Eigen::Matrix2cd;
constexpr double pi = std::numbers::pi;

/// Rotation acting on the column (h, v).
inline M2 rot(double phi) {
    M2 r;
    r << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
    return r;
}

/// Transfer matrix of N inner cycles with reflection amplitude r on H.
inline M2 inner(int n, double r) {
    M2 d = M2::Identity();
    d(0, 0) = r;
    M2 t = M2::Identity();
    for (int j = 0; j < n; j++) {
        t = d * rot(pi / (2.0 * n)) * t;
    }
    return t;
}

/// Transfer matrix of a full pass. Only the V output of the inner run stays alive.
inline M2 pass(int m, int n, double r) {
    cd v_keep = (inner(n, r) * Eigen::Vector2cd(0, 1))(1);
    M2 keep = M2::Identity();
    keep(1, 1) = v_keep;
    M2 t = M2::Identity();
    for (int k = 0; k < m; k++) {
        t = keep * rot(pi / (2.0 * m)) * t;
    }
    return t;
}

/// Alive amplitude on V0 for a V input, and on V1 for a V input, of the controlled phase.
inline cd phase_factor(int m, int n, double theta, double r) {
    M2 plate = M2::Identity();
    plate(1, 1) = std::polar(1.0, theta + pi);
    M2 t = pass(m, n, r);
    return (t * plate * t)(0, 0);
}

/// Ideal-atom closed forms.
inline double zeno_factor(int n) {
    return std::pow(std::cos(pi / (2.0 * n)), n);
}
inline double free_branch(int m) {
    return std::pow(std::cos(pi / (2.0 * m)), m);
}

}  // namespace oracle

#endif
