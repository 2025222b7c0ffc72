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

#ifndef EXFREE_CQZE_HPP
#define EXFREE_CQZE_HPP

#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "exfree/state.hpp"

namespace exfree {

/// M outer cycles, each containing N inner cycles, and the controlled phase angle.
struct CycleConfig {
    int m = 10;
    int n = 100;
    double theta = std::numbers::pi;

    /// Throws std::invalid_argument unless m, n >= 1 and theta is finite.
    void validate() const;
};

/// Imperfections of the trapped atom acting as a switchable mirror.
struct AtomParams {
    /// Probability that the atom in |0> fails to reflect an incident H photon.
    double p_fail_reflect = 0;
    /// Probability that the atom in |1> fails to block (reflects) an incident H photon.
    double p_fail_block = 0;

    static AtomParams ideal() {
        return {};
    }
    /// Values reported for current cavity-atom experiments.
    static AtomParams experimental() {
        return {0.34, 0.08};
    }

    void validate() const;
    /// Amplitude with which an incident H photon keeps travelling in the interferometer.
    double reflect_amplitude(bool blocking) const;
};

/// Output of a device run. `output` keeps the loss branches; `survival` is the alive weight.
struct GateRunRecord {
    CompositeState output;
    double survival = 0;
    /// States after each outer cycle, filled only on request.
    std::vector<CompositeState> trace;

    bool zero_survival() const {
        return !(survival > kZeroProbability);
    }
};

/// Names of the subsystems a device acts on.
///
/// The blocker is either a quantum atom subsystem, or a classical setting when `classical_block`
/// holds a value (true means the blocker is inserted).
struct Wiring {
    std::string photon = "photon";
    std::string presence = "presence";
    std::string atom = "atom";
    std::optional<bool> classical_block;
};

/// Weight of the alive branch. States without a presence subsystem count as fully alive.
double alive_probability(const CompositeState &state, const std::string &presence = "presence");

/// Switchable polarization rotator: H -> cH + sV, V -> cV - sH on alive amplitudes.
CompositeState spr_rotate(const CompositeState &state, double angle, const Wiring &wiring = {});

/// The H part meets the blocker. Whatever is absorbed moves to lost_DB.
CompositeState atom_interact(const CompositeState &state, const AtomParams &atom, const Wiring &wiring = {});

/// One inner cycle of an N-cycle interferometer: rotation by pi/2N, then the blocker.
CompositeState inner_cycle(const CompositeState &state, int n, const AtomParams &atom, const Wiring &wiring = {});

/// N inner cycles.
CompositeState run_inner(const CompositeState &state, int n, const AtomParams &atom, const Wiring &wiring = {});

/// One outer cycle: rotation by pi/2M, the V part runs the inner interferometer, the inner H
/// that returns is dumped at lost_DA.
CompositeState outer_cycle(
    const CompositeState &state, int m, int n, const AtomParams &atom, const Wiring &wiring = {});

/// M outer cycles. An H photon ends up H when the blocker reflects and V when it blocks.
GateRunRecord cqze_pass(
    const CompositeState &state,
    const CycleConfig &config,
    const AtomParams &atom,
    const Wiring &wiring = {},
    bool record_trace = false);

/// Exchange-free controlled phase. The V part of the photon picks up exp(i theta) when the
/// blocker is set; the H part waits in a delay loop.
GateRunRecord controlled_rz(
    const CompositeState &state, const CycleConfig &config, const AtomParams &atom, const Wiring &wiring = {});

/// Convenience form: builds photon (x) presence (x) atom with default wiring names.
GateRunRecord controlled_rz(
    const CompositeState &photon, const CompositeState &atom_state, const CycleConfig &config, const AtomParams &atom);

/// Alive-subspace matrix of controlled_rz, basis ordered (H0, H1, V0, V1) as photon then atom.
Eigen::Matrix4cd gate_matrix(const CycleConfig &config, const AtomParams &atom);

/// Alive-subspace response of a single cqze_pass to H0 and H1, rows ordered (H0, H1, V0, V1).
Eigen::Matrix<cd, 4, 2> cqze_matrix(const CycleConfig &config, const AtomParams &atom);

}  // namespace exfree

#endif
