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

#ifndef EXFREE_PROTOCOLS_HPP
#define EXFREE_PROTOCOLS_HPP

#include <optional>
#include <vector>

#include "exfree/cqze.hpp"
#include "exfree/state.hpp"

namespace exfree {

/// How the controlled-Z steps inside a protocol are realized.
enum class GateModel {
    /// Element-level CQZE simulation, with loss.
    simulated,
    /// Exact lossless controlled-Z substituted for every device run.
    ideal_oracle,
};

/// Pauli powers applied to Bob's output qubits after a Bell outcome: X first, then Z.
struct Correction {
    int x_power = 0;
    int z_power = 0;
    bool operator==(const Correction &) const = default;
};

/// Alice's bit is 0 for H and 1 for V; Bob's bit is the atom value.
Correction bell_outcome_correction(int alice_bit, int bob_bit);

struct BellBranch {
    int alice_outcome = 0;
    int bob_outcome = 0;
    /// Joint probability that the photons survive and this outcome occurs.
    double probability = 0;
    /// Normalized output qubits after correction; empty when the branch never survives.
    std::optional<CompositeState> corrected_output;
    /// Fidelity of each output qubit with the input.
    std::vector<double> fidelities;
};

struct ProtocolResult {
    std::vector<BellBranch> branches;
    /// Probability-weighted branch fidelity, one entry per output qubit.
    std::vector<double> average_fidelity;
    double efficiency = 0;
    bool zero_survival = false;
};

/// (|H>|0> + |V>|1>)/sqrt2 on subsystems "bob" (photon) and "atom".
CompositeState prepare_bob_pair();

ProtocolResult teleport(
    const CompositeState &input, const CycleConfig &config, const AtomParams &atom, GateModel model);

/// Optimal universal cloning fidelity for q copies, (2q + 1)/(3q).
double telecloning_bound(int q);

/// Port "port" (atom), ancilla "ancilla", copies "copy1" and "copy2".
CompositeState prepare_telecloning_resource(int q);

/// Output qubits are the q copies, in order.
ProtocolResult teleclone(
    const CompositeState &input, int q, const CycleConfig &config, const AtomParams &atom, GateModel model);

}  // namespace exfree

#endif
