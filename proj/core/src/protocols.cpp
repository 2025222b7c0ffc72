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

#include "exfree/protocols.hpp"

#include <cmath>
#include <stdexcept>

namespace exfree {

namespace {

constexpr char kPresence[] = "presence";

/// Measurement bit of a polarization outcome: H reads 0, V reads 1.
const char *outcome(int bit) {
    return bit == 0 ? "H" : "V";
}

Eigen::MatrixXcd polarization_hadamard() {
    Eigen::MatrixXcd h(2, 2);
    h << 1, 1, 1, -1;
    return h / std::sqrt(2.0);
}

Eigen::MatrixXcd atom_hadamard() {
    return polarization_hadamard();
}

Eigen::MatrixXcd flip() {
    Eigen::MatrixXcd x(2, 2);
    x << 0, 1, 1, 0;
    return x;
}

std::pair<std::string, std::string> alive_only() {
    return {kPresence, kAlive};
}

CompositeState local(const CompositeState &s, const std::string &name, const Eigen::MatrixXcd &op) {
    return apply_local(s, name, op, alive_only());
}

/// Scales the alive amplitudes where every listed subsystem takes the listed value.
CompositeState phase_where(
    const CompositeState &s, const std::vector<std::pair<std::string, std::string>> &conditions, cd factor) {
    std::vector<std::pair<size_t, size_t>> digits;
    digits.emplace_back(s.position(kPresence), 0);
    for (const auto &[name, value] : conditions) {
        size_t pos = s.position(name);
        digits.emplace_back(pos, s.subsystems()[pos].index_of(value));
    }
    Eigen::VectorXcd amps = s.amplitudes();
    for (size_t i = 0; i < s.size(); i++) {
        bool match = true;
        for (const auto &[pos, value] : digits) {
            match = match && s.digit(i, pos) == value;
        }
        if (match) {
            amps[static_cast<Eigen::Index>(i)] *= factor;
        }
    }
    return {s.subsystems(), std::move(amps)};
}

struct Circuit {
    CycleConfig config;
    AtomParams atom;
    GateModel model;

    CycleConfig cz_config() const {
        CycleConfig c = config;
        c.theta = std::numbers::pi;
        return c;
    }

    /// Exchange-free CZ between a travelling photon and an atom it never meets.
    CompositeState cz(const CompositeState &s, const std::string &photon, const std::string &atom_name) const {
        if (model == GateModel::ideal_oracle) {
            return phase_where(s, {{photon, "V"}, {atom_name, "1"}}, -1);
        }
        Wiring w;
        w.photon = photon;
        w.atom = atom_name;
        return controlled_rz(s, cz_config(), atom, w).output;
    }

    /// Alice's exchange-free Z with her blocker classically set. Her blocker is taken ideal.
    CompositeState feed_forward_z(const CompositeState &s, const std::string &photon, bool block) const {
        if (model == GateModel::ideal_oracle) {
            return block ? phase_where(s, {{photon, "V"}}, -1) : s;
        }
        Wiring w;
        w.photon = photon;
        w.classical_block = block;
        return controlled_rz(s, cz_config(), AtomParams::ideal(), w).output;
    }
};

void require_single_photon(const CompositeState &input) {
    if (input.subsystems().size() != 1 || input.subsystems()[0].basis != polarization("x").basis) {
        throw std::invalid_argument("input must be a single polarization qubit");
    }
    if (std::abs(input.norm_squared() - 1) > 1e-9) {
        throw std::invalid_argument("input state is not normalized");
    }
}

CompositeState as_alice(const CompositeState &input) {
    return {{polarization("alice")}, input.amplitudes()};
}

/// Bell measurement of Alice's photon against `port`, corrections on `outputs`, one branch per outcome.
ProtocolResult run_bell_protocol(
    const CompositeState &input,
    const CompositeState &resource,
    const std::string &port,
    const std::vector<std::string> &outputs,
    const Circuit &circuit) {
    require_single_photon(input);
    CompositeState alive = CompositeState::basis_state({presence(kPresence)}, {kAlive});
    CompositeState s = tensor(tensor(as_alice(input), resource), alive);

    s = local(s, port, atom_hadamard());
    s = circuit.cz(s, "alice", port);
    s = local(s, "alice", polarization_hadamard());
    s = local(s, port, atom_hadamard());

    ProtocolResult result;
    for (int a = 0; a < 2; a++) {
        for (int b = 0; b < 2; b++) {
            CompositeState branch = project_out(project_out(s, "alice", outcome(a)), port, b == 0 ? "0" : "1");
            Correction fix = bell_outcome_correction(a, b);
            for (const auto &out : outputs) {
                if (fix.x_power) {
                    branch = local(branch, out, flip());
                }
                branch = circuit.feed_forward_z(branch, out, fix.z_power == 1);
            }
            CompositeState kept = project_out(branch, kPresence, kAlive);
            BellBranch bb;
            bb.alice_outcome = a;
            bb.bob_outcome = b;
            bb.probability = kept.norm_squared();
            if (bb.probability > kZeroProbability) {
                CompositeState normalized(kept.subsystems(), kept.amplitudes() / std::sqrt(bb.probability));
                CompositeState reference({polarization("ref")}, input.amplitudes());
                for (const auto &out : outputs) {
                    bb.fidelities.push_back(fidelity(reference, reduced_density(normalized, out)));
                }
                bb.corrected_output = std::move(normalized);
            } else {
                bb.fidelities.assign(outputs.size(), 0);
            }
            result.branches.push_back(std::move(bb));
        }
    }
    result.average_fidelity.assign(outputs.size(), 0);
    for (const auto &bb : result.branches) {
        result.efficiency += bb.probability;
        for (size_t k = 0; k < outputs.size(); k++) {
            result.average_fidelity[k] += bb.probability * bb.fidelities[k];
        }
    }
    result.zero_survival = !(result.efficiency > kZeroProbability);
    for (auto &f : result.average_fidelity) {
        f = result.zero_survival ? 0 : f / result.efficiency;
    }
    return result;
}

}  // namespace

Correction bell_outcome_correction(int alice_bit, int bob_bit) {
    if ((alice_bit != 0 && alice_bit != 1) || (bob_bit != 0 && bob_bit != 1)) {
        throw std::invalid_argument("measurement bits must be 0 or 1");
    }
    // Fixed against the lossless controlled-Z: Bob's bit sets the flip, Alice's bit sets the phase.
    return {bob_bit, alice_bit};
}

CompositeState prepare_bob_pair() {
    std::vector<SubsystemLabel> subs = {polarization("bob"), qubit("atom")};
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(4);
    double r = 1 / std::sqrt(2.0);
    amps[0 * 2 + 0] = r;  // H0
    amps[1 * 2 + 1] = r;  // V1
    return {std::move(subs), amps};
}

ProtocolResult teleport(
    const CompositeState &input, const CycleConfig &config, const AtomParams &atom, GateModel model) {
    config.validate();
    atom.validate();
    return run_bell_protocol(input, prepare_bob_pair(), "atom", {"bob"}, {config, atom, model});
}

double telecloning_bound(int q) {
    if (q < 1) {
        throw std::invalid_argument("number of copies must be at least 1");
    }
    return (2.0 * q + 1) / (3.0 * q);
}

CompositeState prepare_telecloning_resource(int q) {
    if (q != 2) {
        throw std::invalid_argument("only q = 2 telecloning is supported");
    }
    std::vector<SubsystemLabel> subs = {qubit("port"), polarization("ancilla"), polarization("copy1"),
                                        polarization("copy2")};
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(16);
    auto index = [](int port, int anc, int c1, int c2) {
        // Logical 0 is V, which sits at basis index 1.
        auto pol = [](int bit) {
            return bit == 0 ? 1 : 0;
        };
        return static_cast<Eigen::Index>(port * 8 + pol(anc) * 4 + pol(c1) * 2 + pol(c2));
    };
    double big = std::sqrt(2.0 / 3.0) / std::sqrt(2.0);
    double small = std::sqrt(1.0 / 6.0) / std::sqrt(2.0);
    // Port |0> carries the cloning state of logical 1, mirroring |H>|0> in Bob's pair.
    for (int port = 0; port < 2; port++) {
        int phi = 1 - port;
        amps[index(port, phi, phi, phi)] = big;
        amps[index(port, 1 - phi, 0, 1)] = small;
        amps[index(port, 1 - phi, 1, 0)] = small;
    }
    return {std::move(subs), amps};
}

ProtocolResult teleclone(
    const CompositeState &input, int q, const CycleConfig &config, const AtomParams &atom, GateModel model) {
    config.validate();
    atom.validate();
    CompositeState resource = prepare_telecloning_resource(q);
    return run_bell_protocol(input, resource, "port", {"copy1", "copy2"}, {config, atom, model});
}

}  // namespace exfree
