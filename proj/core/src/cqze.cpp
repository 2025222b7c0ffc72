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

#include "exfree/cqze.hpp"

#include <cmath>
#include <stdexcept>

#include "device.hpp"

namespace exfree {

using detail::Device;
using detail::Region;

void CycleConfig::validate() const {
    if (m < 1 || n < 1) {
        throw std::invalid_argument("cycle counts must be at least 1 (got M=" + std::to_string(m) +
                                    ", N=" + std::to_string(n) + ")");
    }
    if (!std::isfinite(theta)) {
        throw std::invalid_argument("theta must be finite");
    }
}

void AtomParams::validate() const {
    auto ok = [](double p) {
        return p >= 0 && p <= 1;
    };
    if (!ok(p_fail_reflect) || !ok(p_fail_block)) {
        throw std::invalid_argument("atom failure probabilities must lie in [0, 1]");
    }
}

double AtomParams::reflect_amplitude(bool blocking) const {
    return blocking ? std::sqrt(p_fail_block) : std::sqrt(1 - p_fail_reflect);
}

double alive_probability(const CompositeState &state, const std::string &presence) {
    if (!state.has_subsystem(presence)) {
        return state.norm_squared();
    }
    return state.probability(presence, kAlive);
}

namespace {

void require_cycles(int count, const char *what) {
    if (count < 1) {
        throw std::invalid_argument(std::string(what) + " must be at least 1");
    }
}

}  // namespace

CompositeState spr_rotate(const CompositeState &state, double angle, const Wiring &wiring) {
    if (!std::isfinite(angle)) {
        throw std::invalid_argument("rotation angle must be finite");
    }
    Device dev(state, AtomParams::ideal(), wiring);
    Region region = dev.take_alive();
    dev.rotate(region, angle);
    return dev.state(&region);
}

CompositeState atom_interact(const CompositeState &state, const AtomParams &atom, const Wiring &wiring) {
    Device dev(state, atom, wiring);
    Region region = dev.take_alive();
    dev.interact(region);
    return dev.state(&region);
}

CompositeState inner_cycle(const CompositeState &state, int n, const AtomParams &atom, const Wiring &wiring) {
    require_cycles(n, "N");
    Device dev(state, atom, wiring);
    Region region = dev.take_alive();
    dev.inner_cycle(region, std::numbers::pi / (2.0 * n));
    return dev.state(&region);
}

CompositeState run_inner(const CompositeState &state, int n, const AtomParams &atom, const Wiring &wiring) {
    require_cycles(n, "N");
    Device dev(state, atom, wiring);
    Region region = dev.take_alive();
    dev.run_inner(region, n);
    return dev.state(&region);
}

CompositeState outer_cycle(const CompositeState &state, int m, int n, const AtomParams &atom, const Wiring &wiring) {
    require_cycles(m, "M");
    require_cycles(n, "N");
    Device dev(state, atom, wiring);
    Region region = dev.take_alive();
    dev.outer_cycle(region, m, n);
    return dev.state(&region);
}

GateRunRecord cqze_pass(
    const CompositeState &state,
    const CycleConfig &config,
    const AtomParams &atom,
    const Wiring &wiring,
    bool record_trace) {
    config.validate();
    Device dev(state, atom, wiring);
    Region region = dev.take_alive();
    std::vector<CompositeState> trace;
    dev.cqze_pass(region, config.m, config.n, [&](const Region &r) {
        if (record_trace) {
            trace.push_back(dev.state(&r));
        }
    });
    CompositeState out = dev.state(&region);
    double alive = alive_probability(out, wiring.presence);
    return {std::move(out), alive, std::move(trace)};
}

GateRunRecord controlled_rz(
    const CompositeState &state, const CycleConfig &config, const AtomParams &atom, const Wiring &wiring) {
    config.validate();
    Device dev(state, atom, wiring);
    // The H part stays in the delay loop. The V part is flipped to H and sent through twice.
    Region work = dev.take_alive_v();
    for (auto &p : work) {
        p = {p[1], 0};
    }
    dev.cqze_pass(work, config.m, config.n);
    cd plate = std::polar(1.0, config.theta + std::numbers::pi);
    for (auto &p : work) {
        p[1] *= plate;
    }
    dev.cqze_pass(work, config.m, config.n);
    for (size_t k = 0; k < work.size(); k++) {
        // Wrong polarization at the first beam splitter leaves through the unused port.
        dev.lose(k, detail::kPort, std::norm(work[k][1]));
        work[k] = {0, work[k][0]};
    }
    CompositeState out = dev.state(&work);
    double alive = alive_probability(out, wiring.presence);
    return {std::move(out), alive, {}};
}

GateRunRecord controlled_rz(
    const CompositeState &photon, const CompositeState &atom_state, const CycleConfig &config, const AtomParams &atom) {
    if (photon.subsystems().size() != 1 || atom_state.subsystems().size() != 1) {
        throw std::invalid_argument("controlled_rz expects a single photon and a single atom");
    }
    Wiring wiring;
    wiring.photon = photon.subsystems()[0].name;
    wiring.atom = atom_state.subsystems()[0].name;
    CompositeState alive = CompositeState::basis_state({presence(wiring.presence)}, {kAlive});
    return controlled_rz(tensor(tensor(photon, alive), atom_state), config, atom, wiring);
}

namespace {

CompositeState basis_input(const char *pol, const char *atom_value) {
    return CompositeState::basis_state({polarization("photon"), presence(), qubit("atom")}, {pol, kAlive, atom_value});
}

template <typename Column>
void fill_column(Column &&column, const CompositeState &out) {
    const char *pols[] = {"H", "V"};
    const char *atoms[] = {"0", "1"};
    for (int p = 0; p < 2; p++) {
        for (int a = 0; a < 2; a++) {
            column(2 * p + a) = out.amplitude({pols[p], kAlive, atoms[a]});
        }
    }
}

}  // namespace

Eigen::Matrix4cd gate_matrix(const CycleConfig &config, const AtomParams &atom) {
    Eigen::Matrix4cd u;
    const char *pols[] = {"H", "V"};
    const char *atoms[] = {"0", "1"};
    for (int p = 0; p < 2; p++) {
        for (int a = 0; a < 2; a++) {
            GateRunRecord run = controlled_rz(basis_input(pols[p], atoms[a]), config, atom);
            fill_column(u.col(2 * p + a), run.output);
        }
    }
    return u;
}

Eigen::Matrix<cd, 4, 2> cqze_matrix(const CycleConfig &config, const AtomParams &atom) {
    Eigen::Matrix<cd, 4, 2> u;
    const char *atoms[] = {"0", "1"};
    for (int a = 0; a < 2; a++) {
        GateRunRecord run = cqze_pass(basis_input("H", atoms[a]), config, atom);
        fill_column(u.col(a), run.output);
    }
    return u;
}

}  // namespace exfree
