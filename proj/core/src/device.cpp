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

#include "device.hpp"

#include <cmath>
#include <stdexcept>

namespace exfree::detail {

Eigen::Matrix2cd rotation(double angle) {
    double c = std::cos(angle);
    double s = std::sin(angle);
    Eigen::Matrix2cd r;
    r << c, -s, s, c;
    return r;
}

Device::Device(const CompositeState &state, const AtomParams &atom, const Wiring &wiring)
    : base_(state), amps_(state.amplitudes()), atom_(atom) {
    atom.validate();
    size_t pol = state.position(wiring.photon);
    if (state.subsystems()[pol].basis != polarization(wiring.photon).basis) {
        throw std::invalid_argument("subsystem '" + wiring.photon + "' is not a polarization qubit");
    }
    size_t pres = 0;
    has_presence_ = state.has_subsystem(wiring.presence);
    if (has_presence_) {
        pres = state.position(wiring.presence);
        if (state.subsystems()[pres].basis != presence(wiring.presence).basis) {
            throw std::invalid_argument("subsystem '" + wiring.presence + "' is not a presence label");
        }
    }
    bool classical = wiring.classical_block.has_value();
    size_t atom_pos = 0;
    if (!classical && state.has_subsystem(wiring.atom)) {
        atom_pos = state.position(wiring.atom);
        if (state.subsystems()[atom_pos].dimension() != 2) {
            throw std::invalid_argument("atom subsystem '" + wiring.atom + "' must be two-level");
        }
    } else if (!classical) {
        // No blocker in the state: rotations still work, blocker use is refused in interact().
        atom_pos = SIZE_MAX;
    }
    size_t pol_stride = state.stride(pol);
    size_t pres_stride = has_presence_ ? state.stride(pres) : 0;
    for (size_t i = 0; i < state.size(); i++) {
        if (state.digit(i, pol) != 0 || (has_presence_ && state.digit(i, pres) != 0)) {
            continue;
        }
        Slot s{};
        s.h = i;
        s.v = i + pol_stride;
        s.lost = {i + 1 * pres_stride, i + 2 * pres_stride, s.v + 3 * pres_stride};
        if (classical) {
            s.reflect = atom.reflect_amplitude(*wiring.classical_block);
        } else if (atom_pos != SIZE_MAX) {
            s.reflect = atom.reflect_amplitude(state.digit(i, atom_pos) == 1);
        } else {
            s.reflect = -1;
        }
        slots_.push_back(s);
    }
    lost_mass_.assign(slots_.size(), {0, 0, 0});
}

Region Device::take_alive() {
    Region region(slots_.size());
    for (size_t k = 0; k < slots_.size(); k++) {
        auto h = static_cast<Eigen::Index>(slots_[k].h);
        auto v = static_cast<Eigen::Index>(slots_[k].v);
        region[k] = {amps_[h], amps_[v]};
        amps_[h] = 0;
        amps_[v] = 0;
    }
    return region;
}

Region Device::take_alive_v() {
    Region region(slots_.size());
    for (size_t k = 0; k < slots_.size(); k++) {
        auto v = static_cast<Eigen::Index>(slots_[k].v);
        region[k] = {0, amps_[v]};
        amps_[v] = 0;
    }
    return region;
}

void Device::restore(const Region &region) {
    for (size_t k = 0; k < slots_.size(); k++) {
        amps_[static_cast<Eigen::Index>(slots_[k].h)] += region[k][0];
        amps_[static_cast<Eigen::Index>(slots_[k].v)] += region[k][1];
    }
}

void Device::set_classical_block(bool blocking) {
    double r = atom_.reflect_amplitude(blocking);
    for (auto &s : slots_) {
        s.reflect = r;
    }
}

void Device::lose(size_t slot, LossPort port, double mass) {
    if (mass <= 0) {
        return;
    }
    if (!has_presence_) {
        throw std::invalid_argument("photon loss needs a presence subsystem in the state");
    }
    lost_mass_[slot][port] += mass;
}

void Device::rotate(Region &region, double angle) const {
    double c = std::cos(angle);
    double s = std::sin(angle);
    for (auto &p : region) {
        cd h = p[0];
        cd v = p[1];
        p[0] = c * h - s * v;
        p[1] = s * h + c * v;
    }
}

void Device::interact(Region &region) {
    for (size_t k = 0; k < region.size(); k++) {
        double r = slots_[k].reflect;
        if (r < 0) {
            throw std::invalid_argument("state has no blocker subsystem and no classical setting was given");
        }
        double w = std::norm(region[k][0]);
        lose(k, kDB, w * (1 - r * r));
        region[k][0] *= r;
    }
}

double Device::inner_cycle(Region &region, double angle) {
    rotate(region, angle);
    double in_channel = 0;
    for (const auto &p : region) {
        in_channel += std::norm(p[0]);
    }
    interact(region);
    return in_channel;
}

void Device::run_inner(Region &region, int n) {
    double angle = std::numbers::pi / (2.0 * n);
    for (int j = 0; j < n; j++) {
        inner_cycle(region, angle);
    }
}

void Device::outer_cycle(Region &region, int m, int n) {
    rotate(region, std::numbers::pi / (2.0 * m));
    Region inner(region.size());
    for (size_t k = 0; k < region.size(); k++) {
        inner[k] = {0, region[k][1]};
        region[k][1] = 0;
    }
    run_inner(inner, n);
    for (size_t k = 0; k < region.size(); k++) {
        lose(k, kDA, std::norm(inner[k][0]));
        region[k][1] = inner[k][1];
    }
}

CompositeState Device::state(const Region *region) const {
    Eigen::VectorXcd out = amps_;
    for (size_t k = 0; k < slots_.size(); k++) {
        const Slot &s = slots_[k];
        if (region != nullptr) {
            out[static_cast<Eigen::Index>(s.h)] += (*region)[k][0];
            out[static_cast<Eigen::Index>(s.v)] += (*region)[k][1];
        }
        for (int port = 0; port < 3; port++) {
            double mass = lost_mass_[k][static_cast<size_t>(port)];
            if (mass > 0) {
                auto idx = static_cast<Eigen::Index>(s.lost[static_cast<size_t>(port)]);
                out[idx] = std::sqrt(std::norm(out[idx]) + mass);
            }
        }
    }
    return {base_.subsystems(), std::move(out)};
}

}  // namespace exfree::detail
