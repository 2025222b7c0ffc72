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

#ifndef EXFREE_DEVICE_HPP
#define EXFREE_DEVICE_HPP

#include <array>
#include <vector>

#include "exfree/cqze.hpp"

namespace exfree::detail {

enum LossPort { kDA = 0, kDB = 1, kPort = 2 };

/// Alive (H, V) amplitudes of the travelling photon for one configuration of everything else.
using Pair = std::array<cd, 2>;
using Region = std::vector<Pair>;

/// Working copy of a state seen from one photon.
///
/// Loss is tracked as probability mass per port and folded into the loss amplitudes when the
/// state is rebuilt. Losses at different times therefore never interfere.
class Device {
   public:
    Device(const CompositeState &state, const AtomParams &atom, const Wiring &wiring);

    size_t slots() const {
        return slots_.size();
    }

    /// Moves the alive amplitudes out of the state.
    Region take_alive();
    /// Moves only the alive V amplitudes out; entry 1 of each pair holds the moved value.
    Region take_alive_v();
    /// Adds region amplitudes back onto the alive entries.
    void restore(const Region &region);

    void set_classical_block(bool blocking);
    void lose(size_t slot, LossPort port, double mass);

    void rotate(Region &region, double angle) const;
    void interact(Region &region);
    /// Returns the alive H weight seen just before the blocker.
    double inner_cycle(Region &region, double angle);
    void run_inner(Region &region, int n);
    void outer_cycle(Region &region, int m, int n);
    /// Full pass. Calls `on_cycle` after each outer cycle when set.
    template <typename F>
    void cqze_pass(Region &region, int m, int n, F &&on_cycle) {
        for (int k = 0; k < m; k++) {
            outer_cycle(region, m, n);
            on_cycle(region);
        }
    }
    void cqze_pass(Region &region, int m, int n) {
        cqze_pass(region, m, n, [](const Region &) {});
    }

    /// Rebuilds a state. `region` amplitudes, when given, are added onto the alive entries.
    CompositeState state(const Region *region = nullptr) const;

   private:
    struct Slot {
        size_t h;
        size_t v;
        std::array<size_t, 3> lost;
        double reflect;
    };

    CompositeState base_;
    Eigen::VectorXcd amps_;
    std::vector<Slot> slots_;
    std::vector<std::array<double, 3>> lost_mass_;
    AtomParams atom_;
    bool has_presence_ = false;
};

Eigen::Matrix2cd rotation(double angle);

}  // namespace exfree::detail

#endif
