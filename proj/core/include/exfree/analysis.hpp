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

#ifndef EXFREE_ANALYSIS_HPP
#define EXFREE_ANALYSIS_HPP

#include <array>
#include <vector>

#include "exfree/bloch.hpp"
#include "exfree/cqze.hpp"
#include "exfree/protocols.hpp"

namespace exfree {

enum class Protocol { teleport, teleclone };

/// Runs one protocol on one input. Teleclone uses two copies.
ProtocolResult run_protocol(
    Protocol protocol, const CompositeState &input, const CycleConfig &config, const AtomParams &atom, GateModel model);

struct FidelitySummary {
    double avg = 0;
    double min = 0;
    std::vector<double> per_point;
    double avg_efficiency = 0;
};

/// Averages the branch-weighted fidelity over the Fibonacci sphere lattice. For teleclone the
/// per-point value is the mean over the copies.
FidelitySummary average_fidelity(
    Protocol protocol,
    const CycleConfig &config,
    const AtomParams &atom,
    int n_points = 100,
    GateModel model = GateModel::simulated);

struct SweepCell {
    int m = 0;
    int n = 0;
    double avg_fidelity = 0;
    double min_fidelity = 0;
    double avg_efficiency = 0;
};

struct SweepGrid {
    std::vector<int> m_values;
    std::vector<int> n_values;
    /// Row-major in (m, n).
    std::vector<SweepCell> cells;

    const SweepCell &at(size_t mi, size_t ni) const {
        return cells.at(mi * n_values.size() + ni);
    }
};

/// Evaluates every (M, N) cell. `threads` = 0 uses the hardware concurrency. The result does not
/// depend on the thread count.
SweepGrid sweep(
    Protocol protocol,
    const std::vector<int> &m_values,
    const std::vector<int> &n_values,
    const AtomParams &atom,
    int n_points = 100,
    double theta = std::numbers::pi,
    int threads = 0);

/// Mean survival over a set of protocol runs. Throws on an empty set.
double efficiency_report(const std::vector<ProtocolResult> &results);

struct AvRun {
    CompositeState state;
    /// Probability carried into the channel towards Bob, summed over cycles.
    double channel_presence = 0;
    /// Norm of the alive V amplitude left in the inner interferometer.
    double residual_v = 0;
};

/// Plain N-cycle inner run with a classical blocker, tracking the channel presence.
AvRun av_unmodified_inner(const CompositeState &state, int n, bool bob_blocking);

/// N cycles where, in the last one, Alice blocks the channel entrance right after the rotation;
/// then N more ordinary cycles with the inner mirror kept on.
AvRun av_modified_inner(const CompositeState &state, int n, bool bob_blocking);

/// Bob blocks k of the L run pairs; each blocked pair adds 2pi/L to the phase of V.
struct PhaseUnitConfig {
    int L = 1;
    int k = 0;
    void validate() const;
};

/// Phase unit on a single photon. Returns photon (x) presence. The first k run pairs are blocked.
GateRunRecord phase_unit(
    const CompositeState &input,
    const PhaseUnitConfig &pc,
    const CycleConfig &config,
    const AtomParams &atom,
    GateModel model = GateModel::simulated);

/// Same, with an explicit blocking pattern, one entry per run pair.
GateRunRecord phase_unit_pattern(
    const CompositeState &input,
    const std::vector<bool> &blocked_pairs,
    const CycleConfig &config,
    const AtomParams &atom,
    GateModel model = GateModel::simulated);

/// Jones matrix of a quarter-wave plate with its fast axis at -pi/4, basis (H, V).
Eigen::Matrix2cd quarter_wave_plate();

/// diag(1, exp(i phi)) in (H, V): the ideal phase unit.
Eigen::Matrix2cd phase_gate(double phi);
/// Phase unit conjugated by the quarter-wave plate, ideal limit.
Eigen::Matrix2cd conjugated_phase_gate(double phi);

/// phi3, phi2, phi1 with U = phase_gate(phi3) conjugated_phase_gate(phi2) phase_gate(phi1) up to
/// global phase. All angles in [0, 2pi); phi2 in [0, pi].
struct EulerAngles {
    double phi1 = 0;
    double phi2 = 0;
    double phi3 = 0;
};
EulerAngles euler_angles(const Eigen::Matrix2cd &u);

/// Nearest phase unit setting with L run pairs for an angle.
PhaseUnitConfig quantize_phase(double phi, int L);

/// Three phase units: the first and last act directly, the middle one between quarter-wave plates.
class EulerChain {
   public:
    EulerChain(
        std::array<PhaseUnitConfig, 3> settings,
        CycleConfig config,
        AtomParams atom,
        GateModel model = GateModel::simulated);

    GateRunRecord operator()(const CompositeState &photon) const;
    /// Alive-subspace 2x2 response, basis (H, V).
    Eigen::Matrix2cd matrix() const;

   private:
    std::array<PhaseUnitConfig, 3> settings_;
    CycleConfig config_;
    AtomParams atom_;
    GateModel model_;
};

EulerChain arbitrary_unitary(
    const std::array<PhaseUnitConfig, 3> &settings,
    const CycleConfig &config,
    const AtomParams &atom,
    GateModel model = GateModel::simulated);

/// max |a - e^{i g} b| entrywise, with g chosen to align the two matrices.
double distance_up_to_phase(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b);

}  // namespace exfree

#endif
