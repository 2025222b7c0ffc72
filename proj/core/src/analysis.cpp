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

#include "exfree/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "device.hpp"

namespace exfree {

using detail::Device;
using detail::Region;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

double wrap_angle(double phi) {
    phi = std::fmod(phi, kTwoPi);
    if (phi < 0) {
        phi += kTwoPi;
    }
    if (phi > kTwoPi - 1e-12 || phi < 1e-12) {
        phi = 0;
    }
    return phi;
}

CompositeState with_presence(const CompositeState &photon) {
    if (photon.subsystems().size() != 1 || photon.subsystems()[0].basis != polarization("x").basis) {
        throw std::invalid_argument("expected a single polarization qubit");
    }
    CompositeState p({polarization("photon")}, photon.amplitudes());
    return tensor(p, CompositeState::basis_state({presence()}, {kAlive}));
}

GateRunRecord phase_unit_on(
    const CompositeState &state,
    const std::vector<bool> &pattern,
    const CycleConfig &config,
    const AtomParams &atom,
    GateModel model) {
    config.validate();
    if (pattern.empty()) {
        throw std::invalid_argument("phase unit needs at least one run pair");
    }
    Wiring wiring;
    wiring.classical_block = false;
    Device dev(state, atom, wiring);
    Region work = dev.take_alive_v();
    for (auto &p : work) {
        p = {p[1], 0};
    }
    // A blocked pair sends H to V and back, so the plate between its two runs sets the pair's phase.
    double per_pair = kTwoPi / static_cast<double>(pattern.size());
    cd plate = std::polar(1.0, per_pair + std::numbers::pi);
    size_t runs = 2 * pattern.size();
    for (size_t r = 0; r < runs; r++) {
        bool blocked = pattern[r / 2];
        if (model == GateModel::simulated) {
            dev.set_classical_block(blocked);
            dev.cqze_pass(work, config.m, config.n);
        } else if (blocked) {
            for (auto &p : work) {
                p = {-p[1], p[0]};
            }
        }
        if (r + 1 < runs) {
            for (auto &p : work) {
                p[1] *= plate;
            }
        }
    }
    for (size_t k = 0; k < work.size(); k++) {
        dev.lose(k, detail::kPort, std::norm(work[k][1]));
        work[k] = {0, work[k][0]};
    }
    CompositeState out = dev.state(&work);
    double alive = alive_probability(out);
    return {std::move(out), alive, {}};
}

std::vector<bool> prefix_pattern(const PhaseUnitConfig &pc) {
    pc.validate();
    std::vector<bool> pattern(static_cast<size_t>(pc.L), false);
    std::fill(pattern.begin(), pattern.begin() + pc.k, true);
    return pattern;
}

AvRun av_run(const CompositeState &state, int n, bool bob_blocking, bool modified) {
    if (n < 1) {
        throw std::invalid_argument("N must be at least 1");
    }
    Wiring wiring;
    wiring.classical_block = bob_blocking;
    Device dev(state, AtomParams::ideal(), wiring);
    Region region = dev.take_alive();
    double angle = std::numbers::pi / (2.0 * n);
    AvRun run{state, 0, 0};
    for (int j = 1; j <= n; j++) {
        if (modified && j == n) {
            dev.rotate(region, angle);
            for (size_t k = 0; k < region.size(); k++) {
                dev.lose(k, detail::kDA, std::norm(region[k][0]));
                region[k][0] = 0;
            }
        } else {
            run.channel_presence += dev.inner_cycle(region, angle);
        }
    }
    if (modified) {
        for (int j = 0; j < n; j++) {
            run.channel_presence += dev.inner_cycle(region, angle);
        }
    }
    double v = 0;
    for (const auto &p : region) {
        v += std::norm(p[1]);
    }
    run.residual_v = std::sqrt(v);
    run.state = dev.state(&region);
    return run;
}

}  // namespace

ProtocolResult run_protocol(
    Protocol protocol, const CompositeState &input, const CycleConfig &config, const AtomParams &atom, GateModel model) {
    if (protocol == Protocol::teleport) {
        return teleport(input, config, atom, model);
    }
    return teleclone(input, 2, config, atom, model);
}

FidelitySummary average_fidelity(
    Protocol protocol, const CycleConfig &config, const AtomParams &atom, int n_points, GateModel model) {
    FidelitySummary summary;
    summary.min = 1;
    for (const BlochPoint &p : sphere_sample(n_points)) {
        ProtocolResult r = run_protocol(protocol, bloch_state(p), config, atom, model);
        double f = 0;
        for (double x : r.average_fidelity) {
            f += x;
        }
        f /= static_cast<double>(r.average_fidelity.size());
        summary.per_point.push_back(f);
        summary.avg += f;
        summary.min = std::min(summary.min, f);
        summary.avg_efficiency += r.efficiency;
    }
    summary.avg /= n_points;
    summary.avg_efficiency /= n_points;
    return summary;
}

SweepGrid sweep(
    Protocol protocol,
    const std::vector<int> &m_values,
    const std::vector<int> &n_values,
    const AtomParams &atom,
    int n_points,
    double theta,
    int threads) {
    if (m_values.empty() || n_values.empty()) {
        throw std::invalid_argument("sweep axes must be non-empty");
    }
    for (int m : m_values) {
        for (int n : n_values) {
            CycleConfig{m, n, theta}.validate();
        }
    }
    SweepGrid grid{m_values, n_values, std::vector<SweepCell>(m_values.size() * n_values.size())};
    if (threads <= 0) {
        threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    }
    threads = std::min<int>(threads, static_cast<int>(grid.cells.size()));
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&]() {
        for (size_t idx = next++; idx < grid.cells.size() && !failed; idx = next++) {
            int m = m_values[idx / n_values.size()];
            int n = n_values[idx % n_values.size()];
            try {
                FidelitySummary s = average_fidelity(protocol, {m, n, theta}, atom, n_points);
                grid.cells[idx] = {m, n, s.avg, s.min, s.avg_efficiency};
            } catch (...) {
                if (!failed.exchange(true)) {
                    failure = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; t++) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return grid;
}

double efficiency_report(const std::vector<ProtocolResult> &results) {
    if (results.empty()) {
        throw std::invalid_argument("efficiency_report needs at least one result");
    }
    double total = 0;
    for (const auto &r : results) {
        total += r.efficiency;
    }
    return total / static_cast<double>(results.size());
}

AvRun av_unmodified_inner(const CompositeState &state, int n, bool bob_blocking) {
    return av_run(state, n, bob_blocking, false);
}

AvRun av_modified_inner(const CompositeState &state, int n, bool bob_blocking) {
    return av_run(state, n, bob_blocking, true);
}

void PhaseUnitConfig::validate() const {
    if (L < 1) {
        throw std::invalid_argument("phase unit needs L >= 1");
    }
    if (k < 0 || k > L) {
        throw std::invalid_argument("phase unit needs 0 <= k <= L");
    }
}

GateRunRecord phase_unit(
    const CompositeState &input,
    const PhaseUnitConfig &pc,
    const CycleConfig &config,
    const AtomParams &atom,
    GateModel model) {
    return phase_unit_on(with_presence(input), prefix_pattern(pc), config, atom, model);
}

GateRunRecord phase_unit_pattern(
    const CompositeState &input,
    const std::vector<bool> &blocked_pairs,
    const CycleConfig &config,
    const AtomParams &atom,
    GateModel model) {
    return phase_unit_on(with_presence(input), blocked_pairs, config, atom, model);
}

Eigen::Matrix2cd quarter_wave_plate() {
    Eigen::Matrix2cd r = detail::rotation(-std::numbers::pi / 4);
    Eigen::Matrix2cd d = Eigen::Matrix2cd::Identity();
    d(1, 1) = cd(0, 1);
    return r * d * r.transpose();
}

Eigen::Matrix2cd phase_gate(double phi) {
    Eigen::Matrix2cd z = Eigen::Matrix2cd::Identity();
    z(1, 1) = std::polar(1.0, phi);
    return z;
}

Eigen::Matrix2cd conjugated_phase_gate(double phi) {
    Eigen::Matrix2cd q = quarter_wave_plate();
    return q.adjoint() * phase_gate(phi) * q;
}

EulerAngles euler_angles(const Eigen::Matrix2cd &u) {
    // U ~ [[c, s e^{i phi1}], [-s e^{i phi3}, c e^{i(phi1 + phi3)}]] with c = cos(phi2/2) >= 0.
    double c = std::abs(u(0, 0));
    double s = std::abs(u(0, 1));
    EulerAngles e;
    e.phi2 = 2 * std::atan2(s, c);
    constexpr double eps = 1e-12;
    if (c > eps) {
        cd g = u(0, 0) / c;
        Eigen::Matrix2cd v = u / g;
        if (s > eps) {
            e.phi1 = std::arg(v(0, 1));
            e.phi3 = std::arg(-v(1, 0));
        } else {
            e.phi3 = 0;
            e.phi1 = std::arg(v(1, 1));
        }
    } else {
        cd g = u(0, 1) / s;
        Eigen::Matrix2cd v = u / g;
        e.phi1 = 0;
        e.phi3 = std::arg(-v(1, 0));
    }
    e.phi1 = wrap_angle(e.phi1);
    e.phi2 = wrap_angle(e.phi2);
    e.phi3 = wrap_angle(e.phi3);
    return e;
}

PhaseUnitConfig quantize_phase(double phi, int L) {
    if (L < 1) {
        throw std::invalid_argument("phase unit needs L >= 1");
    }
    double k = std::round(wrap_angle(phi) / kTwoPi * L);
    return {L, static_cast<int>(k)};
}

EulerChain::EulerChain(std::array<PhaseUnitConfig, 3> settings, CycleConfig config, AtomParams atom, GateModel model)
    : settings_(settings), config_(config), atom_(atom), model_(model) {
    for (const auto &s : settings_) {
        s.validate();
    }
    config_.validate();
    atom_.validate();
}

GateRunRecord EulerChain::operator()(const CompositeState &photon) const {
    const std::pair<std::string, std::string> alive = {"presence", kAlive};
    CompositeState s = with_presence(photon);
    s = phase_unit_on(s, prefix_pattern(settings_[0]), config_, atom_, model_).output;
    s = apply_local(s, "photon", quarter_wave_plate(), alive);
    s = phase_unit_on(s, prefix_pattern(settings_[1]), config_, atom_, model_).output;
    s = apply_local(s, "photon", quarter_wave_plate().adjoint(), alive);
    GateRunRecord out = phase_unit_on(s, prefix_pattern(settings_[2]), config_, atom_, model_);
    return out;
}

Eigen::Matrix2cd EulerChain::matrix() const {
    Eigen::Matrix2cd u;
    for (int col = 0; col < 2; col++) {
        Eigen::VectorXcd in = Eigen::VectorXcd::Zero(2);
        in[col] = 1;
        CompositeState out = (*this)(CompositeState({polarization("photon")}, in)).output;
        u(0, col) = out.amplitude({"H", kAlive});
        u(1, col) = out.amplitude({"V", kAlive});
    }
    return u;
}

EulerChain arbitrary_unitary(
    const std::array<PhaseUnitConfig, 3> &settings, const CycleConfig &config, const AtomParams &atom, GateModel model) {
    return EulerChain(settings, config, atom, model);
}

double distance_up_to_phase(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("matrix shapes differ");
    }
    cd overlap = (b.adjoint() * a).trace();
    cd g = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cd(1);
    return (a - g * b).cwiseAbs().maxCoeff();
}

}  // namespace exfree
