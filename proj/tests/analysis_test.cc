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

#include <random>

#include <gtest/gtest.h>

using namespace exfree;

namespace {

constexpr double pi = std::numbers::pi;

CompositeState inner_photon(cd h, cd v) {
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(8);
    a[0] = h;
    a[4] = v;
    return {{polarization("photon"), presence()}, a};
}

double relative_phase(const GateRunRecord &r) {
    return std::arg(r.output.amplitude({"V", kAlive}) / r.output.amplitude({"H", kAlive}));
}

double angle_gap(double a, double b) {
    return std::abs(std::remainder(a - b, 2 * pi));
}

Eigen::Matrix2cd random_unitary(std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Eigen::Matrix2cd a;
    for (int i = 0; i < 4; i++) {
        a(i / 2, i % 2) = cd(g(rng), g(rng));
    }
    return a.householderQr().householderQ();
}

}  // namespace

TEST(average_fidelity, oracle_values) {
    FidelitySummary t = average_fidelity(Protocol::teleport, {10, 100}, {}, 30, GateModel::ideal_oracle);
    ASSERT_NEAR(t.avg, 1, 1e-12);
    ASSERT_NEAR(t.min, 1, 1e-12);
    ASSERT_NEAR(t.avg_efficiency, 1, 1e-12);
    FidelitySummary c = average_fidelity(Protocol::teleclone, {10, 100}, {}, 30, GateModel::ideal_oracle);
    ASSERT_NEAR(c.avg, 5.0 / 6, 1e-12);
}

TEST(average_fidelity, single_point) {
    FidelitySummary s = average_fidelity(Protocol::teleport, {6, 30}, {}, 1);
    ProtocolResult r = teleport(bloch_state(sphere_sample(1)[0]), {6, 30}, {}, GateModel::simulated);
    ASSERT_EQ(s.per_point.size(), 1u);
    ASSERT_EQ(s.avg, r.average_fidelity[0]);
    ASSERT_EQ(s.avg_efficiency, r.efficiency);
}

TEST(sweep, single_cell_matches_direct_call) {
    SweepGrid g = sweep(Protocol::teleport, {4}, {20}, {}, 10);
    FidelitySummary s = average_fidelity(Protocol::teleport, {4, 20}, {}, 10);
    ASSERT_EQ(g.cells.size(), 1u);
    ASSERT_EQ(g.at(0, 0).avg_fidelity, s.avg);
    ASSERT_EQ(g.at(0, 0).min_fidelity, s.min);
    ASSERT_EQ(g.at(0, 0).avg_efficiency, s.avg_efficiency);
}

TEST(sweep, independent_of_thread_count) {
    SweepGrid a = sweep(Protocol::teleport, {2, 3, 4}, {5, 9}, {0.34, 0.08}, 8, pi, 1);
    SweepGrid b = sweep(Protocol::teleport, {2, 3, 4}, {5, 9}, {0.34, 0.08}, 8, pi, 3);
    ASSERT_EQ(a.cells.size(), 6u);
    for (size_t i = 0; i < a.cells.size(); i++) {
        ASSERT_EQ(a.cells[i].m, b.cells[i].m);
        ASSERT_EQ(a.cells[i].n, b.cells[i].n);
        ASSERT_EQ(a.cells[i].avg_fidelity, b.cells[i].avg_fidelity);
        ASSERT_EQ(a.cells[i].avg_efficiency, b.cells[i].avg_efficiency);
    }
    ASSERT_EQ(a.at(1, 1).m, 3);
    ASSERT_EQ(a.at(1, 1).n, 9);
}

TEST(sweep, validation) {
    ASSERT_THROW(sweep(Protocol::teleport, {}, {5}, {}, 4), std::invalid_argument);
    ASSERT_THROW(sweep(Protocol::teleport, {2, 0}, {5}, {}, 4), std::invalid_argument);
}

TEST(efficiency_report, averages) {
    ProtocolResult lossless = teleport(bloch_state(0, 0), {3, 3}, {}, GateModel::ideal_oracle);
    ASSERT_NEAR(efficiency_report({lossless}), 1, 1e-12);
    ProtocolResult half;
    half.efficiency = 0.5;
    ASSERT_NEAR(efficiency_report({lossless, half}), 0.75, 1e-12);
    ASSERT_THROW(efficiency_report({}), std::invalid_argument);
}

TEST(av_modified_inner, channel_presence_drops) {
    for (int n : {10, 20, 40, 80}) {
        CompositeState v = inner_photon(0, 1);
        AvRun plain = av_unmodified_inner(v, n, false);
        AvRun mod = av_modified_inner(v, n, false);
        ASSERT_LT(mod.channel_presence, plain.channel_presence) << n;
        ASSERT_NEAR(plain.channel_presence - mod.channel_presence, 1, 1e-9) << n;
    }
}

TEST(av_modified_inner, lingering_vertical_is_rotated_away) {
    const double eps = 0.1;
    CompositeState s = inner_photon(eps, std::sqrt(1 - eps * eps));
    for (int n : {10, 40}) {
        AvRun plain = av_unmodified_inner(s, n, false);
        AvRun mod = av_modified_inner(s, n, false);
        ASSERT_NEAR(plain.residual_v, eps, 1e-12);
        ASSERT_LT(mod.residual_v, plain.residual_v);
        ASSERT_LT(mod.residual_v, 1e-12);
        ASSERT_LT(mod.channel_presence, plain.channel_presence);
    }
}

TEST(av_modified_inner, blocking_outcome_unchanged) {
    CompositeState v = inner_photon(0, 1);
    AvRun plain = av_unmodified_inner(v, 25, true);
    AvRun mod = av_modified_inner(v, 25, true);
    PostSelection a = post_select(plain.state, "presence", kAlive);
    PostSelection b = post_select(mod.state, "presence", kAlive);
    ASSERT_NEAR(std::abs(a.state->amplitude({"V", kAlive})), 1, 1e-12);
    ASSERT_NEAR(std::abs(b.state->amplitude({"V", kAlive})), 1, 1e-12);
    double z = std::pow(std::cos(pi / 50), 25);
    ASSERT_NEAR(a.probability, z * z, 1e-12);
    ASSERT_NEAR(b.probability, std::pow(z, 4), 1e-12);
}

TEST(phase_unit, config_validation) {
    ASSERT_THROW((PhaseUnitConfig{0, 0}.validate()), std::invalid_argument);
    ASSERT_THROW((PhaseUnitConfig{3, 4}.validate()), std::invalid_argument);
    ASSERT_THROW((PhaseUnitConfig{3, -1}.validate()), std::invalid_argument);
}

TEST(phase_unit, oracle_phases) {
    CompositeState in = bloch_state(pi / 2, 0);
    for (int L = 1; L <= 8; L++) {
        for (int k = 0; k <= L; k++) {
            GateRunRecord r = phase_unit(in, {L, k}, {10, 100}, {}, GateModel::ideal_oracle);
            ASSERT_NEAR(angle_gap(relative_phase(r), 2 * pi * k / L), 0, 1e-12) << L << " " << k;
            ASSERT_NEAR(r.survival, 1, 1e-12);
        }
    }
}

TEST(phase_unit, simulated_converges_like_one_over_n) {
    CompositeState in = bloch_state(pi / 2, 0);
    double e1 = angle_gap(relative_phase(phase_unit(in, {4, 1}, {4, 2000}, {})), pi / 2);
    double e2 = angle_gap(relative_phase(phase_unit(in, {4, 1}, {4, 20000}, {})), pi / 2);
    ASSERT_LT(e2, 3e-4);
    ASSERT_NEAR(e1 / e2, 10, 0.5);
}

TEST(phase_unit, trivial_settings) {
    CompositeState in = bloch_state(1.0, 0.4);
    for (PhaseUnitConfig pc : {PhaseUnitConfig{5, 0}, PhaseUnitConfig{5, 5}}) {
        GateRunRecord r = phase_unit(in, pc, {6, 60}, {});
        double expected = std::arg(in.amplitude({"V"}) / in.amplitude({"H"}));
        ASSERT_NEAR(angle_gap(relative_phase(r), expected), 0, 2e-2);
        GateRunRecord o = phase_unit(in, pc, {6, 60}, {}, GateModel::ideal_oracle);
        ASSERT_NEAR(angle_gap(relative_phase(o), expected), 0, 1e-12);
    }
    GateRunRecord none = phase_unit(in, {5, 0}, {6, 60}, {});
    ASSERT_NEAR(angle_gap(relative_phase(none), std::arg(in.amplitude({"V"}) / in.amplitude({"H"}))), 0, 1e-14);
}

TEST(phase_unit, blocking_order_does_not_matter) {
    CompositeState in = bloch_state(pi / 2, 0);
    std::vector<bool> prefix = {true, true, false, false, false};
    std::vector<bool> spread = {false, true, false, true, false};
    std::vector<bool> suffix = {false, false, false, true, true};
    for (GateModel model : {GateModel::ideal_oracle, GateModel::simulated}) {
        double tol = model == GateModel::ideal_oracle ? 1e-12 : 1e-3;
        double a = relative_phase(phase_unit_pattern(in, prefix, {4, 20000}, {}, model));
        double b = relative_phase(phase_unit_pattern(in, spread, {4, 20000}, {}, model));
        double c = relative_phase(phase_unit_pattern(in, suffix, {4, 20000}, {}, model));
        ASSERT_NEAR(angle_gap(a, b), 0, tol);
        ASSERT_NEAR(angle_gap(a, c), 0, tol);
        ASSERT_NEAR(angle_gap(a, 4 * pi / 5), 0, tol);
    }
}

TEST(quarter_wave_plate, conjugation) {
    Eigen::Matrix2cd q = quarter_wave_plate();
    ASSERT_NEAR((q * q.adjoint() - Eigen::Matrix2cd::Identity()).norm(), 0, 1e-15);
    // Two passes make a half-wave plate along the anti-diagonal: H <-> V up to phase.
    Eigen::Matrix2cd hw = q * q;
    ASSERT_NEAR(std::abs(hw(0, 0)), 0, 1e-15);
    ASSERT_NEAR(std::abs(hw(1, 0)), 1, 1e-15);
    // The conjugated phase gate is a real rotation up to phase, i.e. about the circular axis.
    for (double phi : {0.3, 1.7, 4.0}) {
        Eigen::Matrix2cd m = conjugated_phase_gate(phi) * std::polar(1.0, -phi / 2);
        ASSERT_NEAR(m.imag().norm(), 0, 1e-15);
        ASSERT_NEAR(m(0, 0).real(), std::cos(phi / 2), 1e-15);
        ASSERT_NEAR(m(0, 1).real(), std::sin(phi / 2), 1e-15);
    }
}

TEST(euler_angles, reconstructs_random_unitaries) {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 50; t++) {
        Eigen::Matrix2cd u = random_unitary(rng);
        EulerAngles e = euler_angles(u);
        for (double phi : {e.phi1, e.phi2, e.phi3}) {
            ASSERT_GE(phi, 0);
            ASSERT_LT(phi, 2 * pi);
        }
        ASSERT_LE(e.phi2, pi + 1e-12);
        Eigen::Matrix2cd rebuilt = phase_gate(e.phi3) * conjugated_phase_gate(e.phi2) * phase_gate(e.phi1);
        ASSERT_NEAR(distance_up_to_phase(rebuilt, u), 0, 1e-12);
    }
}

TEST(euler_angles, ties_go_to_zero) {
    EulerAngles id = euler_angles(Eigen::Matrix2cd::Identity());
    ASSERT_EQ(id.phi1, 0);
    ASSERT_EQ(id.phi2, 0);
    ASSERT_EQ(id.phi3, 0);
    EulerAngles z = euler_angles(phase_gate(1.25));
    ASSERT_EQ(z.phi3, 0);
    ASSERT_NEAR(z.phi1, 1.25, 1e-15);
    Eigen::Matrix2cd flip;
    flip << 0, 1, 1, 0;
    EulerAngles f = euler_angles(flip);
    ASSERT_EQ(f.phi1, 0);
    ASSERT_NEAR(f.phi2, pi, 1e-15);
}

TEST(arbitrary_unitary, hadamard) {
    Eigen::Matrix2cd h;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    EulerAngles e = euler_angles(h);
    std::array<PhaseUnitConfig, 3> settings = {quantize_phase(e.phi1, 4), quantize_phase(e.phi2, 4),
                                               quantize_phase(e.phi3, 4)};
    ASSERT_EQ(settings[1].k, 1);
    ASSERT_EQ(settings[2].k, 2);
    EulerChain chain = arbitrary_unitary(settings, {10, 100}, {}, GateModel::ideal_oracle);
    ASSERT_LT(distance_up_to_phase(chain.matrix(), h), 1e-6);
}

TEST(arbitrary_unitary, all_zero_is_identity) {
    std::array<PhaseUnitConfig, 3> settings = {PhaseUnitConfig{3, 0}, PhaseUnitConfig{2, 0}, PhaseUnitConfig{5, 0}};
    EulerChain oracle_chain = arbitrary_unitary(settings, {10, 100}, {}, GateModel::ideal_oracle);
    ASSERT_LT(distance_up_to_phase(oracle_chain.matrix(), Eigen::Matrix2cd::Identity()), 1e-12);
    // Unblocked runs still cost survival on the arm that traverses the device.
    EulerChain sim = arbitrary_unitary(settings, {10, 100}, {});
    GateRunRecord r = sim(bloch_state(pi / 2, 0));
    ASSERT_LT(r.survival, 1);
    ASSERT_GT(r.survival, 0);
}

TEST(quantize_phase, nearest_step) {
    PhaseUnitConfig pc = quantize_phase(pi / 2 + 1e-3, 8);
    ASSERT_EQ(pc.L, 8);
    ASSERT_EQ(pc.k, 2);
    ASSERT_EQ(quantize_phase(2 * pi - 1e-13, 8).k, 0);
    ASSERT_THROW(quantize_phase(1, 0), std::invalid_argument);
}
