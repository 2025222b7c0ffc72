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

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "args.hpp"
#include "exfree/exfree.hpp"

using namespace exfree;
using json = nlohmann::json;

namespace {

struct Options {
    int m = 10;
    int n = 100;
    std::string m_range = "10";
    std::string n_range = "100";
    std::string theta = "pi";
    double p_reflect_fail = 0;
    double p_block_fail = 0;
    std::string format = "csv";
    std::string out;
    std::string config;
    bool oracle = false;
    std::string bloch;
    std::string amplitudes;
    int points = 0;
    bool sample = false;
    uint64_t seed = 0;
    int q = 2;
    bool matrix = false;
    std::string protocol = "teleport";
    int L = 1;
    int k = 0;
    std::string av_n = "10";
    bool blocking = false;
};

std::string num(double x) {
    if (std::fabs(x) < 5e-11) {
        x = 0;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10f", x);
    return buf;
}

/// Rounds floats to 12 decimals so last-bit roundoff and -0 never reach the output.
void round_floats(json &j) {
    if (j.is_number_float()) {
        double x = std::round(j.get<double>() * 1e12) / 1e12;
        j = x == 0 ? 0.0 : x;
    } else if (j.is_structured()) {
        for (auto &child : j) {
            round_floats(child);
        }
    }
}

json complex_json(cd z) {
    return json::array({z.real(), z.imag()});
}

json state_json(const CompositeState &s) {
    json subs = json::array();
    for (const auto &l : s.subsystems()) {
        subs.push_back({{"name", l.name}, {"basis", l.basis}});
    }
    json amps = json::array();
    for (Eigen::Index i = 0; i < s.amplitudes().size(); i++) {
        amps.push_back(complex_json(s.amplitudes()[i]));
    }
    return {{"subsystems", subs}, {"amplitudes", amps}};
}

json atom_json(const AtomParams &a) {
    return {{"p_fail_reflect", a.p_fail_reflect}, {"p_fail_block", a.p_fail_block}};
}

json config_json(const CycleConfig &c) {
    return {{"m", c.m}, {"n", c.n}, {"theta", c.theta}};
}

GateModel model_of(const Options &o) {
    return o.oracle ? GateModel::ideal_oracle : GateModel::simulated;
}

const char *model_name(GateModel g) {
    return g == GateModel::ideal_oracle ? "ideal_oracle" : "simulated";
}

AtomParams atom_of(const Options &o) {
    AtomParams a{o.p_reflect_fail, o.p_block_fail};
    a.validate();
    return a;
}

CycleConfig cycle_of(const Options &o) {
    CycleConfig c{o.m, o.n, cli::parse_angle(o.theta)};
    c.validate();
    return c;
}

/// Single polarization qubit from --bloch or --amplitudes; `fallback` when neither is given.
CompositeState input_of(const Options &o, const CompositeState &fallback) {
    if (!o.bloch.empty()) {
        std::vector<std::string> parts;
        std::stringstream ss(o.bloch);
        for (std::string p; std::getline(ss, p, ',');) {
            parts.push_back(p);
        }
        if (parts.size() != 2) {
            throw std::invalid_argument("--bloch expects POLAR,AZIMUTH in radians");
        }
        return bloch_state(cli::parse_angle(parts[0]), cli::parse_angle(parts[1]));
    }
    if (!o.amplitudes.empty()) {
        std::vector<double> v = cli::parse_reals(o.amplitudes);
        Eigen::VectorXcd a(2);
        if (v.size() == 2) {
            a << v[0], v[1];
        } else if (v.size() == 4) {
            a << cd(v[0], v[1]), cd(v[2], v[3]);
        } else {
            throw std::invalid_argument("--amplitudes expects H,V or H_RE,H_IM,V_RE,V_IM");
        }
        if (std::fabs(a.squaredNorm() - 1) > 1e-9) {
            throw std::invalid_argument("--amplitudes must be normalized (|H|^2 + |V|^2 = 1)");
        }
        return {{polarization("photon")}, a};
    }
    return fallback;
}

CompositeState vertical() {
    return CompositeState::basis_state({polarization("photon")}, {"V"});
}

CompositeState diagonal() {
    Eigen::VectorXcd a(2);
    a << 1 / std::numbers::sqrt2, 1 / std::numbers::sqrt2;
    return {{polarization("photon")}, a};
}

CompositeState with_presence(const CompositeState &photon) {
    return tensor(photon, CompositeState::basis_state({presence()}, {kAlive}));
}

/// CSV section or JSON document, written in one go.
struct Output {
    bool json_mode = false;
    std::ostringstream csv;
    json doc;
};

int run_gate(const Options &o, Output &out) {
    CycleConfig cfg = cycle_of(o);
    AtomParams atom = atom_of(o);
    Eigen::Matrix4cd u = gate_matrix(cfg, atom);
    Eigen::Matrix4cd ideal = Eigen::Matrix4cd::Identity();
    ideal(3, 3) = std::polar(1.0, cfg.theta);
    const std::vector<std::string> basis = {"H0", "H1", "V0", "V1"};
    std::vector<double> survival(4);
    for (int c = 0; c < 4; c++) {
        survival[c] = u.col(c).squaredNorm();
    }
    double dev = (u - ideal).cwiseAbs().maxCoeff();
    if (out.json_mode) {
        json diag = json::array();
        for (int i = 0; i < 4; i++) {
            diag.push_back(complex_json(u(i, i)));
        }
        out.doc = {{"command", "gate"},
                   {"config", config_json(cfg)},
                   {"atom", atom_json(atom)},
                   {"basis", basis},
                   {"diagonal", diag},
                   {"column_survival", survival},
                   {"max_deviation_from_ideal", dev}};
        if (o.matrix) {
            json rows = json::array();
            for (int r = 0; r < 4; r++) {
                json row = json::array();
                for (int c = 0; c < 4; c++) {
                    row.push_back(complex_json(u(r, c)));
                }
                rows.push_back(row);
            }
            out.doc["matrix"] = rows;
        }
        return 0;
    }
    if (o.matrix) {
        out.csv << "row,col,re,im\n";
        for (int r = 0; r < 4; r++) {
            for (int c = 0; c < 4; c++) {
                out.csv << basis[r] << ',' << basis[c] << ',' << num(u(r, c).real()) << ','
                        << num(u(r, c).imag()) << '\n';
            }
        }
    } else {
        out.csv << "basis,re,im,survival\n";
        for (int i = 0; i < 4; i++) {
            out.csv << basis[i] << ',' << num(u(i, i).real()) << ',' << num(u(i, i).imag()) << ','
                    << num(survival[i]) << '\n';
        }
    }
    return 0;
}

json result_json(const ProtocolResult &r) {
    json branches = json::array();
    for (const auto &b : r.branches) {
        branches.push_back({{"alice_outcome", b.alice_outcome},
                            {"bob_outcome", b.bob_outcome},
                            {"probability", b.probability},
                            {"fidelities", b.fidelities},
                            {"corrected_output",
                             b.corrected_output ? state_json(*b.corrected_output) : json(nullptr)}});
    }
    return {{"branches", branches},
            {"average_fidelity", r.average_fidelity},
            {"efficiency", r.efficiency},
            {"zero_survival", r.zero_survival}};
}

int run_protocol_command(const Options &o, Protocol protocol, Output &out) {
    const char *name = protocol == Protocol::teleport ? "teleport" : "teleclone";
    if (protocol == Protocol::teleclone && o.q != 2) {
        telecloning_bound(o.q);  // rejects q < 1
        throw std::invalid_argument("only --q 2 is supported");
    }
    CycleConfig cfg = cycle_of(o);
    AtomParams atom = atom_of(o);
    GateModel model = model_of(o);
    if (o.points < 0) {
        throw std::invalid_argument("--points must be positive");
    }
    if (o.points > 0) {
        if (!o.bloch.empty() || !o.amplitudes.empty() || o.sample) {
            throw std::invalid_argument("--points averages over the sphere; drop --bloch/--amplitudes/--sample");
        }
        FidelitySummary s = average_fidelity(protocol, cfg, atom, o.points, model);
        if (out.json_mode) {
            out.doc = {{"command", name},
                       {"mode", "average"},
                       {"gate_model", model_name(model)},
                       {"config", config_json(cfg)},
                       {"atom", atom_json(atom)},
                       {"n_points", o.points},
                       {"avg_fidelity", s.avg},
                       {"min_fidelity", s.min},
                       {"avg_efficiency", s.avg_efficiency}};
        } else {
            out.csv << "m,n,avg_fidelity,min_fidelity,avg_efficiency\n"
                    << cfg.m << ',' << cfg.n << ',' << num(s.avg) << ',' << num(s.min) << ','
                    << num(s.avg_efficiency) << '\n';
        }
        return 0;
    }
    CompositeState input = input_of(o, vertical());
    ProtocolResult r = run_protocol(protocol, input, cfg, atom, model);
    if (o.sample) {
        std::vector<double> weights;
        for (const auto &b : r.branches) {
            weights.push_back(b.probability);
        }
        weights.push_back(std::max(0.0, 1 - r.efficiency));
        std::mt19937_64 rng(o.seed);
        std::discrete_distribution<size_t> pick(weights.begin(), weights.end());
        size_t hit = pick(rng);
        bool survived = hit < r.branches.size();
        json sample = {{"seed", o.seed}, {"survived", survived}};
        if (survived) {
            const BellBranch &b = r.branches[hit];
            sample["alice_outcome"] = b.alice_outcome;
            sample["bob_outcome"] = b.bob_outcome;
            sample["fidelities"] = b.fidelities;
        }
        if (out.json_mode) {
            out.doc = {{"command", name}, {"mode", "sample"}, {"gate_model", model_name(model)},
                       {"config", config_json(cfg)}, {"atom", atom_json(atom)},
                       {"input", state_json(input)}, {"sample", sample}};
        } else {
            out.csv << "seed,survived,alice,bob,fidelity\n" << o.seed << ',' << (survived ? 1 : 0) << ',';
            if (survived) {
                const BellBranch &b = r.branches[hit];
                double f = 0;
                for (double x : b.fidelities) {
                    f += x;
                }
                out.csv << b.alice_outcome << ',' << b.bob_outcome << ','
                        << num(f / static_cast<double>(b.fidelities.size())) << '\n';
            } else {
                out.csv << ",,\n";
            }
        }
        return 0;
    }
    if (out.json_mode) {
        out.doc = result_json(r);
        out.doc["command"] = name;
        out.doc["mode"] = "single";
        out.doc["gate_model"] = model_name(model);
        out.doc["config"] = config_json(cfg);
        out.doc["atom"] = atom_json(atom);
        out.doc["input"] = state_json(input);
        return 0;
    }
    size_t copies = r.average_fidelity.size();
    out.csv << "alice,bob,probability";
    for (size_t c = 0; c < copies; c++) {
        out.csv << ",fidelity_" << c + 1;
    }
    out.csv << '\n';
    for (const auto &b : r.branches) {
        out.csv << b.alice_outcome << ',' << b.bob_outcome << ',' << num(b.probability);
        for (size_t c = 0; c < copies; c++) {
            out.csv << ',' << (b.fidelities.empty() ? std::string() : num(b.fidelities[c]));
        }
        out.csv << '\n';
    }
    return 0;
}

int run_sweep(const Options &o, Output &out) {
    Protocol protocol;
    if (o.protocol == "teleport") {
        protocol = Protocol::teleport;
    } else if (o.protocol == "teleclone") {
        protocol = Protocol::teleclone;
    } else {
        throw std::invalid_argument("--protocol must be teleport or teleclone");
    }
    std::vector<int> ms = cli::parse_range(o.m_range);
    std::vector<int> ns = cli::parse_range(o.n_range);
    AtomParams atom = atom_of(o);
    double theta = cli::parse_angle(o.theta);
    int points = o.points > 0 ? o.points : 100;
    SweepGrid g = sweep(protocol, ms, ns, atom, points, theta, cli::threads_from_env());
    if (out.json_mode) {
        json cells = json::array();
        for (const auto &c : g.cells) {
            cells.push_back({{"m", c.m},
                             {"n", c.n},
                             {"avg_fidelity", c.avg_fidelity},
                             {"min_fidelity", c.min_fidelity},
                             {"avg_efficiency", c.avg_efficiency}});
        }
        out.doc = {{"command", "sweep"}, {"protocol", o.protocol}, {"theta", theta},
                   {"atom", atom_json(atom)}, {"n_points", points}, {"m_values", g.m_values},
                   {"n_values", g.n_values}, {"cells", cells}};
        return 0;
    }
    out.csv << "m,n,avg_fidelity,min_fidelity,avg_efficiency\n";
    for (const auto &c : g.cells) {
        out.csv << c.m << ',' << c.n << ',' << num(c.avg_fidelity) << ',' << num(c.min_fidelity) << ','
                << num(c.avg_efficiency) << '\n';
    }
    return 0;
}

double wrap(double a) {
    a = std::fmod(a, 2 * std::numbers::pi);
    return a < 0 ? a + 2 * std::numbers::pi : a;
}

int run_phase_unit(const Options &o, Output &out) {
    CycleConfig cfg = cycle_of(o);
    AtomParams atom = atom_of(o);
    GateModel model = model_of(o);
    PhaseUnitConfig pc{o.L, o.k};
    pc.validate();
    CompositeState input = input_of(o, diagonal());
    cd h_in = input.amplitude({"H"});
    cd v_in = input.amplitude({"V"});
    if (std::abs(h_in) < 1e-9 || std::abs(v_in) < 1e-9) {
        throw std::invalid_argument("phase-unit needs an input with both H and V components");
    }
    GateRunRecord r = phase_unit(input, pc, cfg, atom, model);
    cd h = r.output.amplitude({"H", kAlive}) / h_in;
    cd v = r.output.amplitude({"V", kAlive}) / v_in;
    double target = wrap(2 * std::numbers::pi * pc.k / pc.L);
    double phase = wrap(std::arg(v / h));
    double err = std::remainder(phase - target, 2 * std::numbers::pi);
    if (out.json_mode) {
        out.doc = {{"command", "phase-unit"}, {"gate_model", model_name(model)}, {"config", config_json(cfg)},
                   {"atom", atom_json(atom)}, {"L", pc.L}, {"k", pc.k}, {"input", state_json(input)},
                   {"target_phase", target}, {"relative_phase", phase}, {"phase_error", err},
                   {"survival", r.survival}, {"output", state_json(r.output)}};
        return 0;
    }
    out.csv << "L,k,m,n,target_phase,relative_phase,phase_error,survival\n"
            << pc.L << ',' << pc.k << ',' << cfg.m << ',' << cfg.n << ',' << num(target) << ',' << num(phase)
            << ',' << num(err) << ',' << num(r.survival) << '\n';
    return 0;
}

int run_av_check(const Options &o, Output &out) {
    std::vector<int> ns = cli::parse_range(o.av_n);
    CompositeState input = with_presence(input_of(o, vertical()));
    json rows = json::array();
    if (!out.json_mode) {
        out.csv << "n,plain_presence,modified_presence,presence_drop,plain_residual_v,modified_residual_v,"
                   "plain_survival,modified_survival\n";
    }
    for (int n : ns) {
        AvRun plain = av_unmodified_inner(input, n, o.blocking);
        AvRun mod = av_modified_inner(input, n, o.blocking);
        double ps = alive_probability(plain.state);
        double ms = alive_probability(mod.state);
        if (out.json_mode) {
            rows.push_back({{"n", n},
                            {"plain_presence", plain.channel_presence},
                            {"modified_presence", mod.channel_presence},
                            {"presence_drop", plain.channel_presence - mod.channel_presence},
                            {"plain_residual_v", plain.residual_v},
                            {"modified_residual_v", mod.residual_v},
                            {"plain_survival", ps},
                            {"modified_survival", ms}});
        } else {
            out.csv << n << ',' << num(plain.channel_presence) << ',' << num(mod.channel_presence) << ','
                    << num(plain.channel_presence - mod.channel_presence) << ',' << num(plain.residual_v) << ','
                    << num(mod.residual_v) << ',' << num(ps) << ',' << num(ms) << '\n';
        }
    }
    if (out.json_mode) {
        out.doc = {{"command", "av-check"}, {"blocking", o.blocking}, {"input", state_json(input)}, {"rows", rows}};
    }
    return 0;
}

void add_cycle(CLI::App *sub, Options &o) {
    sub->add_option("--m", o.m, "outer cycles M")->capture_default_str();
    sub->add_option("--n", o.n, "inner cycles N")->capture_default_str();
    sub->add_option("--theta", o.theta, "gate phase in radians (pi forms accepted)")->capture_default_str();
}

void add_atom(CLI::App *sub, Options &o) {
    sub->add_option("--p-reflect-fail", o.p_reflect_fail, "atom fails to reflect when it should")
        ->capture_default_str();
    sub->add_option("--p-block-fail", o.p_block_fail, "atom fails to block when it should")->capture_default_str();
}

void add_input(CLI::App *sub, Options &o) {
    auto *b = sub->add_option("--bloch", o.bloch, "input as POLAR,AZIMUTH (V at polar 0)");
    auto *a = sub->add_option("--amplitudes", o.amplitudes, "input as H,V or H_RE,H_IM,V_RE,V_IM");
    b->excludes(a);
}

void add_common(CLI::App *sub, Options &o) {
    sub->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--out", o.out, "write to this file instead of stdout");
    sub->add_option("--config", o.config, "key=value file; flags on the command line win");
}

/// Splices `key=value` entries from --config in front of the command line flags of `sub`.
std::vector<std::string> expand_config(const std::vector<std::string> &args, CLI::App &app) {
    if (args.empty()) {
        return args;
    }
    CLI::App *sub = nullptr;
    size_t sub_at = 0;
    for (size_t i = 0; i < args.size(); i++) {
        if (!args[i].empty() && args[i][0] != '-') {
            sub = app.get_subcommand_no_throw(args[i]);
            sub_at = i;
            break;
        }
    }
    std::string path;
    for (size_t i = sub_at + 1; i < args.size(); i++) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        }
    }
    if (sub == nullptr || path.empty()) {
        return args;
    }
    std::vector<std::string> extra;
    for (const auto &[key, value] : cli::read_config(path)) {
        const CLI::Option *opt = key == "config" ? nullptr : sub->get_option_no_throw("--" + key);
        if (opt == nullptr) {
            throw std::invalid_argument(
                "config key '" + key + "' is not an option of '" + sub->get_name() + "'");
        }
        if (opt->get_expected_min() == 0) {
            if (value == "true" || value == "1") {
                extra.push_back("--" + key);
            } else if (value != "false" && value != "0") {
                throw std::invalid_argument("config key '" + key + "' takes true or false");
            }
        } else {
            extra.push_back("--" + key);
            extra.push_back(value);
        }
    }
    std::vector<std::string> merged(args.begin(), args.begin() + static_cast<long>(sub_at) + 1);
    merged.insert(merged.end(), extra.begin(), extra.end());
    merged.insert(merged.end(), args.begin() + static_cast<long>(sub_at) + 1, args.end());
    return merged;
}

}  // namespace

int main(int argc, char **argv) {
    Options o;
    CLI::App app{"Exchange-free quantum gates and protocols", "exfree"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);

    auto *gate = app.add_subcommand("gate", "controlled phase gate on the photon-atom basis");
    add_cycle(gate, o);
    add_atom(gate, o);
    add_common(gate, o);
    gate->add_flag("--matrix", o.matrix, "print the full 4x4 matrix");

    auto *tele = app.add_subcommand("teleport", "exchange-free teleportation of one photon");
    auto *clone = app.add_subcommand("teleclone", "1 -> 2 telecloning");
    for (CLI::App *sub : {tele, clone}) {
        add_cycle(sub, o);
        add_atom(sub, o);
        add_input(sub, o);
        add_common(sub, o);
        sub->add_flag("--oracle", o.oracle, "use ideal gate matrices instead of the device model");
        sub->add_option("--points", o.points, "average over this many sphere points instead of one input");
        sub->add_flag("--sample", o.sample, "draw one measurement outcome instead of enumerating branches");
        sub->add_option("--seed", o.seed, "seed for --sample")->capture_default_str();
    }
    clone->add_option("--q", o.q, "number of copies (2 only)")->capture_default_str();

    auto *sw = app.add_subcommand("sweep", "fidelity and efficiency over an (M, N) grid");
    sw->add_option("--protocol", o.protocol, "teleport or teleclone")->capture_default_str();
    sw->add_option("--m", o.m_range, "M values: start:stop:step or a,b,c")->capture_default_str();
    sw->add_option("--n", o.n_range, "N values: start:stop:step or a,b,c")->capture_default_str();
    sw->add_option("--theta", o.theta, "gate phase in radians")->capture_default_str();
    sw->add_option("--points", o.points, "sphere points per cell (default 100)");
    add_atom(sw, o);
    add_common(sw, o);

    auto *pu = app.add_subcommand("phase-unit", "phase 2pi k / L on V from k blocked run pairs");
    add_cycle(pu, o);
    add_atom(pu, o);
    add_input(pu, o);
    add_common(pu, o);
    pu->add_option("--L", o.L, "run pairs")->capture_default_str();
    pu->add_option("--k", o.k, "blocked run pairs")->capture_default_str();
    pu->add_flag("--oracle", o.oracle, "use ideal passes");

    auto *av = app.add_subcommand("av-check", "channel presence with and without the end-of-run block");
    av->add_option("--n", o.av_n, "inner cycles: value, list or range")->capture_default_str();
    av->add_flag("--blocking", o.blocking, "Bob blocks the channel");
    add_input(av, o);
    add_common(av, o);

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        args = expand_config(args, app);
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    } catch (const std::exception &e) {
        std::cerr << "exfree: error: " << e.what() << '\n';
        return 2;
    }

    Output out;
    out.json_mode = o.format == "json";
    int rc = 0;
    try {
        if (*gate) {
            rc = run_gate(o, out);
        } else if (*tele) {
            rc = run_protocol_command(o, Protocol::teleport, out);
        } else if (*clone) {
            rc = run_protocol_command(o, Protocol::teleclone, out);
        } else if (*sw) {
            rc = run_sweep(o, out);
        } else if (*pu) {
            rc = run_phase_unit(o, out);
        } else if (*av) {
            rc = run_av_check(o, out);
        }
    } catch (const std::exception &e) {
        std::cerr << "exfree: error: " << e.what() << '\n';
        return 2;
    }

    if (out.json_mode) {
        round_floats(out.doc);
    }
    std::string text = out.json_mode ? out.doc.dump(2) + "\n" : out.csv.str();
    if (o.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f || !(f << text)) {
            std::cerr << "exfree: error: cannot write '" << o.out << "'\n";
            return 2;
        }
    }
    return rc;
}
