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

#include "exfree/state.hpp"

#include <cmath>
#include <stdexcept>

namespace exfree {

size_t SubsystemLabel::index_of(std::string_view element) const {
    for (size_t k = 0; k < basis.size(); k++) {
        if (basis[k] == element) {
            return k;
        }
    }
    throw std::invalid_argument("subsystem '" + name + "' has no basis element '" + std::string(element) + "'");
}

SubsystemLabel polarization(std::string name) {
    return {std::move(name), {"H", "V"}};
}

SubsystemLabel qubit(std::string name) {
    return {std::move(name), {"0", "1"}};
}

SubsystemLabel presence(std::string name) {
    return {std::move(name), {kAlive, kLostDA, kLostDB, kLostPort}};
}

CompositeState::CompositeState(std::vector<SubsystemLabel> subsystems, Eigen::VectorXcd amplitudes)
    : subsystems_(std::move(subsystems)), amplitudes_(std::move(amplitudes)) {
    size_t total = 1;
    for (size_t k = 0; k < subsystems_.size(); k++) {
        const auto &s = subsystems_[k];
        if (s.basis.empty()) {
            throw std::invalid_argument("subsystem '" + s.name + "' has an empty basis");
        }
        for (size_t j = 0; j < k; j++) {
            if (subsystems_[j].name == s.name) {
                throw std::invalid_argument("duplicate subsystem name '" + s.name + "'");
            }
        }
        total *= s.dimension();
    }
    if (static_cast<size_t>(amplitudes_.size()) != total) {
        throw std::invalid_argument(
            "amplitude vector has length " + std::to_string(amplitudes_.size()) + " but the subsystems need " +
            std::to_string(total));
    }
    strides_.assign(subsystems_.size(), 1);
    for (size_t k = subsystems_.size(); k-- > 1;) {
        strides_[k - 1] = strides_[k] * subsystems_[k].dimension();
    }
}

CompositeState CompositeState::basis_state(
    std::vector<SubsystemLabel> subsystems, const std::vector<std::string> &elements) {
    if (elements.size() != subsystems.size()) {
        throw std::invalid_argument("need one basis element per subsystem");
    }
    size_t total = 1;
    size_t flat = 0;
    for (size_t k = 0; k < subsystems.size(); k++) {
        flat = flat * subsystems[k].dimension() + subsystems[k].index_of(elements[k]);
        total *= subsystems[k].dimension();
    }
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(total));
    amps[static_cast<Eigen::Index>(flat)] = 1;
    return {std::move(subsystems), std::move(amps)};
}

bool CompositeState::has_subsystem(std::string_view name) const {
    for (const auto &s : subsystems_) {
        if (s.name == name) {
            return true;
        }
    }
    return false;
}

size_t CompositeState::position(std::string_view name) const {
    for (size_t k = 0; k < subsystems_.size(); k++) {
        if (subsystems_[k].name == name) {
            return k;
        }
    }
    throw std::invalid_argument("state has no subsystem '" + std::string(name) + "'");
}

const SubsystemLabel &CompositeState::subsystem(std::string_view name) const {
    return subsystems_[position(name)];
}

size_t CompositeState::stride(size_t position) const {
    return strides_.at(position);
}

size_t CompositeState::digit(size_t flat_index, size_t position) const {
    return (flat_index / strides_[position]) % subsystems_[position].dimension();
}

cd CompositeState::amplitude(const std::vector<std::string> &elements) const {
    if (elements.size() != subsystems_.size()) {
        throw std::invalid_argument("need one basis element per subsystem");
    }
    size_t flat = 0;
    for (size_t k = 0; k < subsystems_.size(); k++) {
        flat += strides_[k] * subsystems_[k].index_of(elements[k]);
    }
    return amplitudes_[static_cast<Eigen::Index>(flat)];
}

double CompositeState::norm_squared() const {
    return amplitudes_.squaredNorm();
}

double CompositeState::probability(std::string_view name, std::string_view element) const {
    size_t pos = position(name);
    size_t target = subsystems_[pos].index_of(element);
    double p = 0;
    for (size_t i = 0; i < size(); i++) {
        if (digit(i, pos) == target) {
            p += std::norm(amplitudes_[static_cast<Eigen::Index>(i)]);
        }
    }
    return p;
}

CompositeState tensor(const CompositeState &a, const CompositeState &b) {
    std::vector<SubsystemLabel> subs = a.subsystems();
    for (const auto &s : b.subsystems()) {
        if (a.has_subsystem(s.name)) {
            throw std::invalid_argument("tensor: subsystem '" + s.name + "' appears on both sides");
        }
        subs.push_back(s);
    }
    Eigen::VectorXcd amps(static_cast<Eigen::Index>(a.size() * b.size()));
    for (size_t i = 0; i < a.size(); i++) {
        amps.segment(static_cast<Eigen::Index>(i * b.size()), static_cast<Eigen::Index>(b.size())) =
            a.amplitudes()[static_cast<Eigen::Index>(i)] * b.amplitudes();
    }
    return {std::move(subs), std::move(amps)};
}

PostSelection post_select(const CompositeState &state, std::string_view name, std::string_view element) {
    size_t pos = state.position(name);
    size_t target = state.subsystems()[pos].index_of(element);
    Eigen::VectorXcd amps = state.amplitudes();
    for (size_t i = 0; i < state.size(); i++) {
        if (state.digit(i, pos) != target) {
            amps[static_cast<Eigen::Index>(i)] = 0;
        }
    }
    PostSelection result;
    result.probability = amps.squaredNorm();
    if (result.probability > kZeroProbability) {
        amps /= std::sqrt(result.probability);
        result.state.emplace(state.subsystems(), std::move(amps));
    }
    return result;
}

CompositeState project_out(const CompositeState &state, std::string_view name, std::string_view element) {
    size_t pos = state.position(name);
    size_t target = state.subsystems()[pos].index_of(element);
    std::vector<SubsystemLabel> subs;
    for (size_t k = 0; k < state.subsystems().size(); k++) {
        if (k != pos) {
            subs.push_back(state.subsystems()[k]);
        }
    }
    size_t dim = state.subsystems()[pos].dimension();
    Eigen::VectorXcd amps(static_cast<Eigen::Index>(state.size() / dim));
    Eigen::Index out = 0;
    for (size_t i = 0; i < state.size(); i++) {
        if (state.digit(i, pos) == target) {
            amps[out++] = state.amplitudes()[static_cast<Eigen::Index>(i)];
        }
    }
    return {std::move(subs), std::move(amps)};
}

CompositeState apply_local(
    const CompositeState &state,
    std::string_view name,
    const Eigen::MatrixXcd &op,
    std::optional<std::pair<std::string, std::string>> where) {
    size_t pos = state.position(name);
    size_t dim = state.subsystems()[pos].dimension();
    if (static_cast<size_t>(op.rows()) != dim || static_cast<size_t>(op.cols()) != dim) {
        throw std::invalid_argument("operator shape does not match subsystem '" + std::string(name) + "'");
    }
    size_t where_pos = 0;
    size_t where_value = 0;
    if (where.has_value()) {
        where_pos = state.position(where->first);
        where_value = state.subsystems()[where_pos].index_of(where->second);
        if (where_pos == pos) {
            throw std::invalid_argument("apply_local: condition on the target subsystem itself");
        }
    }
    size_t step = state.stride(pos);
    const Eigen::VectorXcd &in = state.amplitudes();
    Eigen::VectorXcd out = in;
    Eigen::VectorXcd column(static_cast<Eigen::Index>(dim));
    for (size_t base = 0; base < state.size(); base++) {
        if (state.digit(base, pos) != 0) {
            continue;
        }
        if (where.has_value() && state.digit(base, where_pos) != where_value) {
            continue;
        }
        for (size_t d = 0; d < dim; d++) {
            column[static_cast<Eigen::Index>(d)] = in[static_cast<Eigen::Index>(base + d * step)];
        }
        Eigen::VectorXcd result = op * column;
        for (size_t d = 0; d < dim; d++) {
            out[static_cast<Eigen::Index>(base + d * step)] = result[static_cast<Eigen::Index>(d)];
        }
    }
    return {state.subsystems(), std::move(out)};
}

Eigen::MatrixXcd reduced_density(const CompositeState &state, std::string_view name) {
    size_t pos = state.position(name);
    size_t dim = state.subsystems()[pos].dimension();
    size_t step = state.stride(pos);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    const Eigen::VectorXcd &a = state.amplitudes();
    for (size_t base = 0; base < state.size(); base++) {
        if (state.digit(base, pos) != 0) {
            continue;
        }
        for (size_t r = 0; r < dim; r++) {
            for (size_t c = 0; c < dim; c++) {
                rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) +=
                    a[static_cast<Eigen::Index>(base + r * step)] *
                    std::conj(a[static_cast<Eigen::Index>(base + c * step)]);
            }
        }
    }
    return rho;
}

namespace {

void require_single(const CompositeState &s, const char *what) {
    if (s.subsystems().size() != 1) {
        throw std::invalid_argument(std::string("fidelity: ") + what + " must be a single-subsystem state");
    }
}

}  // namespace

double fidelity(const CompositeState &input, const CompositeState &output) {
    require_single(input, "input");
    require_single(output, "output");
    if (input.size() != output.size()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    return std::norm(input.amplitudes().dot(output.amplitudes()));
}

double fidelity(const CompositeState &input, const Eigen::MatrixXcd &rho) {
    require_single(input, "input");
    if (static_cast<size_t>(rho.rows()) != input.size() || rho.rows() != rho.cols()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    const Eigen::VectorXcd &psi = input.amplitudes();
    return (psi.adjoint() * rho * psi)(0, 0).real();
}

double purity(const Eigen::MatrixXcd &rho) {
    return (rho * rho).trace().real();
}

}  // namespace exfree
