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

#ifndef EXFREE_STATE_HPP
#define EXFREE_STATE_HPP

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace exfree {

using cd = std::complex<double>;

/// A named discrete degree of freedom and the names of its basis elements.
struct SubsystemLabel {
    std::string name;
    std::vector<std::string> basis;

    size_t dimension() const {
        return basis.size();
    }
    /// Position of a basis element. Throws std::invalid_argument when missing.
    size_t index_of(std::string_view element) const;

    bool operator==(const SubsystemLabel &other) const = default;
};

/// Canonical labels. Polarization basis is ordered (H, V).
SubsystemLabel polarization(std::string name);
SubsystemLabel qubit(std::string name);
/// Presence of the photon: still in the apparatus, or absorbed at one of the loss ports.
SubsystemLabel presence(std::string name = "presence");

inline constexpr char kAlive[] = "alive";
inline constexpr char kLostDA[] = "lost_DA";
inline constexpr char kLostDB[] = "lost_DB";
inline constexpr char kLostPort[] = "lost_port";

/// State vector over an ordered list of subsystems. The first subsystem is the most
/// significant digit of the flat index.
///
/// Values are immutable; every operation in the library returns a fresh state.
class CompositeState {
   public:
    CompositeState(std::vector<SubsystemLabel> subsystems, Eigen::VectorXcd amplitudes);

    /// Product of basis elements, one per subsystem, in subsystem order.
    static CompositeState basis_state(std::vector<SubsystemLabel> subsystems, const std::vector<std::string> &elements);

    const std::vector<SubsystemLabel> &subsystems() const {
        return subsystems_;
    }
    const Eigen::VectorXcd &amplitudes() const {
        return amplitudes_;
    }
    size_t size() const {
        return static_cast<size_t>(amplitudes_.size());
    }

    bool has_subsystem(std::string_view name) const;
    /// Position of a subsystem in the ordering. Throws std::invalid_argument when missing.
    size_t position(std::string_view name) const;
    const SubsystemLabel &subsystem(std::string_view name) const;
    /// Flat-index step for one unit of the given subsystem position.
    size_t stride(size_t position) const;
    /// Basis digit of a subsystem at a flat index.
    size_t digit(size_t flat_index, size_t position) const;

    /// Amplitude of a product basis element given by one element name per subsystem.
    cd amplitude(const std::vector<std::string> &elements) const;

    double norm_squared() const;
    /// Probability mass where the named subsystem takes the named value.
    double probability(std::string_view name, std::string_view element) const;

   private:
    std::vector<SubsystemLabel> subsystems_;
    Eigen::VectorXcd amplitudes_;
    std::vector<size_t> strides_;
};

/// Tensor product. Subsystem names must be disjoint.
CompositeState tensor(const CompositeState &a, const CompositeState &b);

/// Weights at or below this are treated as exactly zero; cos(pi/2) roundoff lands far below it.
inline constexpr double kZeroProbability = 1e-24;

/// Result of projecting one subsystem onto a basis element.
///
/// `state` is the renormalized projection and is empty when the outcome has zero weight
/// (at most kZeroProbability).
struct PostSelection {
    std::optional<CompositeState> state;
    double probability = 0;
};

PostSelection post_select(const CompositeState &state, std::string_view name, std::string_view element);

/// Removes a subsystem by projecting it onto one basis element, without renormalizing.
CompositeState project_out(const CompositeState &state, std::string_view name, std::string_view element);

/// Applies a local operator to one subsystem. When `where` is given the operator acts only on the
/// amplitudes whose `where.first` subsystem equals `where.second`; all others are left alone.
CompositeState apply_local(
    const CompositeState &state,
    std::string_view name,
    const Eigen::MatrixXcd &op,
    std::optional<std::pair<std::string, std::string>> where = std::nullopt);

/// Reduced density matrix of one subsystem, computed from the unnormalized state.
Eigen::MatrixXcd reduced_density(const CompositeState &state, std::string_view name);

/// Overlap |<a|b>|^2 of two normalized single-subsystem pure states of equal dimension.
double fidelity(const CompositeState &input, const CompositeState &output);
/// <psi|rho|psi> for a pure single-subsystem reference.
double fidelity(const CompositeState &input, const Eigen::MatrixXcd &rho);

double purity(const Eigen::MatrixXcd &rho);

}  // namespace exfree

#endif
