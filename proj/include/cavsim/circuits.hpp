// Copyright 2026 The cavsim Authors
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

/**
 * @file
 * Straight-line circuit programs for the hybrid CNOT, Toffoli and Fredkin
 * gates, and their execution against an ideal or lossy cavity model.
 *
 * Circuits are unrolled: repeated cavity passes and Fredkin rounds are
 * separate stages, and optical switches are resolved to a fixed route per
 * stage. Stage checkpoint tags name the intermediate state they capture
 * ("Eq3", "Eq16", ...).
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "cavsim/cavity.hpp"
#include "cavsim/elements.hpp"
#include "cavsim/state.hpp"

namespace cavsim {

enum class StageKind { Pbs, Hwp, PhaseShift, Switch, Delay, SpinHadamard, Interact };

/// One element application.
///
/// Port usage by kind:
///   Pbs:          in = k inputs, out = k transmit ports then k reflect ports
///   Hwp/Phase/Delay: in = {port}, out = {port}
///   Switch:       in = {port}, out = {route A, route B}, selector picks one
///   SpinHadamard: no ports, spinIndex
///   Interact:     in = {top entry, bottom entry}, out = {top exit, bottom exit}
struct StageSpec {
  StageKind kind = StageKind::Delay;
  std::vector<Port> in;
  std::vector<Port> out;
  double phase = 0.0;
  std::size_t spinIndex = 0;
  std::size_t selector = 0;
  std::string cavityId;
  std::string checkpoint;

  bool operator==(const StageSpec &) const = default;
};

struct CavityDeclaration {
  std::string id;
  std::size_t spinIndex = 0;

  bool operator==(const CavityDeclaration &) const = default;
};

struct CircuitSpec {
  std::string name;
  std::size_t electronCount = 1;
  std::vector<std::string> modes;
  std::vector<CavityDeclaration> cavities;
  Port input;
  Port output;
  std::vector<StageSpec> stages;

  bool operator==(const CircuitSpec &) const = default;
};

class CircuitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws CircuitError on undeclared modes or cavities, out-of-range spin
/// indices, malformed port lists, or duplicate checkpoint tags.
void validate(const CircuitSpec &circuit);

enum class GateKind { Cnot, Toffoli, Fredkin };

[[nodiscard]] std::string toString(GateKind kind);
/// Accepts "cnot", "toffoli", "fredkin"; throws std::invalid_argument otherwise.
[[nodiscard]] GateKind parseGateKind(const std::string &name);
/// Cavity passes made by the photon: 1, 3 and 6.
[[nodiscard]] int cavityPassCount(GateKind kind);

[[nodiscard]] CircuitSpec buildCnot();
[[nodiscard]] CircuitSpec buildToffoli();
[[nodiscard]] CircuitSpec buildFredkin();
/// A single Fredkin round from the loop-back mode "9" to the merged mode "8".
[[nodiscard]] CircuitSpec buildFredkinRound();
[[nodiscard]] CircuitSpec buildGate(GateKind kind);

struct IdealModel {};
struct LossyModel {
  ScatterCoefficientsd coeffs;
};
using CavityModel = std::variant<IdealModel, LossyModel>;

/// Element map for one stage. Lossy cavity passes leak into
/// "leaked#<stageIndex>" so that loss from different passes stays distinct.
[[nodiscard]] ElementMap compileStage(const CircuitSpec &circuit, std::size_t stageIndex,
                                      const CavityModel &model);

struct StageTrace {
  std::vector<std::pair<std::string, HybridState>> checkpoints;

  /// Throws std::out_of_range for an unknown tag.
  [[nodiscard]] const HybridState &at(const std::string &tag) const;
};

/// `input` must live on the circuit's input port with the right electron count.
[[nodiscard]] HybridState runCircuit(const CircuitSpec &circuit, const HybridState &input,
                                     const CavityModel &model);

[[nodiscard]] StageTrace runWithTrace(const CircuitSpec &circuit, const HybridState &input,
                                      const CavityModel &model);

/// Single basis input |pol>|spins> on the circuit's input port.
[[nodiscard]] HybridState basisInput(const CircuitSpec &circuit, Polarization pol,
                                     const SpinConfig &spins);

/// Column k is the output amplitude on the output port for basis input k,
/// ordered {R, L} x {up, down}^n with the photon most significant.
[[nodiscard]] Eigen::MatrixXcd extractGateMatrix(const CircuitSpec &circuit,
                                                 const CavityModel &model);

}  // namespace cavsim
