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
 * Linear maps for the optical elements and spin operations of a circuit.
 *
 * A port is a (mode, direction) pair: a photon travelling one way along a
 * path is a different port from one travelling the other way. Photon
 * elements act only on labels sitting on one of their input ports and
 * write the output port's direction onto the outgoing label. Labels on
 * other ports pass through untouched.
 */

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "cavsim/state.hpp"

namespace cavsim {

struct Port {
  std::string mode;
  Direction direction = Direction::AlongZ;

  auto operator<=>(const Port &) const = default;
};

enum class ElementKind {
  PBS,
  HWP,
  PhaseShift,
  Switch,
  Delay,
  SpinHadamard,
  CavityIdeal,
  CavityLossy,
};

[[nodiscard]] std::string toString(ElementKind kind);

struct PhotonKey {
  Port port;
  Polarization polarization = Polarization::R;

  auto operator<=>(const PhotonKey &) const = default;
};

struct PhotonTerm {
  Port port;
  Polarization polarization = Polarization::R;
  Amplitude amplitude;
};

/// (input port, polarization) -> superposition over (output port, polarization).
using PhotonWiring = std::map<PhotonKey, std::vector<PhotonTerm>>;

/// 2x2 operator on one electron, basis {up, down}.
struct SpinOperator {
  std::size_t spinIndex = 0;
  Eigen::Matrix2cd matrix;
};

/// Spin-conditioned scattering at a double-sided cavity.
///
/// A photon entering the top side travels against z, one entering the
/// bottom side travels along z. In the pair basis (x, flip(x)), where flip
/// reverses both polarization and direction, the scattering block is
/// [[same, flip], [flip, same]] with separate amplitudes for coupled and
/// uncoupled inputs. `coupledLeak` and `uncoupledLeak` are the 2x2 blocks
/// feeding `sinkMode`; they are chosen so the combined map is an isometry.
struct CavityWiring {
  std::string cavityId;
  std::size_t spinIndex = 0;
  std::string topEntry;
  std::string bottomEntry;
  std::string topExit;
  std::string bottomExit;
  Amplitude coupledSame;
  Amplitude coupledFlip;
  Amplitude uncoupledSame;
  Amplitude uncoupledFlip;
  Eigen::Matrix2cd coupledLeak = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2cd uncoupledLeak = Eigen::Matrix2cd::Zero();
  std::string sinkMode{kLeakedMode};
};

struct LinearTerm {
  BasisLabel label;
  Amplitude amplitude;
};

class ElementMap {
 public:
  using Action = std::variant<PhotonWiring, SpinOperator, CavityWiring>;

  ElementMap(ElementKind kind, Action action) : kind_(kind), action_(std::move(action)) {}

  [[nodiscard]] ElementKind kind() const { return kind_; }
  [[nodiscard]] const Action &action() const { return action_; }

  /// Image of a basis label, or nullopt when the element does not touch it.
  [[nodiscard]] std::optional<std::vector<LinearTerm>> image(const BasisLabel &label) const;

  /// Every basis label on a declared input port, for the given electron count.
  [[nodiscard]] std::vector<BasisLabel> declaredInputs(std::size_t electrons) const;

 private:
  ElementKind kind_;
  Action action_;
};

struct ApplyOptions {
  bool identityOnUntouched = true;
  double pruneThreshold = kDefaultPruneThreshold;
};

/// Linear extension of `map` to `state`. With identityOnUntouched=false a
/// nonzero label outside the declared ports throws std::invalid_argument.
[[nodiscard]] HybridState applyLinearMap(const HybridState &state, const ElementMap &map,
                                         const ApplyOptions &options = {});

/// Matrix of `map` on its declared inputs. Rows are indexed by `outputs`,
/// the sorted union of all image labels.
struct ElementMatrix {
  std::vector<BasisLabel> inputs;
  std::vector<BasisLabel> outputs;
  Eigen::MatrixXcd matrix;
};

[[nodiscard]] ElementMatrix elementMatrix(const ElementMap &map, std::size_t electrons);

/// (R, in_k) -> (R, transmit_k), (L, in_k) -> (L, reflect_k); no phases.
/// Throws std::invalid_argument on mismatched lengths, repeated input
/// ports, or two inputs landing on the same output port and polarization.
[[nodiscard]] ElementMap makePBS(const std::vector<Port> &inPorts,
                                 const std::vector<Port> &transmitPorts,
                                 const std::vector<Port> &reflectPorts);

/// R -> (R + L)/sqrt2, L -> (R - L)/sqrt2.
[[nodiscard]] ElementMap makeHWP(const Port &in, const Port &out);
[[nodiscard]] inline ElementMap makeHWP(const Port &port) { return makeHWP(port, port); }

/// Both polarizations pick up exp(i phi).
[[nodiscard]] ElementMap makePhaseShift(const Port &in, const Port &out, double phi);
[[nodiscard]] inline ElementMap makePhaseShift(const Port &port, double phi) {
  return makePhaseShift(port, port, phi);
}

/// up -> (up + down)/sqrt2, down -> (up - down)/sqrt2 on one electron.
[[nodiscard]] ElementMap makeSpinHadamard(std::size_t spinIndex, std::size_t electrons);

/// Routes everything on `in` to routeA (selector 0) or routeB (selector 1).
[[nodiscard]] ElementMap makeSwitch(const Port &in, const Port &routeA, const Port &routeB,
                                    std::size_t selector);

/// Timing only; identity on amplitudes.
[[nodiscard]] ElementMap makeDelay(const Port &in, const Port &out);
[[nodiscard]] inline ElementMap makeDelay(const Port &port) { return makeDelay(port, port); }

}  // namespace cavsim
