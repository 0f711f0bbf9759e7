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

#include "cavsim/circuits.hpp"

#include <algorithm>
#include <numbers>
#include <set>

namespace cavsim {

namespace {

Port along(std::string mode) { return {std::move(mode), Direction::AlongZ}; }
Port against(std::string mode) { return {std::move(mode), Direction::AgainstZ}; }

// Small fluent helper so the builders read like the optical layout.
class StageList {
 public:
  StageList &pbs(std::vector<Port> in, std::vector<Port> transmit, std::vector<Port> reflect,
                 std::string tag = {}) {
    StageSpec s;
    s.kind = StageKind::Pbs;
    s.in = std::move(in);
    s.out = std::move(transmit);
    s.out.insert(s.out.end(), reflect.begin(), reflect.end());
    s.checkpoint = std::move(tag);
    return push(std::move(s));
  }
  StageList &hwp(Port port, std::string tag = {}) {
    return push({StageKind::Hwp, {port}, {port}, 0.0, 0, 0, {}, std::move(tag)});
  }
  StageList &phasePi(Port port, std::string tag = {}) {
    return push(
        {StageKind::PhaseShift, {port}, {port}, std::numbers::pi, 0, 0, {}, std::move(tag)});
  }
  StageList &delay(Port port) { return push({StageKind::Delay, {port}, {port}, 0.0, 0, 0, {}, {}}); }
  StageList &spinHadamard(std::size_t spin, std::string tag = {}) {
    return push({StageKind::SpinHadamard, {}, {}, 0.0, spin, 0, {}, std::move(tag)});
  }
  StageList &switchRoute(Port in, Port routeA, Port routeB, std::size_t selector) {
    return push({StageKind::Switch, {std::move(in)}, {std::move(routeA), std::move(routeB)},
                 0.0, 0, selector, {}, {}});
  }
  /// One pass through a cavity whose top side is `top` and bottom side `bottom`.
  StageList &interact(std::string cavity, const std::string &top, const std::string &bottom,
                      std::string tag = {}) {
    return push({StageKind::Interact,
                 {against(top), along(bottom)},
                 {along(top), against(bottom)},
                 0.0,
                 0,
                 0,
                 std::move(cavity),
                 std::move(tag)});
  }

  std::vector<StageSpec> take() { return std::move(stages_); }

 private:
  StageList &push(StageSpec s) {
    stages_.push_back(std::move(s));
    return *this;
  }
  std::vector<StageSpec> stages_;
};

// One Fredkin round: cavity 1 then cavity 2, entering from `entry` and
// leaving merged on mode 8.
void fredkinRound(StageList &s, const std::string &entry, const std::string &entryTag,
                  const std::string &cavity1Tag, const std::string &cavity2Tag,
                  const std::string &mergedTag) {
  s.pbs({along(entry)}, {against("3")}, {along("4")}, entryTag)
      .interact("c1", "3", "4", cavity1Tag)
      .pbs({along("3"), against("4")}, {along("x3"), along("5")}, {along("5"), along("x4")})
      .pbs({along("5")}, {against("6")}, {along("7")})
      .interact("c2", "6", "7", cavity2Tag)
      .pbs({along("6"), against("7")}, {along("x6"), along("8")}, {along("8"), along("x7")},
           mergedTag);
}

std::string portText(const Port &p) {
  return p.direction == Direction::AgainstZ ? p.mode + ":against" : p.mode;
}

}  // namespace

std::string toString(GateKind kind) {
  switch (kind) {
    case GateKind::Cnot: return "cnot";
    case GateKind::Toffoli: return "toffoli";
    case GateKind::Fredkin: return "fredkin";
  }
  return "?";
}

GateKind parseGateKind(const std::string &name) {
  for (GateKind k : {GateKind::Cnot, GateKind::Toffoli, GateKind::Fredkin}) {
    if (toString(k) == name) return k;
  }
  throw std::invalid_argument("unknown gate '" + name + "' (expected cnot, toffoli or fredkin)");
}

int cavityPassCount(GateKind kind) {
  switch (kind) {
    case GateKind::Cnot: return 1;
    case GateKind::Toffoli: return 3;
    case GateKind::Fredkin: return 6;
  }
  return 0;
}

CircuitSpec buildGate(GateKind kind) {
  switch (kind) {
    case GateKind::Cnot: return buildCnot();
    case GateKind::Toffoli: return buildToffoli();
    case GateKind::Fredkin: return buildFredkin();
  }
  throw std::invalid_argument("unknown gate kind");
}

void validate(const CircuitSpec &c) {
  const std::set<std::string> modes(c.modes.begin(), c.modes.end());
  if (modes.size() != c.modes.size()) {
    throw CircuitError("circuit '" + c.name + "' declares a mode twice");
  }
  for (const auto &m : c.modes) {
    if (isLeakedMode(m)) {
      throw CircuitError("mode '" + m + "' collides with the reserved leaked sink");
    }
  }
  auto requireMode = [&](const Port &p, const std::string &where) {
    if (!modes.contains(p.mode)) {
      throw CircuitError(where + ": undeclared mode '" + p.mode + "'");
    }
  };
  requireMode(c.input, "input");
  requireMode(c.output, "output");

  std::set<std::string> cavityIds;
  for (const auto &cav : c.cavities) {
    if (!cavityIds.insert(cav.id).second) {
      throw CircuitError("cavity '" + cav.id + "' declared twice");
    }
    if (cav.spinIndex >= c.electronCount) {
      throw CircuitError("cavity '" + cav.id + "' spin index out of range");
    }
  }

  std::set<std::string> tags;
  for (std::size_t i = 0; i < c.stages.size(); ++i) {
    const auto &s = c.stages[i];
    const std::string where = "stage " + std::to_string(i);
    for (const auto &p : s.in) requireMode(p, where);
    for (const auto &p : s.out) requireMode(p, where);
    auto requireCounts = [&](std::size_t in, std::size_t out) {
      if (s.in.size() != in || s.out.size() != out) {
        throw CircuitError(where + ": expected " + std::to_string(in) + " input and " +
                           std::to_string(out) + " output ports");
      }
    };
    switch (s.kind) {
      case StageKind::Pbs:
        if (s.in.empty() || s.out.size() != 2 * s.in.size()) {
          throw CircuitError(where + ": PBS needs k inputs and 2k outputs");
        }
        break;
      case StageKind::Hwp:
      case StageKind::PhaseShift:
      case StageKind::Delay: requireCounts(1, 1); break;
      case StageKind::Switch:
        requireCounts(1, 2);
        if (s.selector > 1) throw CircuitError(where + ": switch selector must be 0 or 1");
        break;
      case StageKind::SpinHadamard:
        requireCounts(0, 0);
        if (s.spinIndex >= c.electronCount) {
          throw CircuitError(where + ": spin index out of range");
        }
        break;
      case StageKind::Interact:
        requireCounts(2, 2);
        if (!cavityIds.contains(s.cavityId)) {
          throw CircuitError(where + ": undeclared cavity '" + s.cavityId + "'");
        }
        if (s.in[0].direction != Direction::AgainstZ || s.in[1].direction != Direction::AlongZ ||
            s.out[0].direction != Direction::AlongZ || s.out[1].direction != Direction::AgainstZ) {
          throw CircuitError(where + ": cavity ports must be (top, bottom) with directions "
                                     "entry against/along and exit along/against");
        }
        break;
    }
    if (!s.checkpoint.empty() && !tags.insert(s.checkpoint).second) {
      throw CircuitError(where + ": duplicate checkpoint tag '" + s.checkpoint + "'");
    }
  }
}

CircuitSpec buildCnot() {
  CircuitSpec c;
  c.name = "cnot";
  c.electronCount = 1;
  c.modes = {"in", "1", "2", "3", "4", "5", "out", "x1", "x3", "x4", "x5"};
  c.cavities = {{"c1", 0}};
  c.input = along("in");
  c.output = along("out");
  StageList s;
  s.pbs({along("in")}, {along("1")}, {along("2")}, "Eq3")
      .hwp(along("2"))
      .spinHadamard(0)
      .pbs({along("2")}, {against("3")}, {along("4")})
      .phasePi(along("4"), "Eq6")
      .interact("c1", "3", "4", "Eq7")
      .phasePi(against("4"))
      .pbs({along("3"), against("4")}, {along("x3"), along("5")}, {along("5"), along("x4")})
      .hwp(along("5"))
      .spinHadamard(0)
      .delay(along("1"))
      .pbs({along("1"), along("5")}, {along("out"), along("x5")}, {along("x1"), along("out")},
           "Eq8");
  c.stages = s.take();
  return c;
}

CircuitSpec buildToffoli() {
  CircuitSpec c;
  c.name = "toffoli";
  c.electronCount = 2;
  c.modes = {"in", "1",  "2",  "3",  "4",  "5",  "6",   "7",   "8",  "9",
             "10", "11", "out", "x1", "x3", "x4", "x6", "x7", "x9", "x10", "x11"};
  c.cavities = {{"c1", 0}, {"c2", 1}};
  c.input = along("in");
  c.output = along("out");
  StageList s;
  s.pbs({along("in")}, {along("1")}, {along("2")}, "Eq13")
      .pbs({along("2")}, {against("3")}, {along("4")})
      .interact("c1", "3", "4", "Eq14")
      .pbs({along("3"), against("4")}, {along("x3"), along("5")}, {along("5"), along("x4")})
      .hwp(along("5"))
      .spinHadamard(1)
      .pbs({along("5")}, {against("6")}, {along("7")}, "Eq15")
      .interact("c2", "6", "7", "Eq16")
      .pbs({along("6"), against("7")}, {along("x6"), along("8")}, {along("8"), along("x7")})
      .hwp(along("8"))
      .spinHadamard(1, "Eq17")
      .phasePi(along("8"))
      .pbs({along("8")}, {against("9")}, {along("10")})
      .interact("c1", "9", "10", "Eq18")
      .pbs({along("9"), against("10")}, {along("x9"), along("11")}, {along("11"), along("x10")})
      .delay(along("1"))
      .pbs({along("1"), along("11")}, {along("out"), along("x11")}, {along("x1"), along("out")},
           "Eq19");
  c.stages = s.take();
  return c;
}

CircuitSpec buildFredkin() {
  CircuitSpec c;
  c.name = "fredkin";
  c.electronCount = 2;
  c.modes = {"in", "1",   "2",  "3",  "4",  "5",  "6",  "7",  "8",
             "9",  "10", "out", "x1", "x3", "x4", "x6", "x7", "x10"};
  c.cavities = {{"c1", 0}, {"c2", 1}};
  c.input = along("in");
  c.output = along("out");
  StageList s;
  s.pbs({along("in")}, {along("1")}, {along("2")}, "Eq23");
  // Round 1, then loop back through the HWP on mode 9.
  fredkinRound(s, "2", "", "Eq25", "Eq26", "Eq27");
  s.switchRoute(along("8"), along("9"), along("10"), 0)
      .hwp(along("9"))
      .spinHadamard(0)
      .spinHadamard(1);
  // Round 2, conjugated by the Hadamards on either side.
  fredkinRound(s, "9", "", "", "", "");
  s.switchRoute(along("8"), along("9"), along("10"), 0)
      .hwp(along("9"))
      .spinHadamard(0)
      .spinHadamard(1);
  // Round 3 exits through the second switch route.
  fredkinRound(s, "9", "Eq29", "", "", "Eq30");
  s.switchRoute(along("8"), along("9"), along("10"), 1)
      .delay(along("1"))
      .pbs({along("1"), along("10")}, {along("out"), along("x10")}, {along("x1"), along("out")},
           "Eq31");
  c.stages = s.take();
  return c;
}

CircuitSpec buildFredkinRound() {
  CircuitSpec c;
  c.name = "fredkin-round";
  c.electronCount = 2;
  c.modes = {"3", "4", "5", "6", "7", "8", "9", "x3", "x4", "x6", "x7"};
  c.cavities = {{"c1", 0}, {"c2", 1}};
  c.input = along("9");
  c.output = along("8");
  StageList s;
  fredkinRound(s, "9", "", "", "", "");
  c.stages = s.take();
  return c;
}

ElementMap compileStage(const CircuitSpec &circuit, std::size_t stageIndex,
                        const CavityModel &model) {
  const StageSpec &s = circuit.stages.at(stageIndex);
  switch (s.kind) {
    case StageKind::Pbs: {
      const auto k = static_cast<std::ptrdiff_t>(s.in.size());
      return makePBS(s.in, {s.out.begin(), s.out.begin() + k}, {s.out.begin() + k, s.out.end()});
    }
    case StageKind::Hwp: return makeHWP(s.in.at(0), s.out.at(0));
    case StageKind::PhaseShift: return makePhaseShift(s.in.at(0), s.out.at(0), s.phase);
    case StageKind::Delay: return makeDelay(s.in.at(0), s.out.at(0));
    case StageKind::Switch: return makeSwitch(s.in.at(0), s.out.at(0), s.out.at(1), s.selector);
    case StageKind::SpinHadamard: return makeSpinHadamard(s.spinIndex, circuit.electronCount);
    case StageKind::Interact: {
      const auto decl = std::find_if(circuit.cavities.begin(), circuit.cavities.end(),
                                     [&](const auto &d) { return d.id == s.cavityId; });
      if (decl == circuit.cavities.end()) {
        throw CircuitError("undeclared cavity '" + s.cavityId + "'");
      }
      const CavityPorts ports{s.in.at(0).mode, s.in.at(1).mode, s.out.at(0).mode,
                              s.out.at(1).mode};
      if (const auto *lossy = std::get_if<LossyModel>(&model)) {
        return lossyCavityMap(s.cavityId, decl->spinIndex, lossy->coeffs, ports,
                              std::string(kLeakedMode) + "#" + std::to_string(stageIndex));
      }
      return idealCavityMap(s.cavityId, decl->spinIndex, ports);
    }
  }
  throw CircuitError("unknown stage kind");
}

const HybridState &StageTrace::at(const std::string &tag) const {
  for (const auto &[t, state] : checkpoints) {
    if (t == tag) return state;
  }
  throw std::out_of_range("no checkpoint '" + tag + "'");
}

namespace {

void checkInput(const CircuitSpec &circuit, const HybridState &input) {
  if (input.electronCount() != circuit.electronCount) {
    throw std::invalid_argument("input has " + std::to_string(input.electronCount()) +
                                " electrons, circuit '" + circuit.name + "' needs " +
                                std::to_string(circuit.electronCount));
  }
  for (const auto &[label, amp] : input.terms()) {
    if (label.photon.mode != circuit.input.mode ||
        label.photon.direction != circuit.input.direction) {
      throw std::invalid_argument("input amplitude on " + toString(label) +
                                  " is not on the input port " + portText(circuit.input));
    }
  }
}

template <typename OnStage>
HybridState execute(const CircuitSpec &circuit, const HybridState &input,
                    const CavityModel &model, OnStage onStage) {
  validate(circuit);
  checkInput(circuit, input);
  HybridState state = input;
  for (std::size_t i = 0; i < circuit.stages.size(); ++i) {
    state = applyLinearMap(state, compileStage(circuit, i, model));
    onStage(circuit.stages[i], state);
  }
  return state;
}

}  // namespace

HybridState runCircuit(const CircuitSpec &circuit, const HybridState &input,
                       const CavityModel &model) {
  return execute(circuit, input, model, [](const StageSpec &, const HybridState &) {});
}

StageTrace runWithTrace(const CircuitSpec &circuit, const HybridState &input,
                        const CavityModel &model) {
  StageTrace trace;
  execute(circuit, input, model, [&](const StageSpec &s, const HybridState &state) {
    if (!s.checkpoint.empty()) {
      trace.checkpoints.emplace_back(s.checkpoint, state);
    }
  });
  return trace;
}

HybridState basisInput(const CircuitSpec &circuit, Polarization pol, const SpinConfig &spins) {
  HybridState::TermMap terms;
  terms[{{pol, circuit.input.mode, circuit.input.direction}, spins}] = 1.0;
  return HybridState(circuit.electronCount, std::move(terms));
}

Eigen::MatrixXcd extractGateMatrix(const CircuitSpec &circuit, const CavityModel &model) {
  const auto configs = allSpinConfigs(circuit.electronCount);
  const auto n = static_cast<Eigen::Index>(configs.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  auto index = [&](Polarization p, const SpinConfig &cfg) {
    const auto k = std::find(configs.begin(), configs.end(), cfg) - configs.begin();
    return (p == Polarization::R ? 0 : n) + static_cast<Eigen::Index>(k);
  };
  for (Polarization p : {Polarization::R, Polarization::L}) {
    for (const auto &cfg : configs) {
      const HybridState out = runCircuit(circuit, basisInput(circuit, p, cfg), model);
      for (const auto &[label, amp] : out.terms()) {
        if (label.photon.mode == circuit.output.mode &&
            label.photon.direction == circuit.output.direction) {
          m(index(label.photon.polarization, label.spins), index(p, cfg)) += amp;
        }
      }
    }
  }
  return m;
}

}  // namespace cavsim
