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

#include "cavsim/elements.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace cavsim {

std::string toString(ElementKind kind) {
  switch (kind) {
    case ElementKind::PBS: return "PBS";
    case ElementKind::HWP: return "HWP";
    case ElementKind::PhaseShift: return "PhaseShift";
    case ElementKind::Switch: return "Switch";
    case ElementKind::Delay: return "Delay";
    case ElementKind::SpinHadamard: return "SpinHadamard";
    case ElementKind::CavityIdeal: return "CavityIdeal";
    case ElementKind::CavityLossy: return "CavityLossy";
  }
  return "?";
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::optional<std::vector<LinearTerm>> photonImage(const PhotonWiring &wiring,
                                                   const BasisLabel &label) {
  const PhotonKey key{{label.photon.mode, label.photon.direction}, label.photon.polarization};
  const auto it = wiring.find(key);
  if (it == wiring.end()) {
    return std::nullopt;
  }
  std::vector<LinearTerm> out;
  out.reserve(it->second.size());
  for (const auto &t : it->second) {
    out.push_back({BasisLabel{{t.polarization, t.port.mode, t.port.direction}, label.spins},
                   t.amplitude});
  }
  return out;
}

std::optional<std::vector<LinearTerm>> spinImage(const SpinOperator &op,
                                                 const BasisLabel &label) {
  if (op.spinIndex >= label.spins.size()) {
    throw std::out_of_range("spin index " + std::to_string(op.spinIndex) +
                            " out of range");
  }
  const int col = label.spins[op.spinIndex] == Spin::Up ? 0 : 1;
  std::vector<LinearTerm> out;
  for (int row = 0; row < 2; ++row) {
    const Amplitude a = op.matrix(row, col);
    if (a == Amplitude{}) {
      continue;
    }
    BasisLabel next = label;
    next.spins[op.spinIndex] = row == 0 ? Spin::Up : Spin::Down;
    out.push_back({std::move(next), a});
  }
  return out;
}

// Exit side follows the outgoing direction: along z leaves through the top.
std::string exitMode(const CavityWiring &c, Direction d) {
  return d == Direction::AlongZ ? c.topExit : c.bottomExit;
}

std::optional<std::vector<LinearTerm>> cavityImage(const CavityWiring &c,
                                                   const BasisLabel &label) {
  const auto &ph = label.photon;
  const bool top = ph.mode == c.topEntry && ph.direction == Direction::AgainstZ;
  const bool bottom = ph.mode == c.bottomEntry && ph.direction == Direction::AlongZ;
  if (!top && !bottom) {
    return std::nullopt;
  }
  if (c.spinIndex >= label.spins.size()) {
    throw std::out_of_range("cavity " + c.cavityId + " spin index out of range");
  }
  const Spin spin = label.spins[c.spinIndex];
  const int sz = photonSpin(ph.polarization, ph.direction);
  const bool coupled = (sz == +1 && spin == Spin::Up) || (sz == -1 && spin == Spin::Down);

  const Amplitude same = coupled ? c.coupledSame : c.uncoupledSame;
  const Amplitude flip = coupled ? c.coupledFlip : c.uncoupledFlip;
  const Eigen::Matrix2cd &leak = coupled ? c.coupledLeak : c.uncoupledLeak;

  const Polarization flippedPol = flipped(ph.polarization);
  const Direction flippedDir = flipped(ph.direction);

  std::vector<LinearTerm> out;
  auto push = [&](Polarization p, const std::string &mode, Direction d, Amplitude a) {
    if (a != Amplitude{}) {
      out.push_back({BasisLabel{{p, mode, d}, label.spins}, a});
    }
  };
  push(ph.polarization, exitMode(c, ph.direction), ph.direction, same);
  push(flippedPol, exitMode(c, flippedDir), flippedDir, flip);
  // Column 0 of the leak block is the image of x itself.
  push(ph.polarization, c.sinkMode, ph.direction, leak(0, 0));
  push(flippedPol, c.sinkMode, flippedDir, leak(1, 0));
  return out;
}

}  // namespace

std::optional<std::vector<LinearTerm>> ElementMap::image(const BasisLabel &label) const {
  return std::visit(Overloaded{
                        [&](const PhotonWiring &w) { return photonImage(w, label); },
                        [&](const SpinOperator &op) { return spinImage(op, label); },
                        [&](const CavityWiring &c) { return cavityImage(c, label); },
                    },
                    action_);
}

std::vector<BasisLabel> ElementMap::declaredInputs(std::size_t electrons) const {
  const auto configs = allSpinConfigs(electrons);
  std::vector<BasisLabel> out;
  std::visit(
      Overloaded{
          [&](const PhotonWiring &w) {
            for (const auto &cfg : configs) {
              for (const auto &[key, terms] : w) {
                out.push_back({{key.polarization, key.port.mode, key.port.direction}, cfg});
              }
            }
          },
          [&](const SpinOperator &op) {
            if (op.spinIndex >= electrons) {
              throw std::out_of_range("spin index out of range");
            }
            // A spin operator acts on every photon label; one representative
            // photon label suffices for its matrix.
            for (const auto &cfg : configs) {
              out.push_back({{Polarization::R, "*", Direction::AlongZ}, cfg});
            }
          },
          [&](const CavityWiring &c) {
            for (const auto &cfg : configs) {
              for (Polarization p : {Polarization::R, Polarization::L}) {
                out.push_back({{p, c.topEntry, Direction::AgainstZ}, cfg});
                out.push_back({{p, c.bottomEntry, Direction::AlongZ}, cfg});
              }
            }
          },
      },
      action_);
  std::sort(out.begin(), out.end());
  return out;
}

HybridState applyLinearMap(const HybridState &state, const ElementMap &map,
                           const ApplyOptions &options) {
  HybridState::TermMap out;
  for (const auto &[label, amp] : state.terms()) {
    auto img = map.image(label);
    if (!img) {
      if (!options.identityOnUntouched && amp != Amplitude{}) {
        throw std::invalid_argument(toString(map.kind()) + " has no image for " +
                                    toString(label));
      }
      out[label] += amp;
      continue;
    }
    for (const auto &term : *img) {
      out[term.label] += amp * term.amplitude;
    }
  }
  return HybridState(state.electronCount(), std::move(out)).pruned(options.pruneThreshold);
}

ElementMatrix elementMatrix(const ElementMap &map, std::size_t electrons) {
  ElementMatrix em;
  em.inputs = map.declaredInputs(electrons);
  std::vector<std::vector<LinearTerm>> images;
  std::set<BasisLabel> outputs;
  for (const auto &in : em.inputs) {
    auto img = map.image(in);
    images.push_back(img ? std::move(*img) : std::vector<LinearTerm>{{in, 1.0}});
    for (const auto &t : images.back()) {
      outputs.insert(t.label);
    }
  }
  em.outputs.assign(outputs.begin(), outputs.end());
  em.matrix = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(em.outputs.size()),
                                     static_cast<Eigen::Index>(em.inputs.size()));
  for (std::size_t col = 0; col < images.size(); ++col) {
    for (const auto &t : images[col]) {
      const auto row = std::lower_bound(em.outputs.begin(), em.outputs.end(), t.label) -
                       em.outputs.begin();
      em.matrix(row, static_cast<Eigen::Index>(col)) += t.amplitude;
    }
  }
  return em;
}

ElementMap makePBS(const std::vector<Port> &inPorts, const std::vector<Port> &transmitPorts,
                   const std::vector<Port> &reflectPorts) {
  if (inPorts.empty() || inPorts.size() != transmitPorts.size() ||
      inPorts.size() != reflectPorts.size()) {
    throw std::invalid_argument("PBS port lists must be non-empty and of equal length");
  }
  std::set<Port> seenIn;
  std::set<PhotonKey> seenOut;
  PhotonWiring wiring;
  for (std::size_t k = 0; k < inPorts.size(); ++k) {
    if (!seenIn.insert(inPorts[k]).second) {
      throw std::invalid_argument("PBS: overlapping port assignment, input '" +
                                  inPorts[k].mode + "' repeated");
    }
    const PhotonKey rOut{transmitPorts[k], Polarization::R};
    const PhotonKey lOut{reflectPorts[k], Polarization::L};
    if (!seenOut.insert(rOut).second || !seenOut.insert(lOut).second) {
      throw std::invalid_argument("PBS: overlapping port assignment on output of input '" +
                                  inPorts[k].mode + "'");
    }
    wiring[{inPorts[k], Polarization::R}] = {{transmitPorts[k], Polarization::R, 1.0}};
    wiring[{inPorts[k], Polarization::L}] = {{reflectPorts[k], Polarization::L, 1.0}};
  }
  return ElementMap(ElementKind::PBS, std::move(wiring));
}

ElementMap makeHWP(const Port &in, const Port &out) {
  const double h = 1.0 / std::numbers::sqrt2;
  PhotonWiring wiring;
  wiring[{in, Polarization::R}] = {{out, Polarization::R, h}, {out, Polarization::L, h}};
  wiring[{in, Polarization::L}] = {{out, Polarization::R, h}, {out, Polarization::L, -h}};
  return ElementMap(ElementKind::HWP, std::move(wiring));
}

ElementMap makePhaseShift(const Port &in, const Port &out, double phi) {
  // Exact for the multiples of pi/2 that circuits actually use.
  Amplitude phase = std::polar(1.0, phi);
  const double quarterTurns = phi / (std::numbers::pi / 2);
  if (quarterTurns == std::round(quarterTurns)) {
    static constexpr Amplitude kQuarter[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const auto k = static_cast<long long>(std::round(quarterTurns));
    phase = kQuarter[((k % 4) + 4) % 4];
  }
  PhotonWiring wiring;
  wiring[{in, Polarization::R}] = {{out, Polarization::R, phase}};
  wiring[{in, Polarization::L}] = {{out, Polarization::L, phase}};
  return ElementMap(ElementKind::PhaseShift, std::move(wiring));
}

ElementMap makeSpinHadamard(std::size_t spinIndex, std::size_t electrons) {
  if (spinIndex >= electrons) {
    throw std::out_of_range("spin Hadamard index " + std::to_string(spinIndex) +
                            " out of range for " + std::to_string(electrons) + " electrons");
  }
  Eigen::Matrix2cd h;
  h << 1.0, 1.0, 1.0, -1.0;
  h /= std::numbers::sqrt2;
  return ElementMap(ElementKind::SpinHadamard, SpinOperator{spinIndex, h});
}

ElementMap makeSwitch(const Port &in, const Port &routeA, const Port &routeB,
                      std::size_t selector) {
  if (selector > 1) {
    throw std::invalid_argument("switch selector must be 0 (route A) or 1 (route B)");
  }
  const Port &out = selector == 0 ? routeA : routeB;
  PhotonWiring wiring;
  wiring[{in, Polarization::R}] = {{out, Polarization::R, 1.0}};
  wiring[{in, Polarization::L}] = {{out, Polarization::L, 1.0}};
  return ElementMap(ElementKind::Switch, std::move(wiring));
}

ElementMap makeDelay(const Port &in, const Port &out) {
  PhotonWiring wiring;
  wiring[{in, Polarization::R}] = {{out, Polarization::R, 1.0}};
  wiring[{in, Polarization::L}] = {{out, Polarization::L, 1.0}};
  return ElementMap(ElementKind::Delay, std::move(wiring));
}

}  // namespace cavsim
