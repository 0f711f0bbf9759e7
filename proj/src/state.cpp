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

#include "cavsim/state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cavsim {

bool isLeakedMode(std::string_view mode) { return mode.starts_with(kLeakedMode); }

std::string toString(Polarization p) { return p == Polarization::R ? "R" : "L"; }

std::string toString(Direction d) {
  return d == Direction::AlongZ ? "alongZ" : "againstZ";
}

std::string toString(const SpinConfig &spins) {
  std::string out;
  out.reserve(spins.size());
  for (Spin s : spins) {
    out.push_back(s == Spin::Up ? 'u' : 'd');
  }
  return out;
}

std::string toString(const BasisLabel &label) {
  return toString(label.photon.polarization) + "[" + label.photon.mode + "," +
         toString(label.photon.direction) + "]|" + toString(label.spins) + ">";
}

std::vector<SpinConfig> allSpinConfigs(std::size_t electrons) {
  std::vector<SpinConfig> out;
  const std::size_t count = std::size_t{1} << electrons;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    SpinConfig c(electrons);
    for (std::size_t i = 0; i < electrons; ++i) {
      const bool down = (k >> (electrons - 1 - i)) & 1U;
      c[i] = down ? Spin::Down : Spin::Up;
    }
    out.push_back(std::move(c));
  }
  return out;
}

HybridState::HybridState(std::size_t electrons, TermMap terms)
    : electrons_(electrons), terms_(std::move(terms)) {
  for (const auto &[label, amp] : terms_) {
    if (label.spins.size() != electrons_) {
      throw std::invalid_argument("basis label " + toString(label) +
                                  " does not match electron count " +
                                  std::to_string(electrons_));
    }
  }
}

Amplitude HybridState::amplitude(const BasisLabel &label) const {
  const auto it = terms_.find(label);
  return it == terms_.end() ? Amplitude{} : it->second;
}

HybridState HybridState::pruned(double threshold) const {
  TermMap kept;
  for (const auto &[label, amp] : terms_) {
    if (std::abs(amp) >= threshold) {
      kept.emplace_hint(kept.end(), label, amp);
    }
  }
  return HybridState(electrons_, std::move(kept));
}

namespace {

void requireSameElectrons(const HybridState &a, const HybridState &b) {
  if (a.electronCount() != b.electronCount()) {
    throw std::invalid_argument("states have different electron counts");
  }
}

}  // namespace

HybridState operator+(const HybridState &a, const HybridState &b) {
  requireSameElectrons(a, b);
  HybridState::TermMap out = a.terms_;
  for (const auto &[label, amp] : b.terms_) {
    out[label] += amp;
  }
  return HybridState(a.electrons_, std::move(out));
}

HybridState operator-(const HybridState &a, const HybridState &b) {
  return a + Amplitude{-1.0, 0.0} * b;
}

HybridState operator*(Amplitude s, const HybridState &a) {
  HybridState::TermMap out = a.terms_;
  for (auto &entry : out) {
    entry.second *= s;
  }
  return HybridState(a.electrons_, std::move(out));
}

HybridState tensorProduct(const PhotonState &photon, std::span<const SpinState> spins) {
  auto checkNorm = [](double n2, const std::string &what) {
    if (n2 == 0.0) {
      throw std::invalid_argument(what + " has zero norm");
    }
    if (std::abs(n2 - 1.0) > 1e-12) {
      throw std::invalid_argument(what + " is not normalized");
    }
  };
  double photonNorm = 0.0;
  for (const auto &[label, amp] : photon) {
    photonNorm += std::norm(amp);
  }
  checkNorm(photonNorm, "photon factor");
  for (std::size_t i = 0; i < spins.size(); ++i) {
    checkNorm(std::norm(spins[i].up) + std::norm(spins[i].down),
              "spin factor " + std::to_string(i));
  }

  HybridState::TermMap terms;
  for (const auto &config : allSpinConfigs(spins.size())) {
    Amplitude spinAmp{1.0, 0.0};
    for (std::size_t i = 0; i < config.size(); ++i) {
      spinAmp *= config[i] == Spin::Up ? spins[i].up : spins[i].down;
    }
    for (const auto &[label, amp] : photon) {
      const Amplitude a = amp * spinAmp;
      if (a != Amplitude{}) {
        terms.emplace(BasisLabel{label, config}, a);
      }
    }
  }
  return HybridState(spins.size(), std::move(terms));
}

Amplitude innerProduct(const HybridState &a, const HybridState &b) {
  requireSameElectrons(a, b);
  Amplitude sum{};
  // Walk the smaller map and look up in the larger one.
  const bool aSmaller = a.size() <= b.size();
  const auto &small = aSmaller ? a.terms() : b.terms();
  const auto &large = aSmaller ? b.terms() : a.terms();
  for (const auto &[label, amp] : small) {
    const auto it = large.find(label);
    if (it == large.end()) {
      continue;
    }
    sum += aSmaller ? std::conj(amp) * it->second : std::conj(it->second) * amp;
  }
  return sum;
}

double squaredNorm(const HybridState &state) {
  double n = 0.0;
  for (const auto &entry : state.terms()) {
    n += std::norm(entry.second);
  }
  return n;
}

HybridState normalize(const HybridState &state) {
  const double n = squaredNorm(state);
  if (n == 0.0) {
    throw std::domain_error("cannot normalize the zero state");
  }
  return Amplitude{1.0 / std::sqrt(n), 0.0} * state;
}

HybridState restrictToModes(const HybridState &state, const std::set<std::string> &modes) {
  HybridState::TermMap kept;
  for (const auto &[label, amp] : state.terms()) {
    if (modes.contains(label.photon.mode)) {
      kept.emplace_hint(kept.end(), label, amp);
    }
  }
  return HybridState(state.electronCount(), std::move(kept));
}

HybridState dropLeaked(const HybridState &state) {
  HybridState::TermMap kept;
  for (const auto &[label, amp] : state.terms()) {
    if (!isLeakedMode(label.photon.mode)) {
      kept.emplace_hint(kept.end(), label, amp);
    }
  }
  return HybridState(state.electronCount(), std::move(kept));
}

double maxDeviation(const HybridState &a, const HybridState &b) {
  double worst = 0.0;
  const HybridState diff = a - b;
  for (const auto &[label, amp] : diff.terms()) {
    worst = std::max(worst, std::abs(amp));
  }
  return worst;
}

nlohmann::json toJson(const HybridState &state) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto &[label, amp] : state.terms()) {
    records.push_back({{"polarization", toString(label.photon.polarization)},
                       {"path", label.photon.mode},
                       {"direction", toString(label.photon.direction)},
                       {"spins", toString(label.spins)},
                       {"re", amp.real()},
                       {"im", amp.imag()}});
  }
  return records;
}

HybridState stateFromJson(const nlohmann::json &records, std::size_t electrons) {
  HybridState::TermMap terms;
  for (const auto &r : records) {
    BasisLabel label;
    const auto pol = r.at("polarization").get<std::string>();
    if (pol != "R" && pol != "L") {
      throw std::invalid_argument("bad polarization '" + pol + "'");
    }
    label.photon.polarization = pol == "R" ? Polarization::R : Polarization::L;
    label.photon.mode = r.at("path").get<std::string>();
    const auto dir = r.at("direction").get<std::string>();
    if (dir != "alongZ" && dir != "againstZ") {
      throw std::invalid_argument("bad direction '" + dir + "'");
    }
    label.photon.direction = dir == "alongZ" ? Direction::AlongZ : Direction::AgainstZ;
    for (char c : r.at("spins").get<std::string>()) {
      if (c != 'u' && c != 'd') {
        throw std::invalid_argument("bad spin character");
      }
      label.spins.push_back(c == 'u' ? Spin::Up : Spin::Down);
    }
    terms[label] += Amplitude{r.at("re").get<double>(), r.at("im").get<double>()};
  }
  return HybridState(electrons, std::move(terms));
}

}  // namespace cavsim
