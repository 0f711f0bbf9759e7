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

// Shared helpers for the unit tests.

#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "cavsim/state.hpp"

namespace cavsim::testing {

inline BasisLabel label(Polarization p, const std::string &mode, Direction d, SpinConfig spins) {
  return {{p, mode, d}, std::move(spins)};
}

inline BasisLabel label(Polarization p, const std::string &mode, SpinConfig spins) {
  return label(p, mode, Direction::AlongZ, std::move(spins));
}

inline HybridState basis(const BasisLabel &l, Amplitude a = 1.0) {
  return HybridState(l.spins.size(), {{l, a}});
}

/// Normalized random superposition over `labels`.
inline HybridState randomState(std::mt19937_64 &rng, const std::vector<BasisLabel> &labels,
                               std::size_t electrons) {
  std::normal_distribution<double> n;
  HybridState::TermMap terms;
  for (const auto &l : labels) terms[l] = {n(rng), n(rng)};
  return normalize(HybridState(electrons, std::move(terms)));
}

/// Every photon label on the given modes and both directions, all spin configs.
inline std::vector<BasisLabel> allLabels(const std::vector<std::string> &modes,
                                         std::size_t electrons) {
  std::vector<BasisLabel> out;
  for (const auto &m : modes) {
    for (Polarization p : {Polarization::R, Polarization::L}) {
      for (Direction d : {Direction::AlongZ, Direction::AgainstZ}) {
        for (const auto &cfg : allSpinConfigs(electrons)) out.push_back(label(p, m, d, cfg));
      }
    }
  }
  return out;
}

inline const double kRoot2 = std::sqrt(2.0);

}  // namespace cavsim::testing
