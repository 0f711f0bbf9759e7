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
 * Sparse, label-addressed state of one photon and n electron spins.
 *
 * Basis labels are (polarization, path mode, propagation direction, spins).
 * Path modes are plain strings so that circuit wiring reads like the
 * optical layout ("1", "2", ..., "out"). Modes whose name starts with
 * "leaked" are loss sinks: amplitude routed there has left the apparatus.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace cavsim {

using Amplitude = std::complex<double>;

enum class Polarization : std::uint8_t { R, L };
enum class Direction : std::uint8_t { AlongZ, AgainstZ };
enum class Spin : std::uint8_t { Up, Down };

/// Prune threshold on amplitude magnitude.
inline constexpr double kDefaultPruneThreshold = 1e-15;

/// Reserved sink for photon loss.
inline constexpr std::string_view kLeakedMode = "leaked";

[[nodiscard]] bool isLeakedMode(std::string_view mode);

[[nodiscard]] constexpr Polarization flipped(Polarization p) {
  return p == Polarization::R ? Polarization::L : Polarization::R;
}
[[nodiscard]] constexpr Direction flipped(Direction d) {
  return d == Direction::AlongZ ? Direction::AgainstZ : Direction::AlongZ;
}
[[nodiscard]] constexpr Spin flipped(Spin s) {
  return s == Spin::Up ? Spin::Down : Spin::Up;
}

/// Photon spin projection s_z: +1 for R along z and L against z, -1 otherwise.
[[nodiscard]] constexpr int photonSpin(Polarization p, Direction d) {
  return (p == Polarization::R) == (d == Direction::AlongZ) ? +1 : -1;
}

struct PhotonLabel {
  Polarization polarization = Polarization::R;
  std::string mode;
  Direction direction = Direction::AlongZ;

  auto operator<=>(const PhotonLabel &) const = default;
};

using SpinConfig = std::vector<Spin>;

struct BasisLabel {
  PhotonLabel photon;
  SpinConfig spins;

  auto operator<=>(const BasisLabel &) const = default;
};

[[nodiscard]] std::string toString(Polarization p);
[[nodiscard]] std::string toString(Direction d);
[[nodiscard]] std::string toString(const SpinConfig &spins);  // e.g. "ud"
[[nodiscard]] std::string toString(const BasisLabel &label);

/// All 2^n spin configurations, first spin most significant, Up before Down.
[[nodiscard]] std::vector<SpinConfig> allSpinConfigs(std::size_t electrons);

/// Single-photon state: amplitudes over photon labels.
using PhotonState = std::map<PhotonLabel, Amplitude>;

/// Single-spin state alpha|up> + beta|down>.
struct SpinState {
  Amplitude up{1.0, 0.0};
  Amplitude down{0.0, 0.0};
};

class HybridState {
 public:
  using TermMap = std::map<BasisLabel, Amplitude>;

  explicit HybridState(std::size_t electrons) : electrons_(electrons) {}
  HybridState(std::size_t electrons, TermMap terms);

  [[nodiscard]] std::size_t electronCount() const { return electrons_; }
  [[nodiscard]] const TermMap &terms() const { return terms_; }
  [[nodiscard]] bool empty() const { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }

  /// Zero for labels not present.
  [[nodiscard]] Amplitude amplitude(const BasisLabel &label) const;

  [[nodiscard]] HybridState pruned(double threshold = kDefaultPruneThreshold) const;

  friend HybridState operator+(const HybridState &a, const HybridState &b);
  friend HybridState operator-(const HybridState &a, const HybridState &b);
  friend HybridState operator*(Amplitude s, const HybridState &a);

  bool operator==(const HybridState &) const = default;

 private:
  std::size_t electrons_;
  TermMap terms_;
};

/// Product of a photon state and one state per electron.
/// Throws std::invalid_argument if a factor has zero norm or is not
/// normalized within 1e-12.
[[nodiscard]] HybridState tensorProduct(const PhotonState &photon,
                                        std::span<const SpinState> spins);

/// <a|b>, conjugate-linear in a.
[[nodiscard]] Amplitude innerProduct(const HybridState &a, const HybridState &b);

[[nodiscard]] double squaredNorm(const HybridState &state);

/// Throws std::domain_error on the zero state.
[[nodiscard]] HybridState normalize(const HybridState &state);

/// Keeps only amplitudes whose path mode is in `modes`.
[[nodiscard]] HybridState restrictToModes(const HybridState &state,
                                          const std::set<std::string> &modes);

/// Drops every loss sink.
[[nodiscard]] HybridState dropLeaked(const HybridState &state);

/// Largest entrywise |a - b| over the union of labels.
[[nodiscard]] double maxDeviation(const HybridState &a, const HybridState &b);

/// Records {polarization, path, direction, spins, re, im} in label order.
[[nodiscard]] nlohmann::json toJson(const HybridState &state);
[[nodiscard]] HybridState stateFromJson(const nlohmann::json &records,
                                        std::size_t electrons);

}  // namespace cavsim
