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
 * Closed-form intermediate states of the three gates, written term by term
 * from the input amplitudes and independent of the element maps, plus a
 * seeded source of random input amplitudes.
 *
 * Labels follow the builders' wiring: the |R> branch waits on mode "1"; a
 * photon heading into a cavity from the top travels against z and one
 * leaving through the top travels along z.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cavsim/circuits.hpp"
#include "cavsim/state.hpp"

namespace cavsim {

/// alpha |R> + beta |L> for the photon, alpha |up> + beta |down> for a spin.
struct QubitAmplitudes {
  Amplitude alpha{1.0, 0.0};
  Amplitude beta{0.0, 0.0};
};

struct GateInput {
  QubitAmplitudes photon;
  std::vector<QubitAmplitudes> spins;
};

/// mt19937_64 with doubles taken from the top 53 bits of each draw.
class AmplitudeGenerator {
 public:
  static constexpr const char *kName = "mt19937_64";

  explicit AmplitudeGenerator(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  [[nodiscard]] std::uint64_t seed() const { return seed_; }

  /// Uniform on [0, 1).
  double uniform();
  /// Normalized qubit with real and imaginary parts drawn from [-1, 1).
  QubitAmplitudes qubit();
  GateInput gateInput(GateKind kind);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Uniform 1/sqrt(2) amplitudes on every qubit.
[[nodiscard]] GateInput uniformInput(GateKind kind);

/// Product state of `input` on the circuit's input port.
[[nodiscard]] HybridState preparedInput(const CircuitSpec &circuit, const GateInput &input);

/// Tags carried by the builder for `kind`, in execution order.
[[nodiscard]] std::vector<std::string> checkpointTags(GateKind kind);

/// The name under which a stage tag is reported. The final CNOT stage is
/// reported as "Eq37" under a lossy model.
[[nodiscard]] std::string reportedTag(GateKind kind, const std::string &stageTag,
                                      const CavityModel &model);

/// Expected state at a stage tag with leaked modes dropped, or nullopt when
/// there is no closed form for that tag under `model`.
[[nodiscard]] std::optional<HybridState> expectedCheckpoint(GateKind kind,
                                                            const std::string &stageTag,
                                                            const GateInput &input,
                                                            const CavityModel &model);

struct CheckpointResult {
  std::string tag;
  std::optional<double> deviation;  ///< nullopt: no closed form under this model
};

/// Runs the builder for `kind` with tracing and compares every tag.
[[nodiscard]] std::vector<CheckpointResult> checkCheckpoints(GateKind kind,
                                                             const GateInput &input,
                                                             const CavityModel &model);

}  // namespace cavsim
