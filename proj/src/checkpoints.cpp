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

#include "cavsim/checkpoints.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace cavsim {

namespace {

using SpinVec = std::array<Amplitude, 2>;  // (up, down) components

const double kHalfRoot = 1.0 / std::sqrt(2.0);

const SpinVec kUp{1.0, 0.0};
const SpinVec kDown{0.0, 1.0};
const SpinVec kPlus{1.0, 1.0};    // |up> + |down>, unnormalized
const SpinVec kMinus{1.0, -1.0};  // |up> - |down>, unnormalized
const SpinVec kRight{kHalfRoot, kHalfRoot};
const SpinVec kLeft{kHalfRoot, -kHalfRoot};

SpinVec vec(const QubitAmplitudes &q) { return {q.alpha, q.beta}; }
SpinVec flippedVec(const QubitAmplitudes &q) { return {q.beta, q.alpha}; }

struct Ket {
  Polarization pol;
  const char *mode;
  Direction dir = Direction::AlongZ;
};

Ket R(const char *mode, Direction d = Direction::AlongZ) { return {Polarization::R, mode, d}; }
Ket L(const char *mode, Direction d = Direction::AlongZ) { return {Polarization::L, mode, d}; }

constexpr Direction kAgainst = Direction::AgainstZ;

// Accumulates c * (photon superposition) x spin_1 x ... x spin_n.
class Terms {
 public:
  explicit Terms(std::size_t electrons)
      : electrons_(electrons), configs_(allSpinConfigs(electrons)) {}

  Terms &add(Amplitude c, std::vector<std::pair<Amplitude, Ket>> photon,
             std::vector<SpinVec> spins) {
    if (spins.size() != electrons_) throw std::logic_error("spin factor count");
    for (const auto &cfg : configs_) {
      Amplitude s = c;
      for (std::size_t k = 0; k < electrons_; ++k) {
        s *= spins[k][cfg[k] == Spin::Up ? 0 : 1];
      }
      if (s == Amplitude{}) continue;
      for (const auto &[pc, ket] : photon) {
        terms_[{{ket.pol, ket.mode, ket.dir}, cfg}] += s * pc;
      }
    }
    return *this;
  }
  Terms &add(Amplitude c, Ket ket, std::vector<SpinVec> spins) {
    return add(c, {{1.0, ket}}, std::move(spins));
  }

  [[nodiscard]] HybridState state() const { return HybridState(electrons_, terms_).pruned(); }

 private:
  std::size_t electrons_;
  std::vector<SpinConfig> configs_;
  HybridState::TermMap terms_;
};

// Spin-summed survival of one cavity pass: A for uncoupled, B for coupled.
struct PassSums {
  double uncoupled = 1.0;
  double coupled = 1.0;
};

std::optional<PassSums> passSums(const CavityModel &model) {
  if (const auto *lossy = std::get_if<LossyModel>(&model)) {
    const auto &c = lossy->coeffs;
    return PassSums{std::abs(c.t0) + std::abs(c.r0), std::abs(c.t) + std::abs(c.r)};
  }
  return PassSums{};
}

bool isLossy(const CavityModel &model) { return std::holds_alternative<LossyModel>(model); }

std::optional<HybridState> cnotCheckpoint(const std::string &tag, const GateInput &in,
                                          const CavityModel &model) {
  const Amplitude ac = in.photon.alpha, bc = in.photon.beta;
  const Amplitude at = in.spins.at(0).alpha, bt = in.spins.at(0).beta;
  Terms s(1);
  if (tag == "Eq3") {
    s.add(ac * at, R("1"), {kUp}).add(ac * bt, R("1"), {kDown});
    s.add(bc * at, L("2"), {kUp}).add(bc * bt, L("2"), {kDown});
    return s.state();
  }
  if (tag == "Eq6") {
    s.add(ac * at, R("1"), {kRight}).add(ac * bt, R("1"), {kLeft});
    s.add(0.5 * bc * at, {{1.0, R("3", kAgainst)}, {1.0, L("4")}}, {kPlus});
    s.add(0.5 * bc * bt, {{1.0, R("3", kAgainst)}, {1.0, L("4")}}, {kMinus});
    return s.state();
  }
  const PassSums sums = *passSums(model);
  const double a = sums.uncoupled, b = sums.coupled;
  if (tag == "Eq7") {
    s.add(ac * at, R("1"), {kRight}).add(ac * bt, R("1"), {kLeft});
    s.add(0.5 * bc * at, {{1.0, R("4", kAgainst)}, {1.0, L("3")}}, {SpinVec{-a, b}});
    s.add(0.5 * bc * bt, {{1.0, R("4", kAgainst)}, {1.0, L("3")}}, {SpinVec{-a, -b}});
    return s.state();
  }
  if (tag == "Eq8") {
    if (isLossy(model)) {
      s.add(ac * at, R("out"), {kUp}).add(ac * bt, R("out"), {kDown});
      s.add(0.5 * bc * at * (a - b), L("out"), {kUp});
      s.add(0.5 * bc * at * (a + b), L("out"), {kDown});
      s.add(0.5 * bc * bt * (a + b), L("out"), {kUp});
      s.add(0.5 * bc * bt * (a - b), L("out"), {kDown});
      return s.state();
    }
    s.add(ac, R("out"), {vec(in.spins[0])});
    s.add(bc, L("out"), {flippedVec(in.spins[0])});
    return s.state();
  }
  return std::nullopt;
}

std::optional<HybridState> toffoliCheckpoint(const std::string &tag, const GateInput &in,
                                             const CavityModel &model) {
  const Amplitude ap = in.photon.alpha, bp = in.photon.beta;
  const Amplitude a1 = in.spins.at(0).alpha, b1 = in.spins.at(0).beta;
  const Amplitude a2 = in.spins.at(1).alpha, b2 = in.spins.at(1).beta;
  const SpinVec e1 = vec(in.spins[0]), e2 = vec(in.spins[1]);
  Terms s(2);
  auto restBranch = [&] { s.add(ap, R("1"), {e1, e2}); };
  // The |R> branch with electron 2 in the rotated basis.
  auto rotatedRestBranch = [&] {
    s.add(ap * a1 * a2, R("1"), {kUp, kRight}).add(ap * a1 * b2, R("1"), {kUp, kLeft});
    s.add(ap * b1 * a2, R("1"), {kDown, kRight}).add(ap * b1 * b2, R("1"), {kDown, kLeft});
  };
  if (tag == "Eq13") {
    restBranch();
    s.add(bp, L("2"), {e1, e2});
    return s.state();
  }
  if (isLossy(model)) return std::nullopt;
  if (tag == "Eq14") {
    restBranch();
    s.add(-bp * a1 * a2, L("3"), {kUp, kUp}).add(-bp * a1 * b2, L("3"), {kUp, kDown});
    s.add(bp * b1 * a2, R("4", kAgainst), {kDown, kUp});
    s.add(bp * b1 * b2, R("4", kAgainst), {kDown, kDown});
    return s.state();
  }
  if (tag == "Eq15") {
    rotatedRestBranch();
    const std::vector<std::pair<Amplitude, Ket>> diff{{1.0, R("6", kAgainst)}, {-1.0, L("7")}};
    const std::vector<std::pair<Amplitude, Ket>> sum{{1.0, R("6", kAgainst)}, {1.0, L("7")}};
    s.add(-0.5 * bp * a1 * a2, diff, {kUp, kPlus});
    s.add(-0.5 * bp * a1 * b2, diff, {kUp, kMinus});
    s.add(0.5 * bp * b1 * a2, sum, {kDown, kPlus});
    s.add(0.5 * bp * b1 * b2, sum, {kDown, kMinus});
    return s.state();
  }
  if (tag == "Eq16") {
    rotatedRestBranch();
    const std::vector<std::pair<Amplitude, Ket>> diff{{1.0, R("7", kAgainst)}, {-1.0, L("6")}};
    const std::vector<std::pair<Amplitude, Ket>> sum{{1.0, R("7", kAgainst)}, {1.0, L("6")}};
    s.add(0.5 * bp * a1 * a2, diff, {kUp, kPlus});
    s.add(0.5 * bp * a1 * b2, diff, {kUp, kMinus});
    s.add(-0.5 * bp * b1 * a2, sum, {kDown, kMinus});
    s.add(-0.5 * bp * b1 * b2, sum, {kDown, kPlus});
    return s.state();
  }
  if (tag == "Eq17") {
    restBranch();
    s.add(bp * a1 * a2, L("8"), {kUp, kUp}).add(bp * a1 * b2, L("8"), {kUp, kDown});
    s.add(-bp * b1 * a2, R("8"), {kDown, kDown}).add(-bp * b1 * b2, R("8"), {kDown, kUp});
    return s.state();
  }
  if (tag == "Eq18") {
    restBranch();
    s.add(bp * a1 * a2, L("9"), {kUp, kUp}).add(bp * a1 * b2, L("9"), {kUp, kDown});
    s.add(bp * b1 * a2, L("9"), {kDown, kDown}).add(bp * b1 * b2, L("9"), {kDown, kUp});
    return s.state();
  }
  if (tag == "Eq19") {
    s.add(ap, R("out"), {e1, e2});
    s.add(bp * a1, L("out"), {kUp, e2});
    s.add(bp * b1, L("out"), {kDown, flippedVec(in.spins[1])});
    return s.state();
  }
  return std::nullopt;
}

std::optional<HybridState> fredkinCheckpoint(const std::string &tag, const GateInput &in,
                                             const CavityModel &model) {
  const Amplitude ac = in.photon.alpha, bc = in.photon.beta;
  const Amplitude a1 = in.spins.at(0).alpha, b1 = in.spins.at(0).beta;
  const Amplitude a2 = in.spins.at(1).alpha, b2 = in.spins.at(1).beta;
  const SpinVec e1 = vec(in.spins[0]), e2 = vec(in.spins[1]);
  Terms s(2);
  auto restBranch = [&] { s.add(ac, R("1"), {e1, e2}); };
  if (tag == "Eq23") {
    restBranch();
    s.add(bc, L("2"), {e1, e2});
    return s.state();
  }
  if (isLossy(model)) return std::nullopt;
  restBranch();
  if (tag == "Eq25") {
    s.add(-bc * a1 * a2, L("3"), {kUp, kUp}).add(-bc * a1 * b2, L("3"), {kUp, kDown});
    s.add(bc * b1 * a2, R("4", kAgainst), {kDown, kUp});
    s.add(bc * b1 * b2, R("4", kAgainst), {kDown, kDown});
    return s.state();
  }
  if (tag == "Eq26" || tag == "Eq27") {
    const bool merged = tag == "Eq27";
    const Ket l = merged ? L("8") : L("6");
    const Ket r = merged ? R("8") : R("7", kAgainst);
    s.add(bc * a1 * a2, l, {kUp, kUp}).add(-bc * a1 * b2, r, {kUp, kDown});
    s.add(-bc * b1 * a2, r, {kDown, kUp}).add(bc * b1 * b2, l, {kDown, kDown});
    return s.state();
  }
  if (tag == "Eq29") {
    s.add(bc * a1 * a2, L("4"), {kUp, kUp}).add(-bc * a1 * b2, R("3", kAgainst), {kDown, kUp});
    s.add(-bc * b1 * a2, R("3", kAgainst), {kUp, kDown}).add(bc * b1 * b2, L("4"), {kDown, kDown});
    return s.state();
  }
  if (tag == "Eq30") {
    s.add(bc * a1 * a2, L("8"), {kUp, kUp}).add(bc * a1 * b2, L("8"), {kDown, kUp});
    s.add(bc * b1 * a2, L("8"), {kUp, kDown}).add(bc * b1 * b2, L("8"), {kDown, kDown});
    return s.state();
  }
  if (tag == "Eq31") {
    Terms out(2);
    out.add(ac, R("out"), {e1, e2});
    out.add(bc, L("out"), {e2, e1});
    return out.state();
  }
  return std::nullopt;
}

}  // namespace

double AmplitudeGenerator::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

QubitAmplitudes AmplitudeGenerator::qubit() {
  for (;;) {
    const Amplitude a{2.0 * uniform() - 1.0, 2.0 * uniform() - 1.0};
    const Amplitude b{2.0 * uniform() - 1.0, 2.0 * uniform() - 1.0};
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    if (n > 1e-3) return {a / n, b / n};
  }
}

GateInput AmplitudeGenerator::gateInput(GateKind kind) {
  GateInput in;
  in.photon = qubit();
  const std::size_t n = kind == GateKind::Cnot ? 1 : 2;
  for (std::size_t k = 0; k < n; ++k) in.spins.push_back(qubit());
  return in;
}

GateInput uniformInput(GateKind kind) {
  const QubitAmplitudes u{kHalfRoot, kHalfRoot};
  return {u, std::vector<QubitAmplitudes>(kind == GateKind::Cnot ? 1 : 2, u)};
}

HybridState preparedInput(const CircuitSpec &circuit, const GateInput &input) {
  PhotonState photon;
  photon[{Polarization::R, circuit.input.mode, circuit.input.direction}] = input.photon.alpha;
  photon[{Polarization::L, circuit.input.mode, circuit.input.direction}] = input.photon.beta;
  std::vector<SpinState> spins;
  for (const auto &q : input.spins) spins.push_back({q.alpha, q.beta});
  return tensorProduct(photon, spins).pruned();
}

std::vector<std::string> checkpointTags(GateKind kind) {
  std::vector<std::string> tags;
  for (const auto &stage : buildGate(kind).stages) {
    if (!stage.checkpoint.empty()) tags.push_back(stage.checkpoint);
  }
  return tags;
}

std::string reportedTag(GateKind kind, const std::string &stageTag, const CavityModel &model) {
  if (kind == GateKind::Cnot && stageTag == "Eq8" && isLossy(model)) return "Eq37";
  return stageTag;
}

std::optional<HybridState> expectedCheckpoint(GateKind kind, const std::string &stageTag,
                                              const GateInput &input, const CavityModel &model) {
  switch (kind) {
    case GateKind::Cnot: return cnotCheckpoint(stageTag, input, model);
    case GateKind::Toffoli: return toffoliCheckpoint(stageTag, input, model);
    case GateKind::Fredkin: return fredkinCheckpoint(stageTag, input, model);
  }
  return std::nullopt;
}

std::vector<CheckpointResult> checkCheckpoints(GateKind kind, const GateInput &input,
                                               const CavityModel &model) {
  const CircuitSpec circuit = buildGate(kind);
  const StageTrace trace = runWithTrace(circuit, preparedInput(circuit, input), model);
  std::vector<CheckpointResult> results;
  for (const auto &[tag, state] : trace.checkpoints) {
    CheckpointResult r{reportedTag(kind, tag, model), std::nullopt};
    if (const auto expected = expectedCheckpoint(kind, tag, input, model)) {
      r.deviation = maxDeviation(dropLeaked(state), *expected);
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace cavsim
