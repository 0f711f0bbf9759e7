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

#include "cavsim/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <thread>

#include "cavsim/checkpoints.hpp"

namespace cavsim {

namespace {

struct SimulatedPair {
  HybridState ideal;
  HybridState lossy;
};

SimulatedPair simulateUniform(GateKind kind, const ScatterCoefficientsd &coeffs) {
  const CircuitSpec circuit = buildGate(kind);
  const HybridState input = preparedInput(circuit, uniformInput(kind));
  return {runCircuit(circuit, input, IdealModel{}),
          runCircuit(circuit, input, LossyModel{coeffs})};
}

HybridState onOutputPort(const CircuitSpec &circuit, const HybridState &state) {
  HybridState::TermMap terms;
  for (const auto &[label, amp] : state.terms()) {
    if (label.photon.mode == circuit.output.mode &&
        label.photon.direction == circuit.output.direction) {
      terms.emplace(label, amp);
    }
  }
  return HybridState(state.electronCount(), std::move(terms));
}

unsigned workerCount(unsigned requested, std::size_t jobs) {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char *cap = std::getenv("CAVSIM_THREADS")) {
    const long v = std::strtol(cap, nullptr, 10);
    if (v > 0) n = std::min(n, static_cast<unsigned>(v));
  }
  return static_cast<unsigned>(std::min<std::size_t>(n, jobs));
}

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

std::string shortFixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string scientific(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

}  // namespace

double fidelitySimulated(GateKind kind, const ScatterCoefficientsd &coeffs) {
  const CircuitSpec circuit = buildGate(kind);
  const SimulatedPair p = simulateUniform(kind, coeffs);
  return std::norm(innerProduct(onOutputPort(circuit, p.ideal), onOutputPort(circuit, p.lossy)));
}

double efficiencySimulated(GateKind kind, const ScatterCoefficientsd &coeffs) {
  const CircuitSpec circuit = buildGate(kind);
  const HybridState input = preparedInput(circuit, uniformInput(kind));
  return squaredNorm(dropLeaked(runCircuit(circuit, input, LossyModel{coeffs})));
}

std::vector<double> SweepGrid::inclusiveRange(double start, double stop, double step) {
  if (!(step > 0)) throw std::invalid_argument("range step must be > 0");
  if (stop < start) throw std::invalid_argument("range stop must be >= start");
  std::vector<double> values;
  for (std::size_t k = 0;; ++k) {
    const double v = start + static_cast<double>(k) * step;
    if (v > stop + step * 1e-6) break;
    values.push_back(std::min(v, stop));
  }
  return values;
}

SweepRow evaluatePoint(GateKind kind, double g, double kappaS, double gamma) {
  CavityParamsd p;
  p.g = g;
  p.kappaS = kappaS;
  p.gamma = gamma;
  const ScatterCoefficientsd c = resonantCoefficients(p);
  return {g,
          kappaS,
          gamma,
          kind,
          fidelityClosed(kind, c),
          fidelitySimulated(kind, c),
          efficiencyClosed(kind, c),
          efficiencySimulated(kind, c)};
}

SweepResult sweep(GateKind kind, const SweepGrid &grid, unsigned threads) {
  if (grid.g.empty() || grid.kappaS.empty()) throw std::invalid_argument("sweep grid is empty");
  const std::size_t jobs = grid.g.size() * grid.kappaS.size();
  CavityParamsd probe;
  probe.gamma = grid.gamma;
  for (double g : grid.g) {
    probe.g = g;
    for (double ks : grid.kappaS) {
      probe.kappaS = ks;
      validate(probe);
    }
  }

  SweepResult result;
  result.rows.resize(jobs);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < jobs; i = next++) {
      const double g = grid.g[i / grid.kappaS.size()];
      const double ks = grid.kappaS[i % grid.kappaS.size()];
      result.rows[i] = evaluatePoint(kind, g, ks, grid.gamma);
    }
  };
  const unsigned n = workerCount(threads, jobs);
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(work);
  work();
  for (auto &t : pool) t.join();
  return result;
}

void writeCsv(const SweepResult &result, std::ostream &out) {
  out << kSweepCsvHeader << '\n';
  for (const auto &r : result.rows) {
    out << fixed(r.g) << ',' << fixed(r.kappaS) << ',' << fixed(r.gamma) << ','
        << toString(r.gate) << ',' << fixed(r.fidelityClosed) << ',' << fixed(r.fidelitySim)
        << ',' << fixed(r.efficiencyClosed) << ',' << fixed(r.efficiencySim) << '\n';
  }
}

nlohmann::json toJson(const SweepResult &result) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto &r : result.rows) {
    rows.push_back({{"g_over_kappa", r.g},
                    {"kappa_s_over_kappa", r.kappaS},
                    {"gamma_over_kappa", r.gamma},
                    {"gate", toString(r.gate)},
                    {"F_closed", r.fidelityClosed},
                    {"F_sim", r.fidelitySim},
                    {"eta_closed", r.efficiencyClosed},
                    {"eta_sim", r.efficiencySim}});
  }
  return rows;
}

const std::vector<OperatingPoint> &operatingPoints() {
  static const std::vector<OperatingPoint> points{
      {0.5, 0.25}, {0.5, 0.0}, {2.4, 0.5}, {2.4, 0.0}, {1.0, 0.7}, {1.0, 0.0}};
  return points;
}

bool CrossValidation::fidelityAgrees(const SweepRow &row) const {
  return std::abs(row.fidelitySim - row.fidelityClosed) <= tolerance;
}

bool CrossValidation::efficiencyAgrees(const SweepRow &row) const {
  return std::abs(row.efficiencySim - row.efficiencyClosed) <= tolerance;
}

bool CrossValidation::allAgree() const {
  return std::all_of(rows.begin(), rows.end(), [this](const SweepRow &r) {
    return fidelityAgrees(r) && efficiencyAgrees(r);
  });
}

CrossValidation crossValidate() {
  CrossValidation cv;
  for (GateKind kind : {GateKind::Cnot, GateKind::Toffoli, GateKind::Fredkin}) {
    for (const auto &p : operatingPoints()) {
      cv.rows.push_back(evaluatePoint(kind, p.g, p.kappaS, 0.1));
    }
  }
  return cv;
}

void writeCrossValidationReport(const CrossValidation &cv, std::ostream &out) {
  out << "# Cross-validation: simulated vs closed-form fidelity and efficiency\n\n"
      << "Convention: every qubit prepared with amplitudes 1/sqrt(2); the lossy output is\n"
      << "projected onto the output port and not renormalized; F = |<ideal|lossy>|^2;\n"
      << "eta = squared norm outside the leaked sinks; gamma = 0.1 kappa.\n"
      << "Tolerance: " << scientific(cv.tolerance) << ". Closed forms are normative.\n\n"
      << "| gate | g/kappa | kappa_s/kappa | F_closed | F_sim | dF | eta_closed | eta_sim | "
         "d_eta | status |\n"
      << "|---|---|---|---|---|---|---|---|---|---|\n";
  std::size_t discrepancies = 0;
  for (const auto &r : cv.rows) {
    const bool okF = cv.fidelityAgrees(r), okEta = cv.efficiencyAgrees(r);
    std::string status = "agree";
    if (!okF || !okEta) {
      ++discrepancies;
      status = !okF && !okEta ? "F and eta differ" : (!okF ? "F differs" : "eta differs");
    }
    out << "| " << toString(r.gate) << " | " << shortFixed(r.g) << " | " << shortFixed(r.kappaS)
        << " | " << shortFixed(r.fidelityClosed) << " | " << shortFixed(r.fidelitySim) << " | "
        << scientific(r.fidelitySim - r.fidelityClosed) << " | " << shortFixed(r.efficiencyClosed)
        << " | " << shortFixed(r.efficiencySim) << " | "
        << scientific(r.efficiencySim - r.efficiencyClosed) << " | " << status << " |\n";
  }
  out << "\n" << discrepancies << " of " << cv.rows.size()
      << " rows disagree beyond tolerance.\n";
  if (discrepancies > 0) {
    out << "\nEach simulated cavity pass is a coherent isometry onto the exits plus a leaked\n"
        << "sink. In the CNOT the photon reaches the cavity in an equal superposition of\n"
        << "both sides. That superposition is an eigenvector of the single-pass block\n"
        << "with eigenvalue |r| + |t| = |r0| + |t0| = 1, so nothing leaks and eta_sim = 1.\n"
        << "The efficiency closed form instead charges every pass the one-sided mean\n"
        << "survival X. In the three-qubit gates later passes see unbalanced side\n"
        << "superpositions, so part of the amplitude leaks, but not as X^k. The fidelity\n"
        << "closed forms of the three-qubit gates rest on an input convention that is\n"
        << "not stated; under the uniform convention used here they are not reproduced.\n";
  }
}

}  // namespace cavsim
