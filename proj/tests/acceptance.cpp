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

// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance [report-path]
//
// Exits 0 only when every applicable criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "cavsim/analysis.hpp"
#include "cavsim/cavity.hpp"
#include "cavsim/checkpoints.hpp"
#include "cavsim/circuits.hpp"

using namespace cavsim;

namespace {

constexpr double kMatrixTolerance = 1e-10;
constexpr double kCheckpointTolerance = 1e-10;
constexpr double kTableTolerance = 0.0005;
constexpr double kCnotFidelityTolerance = 1e-9;
constexpr double kIdentityTolerance = 4 * std::numeric_limits<double>::epsilon();
constexpr double kIdealLimitTolerance = 1e-7;
constexpr int kCheckpointSeeds = 20;
constexpr double kGamma = 0.1;

constexpr GateKind kGates[] = {GateKind::Cnot, GateKind::Toffoli, GateKind::Fredkin};

struct Outcome {
  enum class Status { Pass, Fail, NotApplicable } status;
  std::string detail;
};

Outcome pass(std::string d) { return {Outcome::Status::Pass, std::move(d)}; }
Outcome fail(std::string d) { return {Outcome::Status::Fail, std::move(d)}; }
Outcome verdict(bool ok, std::string d) { return ok ? pass(std::move(d)) : fail(std::move(d)); }

std::string fmt(const char *f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

ScatterCoefficientsd coefficientsAt(double g, double ks) {
  CavityParamsd p;
  p.g = g;
  p.kappaS = ks;
  p.gamma = kGamma;
  return resonantCoefficients(p);
}

// Published three-figure values at the operating points.
struct TableRow {
  double g, ks;
  double fT, fF, etaC, etaT, etaF;
};
const std::vector<TableRow> kTable{
    {0.5, 0.25, 0.887, 0.745, 0.882, 0.724, 0.600}, {0.5, 0.0, 1.000, 0.735, 0.931, 0.819, 0.704},
    {2.4, 0.5, 0.845, 0.982, 0.916, 0.788, 0.665},  {2.4, 0.0, 1.000, 0.983, 0.996, 0.987, 0.975},
    {1.0, 0.7, 0.806, 0.909, 0.882, 0.722, 0.599},  {1.0, 0.0, 1.000, 0.911, 0.977, 0.935, 0.878}};

struct TableCheck {
  std::size_t checked = 0;
  std::vector<std::string> misses;
};

// Compares one value source against the table; `value(row, index)` returns
// the computed value for column index 0..4 (F_T, F_F, eta_CNOT, eta_T, eta_F).
TableCheck checkTable(const std::function<double(const TableRow &, int)> &value) {
  static const char *names[] = {"F_T", "F_F", "eta_CNOT", "eta_T", "eta_F"};
  TableCheck out;
  for (const auto &row : kTable) {
    const double published[] = {row.fT, row.fF, row.etaC, row.etaT, row.etaF};
    for (int k = 0; k < 5; ++k) {
      const double v = value(row, k);
      ++out.checked;
      if (std::abs(v - published[k]) > kTableTolerance) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s(g=%.1f, ks=%.2f) = %.6f vs %.3f", names[k], row.g,
                      row.ks, v, published[k]);
        out.misses.emplace_back(buf);
      }
    }
  }
  return out;
}

std::string describe(const TableCheck &t) {
  std::string s = std::to_string(t.checked - t.misses.size()) + "/" + std::to_string(t.checked) +
                  " values within " + fmt("%.4f", kTableTolerance);
  for (const auto &m : t.misses) s += "; off: " + m;
  return s;
}

double closedValue(const ScatterCoefficientsd &c, int column) {
  switch (column) {
    case 0: return fidelityClosed(GateKind::Toffoli, c);
    case 1: return fidelityClosed(GateKind::Fredkin, c);
    case 2: return efficiencyClosed(GateKind::Cnot, c);
    case 3: return efficiencyClosed(GateKind::Toffoli, c);
    default: return efficiencyClosed(GateKind::Fredkin, c);
  }
}

// g_i = 3i/100 for i = 1..100, kappa_s_j = 2j/99 for j = 0..99.
template <typename F>
void forEachGridPoint(F &&f) {
  for (int i = 1; i <= 100; ++i) {
    for (int j = 0; j <= 99; ++j) f(3.0 * i / 100.0, 2.0 * j / 99.0);
  }
}

Outcome criterion1() {
  double worst = 0;
  for (GateKind k : kGates) {
    worst = std::max(worst, matrixDistance(extractGateMatrix(buildGate(k), IdealModel{}),
                                           idealGateMatrix(k)));
  }
  return verdict(worst < kMatrixTolerance,
                 "max matrix distance " + fmt("%.2e", worst) + " over cnot, toffoli, fredkin");
}

Outcome criterion2() {
  double worst = 0;
  std::size_t compared = 0, lossyCompared = 0;
  for (GateKind k : kGates) {
    for (int seed = 1; seed <= kCheckpointSeeds; ++seed) {
      AmplitudeGenerator gen(static_cast<std::uint64_t>(seed));
      const GateInput in = gen.gateInput(k);
      for (const auto &r : checkCheckpoints(k, in, IdealModel{})) {
        if (!r.deviation) return fail("no closed form for ideal tag " + r.tag);
        worst = std::max(worst, *r.deviation);
        ++compared;
      }
    }
  }
  for (const auto &p : operatingPoints()) {
    const LossyModel model{coefficientsAt(p.g, p.kappaS)};
    for (int seed = 1; seed <= kCheckpointSeeds; ++seed) {
      AmplitudeGenerator gen(static_cast<std::uint64_t>(seed));
      for (const auto &r : checkCheckpoints(GateKind::Cnot, gen.gateInput(GateKind::Cnot), model)) {
        if (r.tag != "Eq37" || !r.deviation) continue;
        worst = std::max(worst, *r.deviation);
        ++lossyCompared;
      }
    }
  }
  const bool ok = worst < kCheckpointTolerance && lossyCompared > 0;
  return verdict(ok, std::to_string(compared) + " ideal and " + std::to_string(lossyCompared) +
                         " lossy Eq37 comparisons over " + std::to_string(kCheckpointSeeds) +
                         " seeds, max deviation " + fmt("%.2e", worst));
}

Outcome criterion3() {
  const TableCheck t =
      checkTable([](const TableRow &row, int k) { return closedValue(coefficientsAt(row.g, row.ks), k); });
  return verdict(t.misses.empty(), describe(t));
}

Outcome criterion4() {
  double worstClosed = 0, worstSim = 0;
  std::size_t points = 0;
  forEachGridPoint([&](double g, double ks) {
    const auto c = coefficientsAt(g, ks);
    worstClosed = std::max(worstClosed, std::abs(fidelityClosed(GateKind::Cnot, c) - 1.0));
    worstSim = std::max(worstSim, std::abs(fidelitySimulated(GateKind::Cnot, c) - 1.0));
    ++points;
  });
  return verdict(worstClosed < kCnotFidelityTolerance && worstSim < kCnotFidelityTolerance,
                 std::to_string(points) + " points, max |F-1| closed " + fmt("%.2e", worstClosed) +
                     ", simulated " + fmt("%.2e", worstSim));
}

Outcome criterion5() {
  double worstR = 0, worstSum = 0;
  forEachGridPoint([&](double g, double ks) {
    const auto c = coefficientsAt(g, ks);
    worstR = std::max({worstR, std::abs(c.r - (1.0 + c.t)), std::abs(c.r0 - (1.0 + c.t0))});
    worstSum = std::max({worstSum, std::abs(std::abs(c.r) + std::abs(c.t) - 1.0),
                         std::abs(std::abs(c.r0) + std::abs(c.t0) - 1.0)});
  });
  return verdict(worstR <= kIdentityTolerance && worstSum <= kIdentityTolerance,
                 "max |r-(1+t)| " + fmt("%.2e", worstR) + ", max ||r|+|t|-1| " +
                     fmt("%.2e", worstSum) + " (limit " + fmt("%.2e", kIdentityTolerance) + ")");
}

Outcome criterion6() {
  const SweepGrid grid;
  std::vector<SweepResult> results;
  for (GateKind k : kGates) results.push_back(sweep(k, grid));
  const std::size_t nks = grid.kappaS.size();
  std::size_t monotoneBreaks = 0, orderBreaks = 0;
  double maxRise = 0;
  SweepRow riseAt;
  for (std::size_t gi = 0; gi < grid.g.size(); ++gi) {
    for (std::size_t j = 0; j < nks; ++j) {
      const std::size_t i = gi * nks + j;
      const double c = results[0].rows[i].efficiencyClosed;
      const double t = results[1].rows[i].efficiencyClosed;
      const double f = results[2].rows[i].efficiencyClosed;
      orderBreaks += !(f <= t && t <= c);
      if (j > 0) {
        for (const auto &r : results) {
          const double rise = r.rows[i].efficiencyClosed - r.rows[i - 1].efficiencyClosed;
          if (!(rise < 0)) {
            ++monotoneBreaks;
            if (rise > maxRise) {
              maxRise = rise;
              riseAt = r.rows[i];
            }
          }
        }
      }
    }
  }
  // Tabulated values read back from the sweep rows at the operating points.
  auto rowAt = [&](std::size_t gate, double g, double ks) -> const SweepRow * {
    for (const auto &r : results[gate].rows) {
      if (std::abs(r.g - g) < 1e-9 && std::abs(r.kappaS - ks) < 1e-9) return &r;
    }
    return nullptr;
  };
  std::size_t missing = 0;
  const TableCheck t = checkTable([&](const TableRow &row, int k) {
    const std::size_t gate = k == 0 ? 1 : k == 1 ? 2 : k == 2 ? 0 : k == 3 ? 1 : 2;
    const SweepRow *r = rowAt(gate, row.g, row.ks);
    if (!r) {
      ++missing;
      return std::numeric_limits<double>::quiet_NaN();
    }
    return k < 2 ? r->fidelityClosed : r->efficiencyClosed;
  });
  std::string rise;
  if (monotoneBreaks > 0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, " (largest rise %.2e, %s at g=%.2f ks=%.2f)", maxRise,
                  toString(riseAt.gate).c_str(), riseAt.g, riseAt.kappaS);
    rise = buf;
  }
  const bool ok = monotoneBreaks == 0 && orderBreaks == 0 && missing == 0 && t.misses.empty();
  return verdict(ok, std::to_string(results.size() * results[0].rows.size()) +
                         " sweep rows; eta non-decreasing steps " + std::to_string(monotoneBreaks) +
                         rise + ", ordering breaks " + std::to_string(orderBreaks) + ", " +
                         describe(t));
}

Outcome criterion7() {
  const ScatterCoefficientsd c = coefficientsAt(1e4, 0.0);
  double worstEntry = 0, worstLeak = 0;
  for (GateKind k : kGates) {
    const CircuitSpec circuit = buildGate(k);
    for (const auto &stage : circuit.stages) {
      if (stage.kind != StageKind::Interact) continue;
      const CavityPorts ports{stage.in[0].mode, stage.in[1].mode, stage.out[0].mode,
                              stage.out[1].mode};
      const ElementMap ideal = idealCavityMap(stage.cavityId, 0, ports);
      const ElementMap lossy = lossyCavityMap(stage.cavityId, 0, c, ports);
      for (const auto &in : ideal.declaredInputs(1)) {
        const HybridState x(1, {{in, 1.0}});
        const HybridState a = applyLinearMap(x, ideal);
        const HybridState b = applyLinearMap(x, lossy, {true, 0.0});
        worstEntry = std::max(worstEntry, maxDeviation(a, dropLeaked(b)));
        worstLeak = std::max(worstLeak, squaredNorm(b) - squaredNorm(dropLeaked(b)));
      }
    }
    for (Polarization p : {Polarization::R, Polarization::L}) {
      for (const auto &cfg : allSpinConfigs(circuit.electronCount)) {
        const HybridState in = basisInput(circuit, p, cfg);
        const HybridState a = runCircuit(circuit, in, IdealModel{});
        const HybridState b = runCircuit(circuit, in, LossyModel{c});
        worstEntry = std::max(worstEntry, maxDeviation(a, dropLeaked(b)));
      }
    }
  }
  return verdict(worstEntry < kIdealLimitTolerance,
                 "g=1e4 kappa_s=0: max entry difference on exit ports " + fmt("%.2e", worstEntry) +
                     " over cavity maps and gate outputs; max single-pass sink probability " +
                     fmt("%.2e", worstLeak));
}

Outcome criterion8(const std::filesystem::path &reportPath) {
  const CrossValidation cv = crossValidate();
  if (reportPath.has_parent_path()) std::filesystem::create_directories(reportPath.parent_path());
  {
    std::ofstream out(reportPath);
    if (!out) return fail("cannot write " + reportPath.string());
    writeCrossValidationReport(cv, out);
  }
  std::ifstream in(reportPath);
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);) {
    for (GateKind k : kGates) rows += line.rfind("| " + toString(k) + " |", 0) == 0;
  }
  std::size_t agree = 0;
  for (const auto &r : cv.rows) agree += cv.fidelityAgrees(r) && cv.efficiencyAgrees(r);
  return verdict(rows == 18, "report " + reportPath.string() + " with " + std::to_string(rows) +
                                 " rows; " + std::to_string(agree) + " agree within " +
                                 fmt("%.0e", cv.tolerance) + ", the rest tabulated as discrepancies");
}

struct Criterion {
  int id;
  const char *title;
  double limitSeconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char **argv) {
  const std::filesystem::path report =
      argc > 1 ? std::filesystem::path(argv[1]) : std::filesystem::path("cross_validation.md");
  const std::vector<Criterion> criteria{
      {1, "ideal gate truth tables", 1.0, criterion1},
      {2, "checkpoint states", 10.0, criterion2},
      {3, "operating-point closed forms", 1.0, criterion3},
      {4, "CNOT fidelity invariance", 30.0, criterion4},
      {5, "coefficient identities", 0.0, criterion5},
      {6, "sweep reproduction", 10.0, criterion6},
      {7, "ideal-limit convergence", 0.0, criterion7},
      {8, "cross-validation report", 0.0, [&] { return criterion8(report); }},
  };
  int failures = 0;
  for (const auto &c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o = c.run();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string timing = fmt("%.2f s", secs);
    if (c.limitSeconds > 0) {
      timing += ", limit " + fmt("%.0f s", c.limitSeconds);
      if (secs >= c.limitSeconds && o.status == Outcome::Status::Pass) {
        o = fail(o.detail + "; over time limit");
      }
    }
    const bool ok = o.status == Outcome::Status::Pass;
    failures += !ok;
    std::printf("[%s] criterion %d %s: %s (%s)\n", ok ? "PASS" : "FAIL", c.id, c.title,
                o.detail.c_str(), timing.c_str());
  }
  std::printf("[N/A ] criterion 9 full-scale experiment: not reproducible at desk scale, "
              "covered by criteria 1-8\n");
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
