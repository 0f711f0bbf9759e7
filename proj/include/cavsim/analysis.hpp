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
 * Gate fidelity and efficiency: closed forms in the scattering magnitudes,
 * simulated counterparts from the lossy circuits, target gate matrices, and
 * parameter sweeps over (g, kappa_s).
 */

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "cavsim/cavity.hpp"
#include "cavsim/circuits.hpp"

namespace cavsim {

template <typename Scalar>
using GateMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

/// Target unitary in the basis {R, L} x {up, down}^n, photon most significant.
template <typename Scalar = double>
[[nodiscard]] GateMatrix<Scalar> idealGateMatrix(GateKind kind) {
  const Eigen::Index dim = kind == GateKind::Cnot ? 4 : 8;
  GateMatrix<Scalar> m = GateMatrix<Scalar>::Identity(dim, dim);
  auto swapBasis = [&m](Eigen::Index a, Eigen::Index b) {
    m(a, a) = m(b, b) = Scalar(0);
    m(a, b) = m(b, a) = Scalar(1);
  };
  switch (kind) {
    case GateKind::Cnot: swapBasis(2, 3); break;     // L up <-> L down
    case GateKind::Toffoli: swapBasis(6, 7); break;  // L down up <-> L down down
    case GateKind::Fredkin: swapBasis(5, 6); break;  // L up down <-> L down up
  }
  return m;
}

/// Closed-form fidelity in |r|, |t|, |r0|, |t0|.
template <typename Scalar>
[[nodiscard]] Scalar fidelityClosed(GateKind kind, const ScatterCoefficients<Scalar> &c) {
  using std::abs;
  const Scalar r = abs(c.r), t = abs(c.t), r0 = abs(c.r0), t0 = abs(c.t0);
  switch (kind) {
    case GateKind::Cnot: {
      const Scalar overlap = (Scalar(1) + t0 + r0) / Scalar(2);
      return overlap * overlap;
    }
    case GateKind::Toffoli: {
      const Scalar inner =
          Scalar(2) + r0 * (r * r - t * t + r0 * r0 + t0 * t0) + t0 * (Scalar(1) + r0 * r0 + t0 * t0);
      return inner * inner / Scalar(16);
    }
    case GateKind::Fredkin: {
      const Scalar inner =
          Scalar(4) + (Scalar(1) + (r0 - t) * (r - t0)) * (r + r0 - t - t0) * (r - r0 - t + t0) +
          Scalar(2) * (r + r0) * (t + t0) +
          ((r - t) * (r - t) + (r0 - t0) * (r0 - t0)) * ((r + r0) * (r + r0) + (t + t0) * (t + t0)) /
              Scalar(2);
      return inner * inner / Scalar(64);
    }
  }
  return Scalar(0);
}

/// (1 + X^k) / 2 with X the mean single-pass survival and k the pass count.
template <typename Scalar>
[[nodiscard]] Scalar efficiencyClosed(GateKind kind, const ScatterCoefficients<Scalar> &c) {
  using std::pow;
  return (Scalar(1) + pow(c.meanSurvival(), cavityPassCount(kind))) / Scalar(2);
}

/// |<ideal|lossy>|^2 on the uniform input, lossy output projected onto the
/// output port and left unnormalized.
[[nodiscard]] double fidelitySimulated(GateKind kind, const ScatterCoefficientsd &coeffs);

/// Squared norm of the lossy output outside the leaked sinks, uniform input.
[[nodiscard]] double efficiencySimulated(GateKind kind, const ScatterCoefficientsd &coeffs);

/// Largest entry modulus of a - b after rotating a by the global phase that
/// best aligns it with b. Throws std::invalid_argument on a shape mismatch.
template <typename DerivedA, typename DerivedB>
[[nodiscard]] double matrixDistance(const Eigen::MatrixBase<DerivedA> &a,
                                    const Eigen::MatrixBase<DerivedB> &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("matrixDistance: shape mismatch");
  }
  const Eigen::MatrixXcd ac = a.template cast<std::complex<double>>();
  const Eigen::MatrixXcd bc = b.template cast<std::complex<double>>();
  const std::complex<double> overlap = (ac.conjugate().cwiseProduct(bc)).sum();
  const std::complex<double> phase =
      std::abs(overlap) > 0 ? overlap / std::abs(overlap) : std::complex<double>(1.0);
  return (phase * ac - bc).cwiseAbs().maxCoeff();
}

struct SweepGrid {
  std::vector<double> g{0.5, 0.75, 1.0, 2.4};
  std::vector<double> kappaS = inclusiveRange(0.0, 2.0, 0.01);
  double gamma = 0.1;

  /// start, start + step, ... up to stop inclusive (within step / 1e6).
  /// Throws std::invalid_argument for step <= 0 or stop < start.
  static std::vector<double> inclusiveRange(double start, double stop, double step);
};

struct SweepRow {
  double g = 0;
  double kappaS = 0;
  double gamma = 0;
  GateKind gate = GateKind::Cnot;
  double fidelityClosed = 0;
  double fidelitySim = 0;
  double efficiencyClosed = 0;
  double efficiencySim = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

/// Rows ordered by g, then kappa_s. `threads` = 0 uses the hardware count,
/// capped by the CAVSIM_THREADS environment variable when set. Throws
/// std::invalid_argument on an empty grid.
[[nodiscard]] SweepResult sweep(GateKind kind, const SweepGrid &grid, unsigned threads = 0);

/// Single grid point.
[[nodiscard]] SweepRow evaluatePoint(GateKind kind, double g, double kappaS, double gamma);

inline constexpr const char *kSweepCsvHeader =
    "g_over_kappa,kappa_s_over_kappa,gamma_over_kappa,gate,F_closed,F_sim,eta_closed,eta_sim";

void writeCsv(const SweepResult &result, std::ostream &out);
[[nodiscard]] nlohmann::json toJson(const SweepResult &result);

struct OperatingPoint {
  double g;
  double kappaS;
};

/// The six (g, kappa_s) points with published values, gamma = 0.1.
[[nodiscard]] const std::vector<OperatingPoint> &operatingPoints();

struct CrossValidation {
  std::vector<SweepRow> rows;
  double tolerance = 1e-6;

  [[nodiscard]] bool fidelityAgrees(const SweepRow &row) const;
  [[nodiscard]] bool efficiencyAgrees(const SweepRow &row) const;
  [[nodiscard]] bool allAgree() const;
};

/// Simulated against closed-form values for every gate at the operating points.
[[nodiscard]] CrossValidation crossValidate();

/// Markdown table with the input convention and any discrepancies.
void writeCrossValidationReport(const CrossValidation &cv, std::ostream &out);

}  // namespace cavsim
