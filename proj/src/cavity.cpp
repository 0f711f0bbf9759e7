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

#include "cavsim/cavity.hpp"

#include <Eigen/Eigenvalues>

namespace cavsim {

namespace {

// Eigenvalues of I - M^H M within this distance of zero are taken as zero
// so that rounding in |r| + |t| = 1 does not open a spurious loss channel.
constexpr double kLeakEigenFloor = 1e-12;

// sqrt(I - M^H M) for the pair block M = [[same, flip], [flip, same]].
Eigen::Matrix2cd leakBlock(Amplitude same, Amplitude flip) {
  Eigen::Matrix2cd m;
  m << same, flip, flip, same;
  const Eigen::Matrix2cd deficit = Eigen::Matrix2cd::Identity() - m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> eig(deficit);
  Eigen::Vector2d values = eig.eigenvalues();
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (values(k) < -kLeakEigenFloor) {
      throw std::invalid_argument("scattering amplitudes amplify the photon");
    }
    values(k) = values(k) < kLeakEigenFloor ? 0.0 : std::sqrt(values(k));
  }
  const Eigen::Matrix2cd &v = eig.eigenvectors();
  return v * values.cast<Amplitude>().asDiagonal() * v.adjoint();
}

CavityWiring baseWiring(const std::string &cavityId, std::size_t spinIndex,
                        const CavityPorts &ports) {
  CavityWiring w;
  w.cavityId = cavityId;
  w.spinIndex = spinIndex;
  w.topEntry = ports.topEntry;
  w.bottomEntry = ports.bottomEntry;
  w.topExit = ports.topExit;
  w.bottomExit = ports.bottomExit;
  return w;
}

}  // namespace

double dephasingFactor(const DephasingParams &params) {
  if (!(params.tau > 0) || !(params.t2 > 0)) {
    throw std::invalid_argument("dephasing requires tau > 0 and T2 > 0");
  }
  return std::exp(-params.tau / params.t2);
}

DephasedFidelity applyDephasing(double fidelity, const DephasingParams &params) {
  const double keep = dephasingFactor(params);
  return {fidelity * keep, fidelity - (1.0 - keep)};
}

ElementMap idealCavityMap(const std::string &cavityId, std::size_t spinIndex,
                          const CavityPorts &ports) {
  CavityWiring w = baseWiring(cavityId, spinIndex, ports);
  w.coupledSame = 0.0;
  w.coupledFlip = 1.0;
  w.uncoupledSame = -1.0;
  w.uncoupledFlip = 0.0;
  return ElementMap(ElementKind::CavityIdeal, std::move(w));
}

ElementMap lossyCavityMap(const std::string &cavityId, std::size_t spinIndex,
                          const ScatterCoefficientsd &coeffs, const CavityPorts &ports,
                          const std::string &sinkMode) {
  if (!isLeakedMode(sinkMode)) {
    throw std::invalid_argument("sink mode '" + sinkMode + "' is not a leaked mode");
  }
  CavityWiring w = baseWiring(cavityId, spinIndex, ports);
  w.coupledSame = std::abs(coeffs.t);
  w.coupledFlip = std::abs(coeffs.r);
  w.uncoupledSame = -std::abs(coeffs.t0);
  w.uncoupledFlip = -std::abs(coeffs.r0);
  w.coupledLeak = leakBlock(w.coupledSame, w.coupledFlip);
  w.uncoupledLeak = leakBlock(w.uncoupledSame, w.uncoupledFlip);
  w.sinkMode = sinkMode;
  return ElementMap(ElementKind::CavityLossy, std::move(w));
}

}  // namespace cavsim
