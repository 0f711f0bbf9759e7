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
 * Quantum dot in a double-sided microcavity: steady-state input-output
 * coefficients and the spin-conditioned photon scattering map.
 *
 * All rates are in units of the cavity field decay rate kappa.
 */

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "cavsim/elements.hpp"

namespace cavsim {

template <typename Scalar>
struct CavityParams {
  Scalar g{0};             ///< QD-cavity coupling strength
  Scalar kappa{1};         ///< cavity field decay rate
  Scalar kappaS{0};        ///< side leakage rate
  Scalar gamma{0.1};       ///< dipole decay rate
  Scalar omega{0};         ///< photon frequency
  Scalar omegaCavity{0};   ///< cavity mode frequency
  Scalar omegaTrion{0};    ///< X- transition frequency
};

using CavityParamsd = CavityParams<double>;

/// Throws std::invalid_argument naming the first violated invariant.
template <typename Scalar>
void validate(const CavityParams<Scalar> &p) {
  if (!(p.kappa > 0)) throw std::invalid_argument("kappa must be > 0");
  if (!(p.kappaS >= 0)) throw std::invalid_argument("kappa_s must be >= 0");
  if (!(p.gamma > 0)) throw std::invalid_argument("gamma must be > 0");
  if (!(p.g >= 0)) throw std::invalid_argument("g must be >= 0");
}

/// t(omega) of the weak-excitation steady state; r(omega) = 1 + t(omega).
template <typename Scalar>
[[nodiscard]] std::complex<Scalar> transmissionCoefficient(const CavityParams<Scalar> &p) {
  validate(p);
  using C = std::complex<Scalar>;
  const C i{0, 1};
  const C dipole = i * (p.omegaTrion - p.omega) + p.gamma / Scalar(2);
  const C field = i * (p.omegaCavity - p.omega) + p.kappa + p.kappaS / Scalar(2);
  return -p.kappa * dipole / (dipole * field + p.g * p.g);
}

template <typename Scalar>
[[nodiscard]] std::complex<Scalar> reflectionCoefficient(const CavityParams<Scalar> &p) {
  return Scalar(1) + transmissionCoefficient(p);
}

/// Hot-cavity (r, t) and cold-cavity (r0, t0) amplitudes.
template <typename Scalar>
struct ScatterCoefficients {
  std::complex<Scalar> r;
  std::complex<Scalar> t;
  std::complex<Scalar> r0;
  std::complex<Scalar> t0;

  /// (|r|^2 + |t|^2 + |r0|^2 + |t0|^2) / 2: mean single-pass survival.
  [[nodiscard]] Scalar meanSurvival() const {
    return (std::norm(r) + std::norm(t) + std::norm(r0) + std::norm(t0)) / Scalar(2);
  }
};

using ScatterCoefficientsd = ScatterCoefficients<double>;

/// r = 1, t = 0, r0 = 0, t0 = -1: the lossless limit.
template <typename Scalar = double>
[[nodiscard]] ScatterCoefficients<Scalar> idealCoefficients() {
  return {Scalar(1), Scalar(0), Scalar(0), Scalar(-1)};
}

/// Coefficients at omega = omega_c = omega_X-. Throws std::invalid_argument
/// if any detuning is nonzero; use transmissionCoefficient for that case.
template <typename Scalar>
[[nodiscard]] ScatterCoefficients<Scalar> resonantCoefficients(const CavityParams<Scalar> &p) {
  validate(p);
  if (p.omega != p.omegaCavity || p.omega != p.omegaTrion) {
    throw std::invalid_argument("resonantCoefficients requires omega = omega_c = omega_X-");
  }
  const Scalar half = Scalar(1) / Scalar(2);
  const Scalar field = p.kappa + half * p.kappaS;
  const Scalar t0 = -p.kappa / field;
  const Scalar t = -(half * p.gamma * p.kappa) / (half * p.gamma * field + p.g * p.g);
  return {Scalar(1) + t, t, Scalar(1) + t0, t0};
}

struct DephasingParams {
  double tau = 0.0;  ///< cavity photon lifetime
  double t2 = 1.0;   ///< trion coherence time, same unit as tau
};

/// exp(-tau/T2): fraction of fidelity retained under exciton dephasing.
[[nodiscard]] double dephasingFactor(const DephasingParams &params);

/// The two readings of the dephasing budget applied to a fidelity F.
struct DephasedFidelity {
  double multiplicative;  ///< F * exp(-tau/T2)
  double subtractive;     ///< F - (1 - exp(-tau/T2))
};

[[nodiscard]] DephasedFidelity applyDephasing(double fidelity, const DephasingParams &params);

/// Entry and exit modes of one pass through a cavity. The top side is +z:
/// photons enter it travelling against z and leave it travelling along z.
struct CavityPorts {
  std::string topEntry;
  std::string bottomEntry;
  std::string topExit;
  std::string bottomExit;
};

/// Lossless scattering: coupled photons reflect with polarization and
/// direction flipped, uncoupled photons transmit with a sign change.
[[nodiscard]] ElementMap idealCavityMap(const std::string &cavityId, std::size_t spinIndex,
                                        const CavityPorts &ports);

/// Scattering with side leakage. Coupled: |r| reflected + |t| transmitted;
/// uncoupled: -|t0| transmitted - |r0| reflected. The missing amplitude goes
/// to `sinkMode`; see CavityWiring for how it is distributed.
[[nodiscard]] ElementMap lossyCavityMap(const std::string &cavityId, std::size_t spinIndex,
                                        const ScatterCoefficientsd &coeffs,
                                        const CavityPorts &ports,
                                        const std::string &sinkMode = std::string(kLeakedMode));

}  // namespace cavsim
