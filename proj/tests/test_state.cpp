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

#include <doctest.h>

#include <random>
#include <stdexcept>

#include "cavsim/state.hpp"
#include "support.hpp"

using namespace cavsim;
using cavsim::testing::basis;
using cavsim::testing::kRoot2;
using cavsim::testing::label;

namespace {

const SpinConfig kU{Spin::Up};
const SpinConfig kD{Spin::Down};

}  // namespace

TEST_SUITE("state") {
  TEST_CASE("tensor product of an even photon and spin up") {
    PhotonState photon{{{Polarization::R, "1"}, 1.0 / kRoot2}, {{Polarization::L, "1"}, 1.0 / kRoot2}};
    const std::vector<SpinState> spins{{1.0, 0.0}};
    const HybridState s = tensorProduct(photon, spins);
    CHECK(s.size() == 2);
    CHECK(std::abs(s.amplitude(label(Polarization::R, "1", kU)) - 1.0 / kRoot2) < 1e-15);
    CHECK(std::abs(s.amplitude(label(Polarization::L, "1", kU)) - 1.0 / kRoot2) < 1e-15);
    CHECK(squaredNorm(s) == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("tensor product of basis factors is a single term") {
    PhotonState photon{{{Polarization::R, "1"}, 1.0}};
    const std::vector<SpinState> spins{{1.0, 0.0}, {0.0, 1.0}};
    const HybridState s = tensorProduct(photon, spins).pruned();
    REQUIRE(s.size() == 1);
    CHECK(s.amplitude(label(Polarization::R, "1", {Spin::Up, Spin::Down})) == Amplitude(1.0));
  }

  TEST_CASE("tensor product gives the four product amplitudes") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n;
    for (int k = 0; k < 20; ++k) {
      Amplitude ac{n(rng), n(rng)}, bc{n(rng), n(rng)}, at{n(rng), n(rng)}, bt{n(rng), n(rng)};
      const double np = std::sqrt(std::norm(ac) + std::norm(bc));
      const double ne = std::sqrt(std::norm(at) + std::norm(bt));
      ac /= np, bc /= np, at /= ne, bt /= ne;
      PhotonState photon{{{Polarization::R, "in"}, ac}, {{Polarization::L, "in"}, bc}};
      const std::vector<SpinState> spins{{at, bt}};
      const HybridState s = tensorProduct(photon, spins);
      CHECK(std::abs(s.amplitude(label(Polarization::R, "in", kU)) - ac * at) < 1e-15);
      CHECK(std::abs(s.amplitude(label(Polarization::R, "in", kD)) - ac * bt) < 1e-15);
      CHECK(std::abs(s.amplitude(label(Polarization::L, "in", kU)) - bc * at) < 1e-15);
      CHECK(std::abs(s.amplitude(label(Polarization::L, "in", kD)) - bc * bt) < 1e-15);
      CHECK(std::abs(squaredNorm(s) - 1.0) < 1e-12);
    }
  }

  TEST_CASE("tensor product rejects zero and unnormalized factors") {
    const PhotonState zero{{{Polarization::R, "1"}, 0.0}};
    const PhotonState one{{{Polarization::R, "1"}, 1.0}};
    const std::vector<SpinState> up{{1.0, 0.0}};
    const std::vector<SpinState> nullSpin{{0.0, 0.0}};
    const std::vector<SpinState> longSpin{{1.0, 1.0}};
    CHECK_THROWS_AS((void)tensorProduct(zero, up), std::invalid_argument);
    CHECK_THROWS_AS((void)tensorProduct(one, nullSpin), std::invalid_argument);
    CHECK_THROWS_AS((void)tensorProduct(one, longSpin), std::invalid_argument);
  }

  TEST_CASE("inner product") {
    std::mt19937_64 rng(11);
    const auto labels = cavsim::testing::allLabels({"1", "2"}, 2);
    const HybridState a = cavsim::testing::randomState(rng, labels, 2);
    const HybridState b = cavsim::testing::randomState(rng, labels, 2);
    CHECK(std::abs(innerProduct(a, a) - 1.0) < 1e-12);
    CHECK(innerProduct(a, a).imag() == 0.0);
    CHECK(std::abs(innerProduct(a, b) - std::conj(innerProduct(b, a))) < 1e-15);
    const Amplitude s{0.3, -1.7};
    CHECK(std::abs(innerProduct(s * a, b) - std::conj(s) * innerProduct(a, b)) < 1e-14);
    CHECK(std::abs(innerProduct(a, s * b) - s * innerProduct(a, b)) < 1e-14);
  }

  TEST_CASE("distinct basis labels are exactly orthogonal") {
    const auto labels = cavsim::testing::allLabels({"1", "leaked"}, 1);
    for (const auto &x : labels) {
      for (const auto &y : labels) {
        const Amplitude v = innerProduct(basis(x), basis(y));
        CHECK(v == (x == y ? Amplitude(1.0) : Amplitude(0.0)));
      }
    }
  }

  TEST_CASE("inner product rejects mismatched electron counts") {
    CHECK_THROWS_AS((void)innerProduct(HybridState(1), HybridState(2)), std::invalid_argument);
  }

  TEST_CASE("normalize and squared norm") {
    std::mt19937_64 rng(5);
    const auto labels = cavsim::testing::allLabels({"1"}, 1);
    const HybridState psi = cavsim::testing::randomState(rng, labels, 1);
    CHECK(std::abs(squaredNorm(psi) - 1.0) < 1e-12);
    CHECK(maxDeviation(normalize(2.0 * psi), psi) < 1e-15);
    CHECK_THROWS_AS((void)normalize(HybridState(1)), std::domain_error);
  }

  TEST_CASE("restricting to every mode keeps the norm; dropping a mode removes it") {
    std::mt19937_64 rng(8);
    const auto labels = cavsim::testing::allLabels({"1", "2", "leaked#3"}, 1);
    const HybridState s = cavsim::testing::randomState(rng, labels, 1);
    CHECK(squaredNorm(restrictToModes(s, {"1", "2", "leaked#3"})) ==
          doctest::Approx(squaredNorm(s)).epsilon(1e-15));
    const HybridState kept = restrictToModes(s, {"1"});
    for (const auto &[l, a] : kept.terms()) CHECK(l.photon.mode == "1");
    const HybridState visible = dropLeaked(s);
    for (const auto &[l, a] : visible.terms()) CHECK_FALSE(isLeakedMode(l.photon.mode));
    CHECK(squaredNorm(visible) + squaredNorm(restrictToModes(s, {"leaked#3"})) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("leaked mode names") {
    CHECK(isLeakedMode("leaked"));
    CHECK(isLeakedMode("leaked#12"));
    CHECK_FALSE(isLeakedMode("out"));
    CHECK_FALSE(isLeakedMode("leak"));
  }

  TEST_CASE("photon spin and coupling labels") {
    CHECK(photonSpin(Polarization::R, Direction::AlongZ) == 1);
    CHECK(photonSpin(Polarization::L, Direction::AgainstZ) == 1);
    CHECK(photonSpin(Polarization::R, Direction::AgainstZ) == -1);
    CHECK(photonSpin(Polarization::L, Direction::AlongZ) == -1);
  }

  TEST_CASE("pruning drops tiny amplitudes without moving reported quantities") {
    std::mt19937_64 rng(21);
    const auto labels = cavsim::testing::allLabels({"1"}, 1);
    HybridState s = cavsim::testing::randomState(rng, labels, 1);
    const HybridState dust(1, {{label(Polarization::R, "2", kU), 1e-17},
                               {label(Polarization::L, "2", kD), Amplitude(0.0, -3e-16)}});
    const HybridState noisy = s + dust;
    const HybridState clean = noisy.pruned();
    CHECK(clean.size() == s.size());
    CHECK(std::abs(squaredNorm(clean) - squaredNorm(noisy)) < 1e-12);
    CHECK(std::abs(innerProduct(s, clean) - innerProduct(s, noisy)) < 1e-12);
    CHECK(noisy.pruned(1e-20).size() == s.size() + 2);
  }

  TEST_CASE("json records are sorted by label and round-trip") {
    const HybridState s(2, {{label(Polarization::L, "2", Direction::AgainstZ, {Spin::Down, Spin::Up}),
                             Amplitude(0.6, 0.0)},
                            {label(Polarization::R, "10", {Spin::Up, Spin::Up}), Amplitude(0.0, -0.8)}});
    const auto j = toJson(s);
    REQUIRE(j.size() == 2);
    CHECK(j[0]["polarization"] == "R");
    CHECK(j[0]["path"] == "10");
    CHECK(j[0]["direction"] == "alongZ");
    CHECK(j[0]["spins"] == "uu");
    CHECK(j[0]["im"] == -0.8);
    CHECK(j[1]["direction"] == "againstZ");
    CHECK(j[1]["spins"] == "du");
    CHECK(stateFromJson(j, 2) == s);
    CHECK(toJson(stateFromJson(j, 2)).dump() == j.dump());
  }

  TEST_CASE("spin configurations are ordered up first, first electron most significant") {
    const auto c = allSpinConfigs(2);
    REQUIRE(c.size() == 4);
    CHECK(toString(c[0]) == "uu");
    CHECK(toString(c[1]) == "ud");
    CHECK(toString(c[2]) == "du");
    CHECK(toString(c[3]) == "dd");
  }
}
