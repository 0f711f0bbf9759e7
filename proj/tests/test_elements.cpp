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

#include <numbers>
#include <random>

#include "cavsim/cavity.hpp"
#include "cavsim/elements.hpp"
#include "support.hpp"

using namespace cavsim;
using cavsim::testing::basis;
using cavsim::testing::kRoot2;
using cavsim::testing::label;

namespace {

const SpinConfig kU{Spin::Up};
const SpinConfig kD{Spin::Down};
const Polarization R = Polarization::R;
const Polarization L = Polarization::L;

Port along(const std::string &m) { return {m, Direction::AlongZ}; }
Port against(const std::string &m) { return {m, Direction::AgainstZ}; }

// One instance of every unitary element kind, for property checks.
std::vector<ElementMap> unitaryElements() {
  return {makePBS({along("1")}, {along("2")}, {along("3")}),
          makePBS({along("1"), against("2")}, {along("x"), along("5")}, {along("5"), along("y")}),
          makeHWP(along("1")),
          makePhaseShift(along("1"), std::numbers::pi),
          makePhaseShift(along("2"), 0.37),
          makeSwitch(along("1"), along("2"), along("3"), 0),
          makeSwitch(along("1"), along("2"), along("3"), 1),
          makeDelay(along("1")),
          makeSpinHadamard(0, 2),
          makeSpinHadamard(1, 2),
          idealCavityMap("c", 0, {"1", "2", "1", "2"})};
}

}  // namespace

TEST_SUITE("elements") {
  TEST_CASE("pbs transmits R and reflects L without phase") {
    const ElementMap pbs = makePBS({along("1")}, {along("transmit")}, {along("2")});
    CHECK(applyLinearMap(basis(label(R, "1", kU)), pbs) == basis(label(R, "transmit", kU)));
    CHECK(applyLinearMap(basis(label(L, "1", kU)), pbs) == basis(label(L, "2", kU)));
    const HybridState even(1, {{label(R, "1", kU), 1 / kRoot2}, {label(L, "1", kU), 1 / kRoot2}});
    const HybridState out = applyLinearMap(even, pbs);
    CHECK(out.size() == 2);
    CHECK(squaredNorm(out) == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("pbs writes the output port direction") {
    const ElementMap pbs = makePBS({along("2")}, {against("3")}, {along("4")});
    CHECK(applyLinearMap(basis(label(R, "2", kU)), pbs) ==
          basis(label(R, "3", Direction::AgainstZ, kU)));
  }

  TEST_CASE("pbs rejects inconsistent or overlapping ports") {
    CHECK_THROWS_AS((void)makePBS({along("1")}, {along("2"), along("3")}, {along("4")}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)makePBS({along("1"), along("1")}, {along("2"), along("3")},
                                  {along("4"), along("5")}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)makePBS({along("1"), along("2")}, {along("3"), along("3")},
                                  {along("4"), along("5")}),
                    std::invalid_argument);
  }

  TEST_CASE("hwp maps R and L to the even and odd superpositions") {
    const ElementMap h = makeHWP(along("2"));
    const HybridState r = applyLinearMap(basis(label(R, "2", kD)), h);
    const HybridState l = applyLinearMap(basis(label(L, "2", kD)), h);
    CHECK(std::abs(r.amplitude(label(R, "2", kD)) - 1 / kRoot2) < 1e-15);
    CHECK(std::abs(r.amplitude(label(L, "2", kD)) - 1 / kRoot2) < 1e-15);
    CHECK(std::abs(l.amplitude(label(R, "2", kD)) - 1 / kRoot2) < 1e-15);
    CHECK(std::abs(l.amplitude(label(L, "2", kD)) + 1 / kRoot2) < 1e-15);
  }

  TEST_CASE("phase shift") {
    const HybridState r = basis(label(R, "4", kU));
    const ElementMap pi = makePhaseShift(along("4"), std::numbers::pi);
    CHECK(applyLinearMap(r, pi) == basis(label(R, "4", kU), -1.0));
    CHECK(applyLinearMap(basis(label(L, "4", kU)), pi) == basis(label(L, "4", kU), -1.0));
    CHECK(applyLinearMap(r, makePhaseShift(along("4"), 0.0)) == r);
    CHECK(applyLinearMap(applyLinearMap(r, pi), pi) == r);
    const HybridState q = applyLinearMap(r, makePhaseShift(along("4"), 0.5));
    CHECK(std::abs(q.amplitude(label(R, "4", kU)) - std::polar(1.0, 0.5)) < 1e-15);
  }

  TEST_CASE("spin hadamard acts on the indexed electron only") {
    const ElementMap h0 = makeSpinHadamard(0, 1);
    const HybridState up = applyLinearMap(basis(label(R, "1", kU)), h0);
    const HybridState down = applyLinearMap(basis(label(R, "1", kD)), h0);
    CHECK(std::abs(up.amplitude(label(R, "1", kU)) - 1 / kRoot2) < 1e-15);
    CHECK(std::abs(up.amplitude(label(R, "1", kD)) - 1 / kRoot2) < 1e-15);
    CHECK(std::abs(down.amplitude(label(R, "1", kU)) - 1 / kRoot2) < 1e-15);
    CHECK(std::abs(down.amplitude(label(R, "1", kD)) + 1 / kRoot2) < 1e-15);

    const ElementMap h1 = makeSpinHadamard(1, 2);
    const HybridState two = applyLinearMap(basis(label(L, "7", {Spin::Down, Spin::Up})), h1);
    CHECK(two.size() == 2);
    for (const auto &[l, a] : two.terms()) {
      CHECK(l.spins[0] == Spin::Down);
      CHECK((l.photon.polarization == L));
    }
    CHECK_THROWS_AS((void)makeSpinHadamard(2, 2), std::out_of_range);
  }

  TEST_CASE("switch routes by selector and delay is the identity") {
    const HybridState r = basis(label(L, "8", kU));
    CHECK(applyLinearMap(r, makeSwitch(along("8"), along("9"), along("10"), 0)) ==
          basis(label(L, "9", kU)));
    CHECK(applyLinearMap(r, makeSwitch(along("8"), along("9"), along("10"), 1)) ==
          basis(label(L, "10", kU)));
    CHECK(applyLinearMap(r, makeDelay(along("8"))) == r);
    CHECK_THROWS_AS((void)makeSwitch(along("8"), along("9"), along("10"), 2), std::invalid_argument);
  }

  TEST_CASE("elements leave other ports untouched unless asked to be strict") {
    const HybridState elsewhere = basis(label(R, "9", kU));
    const ElementMap h = makeHWP(along("2"));
    CHECK(applyLinearMap(elsewhere, h) == elsewhere);
    const HybridState wrongWay = basis(label(R, "2", Direction::AgainstZ, kU));
    CHECK(applyLinearMap(wrongWay, h) == wrongWay);
    ApplyOptions strict;
    strict.identityOnUntouched = false;
    CHECK_THROWS_AS((void)applyLinearMap(elsewhere, h, strict), std::invalid_argument);
  }

  TEST_CASE("every element is unitary on its declared ports") {
    for (const auto &e : unitaryElements()) {
      const ElementMatrix m = elementMatrix(e, 2);
      CAPTURE(toString(e.kind()));
      REQUIRE(m.matrix.cols() == static_cast<Eigen::Index>(m.inputs.size()));
      const Eigen::MatrixXcd gram = m.matrix.adjoint() * m.matrix;
      CHECK((gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() <
            1e-12);
    }
  }

  TEST_CASE("linearity on random superpositions") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> n;
    const auto everywhere = cavsim::testing::allLabels({"1", "2", "3"}, 2);
    for (const auto &e : unitaryElements()) {
      auto labels = e.declaredInputs(2);
      if (labels.empty()) labels = everywhere;
      for (int k = 0; k < 5; ++k) {
        const HybridState x = cavsim::testing::randomState(rng, labels, 2);
        const HybridState y = cavsim::testing::randomState(rng, labels, 2);
        const Amplitude a{n(rng), n(rng)}, b{n(rng), n(rng)};
        const HybridState lhs = applyLinearMap(a * x + b * y, e);
        const HybridState rhs = a * applyLinearMap(x, e) + b * applyLinearMap(y, e);
        CHECK(maxDeviation(lhs, rhs) < 1e-12);
        CHECK(std::abs(squaredNorm(applyLinearMap(x, e)) - 1.0) < 1e-12);
      }
    }
  }

  TEST_CASE("photon elements commute with spin operations") {
    std::mt19937_64 rng(23);
    const auto labels = cavsim::testing::allLabels({"1", "2"}, 2);
    const std::vector<ElementMap> photonOps{
        makePBS({along("1")}, {along("2")}, {along("3")}),
        makePhaseShift(along("1"), std::numbers::pi),
        makeSwitch(along("1"), along("2"), along("3"), 1),
        makeHWP(along("2"))};
    const ElementMap h = makeSpinHadamard(1, 2);
    for (const auto &p : photonOps) {
      const HybridState x = cavsim::testing::randomState(rng, labels, 2);
      CHECK(maxDeviation(applyLinearMap(applyLinearMap(x, p), h),
                         applyLinearMap(applyLinearMap(x, h), p)) < 1e-12);
    }
  }

  TEST_CASE("hwp and spin hadamard are involutions") {
    std::mt19937_64 rng(29);
    const auto labels = cavsim::testing::allLabels({"1", "2"}, 1);
    for (const auto &e : {makeHWP(along("1")), makeSpinHadamard(0, 1)}) {
      const HybridState x = cavsim::testing::randomState(rng, labels, 1);
      CHECK(maxDeviation(applyLinearMap(applyLinearMap(x, e), e), x) < 1e-12);
    }
  }
}
