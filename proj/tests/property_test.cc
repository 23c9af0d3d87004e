// Copyright 2026 The femtolearn Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "property_suite.h"

using namespace femtolearn::testing;

namespace {

void Expect(const PropertyOutcome& outcome) {
  INFO(outcome.first_failure);
  CHECK(outcome.cases >= 100);
  CHECK(outcome.failures == 0);
}

}  // namespace

TEST_CASE("simplex invariants") {
  for (std::uint64_t seed : {1u, 2u, 3u}) Expect(CheckSimplexInvariants(120, seed));
}

TEST_CASE("Boltzmann shift invariance") {
  for (std::uint64_t seed : {1u, 2u, 3u}) Expect(CheckBoltzmannShiftInvariance(200, seed));
}

TEST_CASE("dynamics tangency") {
  for (std::uint64_t seed : {1u, 2u, 3u}) Expect(CheckTangency(200, seed));
}

TEST_CASE("Q-update fixed point") {
  for (std::uint64_t seed : {1u, 2u, 3u}) Expect(CheckQFixedPoint(200, seed));
}

TEST_CASE("SINR monotonicity") {
  for (std::uint64_t seed : {1u, 2u, 3u}) Expect(CheckSinrMonotonicity(200, seed));
}
