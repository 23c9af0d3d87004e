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

#include <cmath>

#include "femtolearn/channel_model.h"
#include "femtolearn/random.h"
#include "femtolearn/units.h"

using namespace femtolearn;

TEST_CASE("dBm and dB conversions") {
  CHECK(DbmToWatt(30.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(DbmToWatt(20.0) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(DbmToWatt(-110.0) == doctest::Approx(1e-14).epsilon(1e-12));
  CHECK(DbToLinear(0.0) == 1.0);
  CHECK(DbToLinear(3.0) == doctest::Approx(1.9952623149688795).epsilon(1e-14));
  CHECK(DbToLinear(5.0) == doctest::Approx(3.1622776601683795).epsilon(1e-14));
}

TEST_CASE("dB round trip over random values") {
  Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    const double x = -150.0 + 200.0 * rng.Uniform01();
    CHECK(WattToDbm(DbmToWatt(x)) == doctest::Approx(x).epsilon(1e-12));
    CHECK(LinearToDb(DbToLinear(x)) == doctest::Approx(x).epsilon(1e-12));
  }
}

TEST_CASE("path-loss gains") {
  Topology topo;
  topo.distances = SquareMatrix(3);
  topo.distances(0, 0) = 10.0;
  topo.distances(0, 1) = 1.0;
  topo.distances(0, 2) = 100.0;
  topo.distances(1, 0) = topo.distances(1, 1) = topo.distances(1, 2) = 2.0;
  topo.distances(2, 0) = topo.distances(2, 1) = topo.distances(2, 2) = 3.0;
  const GainMatrix g = ComputeGainMatrix(topo, 4.0);
  CHECK(g.h(0, 0) == doctest::Approx(1e-4).epsilon(1e-14));
  CHECK(g.h(0, 1) == 1.0);
  CHECK(g.h(0, 2) == doctest::Approx(1e-8).epsilon(1e-14));

  topo.distances(1, 1) = 0.0;
  CHECK_THROWS_AS(ComputeGainMatrix(topo, 4.0), std::invalid_argument);
}

TEST_CASE("topology geometry over many seeds") {
  NetworkConfig config;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    config.rng_seed = seed;
    const Topology topo = GenerateTopology(config);
    REQUIRE(topo.num_users() == 3);
    REQUIRE(topo.bs_positions.size() == 3);
    CHECK(topo.bs_positions[0] == Point{0.0, 0.0});
    for (std::size_t i = 1; i < 3; ++i) {
      CHECK(Distance(topo.bs_positions[i], topo.bs_positions[0]) <= 500.0);
      CHECK(Distance(topo.user_positions[i], topo.bs_positions[i]) <= 20.0);
    }
    CHECK(Distance(topo.user_positions[0], topo.bs_positions[0]) <= 500.0);
    const GainMatrix g = BuildGains(config, topo);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        CHECK(topo.distances(i, j) >= config.min_distance_m);
        CHECK(topo.distances(i, j) ==
              Distance(topo.user_positions[i], topo.bs_positions[j]));
        CHECK(g.h(i, j) == std::pow(topo.distances(i, j), -4.0));
        CHECK(g.h(i, j) > 0.0);
        CHECK(g.h(i, j) <= 1.0);
      }
    }
  }
}

TEST_CASE("gain scaling law: doubling every distance divides gains by 2^n") {
  NetworkConfig config;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    config.rng_seed = seed;
    Topology topo = GenerateTopology(config);
    const GainMatrix g = ComputeGainMatrix(topo, 4.0);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) topo.distances(i, j) *= 2.0;
    }
    const GainMatrix g2 = ComputeGainMatrix(topo, 4.0);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        CHECK(g2.h(i, j) == doctest::Approx(g.h(i, j) / 16.0).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("topology is deterministic per seed") {
  NetworkConfig config;
  config.rng_seed = 1234;
  CHECK(GenerateTopology(config) == GenerateTopology(config));
  NetworkConfig other = config;
  other.rng_seed = 1235;
  CHECK_FALSE(GenerateTopology(config) == GenerateTopology(other));
}

TEST_CASE("shadowing is seeded and disabled at zero sigma") {
  NetworkConfig config;
  const Topology topo = GenerateTopology(config);
  const GainMatrix plain = BuildGains(config, topo);
  config.shadowing_sigma_db = 8.0;
  const GainMatrix shadowed = BuildGains(config, topo);
  CHECK(shadowed == BuildGains(config, topo));
  CHECK_FALSE(shadowed == plain);
}

TEST_CASE("network validation") {
  NetworkConfig config;
  config.num_femtocells = 0;
  CHECK_THROWS_AS(config.Validate(), std::invalid_argument);
  config = NetworkConfig{};
  config.femto_radius_m = 600.0;
  CHECK_THROWS_AS(config.Validate(), std::invalid_argument);
  config = NetworkConfig{};
  config.path_loss_exponent = -1.0;
  CHECK_THROWS_AS(config.Validate(), std::invalid_argument);
}

TEST_CASE("rng streams") {
  Rng a(7), b(7);
  for (int k = 0; k < 100; ++k) {
    const double u = a.Uniform01();
    CHECK(u == b.Uniform01());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK(MixSeed(1, 0) != MixSeed(1, 1));
  CHECK(MixSeed(1, 0) == MixSeed(1, 0));
}
