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

#include <vector>

#include "femtolearn/equilibrium.h"
#include "femtolearn/random.h"
#include "femtolearn/units.h"
#include "property_suite.h"
#include "reference_oracle.h"
#include "test_games.h"

using namespace femtolearn;
using femtolearn::testing::DeskGame;
using femtolearn::testing::MakeGame;

namespace {

femtolearn::testing::RawGame ToRaw(const GameInstance& g) {
  femtolearn::testing::RawGame raw;
  const std::size_t n = g.num_users();
  raw.gain.assign(n, std::vector<double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) raw.gain[j][i] = g.gain(j, i);
    std::vector<double> dbm;
    for (double w : g.user(j).action_set.levels()) dbm.push_back(WattToDbm(w));
    raw.levels_dbm.push_back(dbm);
    raw.target_db.push_back(LinearToDb(g.user(j).sinr_target_lin));
    raw.circuit_dbm.push_back(WattToDbm(g.user(j).circuit_power_w));
  }
  raw.bandwidth_hz = g.bandwidth_hz();
  raw.noise_dbm = WattToDbm(g.noise_power_w());
  return raw;
}

// One MU and one FU; the MU only survives if the FU stays at 0.1 W, which it
// does once its target is halved from 1500 to 750.
GameInstance OneRoundGame() {
  return MakeGame({{1e-9, 1e-10}, {1e-12, 1e-6}}, {{0.1, 1.0}, {0.1, 1.0}},
                  {2000.0, 1500.0}, {0.01, 0.01});
}

}  // namespace

TEST_CASE("best response ties go to the lowest power") {
  // Unreachable targets: every action yields utility 0.
  const GameInstance g = MakeGame({{1e-13, 1e-13}, {1e-13, 1e-13}},
                                  {{0.1, 0.3, 1.0}, {0.1, 0.3, 1.0}},
                                  {1e6, 1e6}, {0.01, 0.01});
  for (std::size_t a = 0; a < 3; ++a) {
    CHECK(BestResponse(0, {0, a}, g) == 0);
    CHECK(BestResponse(1, {a, 2}, g) == 0);
  }
  const GameInstance single = MakeGame({{1e-9}}, {{0.1}}, {1.0}, {0.01});
  CHECK(BestResponse(0, {0}, single) == 0);
}

TEST_CASE("best response on the desk instance matches enumeration") {
  const GameInstance g = DeskGame();
  ForEachJointAction(g.ActionCounts(), [&](const JointAction& a) {
    for (std::size_t i = 0; i < 3; ++i) {
      std::size_t best = 0;
      double best_u = -1.0;
      for (std::size_t k = 0; k < 3; ++k) {
        JointAction dev = a;
        dev[i] = k;
        const double u = Utility(i, PowerProfile::FromIndices(g, dev), g);
        if (u > best_u) {
          best = k;
          best_u = u;
        }
      }
      CHECK(BestResponse(i, a, g) == best);
    }
  });
}

TEST_CASE("follower equilibria on the desk instance") {
  const GameInstance g = DeskGame();
  const femtolearn::testing::ReferenceOracle ref(ToRaw(g));
  for (std::size_t a0 = 0; a0 < 3; ++a0) {
    std::vector<JointAction> expected;
    for (std::size_t a1 = 0; a1 < 3; ++a1) {
      for (std::size_t a2 = 0; a2 < 3; ++a2) {
        if (ref.FollowersInEquilibrium({a0, a1, a2})) expected.push_back({a0, a1, a2});
      }
    }
    CHECK(FollowerPureNash(a0, g) == expected);
  }
}

TEST_CASE("single follower: the equilibria are its maximizers") {
  Rng rng(3);
  int games = 0;
  while (games < 100) {
    const GameInstance g = femtolearn::testing::RandomGame(rng);
    if (g.num_users() != 2) continue;
    ++games;
    const UtilityTable table(g);
    for (std::size_t a0 = 0; a0 < table.num_actions(0); ++a0) {
      const std::size_t br = BestResponse(1, {a0, 0}, table);
      const double best = table.utility(table.space().Encode({a0, br}), 1);
      std::vector<JointAction> maximizers;
      for (std::size_t a1 = 0; a1 < table.num_actions(1); ++a1) {
        if (table.utility(table.space().Encode({a0, a1}), 1) == best) {
          maximizers.push_back({a0, a1});
        }
      }
      const auto nes = FollowerPureNash(a0, table);
      REQUIRE_FALSE(nes.empty());
      CHECK(nes == maximizers);
      CHECK(nes.front()[1] == br);
    }
  }
}

TEST_CASE("decoupled game: componentwise argmax") {
  const std::vector<double> levels{0.1, 0.3, 1.0};
  const GameInstance g =
      MakeGame({{1e-9, 0.0, 0.0}, {0.0, 1e-8, 0.0}, {0.0, 0.0, 1e-7}},
               {levels, levels, levels}, {1.0, 1.0, 1.0}, {0.01, 0.01, 0.01});
  JointAction argmax(3);
  for (std::size_t i = 0; i < 3; ++i) argmax[i] = BestResponse(i, {0, 0, 0}, g);
  for (std::size_t a0 = 0; a0 < 3; ++a0) {
    const auto nes = FollowerPureNash(a0, g);
    REQUIRE(nes.size() == 1);
    CHECK(nes[0][1] == argmax[1]);
    CHECK(nes[0][2] == argmax[2]);
  }
  const EquilibriumResult se = StackelbergOracle(g);
  CHECK(se.is_pure_se);
  CHECK(se.profile() == argmax);
}

TEST_CASE("follower equilibria admit no profitable deviation (random games)") {
  const auto outcome = [] {
    femtolearn::testing::PropertyOutcome out;
    Rng rng(21);
    for (int k = 0; k < 150; ++k) {
      const GameInstance g = femtolearn::testing::RandomGame(rng);
      const UtilityTable table(g);
      for (std::size_t a0 = 0; a0 < table.num_actions(0); ++a0) {
        for (const JointAction& ne : FollowerPureNash(a0, table)) {
          ++out.cases;
          for (std::size_t i = 1; i < g.num_users(); ++i) {
            const double u = Utility(i, PowerProfile::FromIndices(g, ne), g);
            for (std::size_t d = 0; d < table.num_actions(i); ++d) {
              JointAction dev = ne;
              dev[i] = d;
              if (Utility(i, PowerProfile::FromIndices(g, dev), g) > u) ++out.failures;
            }
          }
        }
      }
    }
    return out;
  }();
  CHECK(outcome.cases >= 100);
  CHECK(outcome.failures == 0);
}

TEST_CASE("oracle agrees with the reference solver on random games") {
  Rng rng(2026);
  int pure = 0, compared = 0;
  for (int k = 0; k < 200; ++k) {
    const GameInstance g = femtolearn::testing::RandomGame(rng);
    const EquilibriumResult se = StackelbergOracle(g);
    const auto ref = femtolearn::testing::ReferenceOracle(ToRaw(g)).Solve();
    CHECK(se.is_pure_se == ref.pure);
    // Leader optimality over every action with a pure follower response.
    const double chosen = se.candidates[se.leader_action_index].leader_utility;
    for (const LeaderCandidate& c : se.candidates) {
      if (c.pure_nash) CHECK(chosen >= c.leader_utility);
    }
    if (!ref.pure) continue;
    ++pure;
    CHECK(se.profile() == ref.profile);
    for (std::size_t i = 0; i < g.num_users(); ++i) {
      CHECK(se.utilities[i] == doctest::Approx(ref.utilities[i]).epsilon(1e-9));
    }
  }
  MESSAGE("pure Stackelberg equilibria: " << pure << " of 200 random games");
  CHECK(pure >= 100);
}

TEST_CASE("feasibility adjustment") {
  SUBCASE("feasible game is returned unchanged") {
    const GameInstance g = DeskGame();
    REQUIRE(WorstCaseMacroSinr(g) >= g.user(0).sinr_target_lin);
    const FeasibilityResult r = FeasibilityAdjust(g, 0.5, 10);
    CHECK(r.feasible);
    CHECK(r.rounds == 0);
    CHECK(r.game == g);
  }
  SUBCASE("one round scales every femtocell target by the factor") {
    const GameInstance g = OneRoundGame();
    REQUIRE(WorstCaseMacroSinr(g) < g.user(0).sinr_target_lin);
    const FeasibilityResult r = FeasibilityAdjust(g, 0.5, 10);
    CHECK(r.feasible);
    CHECK(r.rounds == 1);
    CHECK(r.game.user(1).sinr_target_lin == 750.0);
    CHECK(r.game.user(0).sinr_target_lin == 2000.0);
  }
  SUBCASE("round budget exhausted is reported") {
    const FeasibilityResult r = FeasibilityAdjust(OneRoundGame(), 0.5, 0);
    CHECK_FALSE(r.feasible);
    CHECK(r.rounds == 0);
  }
  SUBCASE("interference-free macrocell needs no adjustment") {
    const GameInstance g = MakeGame({{1e-9, 1e-10}, {0.0, 1e-6}},
                                    {{0.1, 1.0}, {0.1, 1.0}}, {1e5, 1e9}, {0.01, 0.01});
    REQUIRE(1e-9 * 1.0 / 1e-14 >= 1e5);
    const FeasibilityResult r = FeasibilityAdjust(g, 0.5, 10);
    CHECK(r.feasible);
    CHECK(r.rounds == 0);
    CHECK(r.game == g);
  }
  CHECK_THROWS_AS(FeasibilityAdjust(DeskGame(), 1.0, 3), std::invalid_argument);
}

TEST_CASE("macrocell protection deactivates the interferer") {
  const ProtectionResult r = ProtectMacrocell(OneRoundGame());
  CHECK(r.macro_feasible);
  CHECK(r.user_ids == std::vector<std::size_t>{0});
  CHECK(r.follower_active == std::vector<bool>{false});
  CHECK(r.game.num_users() == 1);

  const ProtectionResult kept = ProtectMacrocell(DeskGame());
  CHECK(kept.user_ids == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("complete-information best response converges on the desk instance") {
  const UtilityTable table(DeskGame());
  const BestResponseDynamicsResult r = CompleteInformationProfile(table);
  CHECK(r.converged);
  for (std::size_t i = 0; i < 3; ++i) CHECK(BestResponse(i, r.profile, table) == r.profile[i]);
}
