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

#include <algorithm>
#include <cmath>
#include <vector>

#include "femtolearn/learning.h"
#include "femtolearn/random.h"
#include "property_suite.h"
#include "test_games.h"

using namespace femtolearn;
using femtolearn::testing::DeskGame;

namespace {

LearnerOptions Options(Algorithm algorithm, double alpha, double delta) {
  LearnerOptions o;
  o.algorithm = algorithm;
  o.learning_rate = alpha;
  o.temperatures = {0.05, 0.05, 0.05};
  o.belief_factors = {delta, delta};
  return o;
}

std::vector<TraceRecord> Run(const UtilityTable& table, const LearnerOptions& o,
                             std::uint64_t seed, long steps,
                             std::vector<AgentState>* final_agents = nullptr) {
  std::vector<AgentState> agents = InitAgents(table, o);
  Rng rng(seed);
  std::vector<TraceRecord> trace;
  for (long t = 0; t < steps; ++t) {
    trace.push_back(LearningStep(agents, table, rng, o.algorithm, t));
  }
  if (final_agents) *final_agents = agents;
  return trace;
}

bool SameTrace(const std::vector<TraceRecord>& a, const std::vector<TraceRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (a[t].step != b[t].step || a[t].users.size() != b[t].users.size()) return false;
    for (std::size_t i = 0; i < a[t].users.size(); ++i) {
      const UserStepRecord& x = a[t].users[i];
      const UserStepRecord& y = b[t].users[i];
      if (x.action != y.action || x.realized_utility != y.realized_utility ||
          x.sinr != y.sinr || x.expected_utility != y.expected_utility ||
          !(x.strategy == y.strategy)) {
        return false;
      }
    }
  }
  return true;
}

// Same actions; real-valued fields equal up to relative `tol`.
bool NearTrace(const std::vector<TraceRecord>& a, const std::vector<TraceRecord>& b,
               double tol) {
  auto near = [tol](double x, double y) {
    return std::abs(x - y) <= tol * std::max(std::abs(x), std::abs(y));
  };
  if (a.size() != b.size()) return false;
  for (std::size_t t = 0; t < a.size(); ++t) {
    for (std::size_t i = 0; i < a[t].users.size(); ++i) {
      const UserStepRecord& x = a[t].users[i];
      const UserStepRecord& y = b[t].users[i];
      if (x.action != y.action || !near(x.realized_utility, y.realized_utility) ||
          !near(x.expected_utility, y.expected_utility)) {
        return false;
      }
      for (std::size_t j = 0; j < x.strategy.size(); ++j) {
        if (!near(x.strategy[j], y.strategy[j])) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("Boltzmann examples") {
  const Strategy s = BoltzmannStrategy(QTable{{1.0, 1.0, 1.0}}, 1.0);
  for (double p : s.probs) CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  const Strategy t = BoltzmannStrategy(QTable{{1.0, 0.0}}, 1.0);
  const double e = std::exp(1.0);
  CHECK(t[0] == doctest::Approx(e / (e + 1.0)).epsilon(1e-14));
  CHECK(t[1] == doctest::Approx(1.0 / (e + 1.0)).epsilon(1e-14));
  CHECK(t[0] == doctest::Approx(0.73106).epsilon(1e-5));

  const Strategy cold = BoltzmannStrategy(QTable{{1.0, 0.0}}, 0.01);
  CHECK(cold[0] > 1.0 - 1e-10);
  CHECK(cold.IsOnSimplex());
}

TEST_CASE("Boltzmann shift invariance and monotonicity") {
  const auto outcome = femtolearn::testing::CheckBoltzmannShiftInvariance(200, 8);
  INFO(outcome.first_failure);
  CHECK(outcome.cases >= 100);
  CHECK(outcome.failures == 0);
}

TEST_CASE("sampling") {
  Rng rng(42);
  for (int k = 0; k < 100; ++k) CHECK(SampleAction(Strategy::PointMass(3, 2), rng) == 2);

  const int n = 30000;
  std::vector<int> counts(3, 0);
  for (int k = 0; k < n; ++k) ++counts[SampleAction(Strategy::Uniform(3), rng)];
  const double sigma = std::sqrt(n * (1.0 / 3.0) * (2.0 / 3.0));
  for (int c : counts) CHECK(std::abs(c - n / 3.0) <= 3.0 * sigma);

  Rng a(9), b(9);
  const Strategy s{{0.2, 0.5, 0.3}};
  for (int k = 0; k < 100; ++k) CHECK(SampleAction(s, a) == SampleAction(s, b));
}

TEST_CASE("leader expected utility") {
  const UtilityTable table(DeskGame());
  const JointActionSpace& space = table.space();
  for (std::size_t a0 = 0; a0 < 3; ++a0) {
    const std::vector<Strategy> point{Strategy::PointMass(3, 1), Strategy::PointMass(3, 2)};
    CHECK(LeaderExpectedUtility(a0, point, table) ==
          table.utility(space.Encode({a0, 1, 2}), 0));

    const std::vector<Strategy> uniform{Strategy::Uniform(3), Strategy::Uniform(3)};
    double sum = 0.0;
    for (std::size_t a1 = 0; a1 < 3; ++a1) {
      for (std::size_t a2 = 0; a2 < 3; ++a2) sum += table.utility(space.Encode({a0, a1, a2}), 0);
    }
    CHECK(LeaderExpectedUtility(a0, uniform, table) ==
          doctest::Approx(sum / 9.0).epsilon(1e-14));
  }
}

TEST_CASE("joint estimate running mean") {
  JointEstimate est(3, 3);
  est = JointEstimateUpdate(est, 1, 2, 4.0);
  CHECK(est.u_hat(1, 2) == 4.0);
  CHECK(est.count(1, 2) == 1);
  est = JointEstimateUpdate(est, 1, 2, 2.0);
  CHECK(est.u_hat(1, 2) == 3.0);
  CHECK(est.count(1, 2) == 2);
  CHECK(est.u_hat(1, 0) == 0.0);
  CHECK(est.count(1, 0) == 0);
}

TEST_CASE("estimated expected utility") {
  JointEstimate est(2, 3);
  est.Update(0, 0, 1.0);
  est.Update(0, 1, 2.0);
  est.Update(0, 2, 3.0);
  CHECK(FollowerEstimatedExpectedUtility(est, 0, Strategy{{0.5, 0.25, 0.25}}) == 1.75);
  CHECK(FollowerEstimatedExpectedUtility(est, 0, Strategy::PointMass(3, 1)) == 2.0);

  JointEstimate flat(2, 3);
  for (std::size_t j = 0; j < 3; ++j) flat.Update(1, j, 0.6);
  CHECK(FollowerEstimatedExpectedUtility(flat, 1, Strategy{{0.2, 0.3, 0.5}}) ==
        doctest::Approx(0.6).epsilon(1e-15));
}

TEST_CASE("conjecture adjustment") {
  ContentionBelief belief;
  belief.others = {2};
  belief.radices = {2};
  belief.b = {0.25, 0.75};

  // Raw entries 0.05 and 0.55 before renormalization.
  const ContentionBelief shifted = ConjectureAdjust(belief, 2.0, 0.35, 0.25);
  CHECK(shifted.b[0] == doctest::Approx(0.05 / 0.6).epsilon(1e-12));
  CHECK(shifted.b[1] == doctest::Approx(0.55 / 0.6).epsilon(1e-12));

  // Raw -0.15 is clamped to 0.
  const ContentionBelief clamped = ConjectureAdjust(belief, 2.0, 0.45, 0.25);
  CHECK(clamped.b[0] == 0.0);
  CHECK(clamped.b[1] == doctest::Approx(1.0).epsilon(1e-15));

  CHECK(ConjectureAdjust(belief, 2.0, 0.3, 0.3) == belief);
  CHECK(ConjectureAdjust(belief, 0.0, 0.9, 0.1) == belief);
  CHECK_THROWS_AS(ConjectureAdjust(belief, -1.0, 0.9, 0.1), std::invalid_argument);

  const std::vector<std::size_t> counts{3, 3, 3};
  const ContentionBelief uniform = ContentionBelief::Uniform(1, counts);
  CHECK(uniform.others == std::vector<std::size_t>{2});
  for (double v : uniform.b) CHECK(v == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("RLA-II utility estimate") {
  const UtilityTable table(DeskGame());
  const JointActionSpace& space = table.space();
  ContentionBelief point;
  point.others = {2};
  point.radices = {3};
  point.b = {0.0, 1.0, 0.0};
  CHECK(Rla2EstimatedExpectedUtility(1, 2, Strategy::PointMass(3, 0), point, table) ==
        table.utility(space.Encode({0, 2, 1}), 1));

  // Nine-term enumeration over leader and the other follower.
  ContentionBelief belief = point;
  belief.b = {0.2, 0.3, 0.5};
  const Strategy leader{{0.6, 0.1, 0.3}};
  for (std::size_t own = 0; own < 3; ++own) {
    double sum = 0.0;
    for (std::size_t a0 = 0; a0 < 3; ++a0) {
      for (std::size_t a2 = 0; a2 < 3; ++a2) {
        sum += leader[a0] * belief.b[a2] * table.utility(space.Encode({a0, own, a2}), 1);
      }
    }
    CHECK(Rla2EstimatedExpectedUtility(1, own, leader, belief, table) ==
          doctest::Approx(sum).epsilon(1e-14));
  }
}

TEST_CASE("Q updates") {
  CHECK(QUpdate(QTable{{0.0, 0.0}}, 0, 10.0, 0.5).q == std::vector<double>{5.0, 0.0});
  CHECK(QUpdate(QTable{{1.0, 2.0}}, 1, 7.0, 0.0).q == std::vector<double>{1.0, 2.0});
  CHECK(QUpdate(QTable{{1.0, 2.0}}, 1, 2.0, 0.3).q == std::vector<double>{1.0, 2.0});
  CHECK(NoncoopQUpdate(QTable{{0.0, 0.0}}, 1, 1.0, 0.1).q[1] == doctest::Approx(0.1));

  // Repeated identical samples approach u geometrically at rate (1 - alpha).
  QTable q{{0.0}};
  for (int k = 1; k <= 50; ++k) {
    q = NoncoopQUpdate(q, 0, 2.0, 0.1);
    CHECK(2.0 - q.q[0] == doctest::Approx(2.0 * std::pow(0.9, k)).epsilon(1e-12));
  }
}

TEST_CASE("Q fixed point property") {
  const auto outcome = femtolearn::testing::CheckQFixedPoint(200, 12);
  INFO(outcome.first_failure);
  CHECK(outcome.cases >= 100);
  CHECK(outcome.failures == 0);
}

TEST_CASE("learning step contracts") {
  const UtilityTable table = UtilityTable(DeskGame()).Normalized();

  SUBCASE("frozen learning keeps strategies") {
    for (Algorithm algo : {Algorithm::kRla1, Algorithm::kRla2, Algorithm::kNoncoop}) {
      std::vector<AgentState> after;
      const auto trace = Run(table, Options(algo, 0.0, 2.0), 1, 5, &after);
      for (const TraceRecord& rec : trace) {
        for (const UserStepRecord& u : rec.users) CHECK(u.strategy == Strategy::Uniform(3));
      }
      for (const AgentState& a : after) CHECK(a.strategy == Strategy::Uniform(3));
    }
  }

  SUBCASE("zero belief factor reduces RLA-II to RLA-I") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto rla1 = Run(table, Options(Algorithm::kRla1, 0.1, 0.0), seed, 200);
      const auto rla2 = Run(table, Options(Algorithm::kRla2, 0.1, 0.0), seed, 200);
      CHECK(SameTrace(rla1, rla2));
    }
  }

  SUBCASE("fixed seed gives an identical trace") {
    for (Algorithm algo : {Algorithm::kRla1, Algorithm::kRla2, Algorithm::kNoncoop}) {
      CHECK(SameTrace(Run(table, Options(algo, 0.1, 2.0), 77, 10),
                      Run(table, Options(algo, 0.1, 2.0), 77, 10)));
    }
  }

  SUBCASE("a uniform belief is invariant, so RLA-II matches RLA-I") {
    // A uniform shift of a uniform belief renormalizes back to uniform (up to
    // rounding), so the conjectural correction vanishes.
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto rla1 = Run(table, Options(Algorithm::kRla1, 0.1, 2.0), seed, 20);
      const auto rla2 = Run(table, Options(Algorithm::kRla2, 0.1, 2.0), seed, 20);
      CHECK(NearTrace(rla1, rla2, 1e-12));
    }
  }

  SUBCASE("strategies stay on the simplex") {
    std::vector<AgentState> after;
    const auto trace = Run(table, Options(Algorithm::kRla2, 0.3, 2.0), 5, 500, &after);
    for (const TraceRecord& rec : trace) {
      CHECK(rec.users.size() == 3);
      for (const UserStepRecord& u : rec.users) CHECK(u.strategy.IsOnSimplex());
    }
  }
}

TEST_CASE("simplex invariants under learning (random games)") {
  const auto outcome = femtolearn::testing::CheckSimplexInvariants(150, 31);
  INFO(outcome.first_failure);
  CHECK(outcome.cases >= 100);
  CHECK(outcome.failures == 0);
}

TEST_CASE("algorithm names") {
  for (Algorithm a : {Algorithm::kRla1, Algorithm::kRla2, Algorithm::kNoncoop}) {
    CHECK(ParseAlgorithm(AlgorithmName(a)) == a);
  }
  CHECK_THROWS(ParseAlgorithm("rla3"));
}
