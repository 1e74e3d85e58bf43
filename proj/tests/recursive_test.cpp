// Copyright 2026 The epop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include <gtest/gtest.h>

#include "epop/apps.hpp"
#include "epop/error.hpp"
#include "epop/oracle.hpp"
#include "epop/recursive.hpp"
#include "epop/verify.hpp"
#include "support.hpp"

namespace epop {
namespace {

using testing::half_half;
using testing::profile;
using testing::third_two_thirds;

TEST(RunProtocol, IdentityIsOneRound) {
  auto p = profile({{0, 0.3}, {2, 0.7}});
  auto run = run_protocol(p, p, 3);
  ASSERT_EQ(run.size(), 1);
  EXPECT_TRUE(run.terminated());
  EXPECT_NEAR(run.rounds[0].fidelity, 1.0, 1e-15);
  EXPECT_NEAR(run.rounds[0].probability, 1.0, 1e-15);
}

TEST(RunProtocol, TwoSectorExample) {
  auto run = run_protocol(half_half(), third_two_thirds(), 2);
  ASSERT_EQ(run.size(), 2);
  EXPECT_NEAR(run.rounds[0].fidelity, 1.0, 1e-15);
  EXPECT_NEAR(run.rounds[0].probability, 0.75, 1e-15);
  EXPECT_NEAR(run.rounds[1].fidelity, 1.0 / 3, 1e-15);
  EXPECT_NEAR(run.rounds[1].probability, 0.25, 1e-15);
  EXPECT_NEAR(run.rounds[0].kraus.at(1), 1.0, 1e-15);
  EXPECT_NEAR(run.rounds[0].kraus.at(0), 0.5, 1e-15);
  EXPECT_NEAR(run.rounds[1].kraus.at(0), 0.5, 1e-15);
  EXPECT_NEAR(run.rounds[1].output.weight_of(0), 1.0, 1e-15);
}

TEST(RunProtocol, TwoSectorAgainstExplicitMatrices) {
  auto p = half_half();
  auto q = third_two_thirds();
  auto run = run_protocol(p, q, 2);
  auto o = simulate_protocol(model_for(p, q), p, q, 2);
  ASSERT_EQ(o.rounds.size(), 2u);
  for (int k = 0; k < 2; ++k) {
    EXPECT_NEAR(o.rounds[k].fidelity, run.rounds[k].fidelity, 1e-12);
    EXPECT_NEAR(o.rounds[k].probability, run.rounds[k].probability, 1e-12);
  }
  EXPECT_LT(o.completeness_error, 1e-12);
}

TEST(RunProtocol, StopsAtRequestedRounds) {
  auto p = profile({{0, 0.1}, {1, 0.2}, {2, 0.3}, {3, 0.4}});
  auto q = profile({{0, 0.4}, {1, 0.3}, {2, 0.2}, {3, 0.1}});
  auto run = run_protocol(p, q, 2);
  EXPECT_EQ(run.size(), 2);
  EXPECT_FALSE(run.terminated());
  EXPECT_EQ(run.rounds_requested, 2);
  EXPECT_THROW(run_protocol(p, q, 0), Error);
}

TEST(RunProtocol, CloningFirstRound) {
  auto run = run_protocol(binomial_profile(80), binomial_profile(400), 1);
  const double p1 = run.rounds[0].probability;
  EXPECT_GT(p1, 6e-20 / 1.5);
  EXPECT_LT(p1, 6e-20 * 1.5);
  EXPECT_NEAR(p1 / 6.3971768661602812e-20, 1.0, 1e-10);
}

// Round fidelity is the target weight still outside U_{k-1}; Kraus weights
// sum to one on each common sector.
TEST(RunProtocol, RoundStructureOnRandomInstances) {
  Rng rng(31);
  for (int t = 0; t < 100; ++t) {
    auto inst = random_instance(rng);
    auto run = run_protocol(inst.p, inst.q, kAllRounds);
    ASSERT_TRUE(run.terminated());
    for (int k = 1; k <= run.size(); ++k) {
      double rest = 0.0;
      for (int e : inst.p.indices())
        if (!run.table.in_union(e, k - 1)) rest += inst.q.weight_of(e);
      EXPECT_NEAR(run.rounds[k - 1].fidelity, rest, 1e-12);
      if (k > 1) EXPECT_LT(run.rounds[k - 1].fidelity, run.rounds[k - 2].fidelity);
    }
    for (int e : run.table.common) {
      double total = 0.0;
      for (const auto &r : run.rounds) total += r.kraus.at(e);
      EXPECT_NEAR(total, 1.0, 1e-12);
    }
  }
}

TEST(Cumulative, Examples) {
  auto run = run_protocol(half_half(), third_two_thirds(), 2);
  auto c1 = cumulative(run, 1);
  EXPECT_NEAR(c1.p_succ, 0.75, 1e-15);
  EXPECT_NEAR(c1.fidelity, 1.0, 1e-15);
  auto c2 = cumulative(run, 2);
  EXPECT_NEAR(c2.p_succ, 1.0, 1e-15);
  EXPECT_NEAR(c2.fidelity, 5.0 / 6, 1e-15);
  EXPECT_THROW(cumulative(run, 3), Error);
  EXPECT_THROW(cumulative(run, 0), Error);
}

TEST(Cumulative, ClosedFormAgrees) {
  Rng rng(37);
  for (int t = 0; t < 50; ++t) {
    auto inst = random_instance(rng);
    auto run = run_protocol(inst.p, inst.q, kAllRounds);
    for (int T = 1; T <= run.size(); ++T)
      EXPECT_NEAR(cumulative(run, T).p_succ, cumulative_probability_closed_form(run, T), 1e-12);
  }
}

TEST(Cumulative, ReachesOneOnContainedSupport) {
  auto run = run_protocol(binomial_profile(80), binomial_profile(400), kAllRounds);
  EXPECT_NEAR(cumulative(run, run.size()).p_succ, 1.0, 1e-12);
  EXPECT_NEAR(cumulative(run, 31).p_succ, 0.23, 0.02);
}

TEST(TerminationTime, Examples) {
  auto p = profile({{0, 0.3}, {2, 0.7}});
  EXPECT_EQ(termination_time(p, p), 1);
  EXPECT_EQ(termination_time(half_half(), third_two_thirds()), 2);
  for (int n : {4, 10, 80}) {
    const int L = termination_time(binomial_profile(n), binomial_profile(5 * n));
    EXPECT_LE(L, n + 1);
    EXPECT_EQ(L, n / 2 + 1);
  }
}

}  // namespace
}  // namespace epop
