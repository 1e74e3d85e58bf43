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
#include "epop/coarse.hpp"
#include "epop/error.hpp"
#include "epop/optimal.hpp"
#include "epop/oracle.hpp"
#include "epop/verify.hpp"
#include "support.hpp"

namespace epop {
namespace {

using testing::half_half;
using testing::profile;
using testing::third_two_thirds;

TEST(CoarseFilter, Endpoints) {
  auto p = profile({{0, 0.1}, {1, 0.2}, {2, 0.3}, {3, 0.4}});
  auto q = profile({{0, 0.4}, {1, 0.3}, {2, 0.2}, {3, 0.1}});
  auto run = run_protocol(p, q, kAllRounds);
  auto last = coarse_filter(run, run.size());
  for (int i : p.indices()) EXPECT_NEAR(last(i), 1.0, 1e-12);
  auto first = coarse_filter(run, 1);
  auto u = ultimate_optimum(p, q);
  for (int i : p.indices()) EXPECT_NEAR(first(i), u.filter(i), 1e-12);
  EXPECT_THROW(coarse_filter(run, 0), Error);
  EXPECT_THROW(coarse_filter(run, run.size() + 1), Error);
}

TEST(CoarseFilter, TwoSectorFirstRound) {
  auto run = run_protocol(half_half(), third_two_thirds(), 2);
  auto f = coarse_filter(run, 1);
  EXPECT_NEAR(f(1), 1.0, 1e-15);
  EXPECT_NEAR(f(0), 0.5, 1e-15);
}

TEST(CoarseFidelity, TwoSector) {
  auto p = half_half();
  auto q = third_two_thirds();
  auto run = run_protocol(p, q, 2);
  EXPECT_NEAR(coarse_fidelity(run, 1), 1.0, 1e-15);
  EXPECT_NEAR(coarse_fidelity(run, 2), deterministic_fidelity(p, q), 1e-14);
  EXPECT_NEAR(coarse_fidelity(run, 2), 0.9714, 1e-4);
  EXPECT_GT(coarse_fidelity(run, 2), cumulative(run, 2).fidelity);
}

TEST(TradeoffCurve, Identity) {
  auto p = profile({{0, 0.3}, {2, 0.7}});
  auto c = tradeoff_curve(p, p, 5);
  ASSERT_EQ(c.points.size(), 1u);
  const auto &pt = c.points[0];
  EXPECT_EQ(pt.T, 1);
  EXPECT_NEAR(pt.p_succ, 1.0, 1e-15);
  EXPECT_NEAR(pt.fidelity, 1.0, 1e-15);
  EXPECT_NEAR(pt.coarse_fidelity, 1.0, 1e-15);
}

TEST(TradeoffCurve, TwoSector) {
  auto c = tradeoff_curve(half_half(), third_two_thirds(), 2);
  ASSERT_EQ(c.points.size(), 2u);
  EXPECT_NEAR(c.points[0].p_succ, 0.75, 1e-15);
  EXPECT_NEAR(c.points[0].fidelity, 1.0, 1e-15);
  EXPECT_NEAR(c.points[0].coarse_fidelity, 1.0, 1e-15);
  EXPECT_NEAR(c.points[1].p_succ, 1.0, 1e-15);
  EXPECT_NEAR(c.points[1].fidelity, 5.0 / 6, 1e-15);
  EXPECT_NEAR(c.points[1].coarse_fidelity, std::pow(std::sqrt(1.0 / 6) + std::sqrt(1.0 / 3), 2), 1e-14);
}

TEST(TradeoffCurve, Cloning) {
  auto c = tradeoff_curve(binomial_profile(80), binomial_profile(400), 32);
  ASSERT_EQ(c.points.size(), 32u);
  const double det = deterministic_fidelity(binomial_profile(80), binomial_profile(400));
  for (int T = 1; T <= 25; ++T) EXPECT_GT(c.points[T - 1].fidelity, det);
  EXPECT_NEAR(c.points[30].p_succ, 0.23, 0.02);
}

// Coarse point lies between the recursive average and the optimal tradeoff
// at the same probability, reproduces the cumulative probability, and its
// fidelity equals that of the explicit filter matrix after alignment.
TEST(TradeoffCurve, RandomProperties) {
  Rng rng(41);
  for (int t = 0; t < 60; ++t) {
    auto inst = random_instance(rng);
    auto run = run_protocol(inst.p, inst.q, kAllRounds);
    const bool small = run.table.common.size() <= 24;
    for (int T = 1; T <= run.size(); ++T) {
      auto c = cumulative(run, T);
      auto f = coarse_filter(run, T);
      const double fp = coarse_fidelity(run, T);
      EXPECT_NEAR(filter_success_probability(inst.p, f), c.p_succ, 1e-12);
      EXPECT_GE(fp, c.fidelity - 1e-12);
      if (small && c.p_succ < 1.0 - 1e-9) EXPECT_LE(fp, optimal_tradeoff_point(inst.p, inst.q, c.p_succ).fidelity + 1e-10);

      const int d = inst.model.dimension();
      MatrixXc k = MatrixXc::Zero(d, d);
      for (int s = 0; s < inst.model.sector_count(); ++s) {
        const int o = inst.model.offset(s), n = inst.model.dim(s);
        k.block(o, o, n, n).diagonal().setConstant(std::sqrt(f(inst.model.sector(s).label.index)));
      }
      MatrixXc m = aligned_unitary(inst.model, inst.phi, inst.psi) * k;
      MatrixXc rho = inst.phi * inst.phi.adjoint();
      EXPECT_NEAR(operation_fidelity({m}, rho, inst.psi), fp, 1e-10);
    }
  }
}

}  // namespace
}  // namespace epop
