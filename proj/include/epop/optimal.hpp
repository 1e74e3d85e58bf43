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

#pragma once

#include <span>
#include <vector>

#include "epop/channels.hpp"
#include "epop/spectra.hpp"

namespace epop {

inline constexpr int kMaxExhaustiveSectors = 24;
inline constexpr double kFeasibilitySlack = 1e-12;

struct UltimateOptimum {
  double fidelity = 0.0;
  double probability = 0.0;
  SectorFilter filter;
};

UltimateOptimum ultimate_optimum(const EnergyProfile &p, const EnergyProfile &q);

// x_E = 1 on s0, x_E = kappa q_E / p_E on the rest of the common spectrum.
// Sectors of p outside Sp(q) only carry weight when s0 is the whole common
// spectrum and p_succ exceeds its weight.
SectorFilter lagrange_filter(const EnergyProfile &p, const EnergyProfile &q, std::span<const int> s0, double p_succ);
double omega(const EnergyProfile &p, const EnergyProfile &q, std::span<const int> s0, double p_succ);

enum class SearchMode { Exhaustive, RatioFamily };

struct TradeoffPoint {
  double p_succ = 0.0;
  double fidelity = 0.0;
  SectorFilter filter;
  std::vector<int> s0;
};

TradeoffPoint optimal_tradeoff_point(const EnergyProfile &p, const EnergyProfile &q, double p_succ,
                                     SearchMode mode = SearchMode::Exhaustive);

}  // namespace epop
