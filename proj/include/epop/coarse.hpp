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

#include <vector>

#include "epop/channels.hpp"
#include "epop/recursive.hpp"

namespace epop {

struct CurvePoint {
  int T = 0;
  double p_succ = 0.0;
  double fidelity = 0.0;         // F(T), recursive average
  double coarse_fidelity = 0.0;  // F'(T)
};

struct TradeoffCurve {
  std::vector<CurvePoint> points;
};

// Sum of the first T Kraus weights; cross-checked against the closed form
// (1 on U_T, r_T q_E / p_E elsewhere).
SectorFilter coarse_filter(const ProtocolRun &run, int T);
double coarse_fidelity(const ProtocolRun &run, int T);

TradeoffCurve tradeoff_curve(const ProtocolRun &run);
TradeoffCurve tradeoff_curve(const EnergyProfile &p, const EnergyProfile &q, int max_rounds);

}  // namespace epop
