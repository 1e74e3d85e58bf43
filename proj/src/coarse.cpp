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

#include "epop/coarse.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace epop {

namespace {

void check_round(const ProtocolRun &run, int T) {
  if (T < 1 || T > run.size())
    throw Error(ErrorCode::RoundOutOfRange, "T = " + std::to_string(T) + " outside 1.." + std::to_string(run.size()));
}

}  // namespace

SectorFilter coarse_filter(const ProtocolRun &run, int T) {
  check_round(run, T);
  const EnergyProfile &p = run.input;
  const EnergyProfile &q = run.target;
  const double rT = run.table.ratios[T - 1];
  const double slack = 1e-12 + run.table.spread;
  std::map<int, double> x;
  for (int i = 0; i < p.size(); ++i) {
    const int e = p.index(i);
    double sum = 0.0;
    for (int k = 0; k < T; ++k) sum += run.rounds[k].kraus.at(e);
    const double closed = run.table.in_union(e, T) ? 1.0 : rT * q.weight_of(e) / p.weight(i);
    if (std::abs(sum - closed) > slack)
      throw std::logic_error("coarse filter forms disagree on label " + std::to_string(e));
    x[e] = sum;
  }
  return SectorFilter(x);
}

double coarse_fidelity(const ProtocolRun &run, int T) {
  check_round(run, T);
  const EnergyProfile &p = run.input;
  const EnergyProfile &q = run.target;
  const double rT = run.table.ratios[T - 1];
  double amp = 0.0, pu = 0.0, qrest = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    const int e = p.index(i);
    const double qe = q.weight_of(e);
    if (run.table.in_union(e, T)) {
      amp += std::sqrt(p.weight(i) * qe);
      pu += p.weight(i);
    } else {
      qrest += qe;
    }
  }
  const double num = amp + std::sqrt(rT) * qrest;
  return std::min(1.0, num * num / (pu + rT * qrest));
}

TradeoffCurve tradeoff_curve(const ProtocolRun &run) {
  TradeoffCurve c;
  for (int T = 1; T <= run.size(); ++T) {
    auto cum = cumulative(run, T);
    c.points.push_back({T, cum.p_succ, cum.fidelity, coarse_fidelity(run, T)});
  }
  return c;
}

TradeoffCurve tradeoff_curve(const EnergyProfile &p, const EnergyProfile &q, int max_rounds) {
  return tradeoff_curve(run_protocol(p, q, max_rounds));
}

}  // namespace epop
