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

#include "epop/recursive.hpp"

#include <algorithm>
#include <string>

namespace epop {

ProtocolRun run_protocol(const EnergyProfile &p, const EnergyProfile &q, int max_rounds, double tol) {
  if (max_rounds < 1) throw Error(ErrorCode::InvalidArgument, "need at least one round");
  ProtocolRun run;
  run.input = p;
  run.target = q;
  run.table = ratio_table(p, q, tol);
  run.rounds_requested = max_rounds;
  const RatioTable &t = run.table;
  const int rounds = std::min(max_rounds, t.size());

  for (int k = 1; k <= rounds; ++k) {
    const double step = t.ratios[k - 1] - (k > 1 ? t.ratios[k - 2] : 0.0);
    ProtocolRound r;
    r.k = k;
    std::vector<WeightEntry> out;
    for (int i = 0; i < p.size(); ++i) {
      const int e = p.index(i);
      const double qe = q.weight_of(e);
      if (t.in_union(e, k - 1)) {
        r.kraus[e] = 0.0;
        continue;
      }
      r.kraus[e] = step * qe / p.weight(i);
      r.fidelity += qe;
      if (qe > 0) out.push_back({e, p.label(i).value, qe});
    }
    r.probability = step * r.fidelity;
    r.output = build_profile(out, 0.0);
    run.rounds.push_back(std::move(r));
  }
  return run;
}

CumulativeResult cumulative(const ProtocolRun &run, int T) {
  if (T < 1 || T > run.size())
    throw Error(ErrorCode::RoundOutOfRange, "T = " + std::to_string(T) + " outside 1.." + std::to_string(run.size()));
  CumulativeResult c;
  double pf = 0.0;
  for (int k = 0; k < T; ++k) {
    c.p_succ += run.rounds[k].probability;
    pf += run.rounds[k].probability * run.rounds[k].fidelity;
  }
  c.fidelity = pf / c.p_succ;
  return c;
}

double cumulative_probability_closed_form(const ProtocolRun &run, int T) {
  if (T < 1 || T > run.size())
    throw Error(ErrorCode::RoundOutOfRange, "T = " + std::to_string(T) + " outside 1.." + std::to_string(run.size()));
  double s = 0.0;
  for (int i = 0; i < run.input.size(); ++i)
    if (run.table.in_union(run.input.index(i), T - 1)) s += run.input.weight(i);
  return s + run.table.ratios[T - 1] * run.rounds[T - 1].fidelity;
}

int termination_time(const EnergyProfile &p, const EnergyProfile &q, double tol) {
  return ratio_table(p, q, tol).size();
}

}  // namespace epop
