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

#include <map>
#include <vector>

#include "epop/spectra.hpp"

namespace epop {

struct ProtocolRound {
  int k = 0;
  double fidelity = 0.0;
  double probability = 0.0;
  std::map<int, double> kraus;  // m_E^(k) on Sp(p)
  EnergyProfile output;
};

struct ProtocolRun {
  EnergyProfile input;
  EnergyProfile target;
  RatioTable table;
  std::vector<ProtocolRound> rounds;
  int rounds_requested = 0;

  int size() const { return static_cast<int>(rounds.size()); }
  // All L rounds were produced.
  bool terminated() const { return size() == table.size(); }
};

ProtocolRun run_protocol(const EnergyProfile &p, const EnergyProfile &q, int max_rounds,
                         double tol = kRatioTolerance);

struct CumulativeResult {
  double p_succ = 0.0;
  double fidelity = 0.0;
};

CumulativeResult cumulative(const ProtocolRun &run, int T);
// Sum of p over U_{T-1} plus r_T F^(T).
double cumulative_probability_closed_form(const ProtocolRun &run, int T);

int termination_time(const EnergyProfile &p, const EnergyProfile &q, double tol = kRatioTolerance);

}  // namespace epop
