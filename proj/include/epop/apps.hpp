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
#include <string>
#include <vector>

#include "epop/coarse.hpp"
#include "epop/recursive.hpp"

namespace epop {

inline constexpr int kAllRounds = 1 << 30;

// Phase estimation.

double holevo_gain(std::span<const double> amplitudes);
// Amplitudes sqrt(p_E) over the consecutive range of p's labels, zero in gaps.
std::vector<double> profile_amplitudes(const EnergyProfile &p);
double holevo_gain(const EnergyProfile &p);

enum class EstimationMode { Qubits, MaxCoherent };

struct GainPoint {
  int T = 0;
  double p_succ = 0.0;
  double fidelity = 0.0;
  double coarse_fidelity = 0.0;
  double gain_recursive = 0.0;
  double gain_coarse = 0.0;
};

struct EstimationResult {
  EnergyProfile input;
  EnergyProfile target;
  ProtocolRun run;
  std::vector<GainPoint> points;
  double deterministic_gain = 0.0;  // Holevo gain of the unfiltered input
};

EstimationResult estimation_tradeoff(EstimationMode mode, int n, int max_rounds = kAllRounds);

struct AsymptoticGain {
  double gain = 0.0;
  double p_succ = 0.0;
};

AsymptoticGain asymptotic_gain(int n, int T);

// Cloning of N qubits into M.

struct CloningResult {
  ProtocolRun run;
  TradeoffCurve curve;
  double deterministic_fidelity = 0.0;
  double first_round_fidelity_closed_form = 0.0;
};

CloningResult cloning_tradeoff(int n, int m, int max_rounds = kAllRounds);

// Noiseless amplification of coherent states.

struct AmplificationRoundCheck {
  int k = 0;
  double probability = 0.0;
  double probability_closed_form = 0.0;
  double fidelity = 0.0;
  double fidelity_lower_bound = 0.0;  // only meaningful when bound_applies
  bool bound_applies = false;
};

struct AmplificationResult {
  ProtocolRun run;
  TradeoffCurve curve;
  std::vector<AmplificationRoundCheck> checks;
  double deterministic_fidelity = 0.0;
  double coherent_overlap = 0.0;  // |<r1|r2>|^2
  double truncation_tail = 0.0;   // bound on the discarded Poisson weight of r2
};

AmplificationResult amplification_tradeoff(double r1, double r2, int cutoff, int max_rounds = kAllRounds);

// Correction of a known amplitude-damping-like filter on a uniform state.

struct CorrectionRound {
  int k = 0;
  double sector_fidelity = 0.0;
  double average_fidelity = 0.0;
  double average_fidelity_closed_form = 0.0;
  double probability = 0.0;
  double probability_closed_form = 0.0;
};

struct CorrectionPoint {
  int T = 0;
  double p_succ = 0.0;
  double fidelity = 0.0;
  double coarse_fidelity = 0.0;
  double average_fidelity = 0.0;
  double coarse_average_fidelity = 0.0;
};

struct CorrectionResult {
  ProtocolRun run;
  std::vector<CorrectionRound> rounds;
  std::vector<CorrectionPoint> points;
};

double haar_average_fidelity(double sector_fidelity, int d);
CorrectionResult correction_tradeoff(int d, double mu, int max_rounds = kAllRounds);

}  // namespace epop
