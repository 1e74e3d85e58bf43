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

#include "epop/apps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace epop {

double holevo_gain(std::span<const double> amplitudes) {
  double norm = 0.0, overlap = 0.0;
  for (size_t i = 0; i < amplitudes.size(); ++i) {
    if (amplitudes[i] < 0) throw Error(ErrorCode::InvalidArgument, "amplitudes must be nonnegative");
    norm += amplitudes[i] * amplitudes[i];
    if (i + 1 < amplitudes.size()) overlap += amplitudes[i] * amplitudes[i + 1];
  }
  if (std::abs(norm - 1.0) > 1e-10) throw Error(ErrorCode::NotNormalized, "amplitudes must have unit norm");
  return 0.5 + 0.5 * overlap;
}

std::vector<double> profile_amplitudes(const EnergyProfile &p) {
  const int lo = p.index(0), hi = p.index(p.size() - 1);
  std::vector<double> a(hi - lo + 1, 0.0);
  for (int i = 0; i < p.size(); ++i) a[p.index(i) - lo] = std::sqrt(p.weight(i));
  return a;
}

double holevo_gain(const EnergyProfile &p) {
  auto a = profile_amplitudes(p);
  return holevo_gain(a);
}

namespace {

double log_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double log_sum_exp(const std::vector<double> &v) {
  double top = *std::max_element(v.begin(), v.end());
  double s = 0.0;
  for (double x : v) s += std::exp(x - top);
  return top + std::log(s);
}

EnergyProfile qubit_estimation_input(int n) {
  std::vector<EnergyLabel> labels;
  std::vector<double> logw;
  for (int k = 0; k <= n; ++k) {
    labels.push_back({k, static_cast<double>(k)});
    logw.push_back(log_choose(n, k));
  }
  return profile_from_log_weights(labels, logw);
}

}  // namespace

EstimationResult estimation_tradeoff(EstimationMode mode, int n, int max_rounds) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "estimation needs N >= 2");
  EstimationResult res;
  if (mode == EstimationMode::Qubits) {
    res.input = qubit_estimation_input(n);
    res.target = sine_profile(n);
  } else {
    res.input = uniform_profile(n);
    res.target = sine_profile(n - 1);
  }
  res.run = run_protocol(res.input, res.target, max_rounds);
  res.deterministic_gain = holevo_gain(res.input);
  double pg = 0.0;
  for (int T = 1; T <= res.run.size(); ++T) {
    const ProtocolRound &r = res.run.rounds[T - 1];
    pg += r.probability * holevo_gain(r.output);
    auto cum = cumulative(res.run, T);
    GainPoint g;
    g.T = T;
    g.p_succ = cum.p_succ;
    g.fidelity = cum.fidelity;
    g.coarse_fidelity = coarse_fidelity(res.run, T);
    g.gain_recursive = pg / cum.p_succ;
    g.gain_coarse = holevo_gain(filtered_profile(res.input, coarse_filter(res.run, T)));
    res.points.push_back(g);
  }
  return res;
}

AsymptoticGain asymptotic_gain(int n, int T) {
  if (T < 1 || n <= T) throw Error(ErrorCode::InvalidArgument, "asymptotic expansion needs N > T >= 1");
  const double c = std::numbers::pi * std::numbers::pi / (static_cast<double>(n) * n);
  const double t = T * (T - 1.0);
  return {1.0 - c / 2.0 * (t + 0.5), 0.5 + c * (t + 0.125)};
}

CloningResult cloning_tradeoff(int n, int m, int max_rounds) {
  if (n < 1 || m < n) throw Error(ErrorCode::InvalidArgument, "cloning needs 1 <= N <= M");
  if ((m - n) % 2 != 0) throw Error(ErrorCode::ParityMismatch, "M - N must be even");
  CloningResult res;
  EnergyProfile p = binomial_profile(n), q = binomial_profile(m);
  res.run = run_protocol(p, q, max_rounds);
  res.curve = tradeoff_curve(res.run);
  res.deterministic_fidelity = deterministic_fidelity(p, q);
  std::vector<double> terms;
  for (int j = -n; j <= n; j += 2) terms.push_back(log_choose(m, (m - j) / 2) - m * std::log(2.0));
  res.first_round_fidelity_closed_form = std::exp(log_sum_exp(terms));
  return res;
}

namespace {

double log_truncated_poisson_mass(double r, int cutoff) {
  std::vector<double> terms;
  for (int k = 0; k <= cutoff; ++k) terms.push_back(-r * r + 2.0 * k * std::log(r) - std::lgamma(k + 1.0));
  return log_sum_exp(terms);
}

}  // namespace

AmplificationResult amplification_tradeoff(double r1, double r2, int cutoff, int max_rounds) {
  if (!(r1 >= 0.0) || !(r2 >= r1)) throw Error(ErrorCode::InvalidArgument, "need 0 <= r1 <= r2");
  if (!(cutoff > r2 * r2)) throw Error(ErrorCode::CutoffTooSmall, "cutoff must exceed r2^2");
  AmplificationResult res;
  EnergyProfile p = poisson_profile(r1, cutoff), q = poisson_profile(r2, cutoff);
  res.run = run_protocol(p, q, max_rounds);
  res.curve = tradeoff_curve(res.run);
  res.deterministic_fidelity = deterministic_fidelity(p, q);
  res.coherent_overlap = std::exp(-(r2 - r1) * (r2 - r1));
  const double s2 = r2 * r2;
  res.truncation_tail = s2 > 0 ? std::exp(-s2 + (cutoff + 1) * std::log(s2 * std::numbers::e / (cutoff + 1))) : 0.0;

  const bool closed = r1 > 0 && r1 < r2;
  const double log_norm = closed ? log_truncated_poisson_mass(r2, cutoff) - log_truncated_poisson_mass(r1, cutoff) : 0.0;
  for (const auto &r : res.run.rounds) {
    AmplificationRoundCheck c;
    c.k = r.k;
    c.probability = r.probability;
    c.fidelity = r.fidelity;
    const int top = cutoff - r.k + 1;  // the sector removed in round k
    if (closed) {
      double lp = s2 - r1 * r1 + log_norm + 2.0 * top * std::log(r1 / r2) + std::log(r.fidelity);
      if (r.k > 1) lp += std::log1p(-(r1 / r2) * (r1 / r2));
      c.probability_closed_form = std::exp(lp);
    } else {
      c.probability_closed_form = std::numeric_limits<double>::quiet_NaN();
    }
    c.bound_applies = s2 > 0 && top > s2;
    if (c.bound_applies) c.fidelity_lower_bound = 1.0 - std::exp(-s2 + top * std::log(s2 * std::numbers::e / top));
    res.checks.push_back(c);
  }
  return res;
}

double haar_average_fidelity(double sector_fidelity, int d) { return (sector_fidelity * d + 1.0) / (d + 1.0); }

CorrectionResult correction_tradeoff(int d, double mu, int max_rounds) {
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "correction needs d >= 2");
  if (!(mu > 0.0 && mu < 1.0)) throw Error(ErrorCode::InvalidArgument, "mu must lie in (0, 1)");
  std::vector<EnergyLabel> labels;
  std::vector<double> logw;
  std::vector<WeightEntry> flat;
  for (int n = 1; n <= d; ++n) {
    labels.push_back({n, static_cast<double>(n)});
    logw.push_back(n * std::log(mu));
    flat.push_back({n, static_cast<double>(n), 1.0});
  }
  EnergyProfile p = profile_from_log_weights(labels, logw);
  EnergyProfile q = build_profile(flat);
  CorrectionResult res;
  res.run = run_protocol(p, q, max_rounds);
  const double norm = 1.0 - std::pow(mu, d);
  for (const auto &r : res.run.rounds) {
    CorrectionRound c;
    c.k = r.k;
    c.sector_fidelity = r.fidelity;
    c.average_fidelity = haar_average_fidelity(r.fidelity, d);
    c.average_fidelity_closed_form = (d + 2.0 - r.k) / (d + 1.0);
    c.probability = r.probability;
    if (r.k == 1)
      c.probability_closed_form = std::pow(mu, d - 1) * (1 - mu) * d / norm;
    else
      c.probability_closed_form = std::pow(mu, d - r.k) * (1 - mu) * (1 - mu) * (d + 1 - r.k) / norm;
    res.rounds.push_back(c);
  }
  for (int T = 1; T <= res.run.size(); ++T) {
    auto cum = cumulative(res.run, T);
    const double fc = coarse_fidelity(res.run, T);
    res.points.push_back({T, cum.p_succ, cum.fidelity, fc, haar_average_fidelity(cum.fidelity, d),
                          haar_average_fidelity(fc, d)});
  }
  return res;
}

}  // namespace epop
