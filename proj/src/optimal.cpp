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

#include "epop/optimal.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <limits>
#include <optional>
#include <string>

namespace epop {

namespace {

constexpr double kOmegaTie = 1e-13;

struct Sectors {
  std::vector<int> index;  // common spectrum, sorted by label
  std::vector<double> p, q, amp;
  double q_common = 0.0;
  double p_dead = 0.0;  // weight of Sp(p) outside Sp(q)
};

Sectors sectors_of(const EnergyProfile &p, const EnergyProfile &q) {
  Sectors s;
  s.index = common_spectrum(p, q);
  if (s.index.empty()) throw Error(ErrorCode::DisjointSpectra, "no common energy sector");
  for (int i : s.index) {
    s.p.push_back(p.weight_of(i));
    s.q.push_back(q.weight_of(i));
    s.amp.push_back(std::sqrt(s.p.back() * s.q.back()));
    s.q_common += s.q.back();
  }
  double pc = std::accumulate(s.p.begin(), s.p.end(), 0.0);
  s.p_dead = std::max(0.0, 1.0 - pc);
  return s;
}

// Omega of a partition, or nullopt if the threshold filter cannot reach p_succ.
std::optional<double> partition_omega(double p_succ, double p0, double q0, double a0, bool s1_empty,
                                      double max_ratio_s1, double q_common, double p_dead) {
  const double rest = p_succ - p0;
  if (rest < -kFeasibilitySlack) return std::nullopt;
  if (s1_empty) {
    if (rest > p_dead + kFeasibilitySlack) return std::nullopt;
    return a0;
  }
  const double qs1 = q_common - q0;
  const double kappa = std::max(0.0, rest) / qs1;
  if (kappa * max_ratio_s1 > 1.0 + kFeasibilitySlack) return std::nullopt;
  return a0 + std::sqrt(std::max(0.0, rest) * qs1);
}

std::vector<int> checked_partition(const Sectors &s, std::span<const int> s0) {
  std::vector<int> out(s0.begin(), s0.end());
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw Error(ErrorCode::InvalidPartition, "repeated label in s0");
  for (int i : out)
    if (!std::binary_search(s.index.begin(), s.index.end(), i))
      throw Error(ErrorCode::InvalidPartition, "s0 must lie in the common spectrum");
  return out;
}

void check_probability(double p_succ) {
  if (!(p_succ > 0.0) || p_succ > 1.0 + kFeasibilitySlack)
    throw Error(ErrorCode::InfeasibleProbability, "p_succ must lie in (0, 1]");
}

}  // namespace

UltimateOptimum ultimate_optimum(const EnergyProfile &p, const EnergyProfile &q) {
  Sectors s = sectors_of(p, q);
  double c = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < s.index.size(); ++i) c = std::min(c, s.p[i] / s.q[i]);
  UltimateOptimum out;
  out.fidelity = std::min(1.0, s.q_common);
  out.probability = std::min(1.0, c * s.q_common);
  for (size_t i = 0; i < s.index.size(); ++i) out.filter.set(s.index[i], std::min(1.0, c * s.q[i] / s.p[i]));
  return out;
}

SectorFilter lagrange_filter(const EnergyProfile &p, const EnergyProfile &q, std::span<const int> s0, double p_succ) {
  check_probability(p_succ);
  Sectors s = sectors_of(p, q);
  std::vector<int> part = checked_partition(s, s0);
  double p0 = 0.0, q0 = 0.0;
  for (size_t i = 0; i < s.index.size(); ++i)
    if (std::binary_search(part.begin(), part.end(), s.index[i])) {
      p0 += s.p[i];
      q0 += s.q[i];
    }
  const double rest = p_succ - p0;
  if (rest < -kFeasibilitySlack) throw Error(ErrorCode::InfeasibleProbability, "p(s0) exceeds p_succ");

  SectorFilter f;
  const bool s1_empty = part.size() == s.index.size();
  if (s1_empty) {
    for (int i : part) f.set(i, 1.0);
    if (rest > kFeasibilitySlack) {
      if (rest > s.p_dead + kFeasibilitySlack)
        throw Error(ErrorCode::InfeasibleProbability, "p_succ exceeds what the spectrum can transmit");
      const double x = std::min(1.0, rest / s.p_dead);
      for (int i = 0; i < p.size(); ++i)
        if (!q.contains(p.index(i))) f.set(p.index(i), x);
    }
    return f;
  }
  const double kappa = std::max(0.0, rest) / (s.q_common - q0);
  for (size_t i = 0; i < s.index.size(); ++i) {
    if (std::binary_search(part.begin(), part.end(), s.index[i])) {
      f.set(s.index[i], 1.0);
      continue;
    }
    double x = kappa * s.q[i] / s.p[i];
    if (x > 1.0 + kFeasibilitySlack)
      throw Error(ErrorCode::InfeasibleProbability, "coefficient above one on label " + std::to_string(s.index[i]));
    f.set(s.index[i], std::min(1.0, x));
  }
  return f;
}

double omega(const EnergyProfile &p, const EnergyProfile &q, std::span<const int> s0, double p_succ) {
  lagrange_filter(p, q, s0, p_succ);
  Sectors s = sectors_of(p, q);
  std::vector<int> part = checked_partition(s, s0);
  double p0 = 0.0, q0 = 0.0, a0 = 0.0;
  for (size_t i = 0; i < s.index.size(); ++i)
    if (std::binary_search(part.begin(), part.end(), s.index[i])) {
      p0 += s.p[i];
      q0 += s.q[i];
      a0 += s.amp[i];
    }
  if (part.size() == s.index.size()) return a0;
  return a0 + std::sqrt(std::max(0.0, p_succ - p0) * (s.q_common - q0));
}

namespace {

struct Best {
  bool found = false;
  double omega = 0.0;
  std::vector<int> s0;
};

void offer(Best &best, double om, std::vector<int> labels) {
  if (!best.found || om > best.omega + kOmegaTie) {
    best = {true, om, std::move(labels)};
    return;
  }
  if (om < best.omega - kOmegaTie) return;
  if (labels.size() < best.s0.size() || (labels.size() == best.s0.size() && labels < best.s0))
    best = {true, std::max(om, best.omega), std::move(labels)};
}

Best search_exhaustive(const Sectors &s, double p_succ) {
  const int n = static_cast<int>(s.index.size());
  if (n > kMaxExhaustiveSectors)
    throw Error(ErrorCode::SpectrumTooLarge, "exhaustive search handles at most 24 common sectors");
  // Bits ordered by q/p descending: the largest q/p left in S1 is then the
  // lowest clear bit.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return s.q[a] / s.p[a] > s.q[b] / s.p[b]; });
  std::vector<double> ratio(n);
  for (int j = 0; j < n; ++j) ratio[j] = s.q[order[j]] / s.p[order[j]];

  const int nlo = std::min(n, 12), nhi = n - nlo;
  auto table = [&](int first, int count) {
    std::vector<std::array<double, 3>> t(std::size_t{1} << count, {0.0, 0.0, 0.0});
    for (std::uint32_t m = 1; m < t.size(); ++m) {
      int b = std::countr_zero(m);
      int pos = order[first + b];
      auto prev = t[m & (m - 1)];
      t[m] = {prev[0] + s.p[pos], prev[1] + s.q[pos], prev[2] + s.amp[pos]};
    }
    return t;
  };
  auto lo = table(0, nlo), hi = table(nlo, nhi);
  const std::uint32_t full = (1u << n) - 1u;
  const std::uint32_t lomask = (1u << nlo) - 1u;

  Best best;
  for (std::uint64_t mm = 0; mm <= full; ++mm) {
    const std::uint32_t m = static_cast<std::uint32_t>(mm);
    const auto &a = lo[m & lomask];
    const auto &b = hi[m >> nlo];
    const double p0 = a[0] + b[0], q0 = a[1] + b[1], a0 = a[2] + b[2];
    const bool s1_empty = m == full;
    const double mr = s1_empty ? 0.0 : ratio[std::countr_zero(~m)];
    auto om = partition_omega(p_succ, p0, q0, a0, s1_empty, mr, s.q_common, s.p_dead);
    if (!om) continue;
    if (best.found && *om < best.omega - kOmegaTie) continue;
    std::vector<int> labels;
    for (int j = 0; j < n; ++j)
      if (m >> j & 1u) labels.push_back(s.index[order[j]]);
    std::sort(labels.begin(), labels.end());
    offer(best, *om, std::move(labels));
  }
  return best;
}

Best search_ratio_family(const EnergyProfile &p, const EnergyProfile &q, const Sectors &s, double p_succ) {
  RatioTable t = ratio_table(p, q);
  Best best;
  for (int k = 0; k <= t.size(); ++k) {
    std::vector<int> labels = k == 0 ? std::vector<int>{} : t.unions[k - 1];
    double p0 = 0.0, q0 = 0.0, a0 = 0.0, mr = 0.0;
    for (size_t i = 0; i < s.index.size(); ++i) {
      if (std::binary_search(labels.begin(), labels.end(), s.index[i])) {
        p0 += s.p[i];
        q0 += s.q[i];
        a0 += s.amp[i];
      } else {
        mr = std::max(mr, s.q[i] / s.p[i]);
      }
    }
    auto om = partition_omega(p_succ, p0, q0, a0, labels.size() == s.index.size(), mr, s.q_common, s.p_dead);
    if (om) offer(best, *om, std::move(labels));
  }
  return best;
}

}  // namespace

TradeoffPoint optimal_tradeoff_point(const EnergyProfile &p, const EnergyProfile &q, double p_succ, SearchMode mode) {
  check_probability(p_succ);
  p_succ = std::min(p_succ, 1.0);
  Sectors s = sectors_of(p, q);
  // Full transmission: every partition that reaches p_succ = 1 gives the
  // identity filter, report the canonical one.
  if (p_succ >= 1.0 - kFeasibilitySlack) {
    TradeoffPoint out;
    out.p_succ = 1.0;
    out.s0 = common_spectrum(p, q);
    out.filter = lagrange_filter(p, q, out.s0, 1.0);
    out.fidelity = std::min(1.0, filter_fidelity(p, q, out.filter));
    return out;
  }
  Best best = mode == SearchMode::Exhaustive ? search_exhaustive(s, p_succ) : search_ratio_family(p, q, s, p_succ);
  if (!best.found) throw Error(ErrorCode::NoFeasiblePartition, "no partition reaches the requested p_succ");
  TradeoffPoint out;
  out.p_succ = p_succ;
  out.s0 = best.s0;
  out.filter = lagrange_filter(p, q, best.s0, p_succ);
  double om = omega(p, q, best.s0, p_succ);
  out.fidelity = std::min(1.0, om * om / p_succ);
  return out;
}

}  // namespace epop
