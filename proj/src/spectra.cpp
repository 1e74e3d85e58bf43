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

#include "epop/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace epop {

EnergyProfile::EnergyProfile(std::vector<EnergyLabel> labels, Eigen::VectorXd weights)
    : labels_(std::move(labels)), weights_(std::move(weights)) {
  if (static_cast<Eigen::Index>(labels_.size()) != weights_.size())
    throw Error(ErrorCode::InvalidArgument, "label and weight counts differ");
  if (labels_.empty()) throw Error(ErrorCode::AllZeroWeights, "empty profile");
  for (size_t i = 1; i < labels_.size(); ++i)
    if (labels_[i].index <= labels_[i - 1].index)
      throw Error(ErrorCode::InvalidArgument, "labels must be strictly increasing");
  if ((weights_.array() <= 0.0).any()) throw Error(ErrorCode::InvalidArgument, "weights must be positive");
  if (std::abs(weights_.sum() - 1.0) > 1e-12) throw Error(ErrorCode::NotNormalized, "weights must sum to one");
}

std::optional<int> EnergyProfile::position(int index) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), index,
                             [](const EnergyLabel &l, int i) { return l.index < i; });
  if (it == labels_.end() || it->index != index) return std::nullopt;
  return static_cast<int>(it - labels_.begin());
}

double EnergyProfile::weight_of(int index) const {
  auto pos = position(index);
  return pos ? weights_(*pos) : 0.0;
}

std::vector<int> EnergyProfile::indices() const {
  std::vector<int> out;
  out.reserve(labels_.size());
  for (const auto &l : labels_) out.push_back(l.index);
  return out;
}

EnergyProfile build_profile(std::span<const WeightEntry> entries, double zero_threshold) {
  std::vector<WeightEntry> sorted(entries.begin(), entries.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto &a, const auto &b) { return a.index < b.index; });
  for (size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i].index == sorted[i - 1].index)
      throw Error(ErrorCode::DuplicateLabel, "index " + std::to_string(sorted[i].index));
  std::vector<EnergyLabel> labels;
  std::vector<double> kept;
  for (const auto &e : sorted) {
    if (!std::isfinite(e.weight)) throw Error(ErrorCode::InvalidArgument, "non-finite weight");
    if (e.weight < -1e-12) throw Error(ErrorCode::NegativeWeight, "index " + std::to_string(e.index));
    if (e.weight <= zero_threshold) continue;
    labels.push_back({e.index, e.value});
    kept.push_back(e.weight);
  }
  if (kept.empty()) throw Error(ErrorCode::AllZeroWeights, "no positive weight");
  Eigen::VectorXd w = Eigen::Map<Eigen::VectorXd>(kept.data(), static_cast<Eigen::Index>(kept.size()));
  w /= w.sum();
  return EnergyProfile(std::move(labels), std::move(w));
}

EnergyProfile profile_from_log_weights(std::span<const EnergyLabel> labels, std::span<const double> log_weights) {
  if (labels.size() != log_weights.size()) throw Error(ErrorCode::InvalidArgument, "size mismatch");
  double top = -std::numeric_limits<double>::infinity();
  for (double v : log_weights) top = std::max(top, v);
  if (!std::isfinite(top)) throw Error(ErrorCode::AllZeroWeights, "no finite log weight");
  std::vector<WeightEntry> entries;
  for (size_t i = 0; i < labels.size(); ++i) {
    double w = std::exp(log_weights[i] - top);
    entries.push_back({labels[i].index, labels[i].value, w});
  }
  return build_profile(entries, 0.0);
}

namespace {

double log_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

EnergyProfile binomial_profile(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "binomial_profile needs N >= 1");
  std::vector<EnergyLabel> labels;
  std::vector<double> logw;
  for (int m = -n; m <= n; m += 2) {
    labels.push_back({m, static_cast<double>(m)});
    logw.push_back(log_choose(n, (n - m) / 2) - n * std::log(2.0));
  }
  return profile_from_log_weights(labels, logw);
}

EnergyProfile poisson_profile(double r, int cutoff) {
  if (!(r >= 0.0) || cutoff < 0) throw Error(ErrorCode::InvalidArgument, "poisson_profile needs r >= 0, cutoff >= 0");
  std::vector<EnergyLabel> labels;
  std::vector<double> logw;
  for (int n = 0; n <= cutoff; ++n) {
    labels.push_back({n, static_cast<double>(n)});
    if (r == 0.0)
      logw.push_back(n == 0 ? 0.0 : -std::numeric_limits<double>::infinity());
    else
      logw.push_back(-r * r + 2.0 * n * std::log(r) - std::lgamma(n + 1.0));
  }
  return profile_from_log_weights(labels, logw);
}

EnergyProfile uniform_profile(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "uniform_profile needs N >= 1");
  std::vector<WeightEntry> entries;
  for (int i = 0; i < n; ++i) entries.push_back({i, static_cast<double>(i), 1.0});
  return build_profile(entries, 0.0);
}

EnergyProfile sine_profile(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "sine_profile needs N >= 1");
  std::vector<WeightEntry> entries;
  // n = 0 carries sin(0) = 0 and is never a sector.
  for (int i = 1; i <= n; ++i) {
    double s = std::sin(i * std::numbers::pi / (n + 1));
    entries.push_back({i, static_cast<double>(i), 2.0 / (n + 1) * s * s});
  }
  return build_profile(entries, 0.0);
}

std::vector<int> common_spectrum(const EnergyProfile &p, const EnergyProfile &q) {
  std::vector<int> a = p.indices(), b = q.indices(), out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

int RatioTable::group_of(int index) const {
  auto it = std::lower_bound(common.begin(), common.end(), index);
  if (it == common.end() || *it != index) return -1;
  return common_group[it - common.begin()];
}

bool RatioTable::in_union(int index, int k) const {
  int g = group_of(index);
  return g >= 0 && g < k;
}

RatioTable ratio_table(const EnergyProfile &p, const EnergyProfile &q, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "ratio tolerance must be positive");
  RatioTable t;
  t.tolerance = tol;
  t.common = common_spectrum(p, q);
  if (t.common.empty()) throw Error(ErrorCode::DisjointSpectra, "no common energy sector");
  const int n = static_cast<int>(t.common.size());
  t.common_ratio.resize(n);
  for (int i = 0; i < n; ++i) t.common_ratio[i] = p.weight_of(t.common[i]) / q.weight_of(t.common[i]);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return t.common_ratio[a] < t.common_ratio[b]; });
  t.common_group.assign(n, -1);
  for (int pos : order) {
    double r = t.common_ratio[pos];
    if (t.ratios.empty() || r > t.ratios.back() * (1.0 + tol)) {
      t.ratios.push_back(r);
      t.groups.emplace_back();
    }
    t.groups.back().push_back(t.common[pos]);
    t.common_group[pos] = static_cast<int>(t.ratios.size()) - 1;
    t.spread = std::max(t.spread, (r - t.ratios.back()) / t.ratios.back());
  }
  std::vector<int> acc;
  for (auto &g : t.groups) {
    std::sort(g.begin(), g.end());
    acc.insert(acc.end(), g.begin(), g.end());
    std::sort(acc.begin(), acc.end());
    t.unions.push_back(acc);
  }
  return t;
}

}  // namespace epop
