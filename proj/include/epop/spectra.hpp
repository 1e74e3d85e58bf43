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

#include <Eigen/Core>
#include <optional>
#include <span>
#include <vector>

#include "epop/error.hpp"

namespace epop {

inline constexpr double kZeroThreshold = 1e-15;
inline constexpr double kRatioTolerance = 1e-9;

struct EnergyLabel {
  int index = 0;
  double value = 0.0;

  friend bool operator==(const EnergyLabel &a, const EnergyLabel &b) { return a.index == b.index; }
};

// A sector of an explicit Hilbert space model: label plus eigenspace dimension.
struct SectorSpec {
  EnergyLabel label;
  int dim = 1;
};

struct WeightEntry {
  int index;
  double value;
  double weight;
};

// Sector weights p_E of a pure state, sorted by label index and normalized.
class EnergyProfile {
 public:
  EnergyProfile() = default;

  // Takes labels strictly increasing by index and positive weights summing
  // to one; throws InvalidArgument otherwise.
  EnergyProfile(std::vector<EnergyLabel> labels, Eigen::VectorXd weights);

  int size() const { return static_cast<int>(labels_.size()); }
  bool empty() const { return labels_.empty(); }
  const std::vector<EnergyLabel> &labels() const { return labels_; }
  const Eigen::VectorXd &weights() const { return weights_; }
  const EnergyLabel &label(int i) const { return labels_[i]; }
  int index(int i) const { return labels_[i].index; }
  double weight(int i) const { return weights_(i); }

  std::optional<int> position(int index) const;
  bool contains(int index) const { return position(index).has_value(); }
  double weight_of(int index) const;
  std::vector<int> indices() const;

 private:
  std::vector<EnergyLabel> labels_;
  Eigen::VectorXd weights_;
};

EnergyProfile build_profile(std::span<const WeightEntry> entries, double zero_threshold = kZeroThreshold);

// Normalizes exp(log_weights) with the usual max shift; -inf entries are
// dropped, everything else is kept however small.
EnergyProfile profile_from_log_weights(std::span<const EnergyLabel> labels, std::span<const double> log_weights);

EnergyProfile binomial_profile(int n);
EnergyProfile poisson_profile(double r, int cutoff);
EnergyProfile uniform_profile(int n);
EnergyProfile sine_profile(int n);

struct RatioTable {
  std::vector<double> ratios;
  std::vector<std::vector<int>> groups;
  std::vector<std::vector<int>> unions;
  std::vector<int> common;
  std::vector<double> common_ratio;  // p_E / q_E, parallel to common
  std::vector<int> common_group;     // zero-based group of each common label
  double tolerance = kRatioTolerance;
  double spread = 0.0;  // largest relative distance of a member from its r_i

  int size() const { return static_cast<int>(ratios.size()); }
  // Group (zero-based) of a label, or -1 outside the common spectrum.
  int group_of(int index) const;
  // Whether index belongs to U_k (k = 0 gives the empty set).
  bool in_union(int index, int k) const;
};

RatioTable ratio_table(const EnergyProfile &p, const EnergyProfile &q, double tol = kRatioTolerance);

std::vector<int> common_spectrum(const EnergyProfile &p, const EnergyProfile &q);

}  // namespace epop
