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

#include "epop/channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace epop {

namespace {

double clip_unit(int index, double v) {
  if (!std::isfinite(v) || v < -1e-12 || v > 1.0 + 1e-12)
    throw Error(ErrorCode::InvalidFilter, "x_" + std::to_string(index) + " = " + std::to_string(v));
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace

SectorFilter::SectorFilter(const std::map<int, double> &x) {
  for (const auto &[i, v] : x) x_[i] = clip_unit(i, v);
}

double SectorFilter::operator()(int index) const {
  auto it = x_.find(index);
  return it == x_.end() ? 0.0 : it->second;
}

void SectorFilter::set(int index, double value) { x_[index] = clip_unit(index, value); }

SectorFilter SectorFilter::identity(const EnergyProfile &p) {
  SectorFilter f;
  for (int i : p.indices()) f.x_[i] = 1.0;
  return f;
}

double deterministic_fidelity(const EnergyProfile &p, const EnergyProfile &q) {
  double s = 0.0;
  for (int i = 0; i < p.size(); ++i) s += std::sqrt(p.weight(i) * q.weight_of(p.index(i)));
  return std::min(1.0, s * s);
}

double filter_success_probability(const EnergyProfile &p, const SectorFilter &f) {
  double s = 0.0;
  for (int i = 0; i < p.size(); ++i) s += p.weight(i) * f(p.index(i));
  return std::min(1.0, s);
}

EnergyProfile filtered_profile(const EnergyProfile &p, const SectorFilter &f) {
  const double ps = filter_success_probability(p, f);
  if (!(ps > 0.0)) throw Error(ErrorCode::ZeroSuccessProbability, "filter blocks every sector");
  std::vector<WeightEntry> entries;
  for (int i = 0; i < p.size(); ++i)
    entries.push_back({p.index(i), p.label(i).value, p.weight(i) * f(p.index(i)) / ps});
  return build_profile(entries, 0.0);
}

double filter_fidelity(const EnergyProfile &p, const EnergyProfile &q, const SectorFilter &f) {
  const double ps = filter_success_probability(p, f);
  if (!(ps > 0.0)) throw Error(ErrorCode::ZeroSuccessProbability, "filter blocks every sector");
  double a = 0.0;
  for (int i = 0; i < p.size(); ++i) a += std::sqrt(f(p.index(i)) * p.weight(i) * q.weight_of(p.index(i)));
  return std::min(1.0, a * a / ps);
}

bool luders_probability_identity_check(const HilbertModel &model, const KrausList &op, std::uint64_t seed,
                                       int samples) {
  const int d = model.dimension();
  for (const auto &k : op)
    if (k.rows() != d || k.cols() != d) throw Error(ErrorCode::DimensionMismatch, "Kraus operator size");
  MatrixXc p = effect(op);
  if (max_eigenvalue(p) > 1.0 + 1e-10) throw Error(ErrorCode::NotTraceNonIncreasing, "sum of K^dag K exceeds I");
  MatrixXc root = psd_sqrt(p);
  Rng rng(seed);
  for (int n = 0; n < samples; ++n) {
    MatrixXc rho = random_density(d, 1 + n % d, rng);
    double lhs = (root * rho * root).trace().real();
    double rhs = apply_operation(op, rho).trace().real();
    if (std::abs(lhs - rhs) > 1e-10) return false;
  }
  return true;
}

}  // namespace epop
