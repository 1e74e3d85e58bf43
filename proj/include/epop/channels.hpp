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

#include <cstdint>
#include <map>

#include "epop/oracle.hpp"
#include "epop/spectra.hpp"

namespace epop {

// Transmission x_E of a Lüders-reduced, eigenstate-aligned operation on each
// sector. Labels not stored have x_E = 0.
class SectorFilter {
 public:
  SectorFilter() = default;
  // Values within 1e-12 of [0, 1] are clipped; anything further out throws
  // InvalidFilter.
  explicit SectorFilter(const std::map<int, double> &x);

  double operator()(int index) const;
  const std::map<int, double> &coefficients() const { return x_; }
  void set(int index, double value);

  static SectorFilter identity(const EnergyProfile &p);

 private:
  std::map<int, double> x_;
};

double deterministic_fidelity(const EnergyProfile &p, const EnergyProfile &q);
double filter_success_probability(const EnergyProfile &p, const SectorFilter &f);
EnergyProfile filtered_profile(const EnergyProfile &p, const SectorFilter &f);
double filter_fidelity(const EnergyProfile &p, const EnergyProfile &q, const SectorFilter &f);

// Tr[sqrt(P) rho sqrt(P)] against Tr[M(rho)] with P = M^dag(I), on seeded
// random density matrices.
bool luders_probability_identity_check(const HilbertModel &model, const KrausList &op, std::uint64_t seed = 11,
                                       int samples = 16);

}  // namespace epop
