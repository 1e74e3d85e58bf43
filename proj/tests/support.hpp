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

namespace epop::testing {

// {index: weight} with value = index.
inline EnergyProfile profile(const std::map<int, double> &w) {
  std::vector<WeightEntry> e;
  for (const auto &[i, v] : w) e.push_back({i, static_cast<double>(i), v});
  return build_profile(e);
}

inline EnergyProfile half_half() { return profile({{0, 0.5}, {1, 0.5}}); }
inline EnergyProfile third_two_thirds() { return profile({{0, 1.0 / 3}, {1, 2.0 / 3}}); }

}  // namespace epop::testing
