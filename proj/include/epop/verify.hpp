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

// Differential suites: closed-form modules against the matrix oracle on
// seeded random instances.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "epop/oracle.hpp"

namespace epop {

struct CheckResult {
  std::string name;
  int instances = 0;
  int failures = 0;
  double worst = 0.0;  // largest error (or bound excess) seen
  double tolerance = 0.0;
  double seconds = 0.0;
  std::string first_failure;

  bool passed() const { return failures == 0; }
};

struct VerificationOptions {
  std::uint64_t seed = 42;
  int instances = 100;
  double grid_resolution = 0.01;
};

// A random explicit instance: sector dimensions, input and target profiles,
// and Haar-random sector vectors.
struct RandomInstance {
  HilbertModel model;
  EnergyProfile p;
  EnergyProfile q;
  VectorXc phi;
  VectorXc psi;
};

RandomInstance random_instance(Rng &rng, int max_sectors = 5, int max_sector_dim = 3);

CheckResult check_recursive_against_matrices(const VerificationOptions &opt);
CheckResult check_instrument_completeness(const VerificationOptions &opt);
CheckResult check_lagrange_against_grid(const VerificationOptions &opt);
// Exact optimum at the probability the grid point actually reaches.
CheckResult check_lagrange_dominates_grid(const VerificationOptions &opt);
CheckResult check_deterministic_bound(const VerificationOptions &opt);
CheckResult check_ultimate_bound(const VerificationOptions &opt);
CheckResult check_mixed_deterministic_bound(const VerificationOptions &opt);
CheckResult check_mixed_ultimate_bound(const VerificationOptions &opt);
CheckResult check_energy_preservation_agreement(const VerificationOptions &opt);

std::vector<CheckResult> run_verification(const VerificationOptions &opt);

}  // namespace epop
