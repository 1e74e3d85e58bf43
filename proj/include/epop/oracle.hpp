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

// Brute-force reference implementations on explicit matrices. Nothing in here
// uses the sector-level formulas; the point is to check them.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "epop/linalg.hpp"
#include "epop/spectra.hpp"

namespace epop {

inline constexpr int kOracleMaxDimension = 16;

using Rng = std::mt19937_64;
using KrausList = std::vector<MatrixXc>;

class HilbertModel {
 public:
  explicit HilbertModel(std::vector<SectorSpec> sectors);

  int dimension() const { return dimension_; }
  int sector_count() const { return static_cast<int>(sectors_.size()); }
  const SectorSpec &sector(int i) const { return sectors_[i]; }
  const std::vector<SectorSpec> &sectors() const { return sectors_; }
  int offset(int i) const { return offsets_[i]; }
  int dim(int i) const { return sectors_[i].dim; }
  std::optional<int> sector_position(int index) const;

  MatrixXc projector(int i) const;
  MatrixXc hamiltonian() const;

 private:
  std::vector<SectorSpec> sectors_;
  std::vector<int> offsets_;
  int dimension_ = 0;
};

// One-dimensional sectors for every label of p and q.
HilbertModel model_for(const EnergyProfile &p, const EnergyProfile &q);

VectorXc haar_state(int dim, Rng &rng);
MatrixXc haar_unitary(int dim, Rng &rng);
MatrixXc random_density(int dim, int rank, Rng &rng);
EnergyProfile random_profile(std::span<const int> indices, Rng &rng);

// Sum_E sqrt(p_E) |v_E> with each v_E a unit vector inside sector E.
VectorXc embed_profile(const HilbertModel &model, const EnergyProfile &p, const std::vector<VectorXc> &sector_vectors);
// Same with v_E the first basis vector of each sector.
VectorXc embed_profile(const HilbertModel &model, const EnergyProfile &p);

// Energy-preserving unitary sending each sector component of phi onto the
// direction of psi in the same sector; identity where either vanishes.
MatrixXc aligned_unitary(const HilbertModel &model, const VectorXc &phi, const VectorXc &psi);

MatrixXc apply_operation(const KrausList &kraus, const MatrixXc &rho);
MatrixXc effect(const KrausList &kraus);  // M^dag(I)
double operation_fidelity(const KrausList &kraus, const MatrixXc &rho, const VectorXc &target);

struct EnergyPreservationReport {
  bool commutes = false;
  bool preserves_statistics = false;
  double commutator_error = 0.0;
  double statistics_error = 0.0;
};

EnergyPreservationReport check_energy_preservation(const HilbertModel &model, const KrausList &kraus,
                                                   std::uint64_t seed = 7, int samples = 8);
bool check_energy_preserving(const HilbertModel &model, const KrausList &kraus, std::uint64_t seed = 7,
                             int samples = 8);

// Random block-diagonal Kraus lists. The channel version is trace preserving,
// the operation version is a channel followed by a random sector-wise
// contraction.
KrausList random_energy_preserving_channel(const HilbertModel &model, int kraus_count, Rng &rng);
KrausList random_energy_preserving_operation(const HilbertModel &model, int kraus_count, Rng &rng);

struct OracleRound {
  int k = 0;
  double fidelity = 0.0;
  double probability = 0.0;
  std::map<int, double> kraus;  // ||M_k phi_E||^2 per input sector
};

struct OracleRun {
  std::vector<OracleRound> rounds;
  KrausList instrument;  // M_1..M_n, then the final failure operator
  double completeness_error = 0.0;
};

// Recursive instrument built round by round from the explicit failed-branch
// state. phi and psi are the full input and target vectors.
OracleRun simulate_protocol(const HilbertModel &model, const VectorXc &phi, const VectorXc &psi, int max_rounds);
OracleRun simulate_protocol(const HilbertModel &model, const EnergyProfile &p, const EnergyProfile &q,
                            int max_rounds);

struct GridResult {
  double fidelity = 0.0;
  double p_succ = 0.0;
  std::map<int, double> x;
};

GridResult grid_search_tradeoff(const EnergyProfile &p, const EnergyProfile &q, double p_succ,
                                double resolution);

}  // namespace epop
