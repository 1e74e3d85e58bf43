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
#include <optional>
#include <vector>

#include "epop/linalg.hpp"
#include "epop/spectra.hpp"

namespace epop {

// A density matrix stored whole, with sectors laid out contiguously in label
// order. block(i, j) is rho_{E_i, E_j}.
class BlockDensity {
 public:
  BlockDensity(std::vector<SectorSpec> sectors, MatrixXc matrix, double tol = 1e-10);

  int sector_count() const { return static_cast<int>(sectors_.size()); }
  const SectorSpec &sector(int i) const { return sectors_[i]; }
  const std::vector<SectorSpec> &sectors() const { return sectors_; }
  int dim(int i) const { return sectors_[i].dim; }
  int offset(int i) const { return offsets_[i]; }
  int dimension() const { return static_cast<int>(matrix_.rows()); }
  const MatrixXc &matrix() const { return matrix_; }
  auto block(int i, int j) const { return matrix_.block(offsets_[i], offsets_[j], dim(i), dim(j)); }
  bool in_support(int i) const;

 private:
  std::vector<SectorSpec> sectors_;
  std::vector<int> offsets_;
  MatrixXc matrix_;
};

// |phi><phi| with one-dimensional sectors carrying sqrt(p_E).
BlockDensity pure_density(const EnergyProfile &p);

double det_fidelity_bound(const BlockDensity &rho, const EnergyProfile &q);

enum class Positivity { Positive, Inconclusive };

struct BlockPositivity {
  Positivity status = Positivity::Inconclusive;
  bool witness_supplied = false;
  std::vector<MatrixXc> bases;  // columns are the basis of each sector
  double violation = 0.0;
};

// Checks, in the supplied bases or else the stored one, that each block's
// leading square part is Hermitian PSD and that the remainder vanishes.
BlockPositivity is_block_positive(const BlockDensity &rho, double tol = 1e-10,
                                  const std::optional<std::vector<MatrixXc>> &witness = std::nullopt);

double mixed_alignment_fidelity(const BlockDensity &rho, const EnergyProfile &q, const BlockPositivity &cert);
double mixed_alignment_fidelity(const BlockDensity &rho, const EnergyProfile &q);

double ultimate_mixed_fidelity(const BlockDensity &rho, const EnergyProfile &q);

struct MixedProbability {
  double value = 0.0;
  bool exact = true;  // false when the top eigenspace is degenerate
  int degeneracy = 1;
};

MixedProbability ultimate_mixed_probability(const BlockDensity &rho, const EnergyProfile &q,
                                            std::uint64_t seed = 2026, int draws = 1000);

// The operator A of the ultimate mixed-state bound, over sectors of rho's
// support that q also populates.
MatrixXc mixed_fidelity_operator(const BlockDensity &rho, const EnergyProfile &q);

// Spin sectors of N qubits.
long long spin_multiplicity(int n, int two_l);
Eigen::MatrixXd spin_jx(int two_l);  // basis m = l, l-1, ..., -l

struct SpinSector {
  int two_l = 0;
  long long multiplicity = 0;
  Eigen::MatrixXd jx;
  Eigen::MatrixXd thermal;  // <l,m| e^{2 beta J_x} |l,m'> / (2 cosh beta)^N
};

class SpinSectorModel {
 public:
  SpinSectorModel(int n, double beta);

  int n() const { return n_; }
  double beta() const { return beta_; }
  const std::vector<SpinSector> &sectors() const { return sectors_; }
  // thermal(m, m') entry of sector l, with m given as 2m.
  double thermal(const SpinSector &s, int two_m, int two_mp) const;

 private:
  int n_;
  double beta_;
  std::vector<SpinSector> sectors_;
};

// omega^{(x)N} for omega = e^{beta X} / (2 cosh beta). Sectors are labelled by
// 2m (m = total J_z). The spin version orders each sector by l descending and
// is its own block-positivity witness; the computational version keeps
// product-basis order within each Hamming-weight sector.
BlockDensity spin_thermal_density(int n, double beta);
BlockDensity computational_thermal_density(int n, double beta);

// Target |+> (x) blank: weight 1/2 on 2m = +1 and 2m = -1.
EnergyProfile purification_target();

struct PurificationRow {
  int two_l = 0;
  long long multiplicity = 0;
  double a = 0.0;
  double up_up = 0.0;      // thermal(+1/2, +1/2)
  double up_down = 0.0;    // thermal(+1/2, -1/2)
  double down_down = 0.0;  // thermal(-1/2, -1/2)
};

struct PurificationReport {
  int n = 0;
  double beta = 0.0;
  double f_det = 0.0;
  double f_prob = 0.0;
  double p_max = 0.0;
  int best_two_l = 0;
  bool unique_best = true;
  std::vector<PurificationRow> table;
};

PurificationReport purification_report(int n, double beta);

}  // namespace epop
