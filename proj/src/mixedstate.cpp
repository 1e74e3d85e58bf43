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

#include "epop/mixedstate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "epop/oracle.hpp"

namespace epop {

BlockDensity::BlockDensity(std::vector<SectorSpec> sectors, MatrixXc matrix, double tol)
    : sectors_(std::move(sectors)), matrix_(std::move(matrix)) {
  int total = 0;
  for (size_t i = 0; i < sectors_.size(); ++i) {
    if (sectors_[i].dim < 1) throw Error(ErrorCode::InvalidArgument, "sector dimension must be positive");
    if (i > 0 && sectors_[i].label.index <= sectors_[i - 1].label.index)
      throw Error(ErrorCode::InvalidArgument, "sectors must be strictly increasing by index");
    offsets_.push_back(total);
    total += sectors_[i].dim;
  }
  if (matrix_.rows() != total || matrix_.cols() != total)
    throw Error(ErrorCode::DimensionMismatch, "matrix size differs from the sector dimensions");
  if (!is_hermitian(matrix_, tol)) throw Error(ErrorCode::InvalidArgument, "density matrix is not Hermitian");
  if (std::abs(matrix_.trace().real() - 1.0) > tol) throw Error(ErrorCode::NotNormalized, "density trace differs from one");
  if (min_eigenvalue(matrix_) < -tol) throw Error(ErrorCode::InvalidArgument, "density matrix is not PSD");
}

bool BlockDensity::in_support(int i) const { return block(i, i).trace().real() > 1e-14; }

BlockDensity pure_density(const EnergyProfile &p) {
  std::vector<SectorSpec> sectors;
  VectorXc v(p.size());
  for (int i = 0; i < p.size(); ++i) {
    sectors.push_back({p.label(i), 1});
    v(i) = std::sqrt(p.weight(i));
  }
  return BlockDensity(std::move(sectors), v * v.adjoint());
}

double det_fidelity_bound(const BlockDensity &rho, const EnergyProfile &q) {
  double s = 0.0;
  for (int i = 0; i < rho.sector_count(); ++i) {
    const double qi = q.weight_of(rho.sector(i).label.index);
    if (qi <= 0 || !rho.in_support(i)) continue;
    for (int j = 0; j < rho.sector_count(); ++j) {
      const double qj = q.weight_of(rho.sector(j).label.index);
      if (qj <= 0 || !rho.in_support(j)) continue;
      s += std::sqrt(qi * qj) * trace_norm(rho.block(i, j));
    }
  }
  return s;
}

namespace {

std::vector<MatrixXc> stored_bases(const BlockDensity &rho) {
  std::vector<MatrixXc> b;
  for (int i = 0; i < rho.sector_count(); ++i) b.push_back(MatrixXc::Identity(rho.dim(i), rho.dim(i)));
  return b;
}

MatrixXc block_in_basis(const BlockDensity &rho, const std::vector<MatrixXc> &bases, int i, int j) {
  return bases[i].adjoint() * rho.block(i, j) * bases[j];
}

}  // namespace

BlockPositivity is_block_positive(const BlockDensity &rho, double tol,
                                  const std::optional<std::vector<MatrixXc>> &witness) {
  BlockPositivity r;
  r.witness_supplied = witness.has_value();
  r.bases = witness ? *witness : stored_bases(rho);
  if (static_cast<int>(r.bases.size()) != rho.sector_count())
    throw Error(ErrorCode::DimensionMismatch, "one basis per sector is required");
  for (int i = 0; i < rho.sector_count(); ++i) {
    const MatrixXc &u = r.bases[i];
    if (u.rows() != rho.dim(i) || u.cols() != rho.dim(i))
      throw Error(ErrorCode::DimensionMismatch, "basis size differs from its sector");
    r.violation = std::max(r.violation, (u.adjoint() * u - MatrixXc::Identity(rho.dim(i), rho.dim(i))).cwiseAbs().maxCoeff());
  }
  for (int i = 0; i < rho.sector_count(); ++i)
    for (int j = i + 1; j < rho.sector_count(); ++j) {
      MatrixXc b = block_in_basis(rho, r.bases, i, j);
      const int k = static_cast<int>(std::min(b.rows(), b.cols()));
      MatrixXc lead = b.topLeftCorner(k, k);
      r.violation = std::max(r.violation, (lead - lead.adjoint()).cwiseAbs().maxCoeff());
      r.violation = std::max(r.violation, -min_eigenvalue(lead));
      MatrixXc rest = b;
      rest.topLeftCorner(k, k).setZero();
      if (rest.size() > 0) r.violation = std::max(r.violation, rest.cwiseAbs().maxCoeff());
    }
  r.status = r.violation <= tol ? Positivity::Positive : Positivity::Inconclusive;
  return r;
}

double mixed_alignment_fidelity(const BlockDensity &rho, const EnergyProfile &q, const BlockPositivity &cert) {
  if (cert.status != Positivity::Positive) throw Error(ErrorCode::NotBlockPositive, "no positivity witness");
  double s = 0.0;
  for (int i = 0; i < rho.sector_count(); ++i) {
    const double qi = q.weight_of(rho.sector(i).label.index);
    if (qi <= 0) continue;
    for (int j = 0; j < rho.sector_count(); ++j) {
      const double qj = q.weight_of(rho.sector(j).label.index);
      if (qj <= 0) continue;
      MatrixXc b = block_in_basis(rho, cert.bases, i, j);
      const int k = static_cast<int>(std::min(b.rows(), b.cols()));
      s += std::sqrt(qi * qj) * b.topLeftCorner(k, k).trace().real();
    }
  }
  return s;
}

double mixed_alignment_fidelity(const BlockDensity &rho, const EnergyProfile &q) {
  return mixed_alignment_fidelity(rho, q, is_block_positive(rho));
}

namespace {

struct Reduced {
  std::vector<int> sector;  // sectors of rho entering A
  std::vector<int> offset;  // their offsets inside A
  std::vector<MatrixXc> inv_sqrt;
  MatrixXc a;
};

Reduced reduce(const BlockDensity &rho, const EnergyProfile &q) {
  Reduced r;
  int total = 0;
  for (int i = 0; i < rho.sector_count(); ++i) {
    if (!rho.in_support(i) || q.weight_of(rho.sector(i).label.index) <= 0) continue;
    r.sector.push_back(i);
    r.offset.push_back(total);
    r.inv_sqrt.push_back(support_inverse_sqrt(MatrixXc(rho.block(i, i).transpose())));
    total += rho.dim(i);
  }
  r.a = MatrixXc::Zero(total, total);
  for (size_t x = 0; x < r.sector.size(); ++x)
    for (size_t y = 0; y < r.sector.size(); ++y) {
      const int i = r.sector[x], j = r.sector[y];
      const double w = std::sqrt(q.weight_of(rho.sector(i).label.index) * q.weight_of(rho.sector(j).label.index));
      MatrixXc rt = rho.block(j, i).transpose();  // (rho^T)_{E_i, E_j}
      r.a.block(r.offset[x], r.offset[y], rho.dim(i), rho.dim(j)) = w * r.inv_sqrt[x] * rt * r.inv_sqrt[y];
    }
  r.a = (r.a + r.a.adjoint()).eval() / 2.0;
  return r;
}

double sigma_probability(const Reduced &r, const BlockDensity &rho, const MatrixXc &sigma) {
  double worst = 0.0;
  for (size_t x = 0; x < r.sector.size(); ++x) {
    const int d = rho.dim(r.sector[x]);
    MatrixXc s = sigma.block(r.offset[x], r.offset[x], d, d);
    worst = std::max(worst, max_eigenvalue(MatrixXc(r.inv_sqrt[x] * s * r.inv_sqrt[x])));
  }
  return worst > 0 ? 1.0 / worst : 0.0;
}

}  // namespace

MatrixXc mixed_fidelity_operator(const BlockDensity &rho, const EnergyProfile &q) { return reduce(rho, q).a; }

double ultimate_mixed_fidelity(const BlockDensity &rho, const EnergyProfile &q) {
  Reduced r = reduce(rho, q);
  if (r.a.size() == 0) return 0.0;
  return max_eigenvalue(r.a);
}

MixedProbability ultimate_mixed_probability(const BlockDensity &rho, const EnergyProfile &q, std::uint64_t seed,
                                            int draws) {
  Reduced r = reduce(rho, q);
  MixedProbability out;
  if (r.a.size() == 0) {
    out.value = 0.0;
    return out;
  }
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(r.a);
  const Eigen::Index n = es.eigenvalues().size();
  const double top = es.eigenvalues()(n - 1);
  int deg = 0;
  while (deg < n && top - es.eigenvalues()(n - 1 - deg) <= 1e-9 * std::max(1.0, std::abs(top))) ++deg;
  out.degeneracy = deg;
  MatrixXc u = es.eigenvectors().rightCols(deg);
  if (deg == 1) {
    out.value = sigma_probability(r, rho, u * u.adjoint());
    return out;
  }
  out.exact = false;
  double best = sigma_probability(r, rho, u * u.adjoint() / static_cast<double>(deg));
  for (int j = 0; j < deg; ++j) best = std::max(best, sigma_probability(r, rho, u.col(j) * u.col(j).adjoint()));
  Rng rng(seed);
  std::exponential_distribution<double> ex(1.0);
  for (int t = 0; t < draws; ++t) {
    MatrixXc sigma;
    if (t % 2 == 0) {
      Eigen::VectorXd w(deg);
      for (int j = 0; j < deg; ++j) w(j) = ex(rng);
      w /= w.sum();
      sigma = u * w.cast<Complex>().asDiagonal() * u.adjoint();
    } else {
      VectorXc v = u * haar_state(deg, rng);
      sigma = v * v.adjoint();
    }
    best = std::max(best, sigma_probability(r, rho, sigma));
  }
  out.value = best;
  return out;
}

long long spin_multiplicity(int n, int two_l) {
  if (n < 1 || two_l < 0 || two_l > n || (n - two_l) % 2 != 0) return 0;
  // (4l+2)/(N+2l+2) * C(N, N/2+l), all in exact integers.
  const int k = (n + two_l) / 2;
  long long c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c * (2 * two_l + 2) / (n + two_l + 2);
}

Eigen::MatrixXd spin_jx(int two_l) {
  const int d = two_l + 1;
  const double l = two_l / 2.0;
  Eigen::MatrixXd jx = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i + 1 < d; ++i) {
    const double m = l - i - 1;  // lower state of the pair (m, m+1)
    const double v = 0.5 * std::sqrt(l * (l + 1) - m * (m + 1));
    jx(i, i + 1) = v;
    jx(i + 1, i) = v;
  }
  return jx;
}

SpinSectorModel::SpinSectorModel(int n, double beta) : n_(n), beta_(beta) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "need at least one qubit");
  if (!(beta >= 0.0)) throw Error(ErrorCode::InvalidArgument, "beta must be nonnegative");
  const double log_z = n * std::log(2.0 * std::cosh(beta));
  for (int two_l = n % 2; two_l <= n; two_l += 2) {
    SpinSector s;
    s.two_l = two_l;
    s.multiplicity = spin_multiplicity(n, two_l);
    s.jx = spin_jx(two_l);
    if (beta == 0.0)
      s.thermal = Eigen::MatrixXd::Identity(two_l + 1, two_l + 1) * std::exp(-log_z);
    else
      s.thermal = hermitian_apply(s.jx, [&](double v) { return std::exp(2.0 * beta * v - log_z); });
    sectors_.push_back(std::move(s));
  }
}

double SpinSectorModel::thermal(const SpinSector &s, int two_m, int two_mp) const {
  return s.thermal((s.two_l - two_m) / 2, (s.two_l - two_mp) / 2);
}

namespace {

void check_density_size(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "need at least one qubit");
  if (n > 9) throw Error(ErrorCode::TooLarge, "explicit thermal densities are limited to N <= 9");
}

}  // namespace

BlockDensity spin_thermal_density(int n, double beta) {
  check_density_size(n);
  SpinSectorModel model(n, beta);
  struct Slot {
    int sector;
    int two_l;
    long long copy;
  };
  std::vector<SectorSpec> specs;
  std::vector<std::vector<Slot>> slots;
  std::vector<int> offsets;
  int total = 0;
  for (int two_m = -n; two_m <= n; two_m += 2) {
    std::vector<Slot> s;
    for (int idx = static_cast<int>(model.sectors().size()) - 1; idx >= 0; --idx) {
      const auto &sec = model.sectors()[idx];
      if (sec.two_l < std::abs(two_m)) continue;
      for (long long c = 0; c < sec.multiplicity; ++c) s.push_back({idx, sec.two_l, c});
    }
    specs.push_back({{two_m, two_m / 2.0}, static_cast<int>(s.size())});
    offsets.push_back(total);
    total += static_cast<int>(s.size());
    slots.push_back(std::move(s));
  }
  MatrixXc rho = MatrixXc::Zero(total, total);
  for (size_t a = 0; a < slots.size(); ++a)
    for (size_t b = 0; b < slots.size(); ++b) {
      const int two_m = specs[a].label.index, two_mp = specs[b].label.index;
      for (size_t i = 0; i < slots[a].size(); ++i)
        for (size_t j = 0; j < slots[b].size(); ++j) {
          const Slot &x = slots[a][i], &y = slots[b][j];
          if (x.sector != y.sector || x.copy != y.copy) continue;
          rho(offsets[a] + i, offsets[b] + j) = model.thermal(model.sectors()[x.sector], two_m, two_mp);
        }
    }
  return BlockDensity(std::move(specs), std::move(rho));
}

BlockDensity computational_thermal_density(int n, double beta) {
  check_density_size(n);
  const double t = std::tanh(beta);
  Eigen::MatrixXd omega(2, 2);
  omega << 0.5, 0.5 * t, 0.5 * t, 0.5;
  Eigen::MatrixXd full = omega;
  for (int k = 1; k < n; ++k) {
    Eigen::MatrixXd next(full.rows() * 2, full.cols() * 2);
    for (int i = 0; i < full.rows(); ++i)
      for (int j = 0; j < full.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = full(i, j) * omega;
    full = next;
  }
  // Bit value 0 is spin up; 2m = N - 2 * popcount.
  const int dim = 1 << n;
  std::vector<int> order(dim);
  std::iota(order.begin(), order.end(), 0);
  auto two_m = [n](int b) { return n - 2 * std::popcount(static_cast<unsigned>(b)); };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return two_m(a) < two_m(b); });
  std::vector<SectorSpec> specs;
  for (int b : order) {
    if (specs.empty() || specs.back().label.index != two_m(b))
      specs.push_back({{two_m(b), two_m(b) / 2.0}, 0});
    specs.back().dim += 1;
  }
  MatrixXc rho(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) rho(i, j) = full(order[i], order[j]);
  return BlockDensity(std::move(specs), std::move(rho));
}

EnergyProfile purification_target() {
  std::vector<WeightEntry> e{{-1, -0.5, 0.5}, {1, 0.5, 0.5}};
  return build_profile(e);
}

PurificationReport purification_report(int n, double beta) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "need at least one qubit");
  if (n % 2 == 0) throw Error(ErrorCode::NotOdd, "N must be odd");
  if (n > 21) throw Error(ErrorCode::TooLarge, "N is limited to 21");
  SpinSectorModel model(n, beta);
  PurificationReport rep;
  rep.n = n;
  rep.beta = beta;
  double best_p = -1.0;
  for (const auto &s : model.sectors()) {
    PurificationRow row;
    row.two_l = s.two_l;
    row.multiplicity = s.multiplicity;
    row.up_up = model.thermal(s, 1, 1);
    row.up_down = model.thermal(s, 1, -1);
    row.down_down = model.thermal(s, -1, -1);
    row.a = row.up_down / std::sqrt(row.up_up * row.down_down);
    const double d = static_cast<double>(s.multiplicity);
    rep.f_det += 0.5 * d * (row.up_up + 2.0 * row.up_down + row.down_down);
    const double f = (1.0 + row.a) / 2.0;
    const double p = 2.0 * d * row.down_down;
    if (rep.table.empty() || f > rep.f_prob + 1e-12) {
      rep.f_prob = f;
      rep.best_two_l = s.two_l;
      rep.unique_best = true;
      best_p = p;
    } else if (f >= rep.f_prob - 1e-12) {
      rep.unique_best = false;
      if (p > best_p) {
        best_p = p;
        rep.best_two_l = s.two_l;
      }
    }
    rep.table.push_back(row);
  }
  rep.p_max = best_p;
  return rep;
}

}  // namespace epop
