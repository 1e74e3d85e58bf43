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

#include "epop/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace epop {

HilbertModel::HilbertModel(std::vector<SectorSpec> sectors) : sectors_(std::move(sectors)) {
  std::sort(sectors_.begin(), sectors_.end(),
            [](const SectorSpec &a, const SectorSpec &b) { return a.label.index < b.label.index; });
  for (size_t i = 0; i < sectors_.size(); ++i) {
    if (sectors_[i].dim < 1) throw Error(ErrorCode::InvalidArgument, "sector dimension must be positive");
    if (i > 0 && sectors_[i].label.index == sectors_[i - 1].label.index)
      throw Error(ErrorCode::DuplicateLabel, "index " + std::to_string(sectors_[i].label.index));
    offsets_.push_back(dimension_);
    dimension_ += sectors_[i].dim;
  }
  if (sectors_.empty()) throw Error(ErrorCode::InvalidArgument, "model needs a sector");
  if (dimension_ > kOracleMaxDimension)
    throw Error(ErrorCode::TooLarge, "oracle models are capped at dimension 16");
}

std::optional<int> HilbertModel::sector_position(int index) const {
  for (int i = 0; i < sector_count(); ++i)
    if (sectors_[i].label.index == index) return i;
  return std::nullopt;
}

MatrixXc HilbertModel::projector(int i) const {
  MatrixXc p = MatrixXc::Zero(dimension_, dimension_);
  p.block(offsets_[i], offsets_[i], dim(i), dim(i)).setIdentity();
  return p;
}

MatrixXc HilbertModel::hamiltonian() const {
  MatrixXc h = MatrixXc::Zero(dimension_, dimension_);
  for (int i = 0; i < sector_count(); ++i)
    h.block(offsets_[i], offsets_[i], dim(i), dim(i)).diagonal().setConstant(sectors_[i].label.value);
  return h;
}

HilbertModel model_for(const EnergyProfile &p, const EnergyProfile &q) {
  std::vector<SectorSpec> specs;
  for (const auto &l : p.labels()) specs.push_back({l, 1});
  for (const auto &l : q.labels())
    if (!p.contains(l.index)) specs.push_back({l, 1});
  return HilbertModel(std::move(specs));
}

VectorXc haar_state(int dim, Rng &rng) {
  std::normal_distribution<double> g;
  VectorXc v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(g(rng), g(rng));
  return v / v.norm();
}

MatrixXc haar_unitary(int dim, Rng &rng) {
  std::normal_distribution<double> g;
  MatrixXc z(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) z(i, j) = Complex(g(rng), g(rng)) / std::sqrt(2.0);
  Eigen::HouseholderQR<MatrixXc> qr(z);
  MatrixXc q = qr.householderQ();
  MatrixXc r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    double a = std::abs(r(j, j));
    if (a > 0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

MatrixXc random_density(int dim, int rank, Rng &rng) {
  std::normal_distribution<double> g;
  MatrixXc z(dim, rank);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < rank; ++j) z(i, j) = Complex(g(rng), g(rng));
  MatrixXc rho = z * z.adjoint();
  return rho / rho.trace().real();
}

EnergyProfile random_profile(std::span<const int> indices, Rng &rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<WeightEntry> entries;
  for (int i : indices) entries.push_back({i, static_cast<double>(i), e(rng) + 1e-3});
  return build_profile(entries);
}

VectorXc embed_profile(const HilbertModel &model, const EnergyProfile &p, const std::vector<VectorXc> &sector_vectors) {
  VectorXc v = VectorXc::Zero(model.dimension());
  for (int i = 0; i < p.size(); ++i) {
    auto s = model.sector_position(p.index(i));
    if (!s) throw Error(ErrorCode::DimensionMismatch, "profile label outside the model");
    const VectorXc &u = sector_vectors.at(*s);
    if (u.size() != model.dim(*s)) throw Error(ErrorCode::DimensionMismatch, "sector vector has wrong size");
    v.segment(model.offset(*s), model.dim(*s)) = std::sqrt(p.weight(i)) * u / u.norm();
  }
  return v;
}

VectorXc embed_profile(const HilbertModel &model, const EnergyProfile &p) {
  std::vector<VectorXc> basis;
  for (int s = 0; s < model.sector_count(); ++s) basis.push_back(VectorXc::Unit(model.dim(s), 0));
  return embed_profile(model, p, basis);
}

MatrixXc apply_operation(const KrausList &kraus, const MatrixXc &rho) {
  MatrixXc out = MatrixXc::Zero(kraus.front().rows(), kraus.front().rows());
  for (const auto &k : kraus) out += k * rho * k.adjoint();
  return out;
}

MatrixXc effect(const KrausList &kraus) {
  MatrixXc out = MatrixXc::Zero(kraus.front().cols(), kraus.front().cols());
  for (const auto &k : kraus) out += k.adjoint() * k;
  return out;
}

double operation_fidelity(const KrausList &kraus, const MatrixXc &rho, const VectorXc &target) {
  MatrixXc out = apply_operation(kraus, rho);
  double tr = out.trace().real();
  if (tr <= 0.0) throw Error(ErrorCode::ZeroSuccessProbability, "operation never succeeds");
  return (target.adjoint() * out * target)(0, 0).real() / tr;
}

EnergyPreservationReport check_energy_preservation(const HilbertModel &model, const KrausList &kraus,
                                                   std::uint64_t seed, int samples) {
  const int d = model.dimension();
  for (const auto &k : kraus)
    if (k.rows() != d || k.cols() != d) throw Error(ErrorCode::DimensionMismatch, "Kraus operator size");
  MatrixXc e = effect(kraus);
  if (max_eigenvalue(e) > 1.0 + 1e-10) throw Error(ErrorCode::NotTraceNonIncreasing, "sum of K^dag K exceeds I");
  const bool channel = (e - MatrixXc::Identity(d, d)).cwiseAbs().maxCoeff() <= 1e-10;

  EnergyPreservationReport r;
  std::vector<MatrixXc> proj;
  for (int s = 0; s < model.sector_count(); ++s) proj.push_back(model.projector(s));
  for (const auto &k : kraus)
    for (const auto &p : proj) r.commutator_error = std::max(r.commutator_error, (k * p - p * k).cwiseAbs().maxCoeff());

  Rng rng(seed);
  for (int n = 0; n < samples; ++n) {
    MatrixXc rho = random_density(d, d, rng);
    MatrixXc out = apply_operation(kraus, rho);
    for (const auto &p : proj) {
      double lhs = (p * out).trace().real();
      double rhs = channel ? (p * rho).trace().real() : apply_operation(kraus, p * rho * p).trace().real();
      r.statistics_error = std::max(r.statistics_error, std::abs(lhs - rhs));
    }
  }
  r.commutes = r.commutator_error <= 1e-10;
  r.preserves_statistics = r.statistics_error <= 1e-10;
  return r;
}

bool check_energy_preserving(const HilbertModel &model, const KrausList &kraus, std::uint64_t seed, int samples) {
  auto r = check_energy_preservation(model, kraus, seed, samples);
  return r.commutes && r.preserves_statistics;
}

KrausList random_energy_preserving_channel(const HilbertModel &model, int kraus_count, Rng &rng) {
  const int d = model.dimension();
  KrausList out(kraus_count, MatrixXc::Zero(d, d));
  for (int s = 0; s < model.sector_count(); ++s) {
    const int ds = model.dim(s), o = model.offset(s);
    MatrixXc v = haar_unitary(ds * kraus_count, rng).leftCols(ds);
    for (int j = 0; j < kraus_count; ++j) out[j].block(o, o, ds, ds) = v.middleRows(j * ds, ds);
  }
  return out;
}

KrausList random_energy_preserving_operation(const HilbertModel &model, int kraus_count, Rng &rng) {
  const int d = model.dimension();
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  MatrixXc c = MatrixXc::Zero(d, d);
  for (int s = 0; s < model.sector_count(); ++s) {
    const int ds = model.dim(s), o = model.offset(s);
    MatrixXc z(ds, ds);
    for (int i = 0; i < ds; ++i)
      for (int j = 0; j < ds; ++j) z(i, j) = Complex(g(rng), g(rng));
    c.block(o, o, ds, ds) = z * (u(rng) / operator_norm(z));
  }
  KrausList out = random_energy_preserving_channel(model, kraus_count, rng);
  for (auto &k : out) k = k * c;
  return out;
}

namespace {

// Unitary on C^n sending unit vector a to unit vector b.
MatrixXc unitary_sending(const VectorXc &a, const VectorXc &b) {
  auto frame = [](const VectorXc &v) {
    const int n = static_cast<int>(v.size());
    MatrixXc m(n, n);
    m.col(0) = v;
    // Pivoting away from v's largest entry keeps the frame well conditioned.
    Eigen::Index big;
    v.cwiseAbs().maxCoeff(&big);
    int c = 1;
    for (int i = 0; i < n && c < n; ++i)
      if (i != big) m.col(c++) = VectorXc::Unit(n, i);
    Eigen::HouseholderQR<MatrixXc> qr(m);
    MatrixXc q = qr.householderQ();
    q.col(0) = v;
    return q;
  };
  return frame(b) * frame(a).adjoint();
}

}  // namespace

MatrixXc aligned_unitary(const HilbertModel &model, const VectorXc &phi, const VectorXc &psi) {
  const int d = model.dimension();
  if (phi.size() != d || psi.size() != d) throw Error(ErrorCode::DimensionMismatch, "state size differs from model");
  MatrixXc u = MatrixXc::Identity(d, d);
  for (int s = 0; s < model.sector_count(); ++s) {
    VectorXc a = phi.segment(model.offset(s), model.dim(s));
    VectorXc b = psi.segment(model.offset(s), model.dim(s));
    if (a.norm() <= 0 || b.norm() <= 0) continue;
    u.block(model.offset(s), model.offset(s), model.dim(s), model.dim(s)) = unitary_sending(a / a.norm(), b / b.norm());
  }
  return u;
}

OracleRun simulate_protocol(const HilbertModel &model, const VectorXc &phi, const VectorXc &psi, int max_rounds) {
  const int d = model.dimension();
  if (phi.size() != d || psi.size() != d) throw Error(ErrorCode::DimensionMismatch, "state size differs from model");
  if (max_rounds < 1) throw Error(ErrorCode::InvalidArgument, "need at least one round");
  const int ns = model.sector_count();
  std::vector<double> qw(ns), pw(ns);
  std::vector<VectorXc> target_dir(ns), input_dir(ns);
  for (int s = 0; s < ns; ++s) {
    VectorXc t = psi.segment(model.offset(s), model.dim(s));
    VectorXc f = phi.segment(model.offset(s), model.dim(s));
    qw[s] = t.squaredNorm();
    pw[s] = f.squaredNorm();
    if (qw[s] > 0) target_dir[s] = t / t.norm();
    if (pw[s] > 0) input_dir[s] = f / f.norm();
  }

  OracleRun run;
  MatrixXc prefix = MatrixXc::Identity(d, d);
  const MatrixXc id = MatrixXc::Identity(d, d);
  for (int k = 1; k <= max_rounds; ++k) {
    VectorXc v = prefix * phi;
    const double vn = v.squaredNorm();
    if (vn <= 0) break;
    // Alive means weight left over from the original input, not relative to
    // the failed branch, so rounding residue cannot start a spurious round.
    std::vector<double> w(ns);
    std::vector<bool> alive(ns);
    double c = std::numeric_limits<double>::infinity();
    for (int s = 0; s < ns; ++s) {
      const double ws = v.segment(model.offset(s), model.dim(s)).squaredNorm();
      w[s] = ws / vn;
      alive[s] = ws > 1e-12 * phi.squaredNorm() && qw[s] > 1e-15;
      if (alive[s]) c = std::min(c, w[s] / qw[s]);
    }
    if (!std::isfinite(c)) break;

    MatrixXc b = MatrixXc::Zero(d, d);
    for (int s = 0; s < ns; ++s) {
      if (!alive[s]) continue;
      double x = c * qw[s] / w[s];
      double amp = x > 1.0 - 1e-12 ? 1.0 : std::sqrt(x);
      VectorXc vs = v.segment(model.offset(s), model.dim(s));
      b.block(model.offset(s), model.offset(s), model.dim(s), model.dim(s)) =
          amp * unitary_sending(vs / vs.norm(), target_dir[s]);
    }
    MatrixXc m = b * prefix;
    VectorXc out = m * phi;
    OracleRound round;
    round.k = k;
    round.probability = out.squaredNorm();
    round.fidelity = std::norm(psi.dot(out)) / round.probability;
    for (int s = 0; s < ns; ++s) {
      if (pw[s] <= 0) continue;
      VectorXc e = VectorXc::Zero(d);
      e.segment(model.offset(s), model.dim(s)) = input_dir[s];
      round.kraus[model.sector(s).label.index] = (m * e).squaredNorm();
    }
    run.rounds.push_back(std::move(round));
    run.instrument.push_back(m);
    prefix = psd_sqrt(id - b.adjoint() * b) * prefix;
  }
  run.instrument.push_back(prefix);
  run.completeness_error = (effect(run.instrument) - id).cwiseAbs().maxCoeff();
  return run;
}

OracleRun simulate_protocol(const HilbertModel &model, const EnergyProfile &p, const EnergyProfile &q, int max_rounds) {
  return simulate_protocol(model, embed_profile(model, p), embed_profile(model, q), max_rounds);
}

GridResult grid_search_tradeoff(const EnergyProfile &p, const EnergyProfile &q, double p_succ, double resolution) {
  if (p.size() > 6) throw Error(ErrorCode::SpectrumTooLarge, "grid search handles at most 6 sectors");
  if (!(resolution >= 0.01 && resolution <= 1.0)) throw Error(ErrorCode::InvalidArgument, "resolution must be in [0.01, 1]");
  const int n = p.size();
  const int steps = static_cast<int>(std::lround(1.0 / resolution));
  std::vector<double> grid;
  for (int i = 0; i <= steps; ++i) grid.push_back(std::min(1.0, i * resolution));
  if (grid.back() < 1.0) grid.push_back(1.0);

  std::vector<double> pe(n), amp(n), tail(n + 1, 0.0);
  for (int i = 0; i < n; ++i) {
    pe[i] = p.weight(i);
    amp[i] = std::sqrt(p.weight(i) * q.weight_of(p.index(i)));
  }
  for (int i = n - 1; i >= 0; --i) tail[i] = tail[i + 1] + pe[i];

  GridResult best;
  best.fidelity = -1.0;
  std::vector<double> x(n, 0.0);
  const double slack = resolution + 1e-12;
  auto rec = [&](auto &&self, int i, double s, double a) -> void {
    if (s > p_succ + slack) return;
    if (s + tail[i] < p_succ - slack) return;
    if (i == n) {
      if (s <= 0) return;
      double f = a * a / s;
      if (f > best.fidelity) {
        best.fidelity = f;
        best.p_succ = s;
        for (int j = 0; j < n; ++j) best.x[p.index(j)] = x[j];
      }
      return;
    }
    for (double g : grid) {
      x[i] = g;
      self(self, i + 1, s + g * pe[i], a + std::sqrt(g) * amp[i]);
    }
  };
  rec(rec, 0, 0.0, 0.0);
  if (best.fidelity < 0) throw Error(ErrorCode::InfeasibleProbability, "no grid point reaches p_succ");
  return best;
}

}  // namespace epop
