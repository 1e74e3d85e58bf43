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

#include "epop/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "epop/channels.hpp"
#include "epop/mixedstate.hpp"
#include "epop/optimal.hpp"
#include "epop/recursive.hpp"

namespace epop {

namespace {

constexpr int kAllRoundsInternal = 1 << 30;

std::vector<int> random_subset(const std::vector<int> &from, double keep, Rng &rng) {
  std::bernoulli_distribution b(keep);
  std::vector<int> out;
  for (int v : from)
    if (b(rng)) out.push_back(v);
  if (out.empty()) out.push_back(from[std::uniform_int_distribution<size_t>(0, from.size() - 1)(rng)]);
  return out;
}

std::vector<VectorXc> haar_sector_vectors(const HilbertModel &m, Rng &rng) {
  std::vector<VectorXc> v;
  for (int s = 0; s < m.sector_count(); ++s) v.push_back(haar_state(m.dim(s), rng));
  return v;
}

std::vector<SectorSpec> random_sectors(Rng &rng, int max_sectors, int max_sector_dim, int max_total) {
  const int n = std::uniform_int_distribution<int>(2, max_sectors)(rng);
  std::vector<int> pool(13);
  std::iota(pool.begin(), pool.end(), -6);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(n);
  std::sort(pool.begin(), pool.end());
  std::vector<SectorSpec> specs;
  int total = 0;
  for (int i = 0; i < n; ++i) {
    int d = std::uniform_int_distribution<int>(1, max_sector_dim)(rng);
    d = std::max(1, std::min(d, max_total - total - (n - i - 1)));
    specs.push_back({{pool[i], 0.5 * pool[i]}, d});
    total += d;
  }
  return specs;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void record(CheckResult &r, double err, const std::string &what) {
  r.worst = std::max(r.worst, err);
  if (!(err <= r.tolerance)) {
    if (r.failures == 0) r.first_failure = what;
    ++r.failures;
  }
}

// A label of the mixed target: q over a random nonempty subset of the sectors.
EnergyProfile random_target(const HilbertModel &m, Rng &rng) {
  std::vector<int> labels;
  for (const auto &s : m.sectors()) labels.push_back(s.label.index);
  auto support = random_subset(labels, 0.7, rng);
  return random_profile(support, rng);
}

}  // namespace

RandomInstance random_instance(Rng &rng, int max_sectors, int max_sector_dim) {
  HilbertModel model(random_sectors(rng, max_sectors, max_sector_dim, kOracleMaxDimension));
  std::vector<int> labels;
  for (const auto &s : model.sectors()) labels.push_back(s.label.index);
  const int mode = std::uniform_int_distribution<int>(0, 2)(rng);
  std::vector<int> sp = random_subset(labels, 0.8, rng);
  std::vector<int> sq = mode == 2 ? labels : random_subset(labels, 0.8, rng);
  if (std::none_of(sp.begin(), sp.end(), [&](int i) { return std::find(sq.begin(), sq.end(), i) != sq.end(); }))
    sq.push_back(sp.front());
  std::sort(sq.begin(), sq.end());
  EnergyProfile p = random_profile(sp, rng);
  EnergyProfile q;
  if (mode == 1) {
    // Copy p onto the common sectors so that their ratios tie.
    std::exponential_distribution<double> e(1.0);
    std::vector<WeightEntry> w;
    for (int i : sq) w.push_back({i, 0.5 * i, p.contains(i) ? p.weight_of(i) : e(rng) + 1e-3});
    q = build_profile(w);
  } else {
    q = random_profile(sq, rng);
  }
  VectorXc phi = embed_profile(model, p, haar_sector_vectors(model, rng));
  VectorXc psi = embed_profile(model, q, haar_sector_vectors(model, rng));
  return {std::move(model), std::move(p), std::move(q), std::move(phi), std::move(psi)};
}

CheckResult check_recursive_against_matrices(const VerificationOptions &opt) {
  Timer t;
  CheckResult r{"recursive engine vs explicit instrument", opt.instances, 0, 0.0, 1e-10};
  Rng rng(opt.seed);
  for (int i = 0; i < opt.instances; ++i) {
    RandomInstance inst = random_instance(rng);
    ProtocolRun run = run_protocol(inst.p, inst.q, kAllRoundsInternal);
    OracleRun o = simulate_protocol(inst.model, inst.phi, inst.psi, run.size() + 1);
    std::ostringstream tag;
    tag << "instance " << i;
    if (static_cast<int>(o.rounds.size()) != run.size()) {
      record(r, 1.0, tag.str() + ": round count differs");
      continue;
    }
    double err = 0.0;
    for (int k = 0; k < run.size(); ++k) {
      err = std::max(err, std::abs(run.rounds[k].fidelity - o.rounds[k].fidelity));
      err = std::max(err, std::abs(run.rounds[k].probability - o.rounds[k].probability));
      for (const auto &[label, m] : run.rounds[k].kraus) err = std::max(err, std::abs(m - o.rounds[k].kraus.at(label)));
    }
    record(r, err, tag.str());
  }
  r.seconds = t.seconds();
  return r;
}

CheckResult check_instrument_completeness(const VerificationOptions &opt) {
  Timer t;
  CheckResult r{"instrument completeness", opt.instances, 0, 0.0, 1e-10};
  Rng rng(opt.seed + 1);
  for (int i = 0; i < opt.instances; ++i) {
    RandomInstance inst = random_instance(rng);
    const int L = termination_time(inst.p, inst.q);
    // Also stop early so that the final failure branch carries weight.
    const int K = std::uniform_int_distribution<int>(1, L)(rng);
    OracleRun o = simulate_protocol(inst.model, inst.phi, inst.psi, K);
    record(r, o.completeness_error, "instance " + std::to_string(i));
  }
  r.seconds = t.seconds();
  return r;
}

CheckResult check_lagrange_against_grid(const VerificationOptions &opt) {
  Timer t;
  const double res = opt.grid_resolution;
  CheckResult r{"Lagrange optimum vs grid search", opt.instances, 0, 0.0, 2 * res};
  Rng rng(opt.seed + 2);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  const std::vector<int> labels{0, 1, 2};
  for (int i = 0; i < opt.instances; ++i) {
    EnergyProfile p = random_profile(labels, rng);
    EnergyProfile q = random_profile(labels, rng);
    const double ps = u(rng);
    TradeoffPoint best = optimal_tradeoff_point(p, q, ps, SearchMode::Exhaustive);
    TradeoffPoint family = optimal_tradeoff_point(p, q, ps, SearchMode::RatioFamily);
    GridResult g = grid_search_tradeoff(p, q, ps, res);
    double err = std::abs(best.fidelity - g.fidelity);
    err = std::max(err, family.fidelity - best.fidelity);
    err = std::max(err, std::abs(filter_success_probability(p, best.filter) - ps) > 1e-10 ? 1.0 : 0.0);
    record(r, err, "instance " + std::to_string(i));
  }
  r.seconds = t.seconds();
  return r;
}

CheckResult check_lagrange_dominates_grid(const VerificationOptions &opt) {
  Timer t;
  CheckResult r{"Lagrange optimum dominates grid points", opt.instances, 0, 0.0, 1e-10};
  Rng rng(opt.seed + 8);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  const std::vector<int> all{0, 1, 2, 3};
  for (int i = 0; i < opt.instances; ++i) {
    const std::vector<int> labels(all.begin(), all.begin() + 3 + i % 2);
    EnergyProfile p = random_profile(labels, rng);
    EnergyProfile q = random_profile(labels, rng);
    GridResult g = grid_search_tradeoff(p, q, u(rng), opt.grid_resolution);
    TradeoffPoint best = optimal_tradeoff_point(p, q, g.p_succ, SearchMode::Exhaustive);
    record(r, g.fidelity - best.fidelity, "instance " + std::to_string(i));
  }
  r.seconds = t.seconds();
  return r;
}

CheckResult check_deterministic_bound(const VerificationOptions &opt) {
  Timer t;
  CheckResult r{"pure-state deterministic bound", opt.instances, 0, 0.0, 1e-10};
  Rng rng(opt.seed + 3);
  for (int i = 0; i < opt.instances; ++i) {
    RandomInstance inst = random_instance(rng);
    const double bound = deterministic_fidelity(inst.p, inst.q);
    MatrixXc rho = inst.phi * inst.phi.adjoint();
    double err = 0.0;
    for (int c = 0; c < 10; ++c) {
      KrausList k = random_energy_preserving_channel(inst.model, 1 + c % 3, rng);
      err = std::max(err, operation_fidelity(k, rho, inst.psi) - bound);
    }
    KrausList align{aligned_unitary(inst.model, inst.phi, inst.psi)};
    err = std::max(err, std::abs(operation_fidelity(align, rho, inst.psi) - bound));
    record(r, err, "instance " + std::to_string(i));
  }
  r.seconds = t.seconds();
  return r;
}

CheckResult check_ultimate_bound(const VerificationOptions &opt) {
  Timer t;
  CheckResult r{"pure-state ultimate bound", opt.instances, 0, 0.0, 1e-10};
  Rng rng(opt.seed + 4);
  for (int i = 0; i < opt.instances; ++i) {
    RandomInstance inst = random_instance(rng);
    UltimateOptimum opt4 = ultimate_optimum(inst.p, inst.q);
    MatrixXc rho = inst.phi * inst.phi.adjoint();
    double err = 0.0;
    for (int c = 0; c < 10; ++c) {
      KrausList k = random_energy_preserving_operation(inst.model, 1 + c % 3, rng);
      err = std::max(err, operation_fidelity(k, rho, inst.psi) - opt4.fidelity);
    }
    // The optimal filter as a matrix reaches the bound with probability p_max.
    const int d = inst.model.dimension();
    MatrixXc filt = MatrixXc::Zero(d, d);
    for (int s = 0; s < inst.model.sector_count(); ++s) {
      const double x = opt4.filter(inst.model.sector(s).label.index);
      filt.block(inst.model.offset(s), inst.model.offset(s), inst.model.dim(s), inst.model.dim(s)).diagonal().setConstant(std::sqrt(x));
    }
    KrausList m{aligned_unitary(inst.model, inst.phi, inst.psi) * filt};
    err = std::max(err, std::abs(operation_fidelity(m, rho, inst.psi) - opt4.fidelity));
    err = std::max(err, std::abs(apply_operation(m, rho).trace().real() - opt4.probability));
    record(r, err, "instance " + std::to_string(i));
  }
  r.seconds = t.seconds();
  return r;
}

namespace {

struct MixedInstance {
  HilbertModel model;
  BlockDensity rho;
  EnergyProfile q;
  VectorXc psi;
};

MixedInstance random_mixed_instance(Rng &rng) {
  HilbertModel model(random_sectors(rng, 4, 2, 8));
  const int d = model.dimension();
  const int rank = std::uniform_int_distribution<int>(1, d)(rng);
  BlockDensity rho(model.sectors(), random_density(d, rank, rng));
  EnergyProfile q = random_target(model, rng);
  VectorXc psi = embed_profile(model, q, haar_sector_vectors(model, rng));
  return {std::move(model), std::move(rho), std::move(q), std::move(psi)};
}

}  // namespace

CheckResult check_mixed_deterministic_bound(const VerificationOptions &opt) {
  Timer t;
  CheckResult r{"mixed-state deterministic bound", opt.instances, 0, 0.0, 1e-10};
  Rng rng(opt.seed + 5);
  for (int i = 0; i < opt.instances; ++i) {
    MixedInstance inst = random_mixed_instance(rng);
    const double bound = det_fidelity_bound(inst.rho, inst.q);
    double err = 0.0;
    for (int c = 0; c < 10; ++c) {
      KrausList k = random_energy_preserving_channel(inst.model, 1 + c % 3, rng);
      err = std::max(err, operation_fidelity(k, inst.rho.matrix(), inst.psi) - bound);
    }
    record(r, err, "instance " + std::to_string(i));
  }
  r.seconds = t.seconds();
  return r;
}

CheckResult check_mixed_ultimate_bound(const VerificationOptions &opt) {
  Timer t;
  CheckResult r{"mixed-state ultimate bound", opt.instances, 0, 0.0, 1e-10};
  Rng rng(opt.seed + 6);
  for (int i = 0; i < opt.instances; ++i) {
    MixedInstance inst = random_mixed_instance(rng);
    const double bound = ultimate_mixed_fidelity(inst.rho, inst.q);
    double err = 0.0;
    for (int c = 0; c < 10; ++c) {
      KrausList k = random_energy_preserving_operation(inst.model, 1 + c % 3, rng);
      if (apply_operation(k, inst.rho.matrix()).trace().real() < 1e-9) continue;
      err = std::max(err, operation_fidelity(k, inst.rho.matrix(), inst.psi) - bound);
    }
    record(r, err, "instance " + std::to_string(i));
  }
  r.seconds = t.seconds();
  return r;
}

CheckResult check_energy_preservation_agreement(const VerificationOptions &opt) {
  Timer t;
  CheckResult r{"energy-preservation checks agree", opt.instances, 0, 0.0, 0.0};
  Rng rng(opt.seed + 7);
  for (int i = 0; i < opt.instances; ++i) {
    RandomInstance inst = random_instance(rng);
    const int d = inst.model.dimension();
    KrausList good = i % 2 ? random_energy_preserving_channel(inst.model, 2, rng)
                           : random_energy_preserving_operation(inst.model, 2, rng);
    KrausList bad = good;
    const int last = inst.model.offset(inst.model.sector_count() - 1);
    bad[0](last, 0) += 0.1;
    const double scale = std::sqrt(std::max(1.0, max_eigenvalue(effect(bad))));
    for (auto &k : bad) k /= scale;
    auto a = check_energy_preservation(inst.model, good, opt.seed + i);
    auto b = check_energy_preservation(inst.model, bad, opt.seed + i);
    const bool ok = a.commutes && a.preserves_statistics && !b.commutes && !b.preserves_statistics;
    record(r, ok ? 0.0 : 1.0, "instance " + std::to_string(i) + " (dimension " + std::to_string(d) + ")");
  }
  r.seconds = t.seconds();
  return r;
}

std::vector<CheckResult> run_verification(const VerificationOptions &opt) {
  return {check_recursive_against_matrices(opt), check_instrument_completeness(opt),
          check_lagrange_against_grid(opt),      check_lagrange_dominates_grid(opt),
          check_deterministic_bound(opt),
          check_ultimate_bound(opt),             check_mixed_deterministic_bound(opt),
          check_mixed_ultimate_bound(opt),       check_energy_preservation_agreement(opt)};
}

}  // namespace epop
