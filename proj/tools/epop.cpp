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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "epop/apps.hpp"
#include "epop/coarse.hpp"
#include "epop/io.hpp"
#include "epop/mixedstate.hpp"
#include "epop/verify.hpp"

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;

using epop::Json;

struct Sink {
  std::string output;  // empty: stdout

  void write(const std::string &text) const {
    if (output.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(output, std::ios::binary);
    if (!f) throw epop::Error(epop::ErrorCode::InvalidArgument, "cannot write " + output);
    f << text;
  }

  void manifest(const std::string &command, const Json &params, const Json &tol, const Json &seed,
                std::vector<std::string> outputs) const {
    if (output.empty()) return;
    outputs.insert(outputs.begin(), output);
    std::ofstream f(output + ".manifest.json");
    if (!f) throw epop::Error(epop::ErrorCode::InvalidArgument, "cannot write manifest for " + output);
    f << epop::make_manifest(command, params, tol, seed, outputs).dump(2) << '\n';
  }
};

int rounds_or_all(int r) { return r > 0 ? r : epop::kAllRounds; }

Json rounds_json(int r) { return r > 0 ? Json(r) : Json("all"); }

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Optimal energy-preserving operations: tradeoff curves and oracle checks"};
  app.set_version_flag("--version", epop::version());
  app.require_subcommand(1);

  Sink sink;
  int rounds = 0;
  auto add_common = [&](CLI::App *sub) {
    sub->add_option("-o,--output", sink.output, "CSV file (a .manifest.json sibling is written next to it)");
    sub->add_option("--rounds", rounds, "number of rounds K (default: all)")->check(CLI::PositiveNumber);
  };

  std::string input_path, target_path;
  auto *tradeoff = app.add_subcommand("tradeoff", "recursive and coarse-grained curve for two profiles");
  tradeoff->add_option("--input", input_path, "input profile JSON")->required();
  tradeoff->add_option("--target", target_path, "target profile JSON")->required();
  add_common(tradeoff);

  std::string mode_name;
  int n = 0;
  auto *estimate = app.add_subcommand("estimate", "phase-estimation gain curve");
  estimate->add_option("--mode", mode_name, "qubits or maxcoh")
      ->required()
      ->check(CLI::IsMember({"qubits", "maxcoh"}));
  estimate->add_option("--n", n, "number of qubits / levels")->required();
  add_common(estimate);

  int m = 0;
  auto *clone = app.add_subcommand("clone", "N to M qubit cloning curve");
  clone->add_option("--n", n, "input copies")->required();
  clone->add_option("--m", m, "output copies")->required();
  add_common(clone);

  double r1 = 0.0, r2 = 0.0;
  int cutoff = 80;
  auto *amplify = app.add_subcommand("amplify", "coherent-state amplification curve");
  amplify->add_option("--r1", r1, "input amplitude")->required();
  amplify->add_option("--r2", r2, "target amplitude")->required();
  amplify->add_option("--cutoff", cutoff, "photon-number truncation")->capture_default_str();
  add_common(amplify);

  int d = 0;
  double mu = 0.0;
  auto *correct = app.add_subcommand("correct", "correction of a known damping filter");
  correct->add_option("--d", d, "dimension")->required();
  correct->add_option("--mu", mu, "damping parameter in (0,1)")->required();
  add_common(correct);

  std::vector<int> ns;
  std::vector<double> betas;
  std::string table_path;
  auto *purify = app.add_subcommand("purify", "thermal spin purification");
  purify->add_option("--n", ns, "odd number(s) of spins")->required();
  purify->add_option("--beta", betas, "inverse temperature(s)")->required();
  purify->add_option("-o,--output", sink.output, "CSV file");
  purify->add_option("--table", table_path, "JSON file for the per-sector tables");

  epop::VerificationOptions vopt;
  auto *verify = app.add_subcommand("verify", "oracle differential suites");
  verify->add_option("--seed", vopt.seed, "RNG seed")->capture_default_str();
  verify->add_option("--instances", vopt.instances, "instances per suite")->capture_default_str()->check(CLI::PositiveNumber);
  verify->add_option("--grid-resolution", vopt.grid_resolution, "grid step for the filter search")->capture_default_str()
      ->check(CLI::Range(0.01, 1.0));
  verify->add_option("-o,--output", sink.output, "JSON report file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }

  const Json no_seed = nullptr;
  try {
    std::ostringstream csv;
    if (*tradeoff) {
      auto p = epop::load_profile(input_path);
      auto q = epop::load_profile(target_path);
      epop::write_curve_csv(csv, epop::tradeoff_curve(p, q, rounds_or_all(rounds)));
      sink.write(csv.str());
      sink.manifest("tradeoff", {{"input", input_path}, {"target", target_path}, {"rounds", rounds_json(rounds)}},
                    {{"ratio", epop::kRatioTolerance}, {"zero_weight", epop::kZeroThreshold}}, no_seed, {});
    } else if (*estimate) {
      const auto mode = mode_name == "qubits" ? epop::EstimationMode::Qubits : epop::EstimationMode::MaxCoherent;
      auto r = epop::estimation_tradeoff(mode, n, rounds_or_all(rounds));
      epop::write_gain_csv(csv, r.points);
      sink.write(csv.str());
      sink.manifest("estimate", {{"mode", mode_name}, {"n", n}, {"rounds", rounds_json(rounds)}},
                    {{"ratio", epop::kRatioTolerance}}, no_seed, {});
    } else if (*clone) {
      auto r = epop::cloning_tradeoff(n, m, rounds_or_all(rounds));
      epop::write_curve_csv(csv, r.curve);
      sink.write(csv.str());
      sink.manifest("clone", {{"n", n}, {"m", m}, {"rounds", rounds_json(rounds)}},
                    {{"ratio", epop::kRatioTolerance}}, no_seed, {});
    } else if (*amplify) {
      auto r = epop::amplification_tradeoff(r1, r2, cutoff, rounds_or_all(rounds));
      epop::write_curve_csv(csv, r.curve);
      sink.write(csv.str());
      sink.manifest("amplify",
                    {{"r1", r1}, {"r2", r2}, {"cutoff", cutoff}, {"rounds", rounds_json(rounds)},
                     {"truncation_tail", r.truncation_tail}},
                    {{"ratio", epop::kRatioTolerance}}, no_seed, {});
    } else if (*correct) {
      auto r = epop::correction_tradeoff(d, mu, rounds_or_all(rounds));
      epop::write_correction_csv(csv, r.points);
      sink.write(csv.str());
      sink.manifest("correct", {{"d", d}, {"mu", mu}, {"rounds", rounds_json(rounds)}},
                    {{"ratio", epop::kRatioTolerance}}, no_seed, {});
    } else if (*purify) {
      std::vector<epop::PurificationReport> reports;
      for (double b : betas)
        for (int k : ns) reports.push_back(epop::purification_report(k, b));
      epop::write_purification_csv(csv, reports);
      sink.write(csv.str());
      std::vector<std::string> extra;
      if (!table_path.empty()) {
        Json all = Json::array();
        for (const auto &r : reports) all.push_back(epop::to_json(r));
        std::ofstream f(table_path);
        if (!f) throw epop::Error(epop::ErrorCode::InvalidArgument, "cannot write " + table_path);
        f << all.dump(2) << '\n';
        extra.push_back(table_path);
      }
      sink.manifest("purify", {{"n", ns}, {"beta", betas}}, Json::object(), no_seed, extra);
    } else if (*verify) {
      auto results = epop::run_verification(vopt);
      bool ok = true;
      Json report = Json::array();
      for (const auto &r : results) {
        ok = ok && r.passed();
        std::printf("%-4s %-42s %4d/%-4d worst=%.3e tol=%.1e %.2fs\n", r.passed() ? "PASS" : "FAIL",
                    r.name.c_str(), r.instances - r.failures, r.instances, r.worst, r.tolerance, r.seconds);
        if (!r.passed()) std::fprintf(stderr, "%s: first failure at %s\n", r.name.c_str(), r.first_failure.c_str());
        report.push_back({{"name", r.name},
                          {"instances", r.instances},
                          {"failures", r.failures},
                          {"worst", r.worst},
                          {"tolerance", r.tolerance}});
      }
      if (!sink.output.empty()) {
        sink.write(report.dump(2) + "\n");
        sink.manifest("verify", {{"instances", vopt.instances}, {"grid_resolution", vopt.grid_resolution}},
                      {{"engine_vs_oracle", 1e-10}, {"grid", 2 * vopt.grid_resolution}}, vopt.seed, {});
      }
      return ok ? 0 : kExitVerifyFailed;
    }
  } catch (const epop::Error &e) {
    std::cerr << "epop: " << e.what() << '\n';
    return e.code() == epop::ErrorCode::InvalidArgument ? kExitUsage : kExitInfeasible;
  } catch (const std::exception &e) {
    std::cerr << "epop: internal error: " << e.what() << '\n';
    return kExitInfeasible;
  }
  return 0;
}
