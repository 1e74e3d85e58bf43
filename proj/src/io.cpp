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

#include "epop/io.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>

namespace epop {

const char *version() { return "0.1.0"; }

EnergyProfile profile_from_json(const Json &j) {
  if (!j.is_object() || !j.contains("energies") || !j["energies"].is_array())
    throw Error(ErrorCode::InvalidArgument, "profile JSON needs an \"energies\" array");
  std::vector<WeightEntry> entries;
  for (const auto &e : j["energies"]) {
    if (!e.contains("index") || !e.contains("weight"))
      throw Error(ErrorCode::InvalidArgument, "each energy needs \"index\" and \"weight\"");
    const int index = e["index"].get<int>();
    const double value = e.contains("value") ? e["value"].get<double>() : static_cast<double>(index);
    entries.push_back({index, value, e["weight"].get<double>()});
  }
  return build_profile(entries);
}

EnergyProfile load_profile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::InvalidArgument, path + ": " + e.what());
  }
  return profile_from_json(j);
}

Json to_json(const EnergyProfile &p) {
  Json arr = Json::array();
  for (int i = 0; i < p.size(); ++i)
    arr.push_back({{"index", p.index(i)}, {"value", p.label(i).value}, {"weight", p.weight(i)}});
  return {{"energies", arr}};
}

Json to_json(const SectorFilter &f) {
  Json x = Json::object();
  for (const auto &[i, v] : f.coefficients()) x[std::to_string(i)] = v;
  return {{"x", x}};
}

SectorFilter filter_from_json(const Json &j) {
  if (!j.is_object() || !j.contains("x") || !j["x"].is_object())
    throw Error(ErrorCode::InvalidArgument, "filter JSON needs an \"x\" object");
  std::map<int, double> x;
  for (const auto &[k, v] : j["x"].items()) x[std::stoi(k)] = v.get<double>();
  return SectorFilter(x);
}

Json to_json(const TradeoffPoint &t) {
  return {{"p_succ", t.p_succ}, {"fidelity", t.fidelity}, {"s0", t.s0}, {"x", to_json(t.filter)["x"]}};
}

Json to_json(const ProtocolRun &run) {
  Json rounds = Json::array();
  for (const auto &r : run.rounds) {
    Json kraus = Json::object(), output = Json::object();
    for (const auto &[i, v] : r.kraus) kraus[std::to_string(i)] = v;
    for (int i = 0; i < r.output.size(); ++i) output[std::to_string(r.output.index(i))] = r.output.weight(i);
    rounds.push_back({{"k", r.k}, {"F", r.fidelity}, {"p", r.probability}, {"kraus", kraus}, {"output", output}});
  }
  return {{"rounds_requested", run.rounds_requested},
          {"L", run.table.size()},
          {"terminated", run.terminated()},
          {"rounds", rounds}};
}

Json to_json(const PurificationReport &r) {
  Json table = Json::array();
  for (const auto &row : r.table)
    table.push_back({{"l", row.two_l / 2.0},
                     {"d_l", row.multiplicity},
                     {"a_l", row.a},
                     {"E_up_up", row.up_up},
                     {"E_up_down", row.up_down},
                     {"E_down_down", row.down_down}});
  return {{"N", r.n},       {"beta", r.beta},          {"F_det", r.f_det},
          {"F_prob", r.f_prob}, {"p_max", r.p_max},      {"best_l", r.best_two_l / 2.0},
          {"unique_best", r.unique_best}, {"sectors", table}};
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void write_curve_csv(std::ostream &out, const TradeoffCurve &curve) {
  out << "T,p_succ,F_recursive,F_coarse\n";
  for (const auto &p : curve.points)
    out << p.T << ',' << format_number(p.p_succ) << ',' << format_number(p.fidelity) << ','
        << format_number(p.coarse_fidelity) << '\n';
}

void write_gain_csv(std::ostream &out, const std::vector<GainPoint> &points) {
  out << "T,p_succ,F_recursive,F_coarse,G_recursive,G_coarse\n";
  for (const auto &p : points)
    out << p.T << ',' << format_number(p.p_succ) << ',' << format_number(p.fidelity) << ','
        << format_number(p.coarse_fidelity) << ',' << format_number(p.gain_recursive) << ','
        << format_number(p.gain_coarse) << '\n';
}

void write_correction_csv(std::ostream &out, const std::vector<CorrectionPoint> &points) {
  out << "T,p_succ,F_recursive,F_coarse,Fx_recursive,Fx_coarse\n";
  for (const auto &p : points)
    out << p.T << ',' << format_number(p.p_succ) << ',' << format_number(p.fidelity) << ','
        << format_number(p.coarse_fidelity) << ',' << format_number(p.average_fidelity) << ','
        << format_number(p.coarse_average_fidelity) << '\n';
}

void write_purification_csv(std::ostream &out, const std::vector<PurificationReport> &rows) {
  out << "N,beta,F_det,F_prob,p_max\n";
  for (const auto &r : rows)
    out << r.n << ',' << format_number(r.beta) << ',' << format_number(r.f_det) << ',' << format_number(r.f_prob)
        << ',' << format_number(r.p_max) << '\n';
}

Json make_manifest(const std::string &command, const Json &parameters, const Json &tolerances, const Json &seed,
                   const std::vector<std::string> &outputs) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return {{"command", command},   {"parameters", parameters}, {"tolerances", tolerances}, {"seed", seed},
          {"version", version()}, {"timestamp", stamp},       {"outputs", outputs}};
}

}  // namespace epop
