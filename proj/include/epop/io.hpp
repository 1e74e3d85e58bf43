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

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "epop/apps.hpp"
#include "epop/coarse.hpp"
#include "epop/mixedstate.hpp"
#include "epop/optimal.hpp"
#include "epop/recursive.hpp"

namespace epop {

using Json = nlohmann::ordered_json;

const char *version();

// {"energies":[{"index":..,"value":..,"weight":..}]}; weights need not be
// normalized.
EnergyProfile profile_from_json(const Json &j);
EnergyProfile load_profile(const std::string &path);
Json to_json(const EnergyProfile &p);

Json to_json(const SectorFilter &f);
SectorFilter filter_from_json(const Json &j);
Json to_json(const TradeoffPoint &t);
Json to_json(const ProtocolRun &run);
Json to_json(const PurificationReport &r);

// Six significant digits.
std::string format_number(double v);

void write_curve_csv(std::ostream &out, const TradeoffCurve &curve);
void write_gain_csv(std::ostream &out, const std::vector<GainPoint> &points);
void write_correction_csv(std::ostream &out, const std::vector<CorrectionPoint> &points);
void write_purification_csv(std::ostream &out, const std::vector<PurificationReport> &rows);

Json make_manifest(const std::string &command, const Json &parameters, const Json &tolerances,
                   const Json &seed, const std::vector<std::string> &outputs);

}  // namespace epop
