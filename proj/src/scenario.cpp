// Copyright 2026 The relay-dmt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "relaydmt/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace relaydmt {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw ConfigError(origin + ": " + what);
}

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& origin, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key)) {
      fail(origin, "unknown key '" + key + "' in " + where);
    }
  }
}

std::vector<int> int_list(const json& j, const std::string& origin,
                          const std::string& what) {
  if (!j.is_array() || j.empty()) fail(origin, what + " must be a nonempty array");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<int>() < 1) {
      fail(origin, what + " entries must be positive integers");
    }
    out.push_back(v.get<int>());
  }
  return out;
}

}  // namespace

std::vector<double> SnrGridSpec::points() const {
  if (step_db <= 0.0) throw ConfigError("snr_grid.step_db must be > 0");
  if (stop_db < start_db) throw ConfigError("snr_grid.stop_db < start_db");
  std::vector<double> out;
  for (int i = 0;; ++i) {
    const double db = start_db + i * step_db;
    if (db > stop_db + 1e-9) break;
    out.push_back(db);
  }
  return out;
}

RelayTopology Scenario::topology() const {
  RelayTopology t;
  t.stage_antennas = antennas;
  t.relay_split = relay_split;
  t.validate();
  return t;
}

SelectionPolicy Scenario::selection_policy() const {
  SelectionPolicy pol;
  pol.candidate_mode = candidate_mode;
  pol.hybrid_m = hybrid_policy;
  pol.fixed_m = m.value_or(1);
  pol.path_cap = path_cap;
  return pol;
}

std::unique_ptr<OutageModel> Scenario::build_model() const {
  switch (kind) {
    case Kind::multihop:
      return std::make_unique<MultihopModel>(topology(), selection_policy(),
                                             fixed_path_strategy);
    case Kind::cf:
      return std::make_unique<CfModel>(cf_dims);
    case Kind::p2p:
      if (antennas.size() != 2) {
        throw ConfigError("p2p needs antennas [Nt, Nr]");
      }
      return std::make_unique<P2pModel>(antennas[0], antennas[1], selection);
  }
  throw ConfigError("unreachable scenario kind");
}

Scenario parse_scenario_json(const std::string& text,
                             const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(origin, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) fail(origin, "top level must be an object");

  static const std::set<std::string> kAllowed = {
      "kind",       "antennas",   "relay_split", "curve",     "m",
      "policy",     "candidates", "strategy",    "selection", "envelope",
      "snr_grid",   "rate",       "trials",      "seed",      "fit_window",
      "path_cap"};
  check_keys(j, kAllowed, origin, "scenario");

  Scenario sc;
  if (!j.contains("kind") || !j["kind"].is_string()) {
    fail(origin, "missing string key 'kind'");
  }
  const std::string kind = j["kind"];
  if (kind == "multihop") {
    sc.kind = Scenario::Kind::multihop;
  } else if (kind == "cf") {
    sc.kind = Scenario::Kind::cf;
  } else if (kind == "p2p") {
    sc.kind = Scenario::Kind::p2p;
  } else {
    fail(origin, "kind must be multihop, cf or p2p");
  }

  if (!j.contains("antennas")) fail(origin, "missing key 'antennas'");
  if (sc.kind == Scenario::Kind::cf) {
    const json& a = j["antennas"];
    if (!a.is_object()) {
      fail(origin, "cf antennas must be {\"m0\":..,\"relays\":[..],\"m2\":..}");
    }
    check_keys(a, {"m0", "relays", "m2"}, origin, "antennas");
    if (!a.contains("m0") || !a.contains("relays") || !a.contains("m2")) {
      fail(origin, "cf antennas need m0, relays and m2");
    }
    sc.cf_dims.m0 = a["m0"].is_number_integer() ? a["m0"].get<int>() : 0;
    sc.cf_dims.m2 = a["m2"].is_number_integer() ? a["m2"].get<int>() : 0;
    sc.cf_dims.relay_antennas = int_list(a["relays"], origin, "relays");
    if (sc.cf_dims.m0 < 1 || sc.cf_dims.m2 < 1) {
      fail(origin, "m0 and m2 must be positive integers");
    }
    if (sc.cf_dims.relays() > 4) {
      fail(origin, "cf supports at most K = 4 relays (subset checks are 2^K)");
    }
  } else {
    sc.antennas = int_list(j["antennas"], origin, "antennas");
  }

  if (j.contains("relay_split")) {
    if (sc.kind != Scenario::Kind::multihop) {
      fail(origin, "relay_split applies to multihop scenarios only");
    }
    if (!j["relay_split"].is_array()) fail(origin, "relay_split must be an array");
    for (const auto& stage : j["relay_split"]) {
      sc.relay_split.push_back(int_list(stage, origin, "relay_split stage"));
    }
  }

  if (j.contains("curve")) {
    if (!j["curve"].is_string()) fail(origin, "curve must be a string");
    sc.curve = j["curve"];
  }
  if (j.contains("m")) {
    if (!j["m"].is_number_integer() || j["m"].get<int>() < 1) {
      fail(origin, "m must be a positive integer");
    }
    sc.m = j["m"].get<int>();
  }
  if (j.contains("policy")) {
    const std::string p = j["policy"].is_string() ? j["policy"].get<std::string>() : "";
    if (p == "hybrid") {
      sc.hybrid_policy = true;
    } else if (p == "fixed") {
      sc.hybrid_policy = false;
    } else {
      fail(origin, "policy must be 'fixed' or 'hybrid'");
    }
  }
  if (j.contains("candidates")) {
    const std::string c =
        j["candidates"].is_string() ? j["candidates"].get<std::string>() : "";
    if (c == "exhaustive") {
      sc.candidate_mode = CandidateMode::exhaustive;
    } else if (c == "independent-family") {
      sc.candidate_mode = CandidateMode::independent_family;
    } else {
      fail(origin, "candidates must be 'exhaustive' or 'independent-family'");
    }
  }
  if (j.contains("strategy")) {
    const std::string s =
        j["strategy"].is_string() ? j["strategy"].get<std::string>() : "";
    if (s == "fixed-path") {
      sc.fixed_path_strategy = true;
    } else if (s == "jeemas") {
      sc.fixed_path_strategy = false;
    } else {
      fail(origin, "strategy must be 'jeemas' or 'fixed-path'");
    }
  }
  if (j.contains("selection")) {
    if (!j["selection"].is_boolean()) fail(origin, "selection must be boolean");
    sc.selection = j["selection"];
  }
  if (j.contains("envelope")) {
    if (!j["envelope"].is_boolean()) fail(origin, "envelope must be boolean");
    sc.envelope = j["envelope"];
  }
  if (j.contains("path_cap")) {
    if (!j["path_cap"].is_number_unsigned()) {
      fail(origin, "path_cap must be a nonnegative integer");
    }
    sc.path_cap = j["path_cap"].get<std::uint64_t>();
  }

  if (j.contains("snr_grid")) {
    const json& g = j["snr_grid"];
    check_keys(g, {"start_db", "stop_db", "step_db"}, origin, "snr_grid");
    if (!g.contains("start_db") || !g.contains("stop_db") ||
        !g.contains("step_db")) {
      fail(origin, "snr_grid needs start_db, stop_db, step_db");
    }
    SnrGridSpec grid;
    grid.start_db = g["start_db"].get<double>();
    grid.stop_db = g["stop_db"].get<double>();
    grid.step_db = g["step_db"].get<double>();
    sc.snr_grid = grid;
  }

  if (j.contains("rate")) {
    const json& r = j["rate"];
    check_keys(r, {"r", "fixed_R"}, origin, "rate");
    if (r.contains("r") == r.contains("fixed_R")) {
      fail(origin, "rate needs exactly one of 'r' or 'fixed_R'");
    }
    RateSpec rate;
    if (r.contains("r")) {
      rate.mode = RateMode::scaled;
      rate.value = r["r"].get<double>();
      if (rate.value < 0.0) fail(origin, "multiplexing gain r must be >= 0");
    } else {
      rate.mode = RateMode::fixed;
      rate.value = r["fixed_R"].get<double>();
    }
    sc.rate = rate;
  }

  if (j.contains("trials")) {
    if (!j["trials"].is_number_unsigned()) {
      fail(origin, "trials must be a nonnegative integer");
    }
    sc.trials = j["trials"].get<std::uint64_t>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) {
      fail(origin, "seed must be a nonnegative integer");
    }
    sc.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("fit_window")) {
    const json& w = j["fit_window"];
    check_keys(w, {"start_db", "stop_db"}, origin, "fit_window");
    if (!w.contains("start_db") || !w.contains("stop_db")) {
      fail(origin, "fit_window needs start_db and stop_db");
    }
    sc.fit_window = FitWindow{w["start_db"].get<double>(),
                              w["stop_db"].get<double>()};
  }

  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario_json(buf.str(), path);
}

}  // namespace relaydmt
