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

#include "relaydmt/commands.hpp"

#include <filesystem>
#include <iostream>

#include "relaydmt/csv.hpp"

namespace relaydmt {

DmtCurve analytic_curve(const Scenario& sc) {
  const std::string& which = sc.curve;
  if (which == "mimo") {
    if (sc.antennas.size() != 2) {
      throw ConfigError("mimo curve needs antennas [Nt, Nr]");
    }
    return dmt_mimo(sc.antennas[0], sc.antennas[1]);
  }
  if (which == "upper") {
    return dmt_upper_bound(sc.topology());
  }
  if (which == "chain") {
    if (!sc.m) throw ConfigError("chain curve needs 'm'");
    return dmt_chain(*sc.m, sc.topology().hops());
  }
  if (which == "jeemas") {
    if (!sc.m) throw ConfigError("jeemas curve needs 'm'");
    return dmt_jeemas(sc.topology(), *sc.m);
  }
  if (which == "hybrid") {
    return dmt_hybrid(sc.topology(), sc.envelope);
  }
  if (which == "p2p-select") {
    if (sc.antennas.size() != 2) {
      throw ConfigError("p2p-select curve needs antennas [Mt, Mr]");
    }
    return dmt_p2p_selection(sc.antennas[0], sc.antennas[1]);
  }
  if (which == "cf-upper") {
    if (sc.kind == Scenario::Kind::cf) {
      return dmt_cf_upper(sc.cf_dims.m0, sc.cf_dims.m1(), sc.cf_dims.m2);
    }
    if (sc.antennas.size() != 3) {
      throw ConfigError("cf-upper curve needs antennas [M0, M1, M2]");
    }
    return dmt_cf_upper(sc.antennas[0], sc.antennas[1], sc.antennas[2]);
  }
  throw ConfigError("unknown curve selector '" + which +
                    "' (expected mimo, upper, chain, jeemas, hybrid, "
                    "p2p-select or cf-upper)");
}

namespace {

int report_error(const std::exception& e) {
  std::cerr << "relay-dmt: " << e.what() << '\n';
  return kExitConfig;
}

}  // namespace

int cmd_analytic(const RunArgs& args) {
  try {
    const Scenario sc = load_scenario(args.config_path);
    if (sc.curve.empty()) throw ConfigError("analytic runs need 'curve'");
    const DmtCurve curve = analytic_curve(sc);
    write_curve_csv(args.out_path, curve);
    return kExitOk;
  } catch (const std::exception& e) {
    return report_error(e);
  }
}

int cmd_simulate(const RunArgs& args) {
  ExponentFit fit;
  try {
    Scenario sc = load_scenario(args.config_path);
    if (args.seed_override) sc.seed = *args.seed_override;
    if (!sc.snr_grid) throw ConfigError("simulate needs 'snr_grid'");
    if (!sc.rate) throw ConfigError("simulate needs 'rate'");
    if (sc.trials < 1) throw ConfigError("simulate needs 'trials' >= 1");
    const auto model = sc.build_model();
    const auto [estimates, f] =
        sweep_and_fit(*model, sc.snr_grid->points(), *sc.rate, sc.trials,
                      sc.seed, sc.fit_window, args.workers);
    fit = f;
    write_outage_csv(args.out_path, estimates);
    write_fit_sidecar(args.out_path + ".fit.json", fit);
  } catch (const std::exception& e) {
    return report_error(e);
  }
  return fit.reliable ? kExitOk : kExitUnreliable;
}

int cmd_compare(const CompareArgs& args) {
  try {
    if (args.inputs.size() < 2) {
      throw ConfigError("compare needs at least two input curve files");
    }
    if (!args.labels.empty() && args.labels.size() != args.inputs.size()) {
      throw ConfigError("one label per input file");
    }
    std::vector<ParsedCurve> curves;
    for (const auto& path : args.inputs) {
      curves.push_back(read_curve_file(path));
    }
    for (std::size_t i = 1; i < curves.size(); ++i) {
      if (curves[i].axis != curves[0].axis) {
        throw ConfigError("input files mix (r,d) and (snr_db,p_hat) axes");
      }
    }
    std::vector<std::string> labels = args.labels;
    if (labels.empty()) {
      for (const auto& path : args.inputs) {
        labels.push_back(std::filesystem::path(path).stem().string());
      }
    }
    write_merged_csv(args.out_path, labels, curves);
    write_gnuplot_script(args.out_path + ".gp", args.out_path, labels,
                         curves[0].axis);
    return kExitOk;
  } catch (const std::exception& e) {
    return report_error(e);
  }
}

}  // namespace relaydmt
