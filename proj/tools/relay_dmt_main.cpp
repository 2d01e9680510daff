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

#include <CLI11.hpp>

#include "relaydmt/commands.hpp"
#include "relaydmt/kernels/dispatch.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "relay-dmt: diversity-multiplexing tradeoff curves and outage "
      "simulation for multi-hop MIMO relay channels"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  relaydmt::RunArgs analytic_args;
  auto* analytic = app.add_subcommand(
      "analytic", "compute a closed-form tradeoff curve");
  analytic->add_option("--config", analytic_args.config_path,
                       "scenario JSON file")->required();
  analytic->add_option("--out", analytic_args.out_path, "output CSV path")
      ->required();

  relaydmt::RunArgs sim_args;
  std::uint64_t seed_flag = 0;
  auto* simulate = app.add_subcommand(
      "simulate", "run a seeded Monte Carlo outage sweep with exponent fit");
  simulate->add_option("--config", sim_args.config_path, "scenario JSON file")
      ->required();
  simulate->add_option("--out", sim_args.out_path, "output CSV path")
      ->required();
  auto* seed_opt = simulate->add_option(
      "--seed", seed_flag, "override the scenario seed");
  simulate->add_option("--workers", sim_args.workers,
                       "worker threads (default: hardware concurrency)");

  relaydmt::CompareArgs cmp_args;
  std::string labels_csv;
  auto* compare = app.add_subcommand(
      "compare", "merge curve files and emit a gnuplot script");
  compare->add_option("inputs", cmp_args.inputs, "input curve CSV files");
  compare->add_option("--out", cmp_args.out_path, "merged CSV path")
      ->required();
  compare->add_option("--labels", labels_csv,
                      "comma-separated series labels (default: file stems)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : relaydmt::kExitConfig;
  }

  if (analytic->parsed()) {
    return relaydmt::cmd_analytic(analytic_args);
  }
  if (simulate->parsed()) {
    if (!seed_opt->empty()) sim_args.seed_override = seed_flag;
    return relaydmt::cmd_simulate(sim_args);
  }
  if (compare->parsed()) {
    if (!labels_csv.empty()) {
      std::string item;
      std::stringstream ss(labels_csv);
      while (std::getline(ss, item, ',')) cmp_args.labels.push_back(item);
    }
    return relaydmt::cmd_compare(cmp_args);
  }
  return relaydmt::kExitConfig;
}
