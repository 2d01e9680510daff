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

#pragma once

#include <string>
#include <vector>

#include "relaydmt/dmt.hpp"
#include "relaydmt/montecarlo.hpp"

namespace relaydmt {

// All files are UTF-8, comma separated with '.' decimals, header row
// first, every line LF-terminated. Numbers are written with 15
// significant digits so a parse round-trip keeps at least 12.

std::string format_number(double v);

// Curve file: "r,d,vertex" rows containing the exact vertex list (vertex=1)
// plus dense samples at r-step 0.05.
void write_curve_csv(const std::string& path, const DmtCurve& curve);

// Outage file: "snr_db,p_hat,ci_low,ci_high,trials,outage_events".
void write_outage_csv(const std::string& path,
                      const std::vector<OutageEstimate>& estimates);

// Exponent-fit sidecar (JSON): slope, stderr, r_squared, points_used,
// reliable. Non-finite values serialize as null.
void write_fit_sidecar(const std::string& path, const ExponentFit& fit);

enum class CurveAxis {
  rd,   // (r, d) tradeoff curves
  snr,  // (snr_db, p_hat) outage sweeps
};

struct ParsedCurve {
  CurveAxis axis;
  std::vector<std::pair<double, double>> rows;  // (x, y)
};

// Reads either curve format back; throws ConfigError on unknown headers
// or malformed rows.
ParsedCurve read_curve_file(const std::string& path);

// Long-format merge: "label,x,y".
void write_merged_csv(const std::string& path,
                      const std::vector<std::string>& labels,
                      const std::vector<ParsedCurve>& curves);

// Plain-text gnuplot script that plots every series of the merged file.
void write_gnuplot_script(const std::string& path,
                          const std::string& merged_csv,
                          const std::vector<std::string>& labels,
                          CurveAxis axis);

}  // namespace relaydmt
