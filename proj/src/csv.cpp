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

#include "relaydmt/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace relaydmt {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path);
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

void write_curve_csv(const std::string& path, const DmtCurve& curve) {
  struct Row {
    double r;
    double d;
    bool vertex;
  };
  std::vector<Row> rows;
  for (const auto& v : curve.vertices) rows.push_back({v.r, v.d, true});
  const double rmax = curve.max_r();
  for (long i = 0;; ++i) {
    const double r = static_cast<double>(i) * 0.05;
    if (r > rmax + 1e-12) break;
    const bool near_vertex =
        std::any_of(curve.vertices.begin(), curve.vertices.end(),
                    [&](const DmtCurve::Vertex& v) {
                      return std::abs(v.r - r) <= 1e-9;
                    });
    if (!near_vertex) rows.push_back({r, curve_eval(curve, r), false});
  }
  std::sort(rows.begin(), rows.end(),
            [](const Row& a, const Row& b) { return a.r < b.r; });

  auto out = open_out(path);
  out << "r,d,vertex\n";
  for (const auto& row : rows) {
    out << format_number(row.r) << ',' << format_number(row.d) << ','
        << (row.vertex ? 1 : 0) << '\n';
  }
}

void write_outage_csv(const std::string& path,
                      const std::vector<OutageEstimate>& estimates) {
  auto out = open_out(path);
  out << "snr_db,p_hat,ci_low,ci_high,trials,outage_events\n";
  for (const auto& e : estimates) {
    out << format_number(e.snr.snr_db) << ',' << format_number(e.p_hat) << ','
        << format_number(e.ci_low) << ',' << format_number(e.ci_high) << ','
        << e.trials << ',' << e.outage_events << '\n';
  }
}

void write_fit_sidecar(const std::string& path, const ExponentFit& fit) {
  nlohmann::json j;
  const auto num = [](double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
  };
  j["slope"] = num(fit.slope);
  j["stderr"] = num(fit.stderr_);
  j["r_squared"] = num(fit.r_squared);
  j["points_used"] = fit.points_used;
  j["reliable"] = fit.reliable;
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

ParsedCurve read_curve_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open input file: " + path);
  std::string header;
  if (!std::getline(in, header)) throw ConfigError("empty curve file: " + path);
  if (!header.empty() && header.back() == '\r') header.pop_back();
  const auto cols = split_csv_line(header);

  ParsedCurve parsed;
  if (cols.size() >= 2 && cols[0] == "r" && cols[1] == "d") {
    parsed.axis = CurveAxis::rd;
  } else if (cols.size() >= 2 && cols[0] == "snr_db" && cols[1] == "p_hat") {
    parsed.axis = CurveAxis::snr;
  } else {
    throw ConfigError("unrecognized curve header in " + path);
  }

  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() < 2) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": short row");
    }
    try {
      parsed.rows.emplace_back(std::stod(fields[0]), std::stod(fields[1]));
    } catch (const std::exception&) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": bad number");
    }
  }
  if (parsed.rows.empty()) {
    throw ConfigError("curve file has no data rows: " + path);
  }
  return parsed;
}

void write_merged_csv(const std::string& path,
                      const std::vector<std::string>& labels,
                      const std::vector<ParsedCurve>& curves) {
  auto out = open_out(path);
  out << "label,x,y\n";
  for (std::size_t i = 0; i < curves.size(); ++i) {
    for (const auto& [x, y] : curves[i].rows) {
      out << labels[i] << ',' << format_number(x) << ',' << format_number(y)
          << '\n';
    }
  }
}

void write_gnuplot_script(const std::string& path,
                          const std::string& merged_csv,
                          const std::vector<std::string>& labels,
                          CurveAxis axis) {
  auto out = open_out(path);
  std::string words;
  for (const auto& label : labels) {
    std::string clean = label;
    std::replace(clean.begin(), clean.end(), ' ', '_');
    if (!words.empty()) words += ' ';
    words += clean;
  }
  out << "# generated by relay-dmt compare\n";
  out << "set datafile separator ','\n";
  out << "set key outside\n";
  if (axis == CurveAxis::rd) {
    out << "set xlabel 'multiplexing gain r'\n";
    out << "set ylabel 'diversity gain d'\n";
  } else {
    out << "set xlabel 'SNR (dB)'\n";
    out << "set ylabel 'outage probability'\n";
    out << "set logscale y\n";
  }
  out << "labels = \"" << words << "\"\n";
  out << "csv = '" << merged_csv << "'\n";
  out << "plot for [i=1:words(labels)] csv using "
         "(strcol(1) eq word(labels, i) ? $2 : NaN):3 "
         "with linespoints title word(labels, i)\n";
}

}  // namespace relaydmt
