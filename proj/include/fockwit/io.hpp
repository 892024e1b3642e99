// Copyright 2026 The fockwit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "fockwit/criteria.hpp"
#include "fockwit/error.hpp"
#include "fockwit/fock_state.hpp"
#include "fockwit/ppt.hpp"

namespace fockwit::io {

using nlohmann::json;

/// Reports carry 12 significant digits, in text and JSON alike.
inline constexpr int kReportDigits = 12;

inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*g", kReportDigits, v);
  return buf;
}

inline double round_sig(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format_number(v).c_str(), nullptr);
}

inline json report_number(double v) { return std::isfinite(v) ? json(round_sig(v)) : json(nullptr); }

// ---------------------------------------------------------------------------
// State files

/// Nonzero entries only; doubles keep full round-trip precision.
inline json state_to_json(const FockState& state) {
  const auto& layout = state.layout();
  json j;
  j["modes"] = state.mode_count();
  j["cutoffs"] = state.cutoffs();
  if (state.is_pure()) {
    j["kind"] = "pure";
    json amps = json::array();
    const auto& psi = state.amplitudes();
    for (std::size_t i = 0; i < layout.dimension(); ++i) {
      const Complex a = psi[static_cast<Eigen::Index>(i)];
      if (a == Complex{}) continue;
      amps.push_back({{"occ", layout.unflatten(i)}, {"re", a.real()}, {"im", a.imag()}});
    }
    j["amplitudes"] = std::move(amps);
  } else {
    j["kind"] = "mixed";
    json entries = json::array();
    const auto& rho = state.matrix();
    for (std::size_t r = 0; r < layout.dimension(); ++r) {
      for (std::size_t c = 0; c < layout.dimension(); ++c) {
        const Complex v = rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        if (v == Complex{}) continue;
        entries.push_back({{"row", layout.unflatten(r)}, {"col", layout.unflatten(c)}, {"re", v.real()}, {"im", v.imag()}});
      }
    }
    j["matrix"] = std::move(entries);
  }
  return j;
}

inline FockState state_from_json(const json& j) {
  try {
    const auto cutoffs = j.at("cutoffs").get<std::vector<int>>();
    if (j.contains("modes") && j.at("modes").get<std::size_t>() != cutoffs.size()) {
      throw Error(ErrorKind::ParseError, "\"modes\" does not match the number of cutoffs");
    }
    const auto kind = j.at("kind").get<std::string>();
    auto complex_of = [](const json& e) { return Complex(e.value("re", 0.0), e.value("im", 0.0)); };
    if (kind == "pure") {
      std::vector<AmplitudeEntry> entries;
      for (const auto& e : j.at("amplitudes")) entries.push_back({e.at("occ").get<FockIndex>(), complex_of(e)});
      return new_pure(cutoffs, entries);
    }
    if (kind == "mixed") {
      std::vector<MatrixEntry> entries;
      for (const auto& e : j.at("matrix")) {
        entries.push_back({e.at("row").get<FockIndex>(), e.at("col").get<FockIndex>(), complex_of(e)});
      }
      return new_mixed(cutoffs, entries);
    }
    throw Error(ErrorKind::ParseError, "\"kind\" must be \"pure\" or \"mixed\"");
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed state file: ") + e.what());
  }
}

inline void write_state_file(const std::string& path, const FockState& state) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidParameter, "cannot open " + path + " for writing");
  out << state_to_json(state).dump(1) << '\n';
}

inline FockState read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidParameter, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
  return state_from_json(j);
}

// ---------------------------------------------------------------------------
// Reports

inline json result_to_json(const CriterionResult& r) {
  json params = json::object();
  for (const auto& [k, v] : r.params) params[k] = report_number(v);
  json j = {{"criterion", r.criterion}, {"params", std::move(params)}, {"lhs", report_number(r.lhs)},
            {"rhs", report_number(r.rhs)}, {"margin", report_number(r.margin)}, {"detected", r.detected},
            {"tol", report_number(r.tol)}};
  if (r.error) j["error"] = *r.error;
  return j;
}

inline json report_to_json(const std::vector<CriterionResult>& results) {
  json out = json::array();
  for (const auto& r : results) out.push_back(result_to_json(r));
  return out;
}

inline std::string format_params(const std::map<std::string, double>& params) {
  std::string out;
  for (const auto& [k, v] : params) {
    if (!out.empty()) out += ",";
    out += k + "=" + format_number(v);
  }
  return out.empty() ? "-" : out;
}

/// Aligned table with the same 12-significant-digit values as the JSON form.
inline std::string format_report_text(const std::vector<CriterionResult>& results) {
  std::vector<std::vector<std::string>> rows{{"criterion", "lhs", "rhs", "margin", "detected", "tol", "params"}};
  for (const auto& r : results) {
    if (r.error) {
      rows.push_back({r.criterion, "-", "-", "-", "error", format_number(r.tol), *r.error});
      continue;
    }
    rows.push_back({r.criterion, format_number(r.lhs), format_number(r.rhs), format_number(r.margin),
                    r.detected ? "true" : "false", format_number(r.tol), format_params(r.params)});
  }
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << row[c];
      if (c + 1 < row.size()) out << std::string(width[c] - row[c].size() + 2, ' ');
    }
    out << '\n';
  }
  return out.str();
}

inline json ppt_to_json(const PptReport& r) {
  return {{"min_eigenvalue", report_number(r.min_eigenvalue)},
          {"negativity", report_number(r.negativity)},
          {"transposed_modes", r.transposed_modes}};
}

inline json fgrid_to_json(const FGridReport& r) {
  return {{"grid",
           {{"x_max", r.grid.x_max},
            {"y_max", r.grid.y_max},
            {"x_steps", r.grid.x_steps},
            {"y_steps", r.grid.y_steps},
            {"z_steps", r.grid.z_steps}}},
          {"min_F", report_number(r.min_f)},
          {"argmin", {report_number(r.argmin_x), report_number(r.argmin_y), report_number(r.argmin_z)}},
          {"evaluated", r.evaluated}};
}

}  // namespace fockwit::io
