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
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fockwit/error.hpp"
#include "fockwit/fock_state.hpp"
#include "fockwit/moments.hpp"
#include "fockwit/monomial.hpp"

namespace fockwit {

struct CriteriaConfig {
  /// Relative: the absolute threshold is tolerance * max(1, |lhs|, |rhs|).
  double tolerance = 1e-9;
  int phi_grid_size = 16;
  int mn_max = 3;
  double guard_epsilon = kDefaultGuardEpsilon;
  /// Refuse states with weight near the cutoff, as if moments were taken
  /// by applying truncated operator matrices.
  bool strict_guard = false;
};

/// One criterion evaluation, oriented so that margin > tol means the
/// separable bound is violated.
struct CriterionResult {
  std::string criterion;
  std::map<std::string, double> params;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool detected = false;
  double tol = 0.0;
  std::optional<std::string> error;
};

inline CriterionResult make_result(std::string criterion, std::map<std::string, double> params, double lhs,
                                   double rhs, double relative_tol) {
  if (!std::isfinite(lhs) || !std::isfinite(rhs)) {
    throw Error(ErrorKind::InvalidParameter, criterion + ": non-finite moments");
  }
  CriterionResult r;
  r.criterion = std::move(criterion);
  r.params = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = lhs - rhs;
  r.tol = relative_tol * std::max({1.0, std::abs(lhs), std::abs(rhs)});
  r.detected = r.margin > r.tol;
  return r;
}

namespace detail {

inline void strict_guard(const FockState& state, int creation_power, const CriteriaConfig& config) {
  if (!config.strict_guard) return;
  const auto report = guard_band_check(state, creation_power, config.guard_epsilon);
  if (!report.safe) {
    throw Error(ErrorKind::TruncationUnsafe, "weight " + format_real(report.leaked_weight) + " in guard band of width " +
                                                 std::to_string(creation_power));
  }
}

inline void require_positive_powers(int m, int n) {
  if (m < 1 || n < 1) throw Error(ErrorKind::InvalidParameter, "powers m, n must be positive");
}

}  // namespace detail

/// Separable states satisfy (dL1)^2 + (dL2)^2 >= 2(<N_a> + <N_b>).
inline CriterionResult criterion_lsum(const FockState& state, const CriteriaConfig& config = {}) {
  require_two_modes(state);
  detail::strict_guard(state, 2, config);
  const double lhs = 2.0 * (expect(state, ops::na()).real() + expect(state, ops::nb()).real());
  const double rhs = mean_variance(state, ops::L1()).variance + mean_variance(state, ops::L2()).variance;
  return make_result("lsum", {}, lhs, rhs, config.tolerance);
}

/// Separable states satisfy |<a^m (b^dag)^n>|^2 <= <(a^dag)^m a^m (b^dag)^n b^n>.
inline CriterionResult criterion_hz_cross(const FockState& state, int m, int n, const CriteriaConfig& config = {}) {
  require_two_modes(state);
  detail::require_positive_powers(m, n);
  detail::strict_guard(state, std::max(m, n), config);
  const double lhs = std::norm(expect(state, ops::mono2(0, m, n, 0)));
  const double rhs = expect(state, ops::mono2(m, m, n, n)).real();
  return make_result("hz-cross:" + std::to_string(m) + ":" + std::to_string(n), {{"m", static_cast<double>(m)}, {"n", static_cast<double>(n)}}, lhs, rhs,
                     config.tolerance);
}

/// Separable states satisfy |<a^m b^n>|^2 <= <(a^dag)^m a^m> <(b^dag)^n b^n>.
inline CriterionResult criterion_hz_pair(const FockState& state, int m, int n, const CriteriaConfig& config = {}) {
  require_two_modes(state);
  detail::require_positive_powers(m, n);
  detail::strict_guard(state, std::max(m, n), config);
  const double lhs = std::norm(expect(state, ops::mono2(0, m, 0, n)));
  const double rhs = expect(state, ops::mono2(m, m, 0, 0)).real() * expect(state, ops::mono2(0, 0, n, n)).real();
  return make_result("hz-pair:" + std::to_string(m) + ":" + std::to_string(n), {{"m", static_cast<double>(m)}, {"n", static_cast<double>(n)}}, lhs, rhs,
                     config.tolerance);
}

/// Separable states satisfy (dK(phi))^2 >= 1; one result per phase.
inline std::vector<CriterionResult> criterion_K(const FockState& state, const std::vector<double>& phis,
                                                const CriteriaConfig& config = {}) {
  require_two_modes(state);
  if (phis.empty()) throw Error(ErrorKind::InvalidParameter, "empty phi grid");
  detail::strict_guard(state, 2, config);
  std::vector<CriterionResult> out;
  out.reserve(phis.size());
  for (double phi : phis) {
    const double variance = mean_variance(state, ops::K(phi)).variance;
    out.push_back(make_result("k", {{"phi", phi}}, 1.0, variance, config.tolerance));
  }
  return out;
}

/// Collapses per-phase K results to the phase with the smallest variance.
inline CriterionResult summarize_K(const std::vector<CriterionResult>& per_phi) {
  if (per_phi.empty()) throw Error(ErrorKind::InvalidParameter, "no K results to summarize");
  const auto best = std::min_element(per_phi.begin(), per_phi.end(),
                                     [](const CriterionResult& a, const CriterionResult& b) { return a.rhs < b.rhs; });
  CriterionResult out = *best;
  const auto size = per_phi.size();
  out.criterion = "k:" + std::to_string(size);
  out.params = {{"grid_size", static_cast<double>(size)}, {"phi", best->params.at("phi")}};
  return out;
}

/// Completely separable three-mode states satisfy
/// |<a b^dag c^dag>|^2 <= <N_a N_b N_c>.
inline CriterionResult criterion_three_mode(const FockState& state, const CriteriaConfig& config = {}) {
  if (state.mode_count() != 3) {
    throw Error(ErrorKind::WrongArity, "expected a three-mode state, got " + std::to_string(state.mode_count()) + " modes");
  }
  detail::strict_guard(state, 1, config);
  const OperatorMonomial cross(std::vector<ModePowers>{{0, 1}, {1, 0}, {1, 0}});
  const OperatorMonomial numbers(std::vector<ModePowers>{{1, 1}, {1, 1}, {1, 1}});
  const double lhs = std::norm(expect(state, cross));
  const double rhs = expect(state, numbers).real();
  return make_result("three-mode", {}, lhs, rhs, config.tolerance);
}

// ---------------------------------------------------------------------------
// Lower bound on product-state K variances: F = sqrt((x+1)(y+1)-z) - sqrt(xy-z)
// with x = <N_a>, y = <N_b>, z = |<ab>|^2, over xy >= z >= 0.

inline double f_bound(double x, double y, double z) {
  return std::sqrt((x + 1.0) * (y + 1.0) - z) - std::sqrt(std::max(0.0, x * y - z));
}

struct FGridSpec {
  double x_max = 50.0;
  double y_max = 50.0;
  int x_steps = 200;
  int y_steps = 200;
  /// z is sampled at j / (z_steps - 1) of xy, j = 0 .. z_steps - 1.
  int z_steps = 20;
};

struct FGridReport {
  FGridSpec grid;
  double min_f = std::numeric_limits<double>::infinity();
  double argmin_x = 0.0;
  double argmin_y = 0.0;
  double argmin_z = 0.0;
  long evaluated = 0;
};

inline FGridReport verify_F_bound(const FGridSpec& grid = {}) {
  if (!(grid.x_max > 0.0) || !(grid.y_max > 0.0)) throw Error(ErrorKind::InvalidParameter, "grid extents must be positive");
  if (grid.x_steps < 2 || grid.y_steps < 2 || grid.z_steps < 1) {
    throw Error(ErrorKind::InvalidParameter, "grid needs at least two x/y steps");
  }
  FGridReport report;
  report.grid = grid;
  for (int i = 0; i < grid.x_steps; ++i) {
    const double x = grid.x_max * i / (grid.x_steps - 1);
    for (int j = 0; j < grid.y_steps; ++j) {
      const double y = grid.y_max * j / (grid.y_steps - 1);
      for (int k = 0; k < grid.z_steps; ++k) {
        const double frac = grid.z_steps == 1 ? 0.0 : static_cast<double>(k) / (grid.z_steps - 1);
        const double z = frac * x * y;
        if (!(z >= 0.0 && z <= x * y)) continue;
        const double f = f_bound(x, y, z);
        ++report.evaluated;
        if (f < report.min_f) {
          report.min_f = f;
          report.argmin_x = x;
          report.argmin_y = y;
          report.argmin_z = z;
        }
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Criterion identifiers: "lsum", "hz-cross:m:n", "hz-pair:m:n", "k:<grid>",
// "three-mode"; "all" expands to every criterion applicable to the arity.

struct CriterionSpec {
  enum class Kind { lsum, hz_cross, hz_pair, k, three_mode };
  Kind kind = Kind::lsum;
  int m = 1;
  int n = 1;
  int grid_size = 16;

  std::string id() const {
    switch (kind) {
      case Kind::lsum: return "lsum";
      case Kind::hz_cross: return "hz-cross:" + std::to_string(m) + ":" + std::to_string(n);
      case Kind::hz_pair: return "hz-pair:" + std::to_string(m) + ":" + std::to_string(n);
      case Kind::k: return "k:" + std::to_string(grid_size);
      case Kind::three_mode: return "three-mode";
    }
    return {};
  }
};

inline constexpr std::string_view kCriterionIdHelp = "lsum, hz-cross:m:n, hz-pair:m:n, k:<grid-size>, three-mode, all";

inline CriterionSpec parse_criterion_id(std::string_view id) {
  auto fail = [&] {
    throw Error(ErrorKind::ParseError,
                "unknown criterion \"" + std::string(id) + "\"; valid ids: " + std::string(kCriterionIdHelp));
  };
  auto parse_int = [&](std::string_view s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }) || s.size() > 6) fail();
    const int v = std::stoi(std::string(s));
    if (v < 1) fail();
    return v;
  };
  CriterionSpec spec;
  if (id == "lsum") {
    spec.kind = CriterionSpec::Kind::lsum;
  } else if (id == "three-mode") {
    spec.kind = CriterionSpec::Kind::three_mode;
  } else if (id.starts_with("k:")) {
    spec.kind = CriterionSpec::Kind::k;
    spec.grid_size = parse_int(id.substr(2));
  } else if (id.starts_with("hz-cross:") || id.starts_with("hz-pair:")) {
    const bool cross = id.starts_with("hz-cross:");
    spec.kind = cross ? CriterionSpec::Kind::hz_cross : CriterionSpec::Kind::hz_pair;
    const auto rest = id.substr(cross ? 9 : 8);
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) fail();
    spec.m = parse_int(rest.substr(0, colon));
    spec.n = parse_int(rest.substr(colon + 1));
  } else {
    fail();
  }
  return spec;
}

/// Every criterion applicable to a state with `mode_count` modes, in report order.
inline std::vector<CriterionSpec> default_criteria(std::size_t mode_count, const CriteriaConfig& config = {}) {
  std::vector<CriterionSpec> out;
  if (mode_count == 2) {
    out.push_back({CriterionSpec::Kind::lsum});
    for (auto kind : {CriterionSpec::Kind::hz_cross, CriterionSpec::Kind::hz_pair}) {
      for (int m = 1; m <= config.mn_max; ++m) {
        for (int n = 1; n <= config.mn_max; ++n) out.push_back({kind, m, n});
      }
    }
    out.push_back({CriterionSpec::Kind::k, 1, 1, config.phi_grid_size});
  } else if (mode_count == 3) {
    out.push_back({CriterionSpec::Kind::three_mode});
  } else {
    throw Error(ErrorKind::WrongArity, "criteria exist for two- and three-mode states only");
  }
  return out;
}

/// Parses a comma-separated list of identifiers; "all" expands per arity.
inline std::vector<CriterionSpec> parse_criteria_list(std::string_view list, std::size_t mode_count,
                                                      const CriteriaConfig& config = {}) {
  std::vector<CriterionSpec> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const auto comma = list.find(',', start);
    auto token = list.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (token == "all") {
      const auto all = default_criteria(mode_count, config);
      out.insert(out.end(), all.begin(), all.end());
    } else if (!token.empty()) {
      out.push_back(parse_criterion_id(token));
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw Error(ErrorKind::ParseError, "no criteria given; valid ids: " + std::string(kCriterionIdHelp));
  return out;
}

inline CriterionResult evaluate(const FockState& state, const CriterionSpec& spec, const CriteriaConfig& config = {}) {
  switch (spec.kind) {
    case CriterionSpec::Kind::lsum: return criterion_lsum(state, config);
    case CriterionSpec::Kind::hz_cross: return criterion_hz_cross(state, spec.m, spec.n, config);
    case CriterionSpec::Kind::hz_pair: return criterion_hz_pair(state, spec.m, spec.n, config);
    case CriterionSpec::Kind::k: return summarize_K(criterion_K(state, phi_grid(spec.grid_size), config));
    case CriterionSpec::Kind::three_mode: return criterion_three_mode(state, config);
  }
  throw Error(ErrorKind::InvalidParameter, "unhandled criterion");
}

/// Runs each spec; a failing criterion becomes an entry carrying `error`
/// instead of aborting the batch. `first_error` receives the first failure kind.
inline std::vector<CriterionResult> evaluate_list(const FockState& state, const std::vector<CriterionSpec>& specs,
                                                  const CriteriaConfig& config = {},
                                                  std::optional<ErrorKind>* first_error = nullptr) {
  std::vector<CriterionResult> out;
  out.reserve(specs.size());
  for (const auto& spec : specs) {
    try {
      out.push_back(evaluate(state, spec, config));
    } catch (const Error& e) {
      CriterionResult failed;
      failed.criterion = spec.id();
      failed.lhs = failed.rhs = failed.margin = std::numeric_limits<double>::quiet_NaN();
      failed.tol = config.tolerance;
      failed.error = e.what();
      if (first_error != nullptr && !first_error->has_value()) *first_error = e.kind();
      out.push_back(std::move(failed));
    }
  }
  return out;
}

inline std::vector<CriterionResult> evaluate_all(const FockState& state, const CriteriaConfig& config = {}) {
  return evaluate_list(state, default_criteria(state.mode_count(), config), config);
}

}  // namespace fockwit
