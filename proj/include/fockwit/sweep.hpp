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

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fockwit/criteria.hpp"
#include "fockwit/error.hpp"
#include "fockwit/states.hpp"

namespace fockwit {

inline constexpr std::string_view kGeneratorNames = "bell01, mixed-s, tmsv, alt-even, ghz3, coherent";

/// Parameters shared by the named generators; unused fields are ignored.
struct GeneratorOptions {
  double s = 1.0;
  double x = 0.5;
  std::vector<Complex> alphas{Complex(1.0, 0.0), Complex(1.0, 0.0)};
  std::optional<int> cutoff;
  double tail_tolerance = kDefaultTailTolerance;
};

/// Builds one of the named example states.
inline FockState generate_named(const std::string& name, const GeneratorOptions& opt) {
  auto uniform = [&](std::size_t modes, int fallback) {
    return std::vector<int>(modes, opt.cutoff.value_or(fallback));
  };
  if (name == "bell01") return gen_bell01(uniform(2, 2));
  if (name == "mixed-s") return gen_mixed_s(opt.s, uniform(2, 2));
  if (name == "tmsv") return gen_tmsv(opt.x, opt.cutoff, opt.tail_tolerance);
  if (name == "alt-even") return gen_alternating_even(opt.x, opt.cutoff, opt.tail_tolerance);
  if (name == "ghz3") return gen_ghz_like(uniform(3, 2));
  if (name == "coherent") {
    std::optional<std::vector<int>> cutoffs;
    if (opt.cutoff) cutoffs = std::vector<int>(opt.alphas.size(), *opt.cutoff);
    return gen_product_coherent(opt.alphas, cutoffs, opt.tail_tolerance);
  }
  throw Error(ErrorKind::ParseError, "unknown generator \"" + name + "\"; valid: " + std::string(kGeneratorNames));
}

/// Name of the scalar swept for each generator ("s" or "x"; coherent sweeps
/// a real amplitude shared by every mode).
inline std::string sweep_parameter(const std::string& generator) {
  if (generator == "mixed-s") return "s";
  if (generator == "tmsv" || generator == "alt-even") return "x";
  if (generator == "coherent") return "alpha";
  throw Error(ErrorKind::InvalidParameter, "generator \"" + generator + "\" has no sweepable parameter");
}

inline FockState generate_at(const std::string& generator, double value, GeneratorOptions opt) {
  const auto param = sweep_parameter(generator);
  if (param == "s") opt.s = value;
  if (param == "x") opt.x = value;
  if (param == "alpha") {
    for (auto& a : opt.alphas) a = Complex(value, 0.0);
  }
  return generate_named(generator, opt);
}

/// Inclusive range from, from + step, ..., up to `to` (with 1e-9 slack).
inline std::vector<double> param_range(double from, double to, double step) {
  if (!(step > 0.0) || !(to >= from)) throw Error(ErrorKind::InvalidParameter, "range needs step > 0 and to >= from");
  const auto count = static_cast<long>(std::floor((to - from) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) out.push_back(from + static_cast<double>(i) * step);
  return out;
}

struct SweepRow {
  double param = 0.0;
  CriterionResult result;
};

struct SweepResult {
  std::string generator;
  std::string parameter;
  std::string criterion;
  std::vector<SweepRow> rows;
  /// Parameter values where the verdict flips, by linear interpolation of
  /// the margin's zero between neighbouring rows.
  std::vector<double> thresholds;
};

inline std::vector<double> detection_thresholds(const std::vector<SweepRow>& rows) {
  std::vector<double> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& lo = rows[i - 1];
    const auto& hi = rows[i];
    if (lo.result.error || hi.result.error || lo.result.detected == hi.result.detected) continue;
    const double m0 = lo.result.margin;
    const double m1 = hi.result.margin;
    double t = 0.5;
    if (m0 != m1 && (m0 <= 0.0) != (m1 <= 0.0)) t = m0 / (m0 - m1);
    out.push_back(lo.param + t * (hi.param - lo.param));
  }
  return out;
}

/// Evaluates one criterion along a generator's parameter. Generation or
/// evaluation failures propagate.
inline SweepResult run_sweep(const std::string& generator, const std::vector<double>& values,
                             const CriterionSpec& criterion, const GeneratorOptions& options = {},
                             const CriteriaConfig& config = {}) {
  SweepResult out;
  out.generator = generator;
  out.parameter = sweep_parameter(generator);
  out.criterion = criterion.id();
  for (double v : values) {
    const auto state = generate_at(generator, v, options);
    out.rows.push_back({v, evaluate(state, criterion, config)});
  }
  out.thresholds = detection_thresholds(out.rows);
  return out;
}

}  // namespace fockwit
