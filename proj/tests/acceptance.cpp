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


// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "fockwit/fockwit.hpp"
#include "fockwit/sweep.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace {

using namespace fockwit;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << (detail.tellp() > 0 ? "; " : "") << what;
    }
  }
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void mixed_state_formula(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  for (double s : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const auto r = criterion_lsum(gen_mixed_s(s));
    o.check(std::abs(r.rhs - (3.0 - s - s * s)) <= 1e-10, "s=" + fmt(s) + " variance " + fmt(r.rhs));
    o.check(std::abs(r.lhs - 2.0) <= 1e-10, "s=" + fmt(s) + " bound " + fmt(r.lhs));
  }
  const double t = seconds_since(start);
  o.check(t < 1.0, "runtime " + fmt(t) + " s");
}

void detection_threshold(Outcome& o) {
  const auto sweep = run_sweep("mixed-s", param_range(0.0, 1.0, 0.001), parse_criterion_id("lsum"));
  const double expected = (std::sqrt(5.0) - 1.0) / 2.0;
  o.check(sweep.thresholds.size() == 1, std::to_string(sweep.thresholds.size()) + " thresholds found");
  if (!sweep.thresholds.empty()) {
    o.check(std::abs(sweep.thresholds[0] - expected) <= 0.002, "threshold " + fmt(sweep.thresholds[0]));
  }
}

void tmsv_moments(Outcome& o) {
  for (double x : {0.3, 0.5, 0.7}) {
    const auto state = gen_tmsv(x);
    const double na = expect(state, ops::na()).real();
    const double ab = std::abs(expect(state, ops::ab()));
    o.check(std::abs(na - x * x / (1 - x * x)) <= 1e-8, "x=" + fmt(x) + " <N_a> " + fmt(na));
    o.check(std::abs(ab - x / (1 - x * x)) <= 1e-8, "x=" + fmt(x) + " |<ab>| " + fmt(ab));
    o.check(criterion_hz_pair(state, 1, 1).detected, "x=" + fmt(x) + " hz-pair:1:1 not detected");
  }
}

void alternating_even(Outcome& o) {
  for (double x : {0.05, 0.1, 0.2}) {
    // Off-diagonal moments carry an error of order sqrt(tail weight).
    const auto state = gen_alternating_even(x, std::nullopt, 1e-17);
    const double numeric = mean_variance(state, ops::K1()).variance;
    const auto closed = analytic_alternating_K1_variance(x);
    o.check(std::abs(numeric - closed.k1_variance) <= 1e-8,
            "x=" + fmt(x) + " numeric " + fmt(numeric) + " vs analytic " + fmt(closed.k1_variance));
    o.check(numeric < 1.0, "x=" + fmt(x) + " variance " + fmt(numeric) + " not below 1");
    o.check(numeric <= closed.k1_upper_bound,
            "x=" + fmt(x) + " variance " + fmt(numeric) + " exceeds closed-form upper bound " +
                fmt(closed.k1_upper_bound));
  }
}

void three_mode(Outcome& o) {
  const auto ghz = gen_ghz_like();
  const auto r = criterion_three_mode(ghz);
  // No double squares to exactly 1/2, so the amplitude product is 1/2 only
  // to rounding; the zero moment is exact.
  o.check(std::abs(r.lhs - 0.25) <= 4.0 * std::numeric_limits<double>::epsilon(), "|<ab^dag c^dag>|^2 = " + fmt(r.lhs));
  o.check(r.rhs == 0.0, "<N_a N_b N_c> = " + fmt(r.rhs));
  o.check(r.detected, "not detected");
}

void soundness(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  const int mixtures[] = {1, 2, 5, 10};
  CriteriaConfig config;
  config.mn_max = 2;
  const auto specs = default_criteria(2, config);
  const HermitianCombination checked[] = {ops::L1(), ops::L2(), ops::K(0.0), ops::K1(), ops::K2()};
  int detections = 0;
  int violations = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto ensemble = sample_separable_mixture(seed, mixtures[seed % 4], 2, {5, 5});
    const auto state = ensemble.to_state();
    for (const auto& r : evaluate_list(state, specs, config)) {
      if (r.detected) {
        if (detections++ == 0) o.check(false, "seed " + std::to_string(seed) + " detected by " + r.criterion);
      }
    }
    if (const auto v = testing::moment_bound_violation(state)) {
      if (violations++ == 0) o.check(false, "seed " + std::to_string(seed) + ": " + *v);
    }
    for (const auto& op : checked) {
      if (!check_mixture_variance(ensemble, op).holds && violations++ == 0) {
        o.check(false, "seed " + std::to_string(seed) + ": mixture variance below average for " + op.name());
      }
    }
  }
  o.check(detections == 0, std::to_string(detections) + " detections");
  o.check(violations == 0, std::to_string(violations) + " relation violations");
  const double t = seconds_since(start);
  o.check(t < 120.0, "runtime " + fmt(t) + " s");
}

void identities(Outcome& o) {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto s = testing::random_state(seed);
    const double direct = mean_variance(s, ops::L1()).variance + mean_variance(s, ops::L2()).variance;
    worst = std::max(worst, std::abs(direct - lsum_via_identity(s)));
  }
  o.check(worst <= 1e-9, "variance identity off by " + fmt(worst));

  // su(2) at matrix level on cutoffs [4,4]: products are taken with two
  // padding levels and compressed back, so truncation does not touch them.
  const int c = 4;
  const oracle::PaddedModel model{std::vector<int>{c + 2, c + 2}};
  const FockLayout padded({c + 2, c + 2});
  const FockLayout small({c, c});
  auto compress = [&](const Eigen::MatrixXcd& big) {
    Eigen::MatrixXcd out(small.dimension(), small.dimension());
    for (std::size_t r = 0; r < small.dimension(); ++r)
      for (std::size_t k = 0; k < small.dimension(); ++k)
        out(r, k) = big(padded.flatten(small.unflatten(r)), padded.flatten(small.unflatten(k)));
    return out;
  };
  const Eigen::MatrixXcd j[3] = {0.5 * model.polynomial(ops::L1().polynomial()),
                                 0.5 * model.polynomial(ops::L2().polynomial()),
                                 0.5 * model.polynomial(ops::K3().polynomial())};
  const Complex i{0.0, 1.0};
  double err = 0.0;
  for (int k = 0; k < 3; ++k) {
    const auto& a = j[k];
    const auto& b = j[(k + 1) % 3];
    const auto& n = j[(k + 2) % 3];
    err = std::max(err, (compress(a * b - b * a) - i * compress(n)).cwiseAbs().maxCoeff());
  }
  o.check(err <= 1e-12, "su(2) commutator error " + fmt(err));
}

void f_grid(Outcome& o) {
  const auto r = verify_F_bound();
  o.check(r.min_f >= 1.0 - 1e-12, "min F " + fmt(r.min_f));
  o.check(r.argmin_z == 0.0, "argmin z " + fmt(r.argmin_z));
  o.check(std::abs(r.argmin_x - r.argmin_y) <= 1e-9, "argmin x " + fmt(r.argmin_x) + " y " + fmt(r.argmin_y));
}

void ppt_cross_check(Outcome& o) {
  int detected = 0;
  for (const auto& [name, state] : testing::small_corpus()) {
    const auto results = evaluate_all(state);
    bool any = false;
    for (const auto& r : results) any = any || r.detected;
    if (!any) continue;
    ++detected;
    const double neg = max_single_mode_negativity(state);
    o.check(neg > 1e-10, name + " detected but negativity " + fmt(neg));
  }
  o.check(detected > 0, "corpus has no detected states");
  for (int k = 0; k <= 1000; ++k) {
    const double s = k / 1000.0;
    const double min_eig = ppt_check(gen_mixed_s(s), {1}).min_eigenvalue;
    const double closed = (1.0 - 3.0 * s) / 4.0;
    o.check(std::abs(min_eig - closed) <= 1e-12, "s=" + fmt(s) + " min eigenvalue " + fmt(min_eig));
    if (std::abs(s - 1.0 / 3.0) > 1e-9) o.check((min_eig < 0.0) == (s > 1.0 / 3.0), "s=" + fmt(s) + " NPT mismatch");
    if (criterion_lsum(gen_mixed_s(s)).detected) o.check(min_eig < 0.0, "s=" + fmt(s) + " detected but PPT");
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"AC1 mixed-state variance formula", mixed_state_formula},
      {"AC2 mixed-state detection threshold", detection_threshold},
      {"AC3 two-mode squeezed vacuum moments", tmsv_moments},
      {"AC4 alternating even state K1 variance", alternating_even},
      {"AC5 three-mode example", three_mode},
      {"AC6 separable soundness sweep", soundness},
      {"AC7 identity and su(2) checks", identities},
      {"AC8 F-bound grid", f_grid},
      {"AC9 partial transpose cross-check", ppt_cross_check},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      run(o);
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    std::printf("%s: %s%s%s\n", name.c_str(), o.pass ? "PASS" : "FAIL", o.pass ? "" : " (",
                o.pass ? "" : (o.detail.str() + ")").c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu acceptance criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
