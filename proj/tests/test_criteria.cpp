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


#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "fockwit/criteria.hpp"
#include "fockwit/states.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace fockwit {
namespace {

FockState vacuum(std::size_t modes) { return new_pure(std::vector<int>(modes, 3), {{FockIndex(modes, 0), 1.0}}); }

const CriterionResult& find(const std::vector<CriterionResult>& results, const std::string& id) {
  for (const auto& r : results)
    if (r.criterion == id) return r;
  throw std::runtime_error("missing " + id);
}

TEST(LsumTest, Examples) {
  const auto bell = criterion_lsum(gen_bell01());
  EXPECT_NEAR(bell.lhs, 2.0, 1e-14);
  EXPECT_NEAR(bell.rhs, 1.0, 1e-14);
  EXPECT_TRUE(bell.detected);

  const auto half = criterion_lsum(gen_mixed_s(0.5));
  EXPECT_NEAR(half.rhs, 2.25, 1e-14);
  EXPECT_NEAR(half.lhs, 2.0, 1e-14);
  EXPECT_FALSE(half.detected);

  const auto vac = criterion_lsum(vacuum(2));
  EXPECT_EQ(vac.lhs, 0.0);
  EXPECT_NEAR(vac.rhs, 0.0, 1e-15);
  EXPECT_NEAR(vac.margin, 0.0, 1e-15);
  EXPECT_FALSE(vac.detected);
}

TEST(LsumTest, MixedStateThreshold) {
  const double threshold = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int i = 0; i <= 100; ++i) {
    const double s = i / 100.0;
    const auto r = criterion_lsum(gen_mixed_s(s));
    EXPECT_EQ(r.detected, s > threshold) << s;
    EXPECT_NEAR(r.margin, s * s + s - 1.0, 1e-14);
  }
}

TEST(HzCrossTest, Examples) {
  const auto bell = criterion_hz_cross(gen_bell01(), 1, 1);
  EXPECT_EQ(bell.criterion, "hz-cross:1:1");
  EXPECT_NEAR(bell.lhs, 0.25, 1e-15);
  EXPECT_NEAR(bell.rhs, 0.0, 1e-15);
  EXPECT_TRUE(bell.detected);

  const auto coh = criterion_hz_cross(gen_product_coherent({Complex(1.0, 0.0), Complex(0.6, -0.3)}, std::nullopt, 1e-15), 1, 1);
  const double expected = 1.0 * std::norm(Complex(0.6, -0.3));
  EXPECT_NEAR(coh.lhs, expected, 1e-9);
  EXPECT_NEAR(coh.rhs, expected, 1e-9);
  EXPECT_NEAR(coh.margin, 0.0, 1e-9);
  EXPECT_FALSE(coh.detected);

  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n) {
      const auto v = criterion_hz_cross(vacuum(2), m, n);
      EXPECT_EQ(v.lhs, 0.0);
      EXPECT_EQ(v.rhs, 0.0);
      EXPECT_FALSE(v.detected);
    }
  EXPECT_THROW(criterion_hz_cross(vacuum(2), 0, 1), Error);
}

TEST(HzCrossTest, AgreesWithNumberProductCondition) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto s = testing::random_state(seed);
    const auto r = criterion_hz_cross(s, 1, 1);
    const double nanb = expect(s, ops::na_nb()).real();
    const double cross = std::norm(expect(s, ops::a_bdag()));
    if (std::abs(nanb - cross) > 2.0 * r.tol) {
      EXPECT_EQ(r.detected, nanb < cross) << seed;
    }
  }
}

TEST(HzPairTest, Examples) {
  const auto tmsv = criterion_hz_pair(gen_tmsv(0.5, std::nullopt, 1e-15), 1, 1);
  EXPECT_NEAR(tmsv.lhs, 4.0 / 9.0, 1e-9);
  EXPECT_NEAR(tmsv.rhs, 1.0 / 9.0, 1e-9);
  EXPECT_TRUE(tmsv.detected);

  const auto coh = criterion_hz_pair(gen_product_coherent({Complex(0.8, 0.2), Complex(-0.5, 0.9)}, std::nullopt, 1e-15), 1, 1);
  EXPECT_NEAR(coh.margin, 0.0, 1e-9);
  EXPECT_FALSE(coh.detected);

  const auto bell = criterion_hz_pair(gen_bell01(), 1, 1);
  EXPECT_EQ(bell.lhs, 0.0);
  EXPECT_FALSE(bell.detected);
}

TEST(KTest, Examples) {
  const auto vac = criterion_K(vacuum(2), {0.0});
  ASSERT_EQ(vac.size(), 1u);
  EXPECT_NEAR(vac[0].rhs, 1.0, 1e-14);
  EXPECT_NEAR(vac[0].margin, 0.0, 1e-14);
  EXPECT_FALSE(vac[0].detected);

  const auto alt = criterion_K(gen_alternating_even(0.1, 60), {0.0});
  EXPECT_LT(alt[0].rhs, 1.0);
  EXPECT_TRUE(alt[0].detected);
  EXPECT_NEAR(alt[0].rhs, analytic_alternating_K1_variance(0.1).k1_variance, 1e-8);

  const auto tmsv_state = gen_tmsv(0.5);
  const auto tmsv = criterion_K(tmsv_state, {0.0});
  EXPECT_NEAR(tmsv[0].rhs, oracle::dense_variance(tmsv_state, ops::K1().polynomial(), 2), 1e-9);
  EXPECT_GT(tmsv[0].rhs, 1.0);
  EXPECT_FALSE(tmsv[0].detected);
}

TEST(KTest, SummaryPicksSmallestVariance) {
  const auto per_phi = criterion_K(gen_alternating_even(0.2), phi_grid(16));
  const auto summary = summarize_K(per_phi);
  EXPECT_EQ(summary.criterion, "k:16");
  for (const auto& r : per_phi) EXPECT_LE(summary.rhs, r.rhs);
  EXPECT_EQ(summary.params.at("grid_size"), 16.0);
  // Real negative <a^2 b^2> favours phi = 0 (or pi, which gives the same variance).
  const double phi = summary.params.at("phi");
  EXPECT_TRUE(phi == 0.0 || std::abs(phi - std::numbers::pi) < 1e-12);
}

TEST(ThreeModeTest, Examples) {
  const auto ghz = criterion_three_mode(gen_ghz_like());
  EXPECT_NEAR(ghz.lhs, 0.25, 1e-15);
  EXPECT_EQ(ghz.rhs, 0.0);
  EXPECT_TRUE(ghz.detected);

  const auto vac = criterion_three_mode(vacuum(3));
  EXPECT_EQ(vac.lhs, 0.0);
  EXPECT_EQ(vac.rhs, 0.0);
  EXPECT_FALSE(vac.detected);

  const auto ones = criterion_three_mode(new_pure({2, 2, 2}, {{{1, 1, 1}, 1.0}}));
  EXPECT_EQ(ones.lhs, 0.0);
  EXPECT_NEAR(ones.rhs, 1.0, 1e-15);
  EXPECT_FALSE(ones.detected);

  EXPECT_THROW(criterion_three_mode(gen_bell01()), Error);
  EXPECT_THROW(criterion_lsum(gen_ghz_like()), Error);
}

TEST(FBoundTest, Examples) {
  for (double x = 0.0; x <= 10.0; x += 0.5) EXPECT_NEAR(f_bound(x, x, 0.0), 1.0, 1e-14);
  EXPECT_NEAR(f_bound(1.0, 2.0, 0.0), std::sqrt(6.0) - std::sqrt(2.0), 1e-15);
  // On the boundary xy = z the bound is sqrt(x + z/x + 1).
  EXPECT_NEAR(f_bound(2.0, 3.0, 6.0), std::sqrt(2.0 + 3.0 + 1.0), 1e-14);

  FGridSpec diag{10.0, 10.0, 21, 21, 1};
  EXPECT_NEAR(verify_F_bound(diag).min_f, 1.0, 1e-12);
}

TEST(FBoundTest, DefaultGrid) {
  const auto report = verify_F_bound();
  EXPECT_GE(report.min_f, 1.0 - 1e-12);
  EXPECT_NEAR(report.min_f, 1.0, 1e-12);
  EXPECT_EQ(report.argmin_z, 0.0);
  EXPECT_NEAR(report.argmin_x, report.argmin_y, 1e-12);
  EXPECT_EQ(report.evaluated, 200L * 200L * 20L);
  EXPECT_THROW(verify_F_bound(FGridSpec{0.0, 1.0, 10, 10, 2}), Error);
}

TEST(CriterionIdTest, ParsesAndRejects) {
  EXPECT_EQ(parse_criterion_id("lsum").kind, CriterionSpec::Kind::lsum);
  const auto hz = parse_criterion_id("hz-pair:2:3");
  EXPECT_EQ(hz.kind, CriterionSpec::Kind::hz_pair);
  EXPECT_EQ(hz.m, 2);
  EXPECT_EQ(hz.n, 3);
  EXPECT_EQ(parse_criterion_id("k:16").grid_size, 16);
  EXPECT_EQ(parse_criterion_id("three-mode").id(), "three-mode");
  for (const char* bad : {"lsum2", "hz-cross:1", "hz-cross:0:1", "k:", "k:x", "hz-pair:1:-1", ""}) {
    EXPECT_THROW(parse_criterion_id(bad), Error) << bad;
  }
  const auto list = parse_criteria_list("lsum, all", 2);
  EXPECT_EQ(list.size(), 1u + 1u + 9u + 9u + 1u);
  EXPECT_EQ(parse_criteria_list("all", 3).size(), 1u);
}

TEST(EvaluateAllTest, Examples) {
  const auto bell = evaluate_all(gen_bell01());
  EXPECT_TRUE(find(bell, "lsum").detected);
  EXPECT_TRUE(find(bell, "hz-cross:1:1").detected);
  EXPECT_FALSE(find(bell, "hz-pair:1:1").detected);
  EXPECT_FALSE(find(bell, "k:16").detected);
  EXPECT_EQ(bell.size(), 20u);
  EXPECT_EQ(bell.front().criterion, "lsum");
  EXPECT_EQ(bell.back().criterion, "k:16");

  EXPECT_TRUE(find(evaluate_all(gen_tmsv(0.5)), "hz-pair:1:1").detected);

  for (const auto& r : evaluate_all(vacuum(2))) EXPECT_FALSE(r.detected) << r.criterion;
  for (const auto& r : evaluate_all(vacuum(3))) EXPECT_FALSE(r.detected) << r.criterion;
  EXPECT_THROW(evaluate_all(new_pure({2}, {{{0}, 1.0}})), Error);
}

TEST(EvaluateAllTest, StrictGuardReportsPerEntryFailure) {
  CriteriaConfig strict;
  strict.strict_guard = true;
  std::optional<ErrorKind> first;
  const auto results = evaluate_list(gen_bell01(), default_criteria(2, strict), strict, &first);
  ASSERT_EQ(results.size(), 20u);
  for (const auto& r : results) {
    ASSERT_TRUE(r.error.has_value());
    EXPECT_NE(r.error->find("TruncationUnsafe"), std::string::npos);
  }
  EXPECT_EQ(first, ErrorKind::TruncationUnsafe);
  // Padding the cutoffs leaves the guard band empty.
  const auto padded = evaluate_list(gen_bell01({5, 5}), default_criteria(2, strict), strict);
  for (const auto& r : padded) EXPECT_FALSE(r.error.has_value()) << r.criterion;
}

TEST(OrientationTest, DetectedIffMarginExceedsTol) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    for (const auto& r : evaluate_all(testing::random_state(seed))) {
      EXPECT_EQ(r.detected, r.margin > r.tol);
      EXPECT_TRUE(std::isfinite(r.lhs) && std::isfinite(r.rhs));
      EXPECT_DOUBLE_EQ(r.tol, 1e-9 * std::max({1.0, std::abs(r.lhs), std::abs(r.rhs)}));
    }
  }
}

}  // namespace
}  // namespace fockwit
