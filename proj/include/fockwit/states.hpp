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
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fockwit/error.hpp"
#include "fockwit/fock_state.hpp"

namespace fockwit {

/// Probability mass a generator may discard when truncating an infinite
/// superposition.
inline constexpr double kDefaultTailTolerance = 1e-10;

namespace detail {

inline void require_cutoffs(const std::vector<int>& cutoffs, std::size_t modes, int minimum, const char* what) {
  if (cutoffs.size() != modes) {
    throw Error(ErrorKind::InvalidParameter,
                std::string(what) + " needs " + std::to_string(modes) + " cutoffs, got " + std::to_string(cutoffs.size()));
  }
  for (int c : cutoffs) {
    if (c < minimum) {
      throw Error(ErrorKind::InvalidIndex, std::string(what) + " needs every cutoff >= " + std::to_string(minimum));
    }
  }
}

inline void require_unit_interval(double x, const char* name) {
  if (!(x >= 0.0 && x < 1.0)) throw Error(ErrorKind::InvalidParameter, std::string(name) + " must lie in [0, 1)");
}

inline void require_tail(double tail, double tolerance, const std::string& what) {
  if (tail >= tolerance) {
    throw Error(ErrorKind::TruncationUnsafe,
                what + ": discarded tail weight " + format_real(tail) + " exceeds " + format_real(tolerance));
  }
}

/// eta = atanh(x) / x, the squared norm of sum_n (-1)^n x^n / sqrt(2n+1) |2n,2n>.
inline double alternating_eta(double x) { return x == 0.0 ? 1.0 : std::atanh(x) / x; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Bell and mixed-Bell states

/// (|0,1> + |1,0>) / sqrt(2).
inline FockState gen_bell01(const std::vector<int>& cutoffs = {2, 2}) {
  detail::require_cutoffs(cutoffs, 2, 2, "bell01");
  return new_pure(cutoffs, {{{0, 1}, 1.0}, {{1, 0}, 1.0}});
}

/// s |psi01><psi01| + (1 - s)/4 P01, with P01 the projector onto
/// span{|00>, |01>, |10>, |11>}.
inline FockState gen_mixed_s(double s, const std::vector<int>& cutoffs = {2, 2}) {
  if (!(s >= 0.0 && s <= 1.0)) throw Error(ErrorKind::InvalidParameter, "s must lie in [0, 1]");
  detail::require_cutoffs(cutoffs, 2, 2, "mixed-s");
  const double mix = (1.0 - s) / 4.0;
  std::vector<MatrixEntry> entries;
  for (const FockIndex& occ : {FockIndex{0, 0}, FockIndex{0, 1}, FockIndex{1, 0}, FockIndex{1, 1}}) {
    entries.push_back({occ, occ, mix});
  }
  for (const FockIndex& row : {FockIndex{0, 1}, FockIndex{1, 0}}) {
    for (const FockIndex& col : {FockIndex{0, 1}, FockIndex{1, 0}}) entries.push_back({row, col, s / 2.0});
  }
  return new_mixed(cutoffs, entries);
}

// ---------------------------------------------------------------------------
// Two-mode squeezed vacuum sqrt(1 - x^2) sum_n x^n |n,n>

/// Weight sum_{n >= cutoff} (1 - x^2) x^{2n} = x^{2 cutoff} dropped by truncation.
inline double tmsv_tail_weight(double x, int cutoff) { return std::pow(x * x, cutoff); }

inline int suggest_tmsv_cutoff(double x, double tail_tolerance = kDefaultTailTolerance) {
  detail::require_unit_interval(x, "x");
  int cutoff = 1;
  while (tmsv_tail_weight(x, cutoff) >= tail_tolerance) ++cutoff;
  return cutoff;
}

inline FockState gen_tmsv(double x, std::optional<int> cutoff = std::nullopt,
                          double tail_tolerance = kDefaultTailTolerance) {
  detail::require_unit_interval(x, "x");
  const int c = cutoff.value_or(suggest_tmsv_cutoff(x, tail_tolerance));
  if (c < 1) throw Error(ErrorKind::InvalidParameter, "cutoff must be positive");
  detail::require_tail(tmsv_tail_weight(x, c), tail_tolerance, "tmsv");
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(c) * c);
  const double norm = std::sqrt(1.0 - x * x);
  double power = 1.0;
  for (int n = 0; n < c; ++n) {
    amps[static_cast<Eigen::Index>(n) * c + n] = norm * power;
    power *= x;
  }
  return FockState::from_amplitudes({c, c}, std::move(amps));
}

// ---------------------------------------------------------------------------
// Alternating even state eta^{-1/2} sum_n (-1)^n x^n / sqrt(2n+1) |2n,2n>

/// Norm weight of the terms with 2n >= cutoff.
inline double alternating_even_tail_weight(double x, int cutoff) {
  detail::require_unit_interval(x, "x");
  if (x == 0.0) return 0.0;
  const int first = (cutoff + 1) / 2;
  double tail = 0.0;
  double x2n = std::pow(x * x, first);
  for (int n = first; x2n > 0.0; ++n) {
    const double term = x2n / (2.0 * n + 1.0);
    tail += term;
    if (term < 1e-17 * tail) break;
    x2n *= x * x;
  }
  return tail / detail::alternating_eta(x);
}

inline int suggest_alternating_even_cutoff(double x, double tail_tolerance = kDefaultTailTolerance) {
  detail::require_unit_interval(x, "x");
  int cutoff = 1;
  while (alternating_even_tail_weight(x, cutoff) >= tail_tolerance) cutoff += 2;
  return cutoff;
}

inline FockState gen_alternating_even(double x, std::optional<int> cutoff = std::nullopt,
                                      double tail_tolerance = kDefaultTailTolerance) {
  detail::require_unit_interval(x, "x");
  const int c = cutoff.value_or(suggest_alternating_even_cutoff(x, tail_tolerance));
  if (c < 1) throw Error(ErrorKind::InvalidParameter, "cutoff must be positive");
  detail::require_tail(alternating_even_tail_weight(x, c), tail_tolerance, "alt-even");
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(c) * c);
  double power = 1.0;
  for (int n = 0; 2 * n < c; ++n) {
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    amps[static_cast<Eigen::Index>(2 * n) * c + 2 * n] = sign * power / std::sqrt(2.0 * n + 1.0);
    power *= x;
  }
  return FockState::from_amplitudes({c, c}, std::move(amps));
}

/// Closed-form moments of the alternating even state, with the <a^2 b^2>
/// series summed until the next term falls below 1e-14 of the running sum.
struct AlternatingEvenMoments {
  double x = 0.0;
  double eta = 1.0;
  /// sum_n (2n+2)(2n+1) / sqrt((2n+3)(2n+1)) x^{2n+1}
  double series = 0.0;
  int series_terms = 0;
  double a2b2 = 0.0;  // = -series / eta
  double na1_nb1 = 1.0;  // <(N_a+1)(N_b+1)>
  double na_nb = 0.0;
  double k1_variance = 1.0;
  /// Closed-form upper bound on k1_variance obtained from a lower bound
  /// on the series.
  double k1_upper_bound = 1.0;
  /// Small-x behaviour 1 - 4x/sqrt(3).
  double k1_small_x = 1.0;
};

inline AlternatingEvenMoments analytic_alternating_K1_variance(double x) {
  detail::require_unit_interval(x, "x");
  AlternatingEvenMoments out;
  out.x = x;
  out.eta = detail::alternating_eta(x);
  double sum = 0.0;
  int terms = 0;
  if (x > 0.0) {
    double x_odd = x;
    for (int n = 0;; ++n) {
      const double term = (2.0 * n + 2.0) * (2.0 * n + 1.0) / std::sqrt((2.0 * n + 3.0) * (2.0 * n + 1.0)) * x_odd;
      sum += term;
      ++terms;
      x_odd *= x * x;
      const double next = (2.0 * n + 4.0) * (2.0 * n + 3.0) / std::sqrt((2.0 * n + 5.0) * (2.0 * n + 3.0)) * x_odd;
      if (std::abs(next) < 1e-14 * std::abs(sum)) break;
    }
  }
  const double one_minus = 1.0 - x * x;
  out.series = sum;
  out.series_terms = terms;
  out.a2b2 = -sum / out.eta;
  out.na1_nb1 = (1.0 + x * x) / (out.eta * one_minus * one_minus);
  out.na_nb = (3.0 * x * x - 1.0) / (out.eta * one_minus * one_minus) + 1.0;
  out.k1_variance = 1.0 + 4.0 * x * x / (out.eta * one_minus * one_minus) - 2.0 / out.eta * sum;
  out.k1_upper_bound =
      1.0 + 4.0 / out.eta * (-x / std::sqrt(3.0) + x * x * (1.0 - x * (2.0 - x * x)) / (one_minus * one_minus));
  out.k1_small_x = 1.0 - 4.0 * x / std::sqrt(3.0);
  return out;
}

struct TmsvMoments {
  double mean_n = 0.0;      // <N_a> = <N_b> = x^2 / (1 - x^2)
  double ab = 0.0;          // <ab> = x / (1 - x^2)
};

inline TmsvMoments analytic_tmsv_moments(double x) {
  detail::require_unit_interval(x, "x");
  return {x * x / (1.0 - x * x), x / (1.0 - x * x)};
}

struct MixedSMoments {
  double lsum_variance = 3.0;  // (dL1)^2 + (dL2)^2 = 3 - s - s^2
  double lsum_bound = 2.0;     // 2(<N_a> + <N_b>)
};

inline MixedSMoments analytic_mixed_s_moments(double s) { return {3.0 - s - s * s, 2.0}; }

// ---------------------------------------------------------------------------
// Three-mode and product states

/// (|1,0,0> + |0,1,1>) / sqrt(2).
inline FockState gen_ghz_like(const std::vector<int>& cutoffs = {2, 2, 2}) {
  detail::require_cutoffs(cutoffs, 3, 2, "ghz3");
  return new_pure(cutoffs, {{{1, 0, 0}, 1.0}, {{0, 1, 1}, 1.0}});
}

/// Poisson weight P(n >= cutoff) for mean |alpha|^2.
inline double coherent_tail_weight(Complex alpha, int cutoff) {
  const double mu = std::norm(alpha);
  if (mu == 0.0) return cutoff >= 1 ? 0.0 : 1.0;
  double tail = 0.0;
  for (int n = cutoff; n < cutoff + 10000; ++n) {
    const double term = std::exp(-mu + n * std::log(mu) - std::lgamma(n + 1.0));
    tail += term;
    if (n > mu && term < 1e-17 * tail) break;
  }
  return std::min(tail, 1.0);
}

inline int suggest_coherent_cutoff(Complex alpha, double tail_tolerance = kDefaultTailTolerance) {
  int cutoff = 1;
  while (coherent_tail_weight(alpha, cutoff) >= tail_tolerance) ++cutoff;
  return cutoff;
}

/// Truncated, renormalized tensor product of coherent states |alpha_k>.
inline FockState gen_product_coherent(const std::vector<Complex>& alphas,
                                      std::optional<std::vector<int>> cutoffs = std::nullopt,
                                      double tail_tolerance = kDefaultTailTolerance) {
  if (alphas.empty()) throw Error(ErrorKind::InvalidParameter, "coherent state needs at least one mode");
  std::vector<int> cuts;
  if (cutoffs) {
    if (cutoffs->size() != alphas.size()) throw Error(ErrorKind::InvalidParameter, "one cutoff per mode required");
    cuts = *cutoffs;
  } else {
    for (const auto& a : alphas) cuts.push_back(suggest_coherent_cutoff(a, tail_tolerance));
  }
  std::vector<Eigen::VectorXcd> factors;
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    if (cuts[k] < 1) throw Error(ErrorKind::InvalidParameter, "cutoff must be positive");
    detail::require_tail(coherent_tail_weight(alphas[k], cuts[k]), tail_tolerance,
                         "coherent mode " + std::to_string(k));
    Eigen::VectorXcd v(cuts[k]);
    Complex amp = std::exp(-0.5 * std::norm(alphas[k]));
    for (int n = 0; n < cuts[k]; ++n) {
      v[n] = amp;
      amp *= alphas[k] / std::sqrt(n + 1.0);
    }
    factors.push_back(std::move(v));
  }
  Eigen::VectorXcd amps = factors[0];
  for (std::size_t k = 1; k < factors.size(); ++k) {
    Eigen::VectorXcd next(amps.size() * factors[k].size());
    for (Eigen::Index i = 0; i < amps.size(); ++i) next.segment(i * factors[k].size(), factors[k].size()) = amps[i] * factors[k];
    amps = std::move(next);
  }
  return FockState::from_amplitudes(cuts, std::move(amps));
}

}  // namespace fockwit
