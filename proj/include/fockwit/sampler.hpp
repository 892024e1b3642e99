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
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fockwit/error.hpp"
#include "fockwit/fock_state.hpp"
#include "fockwit/moments.hpp"
#include "fockwit/monomial.hpp"

namespace fockwit {

/// SplitMix64 run in counter mode: draw i of a stream with key K is
/// mix64(K + (i + 1) * 0x9E3779B97F4A7C15). Streams are split by keying a
/// child with mix64(K ^ mix64(stream_id + 0x9E3779B97F4A7C15)), so any draw
/// is addressable from (seed, stream path, counter) without shared state.
class CounterRng {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0) : key_(key), counter_(counter) {}

  static constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

  std::uint64_t next_u64() { return mix64(key_ + (++counter_) * kGamma); }

  CounterRng split(std::uint64_t stream) const { return CounterRng(mix64(key_ ^ mix64(stream + kGamma))); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_positive() { return 1.0 - uniform(); }

  /// Standard normal, Box-Muller (one variate per call, two draws).
  double normal() {
    const double r = std::sqrt(-2.0 * std::log(uniform_positive()));
    return r * std::cos(2.0 * std::numbers::pi * uniform());
  }

  double exponential() { return -std::log(uniform_positive()); }

  int uniform_int(int bound) { return static_cast<int>(uniform() * bound); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

struct WeightedPureState {
  double probability = 0.0;
  FockState state;
};

/// Convex combination of product pure states.
struct SeparableEnsemble {
  struct Component {
    double probability = 0.0;
    std::vector<Eigen::VectorXcd> mode_states;  // normalized, one per mode
  };

  std::uint64_t seed = 0;
  std::vector<int> cutoffs;
  std::vector<Component> components;

  FockState component_state(std::size_t k) const {
    const auto& modes = components.at(k).mode_states;
    Eigen::VectorXcd amps = modes[0];
    for (std::size_t j = 1; j < modes.size(); ++j) {
      const auto inner = modes[j].size();
      Eigen::VectorXcd next(amps.size() * inner);
      for (Eigen::Index i = 0; i < amps.size(); ++i) next.segment(i * inner, inner) = amps[i] * modes[j];
      amps = std::move(next);
    }
    return FockState::from_amplitudes(cutoffs, std::move(amps));
  }

  std::vector<WeightedPureState> weighted_states() const {
    std::vector<WeightedPureState> out;
    for (std::size_t k = 0; k < components.size(); ++k) out.push_back({components[k].probability, component_state(k)});
    return out;
  }

  /// Pure for a single component, otherwise the dense mixture.
  FockState to_state() const {
    if (components.size() == 1) return component_state(0);
    FockLayout layout(cutoffs);
    const auto dim = static_cast<Eigen::Index>(layout.dimension());
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t k = 0; k < components.size(); ++k) {
      const auto psi = component_state(k).amplitudes();
      rho.noalias() += components[k].probability * (psi * psi.adjoint());
    }
    return FockState::from_density_matrix(cutoffs, std::move(rho));
  }
};

enum class ProductDraw {
  /// Independent standard complex Gaussians per level, normalized.
  haar,
  /// A single uniformly chosen Fock level per mode.
  basis,
};

namespace detail {

inline Eigen::VectorXcd draw_mode_state(CounterRng rng, int cutoff, ProductDraw draw) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(cutoff);
  if (draw == ProductDraw::basis) {
    v[rng.uniform_int(cutoff)] = 1.0;
    return v;
  }
  for (;;) {
    for (int n = 0; n < cutoff; ++n) v[n] = Complex(rng.normal(), rng.normal());
    const double norm = v.norm();
    if (norm > 0.0) return v / norm;
  }
}

inline void check_sampler_args(std::size_t mode_count, const std::vector<int>& cutoffs) {
  if (mode_count < 1 || cutoffs.size() != mode_count) {
    throw Error(ErrorKind::InvalidParameter, "sampler needs one cutoff per mode");
  }
  for (int c : cutoffs) {
    if (c < 2) throw Error(ErrorKind::InvalidParameter, "sampler cutoffs must be at least 2");
  }
}

}  // namespace detail

/// K product components with simplex-uniform weights (normalized
/// exponentials). Stream 0 of the seed drives the weights, stream k + 1 the
/// k-th component, and its sub-stream j the j-th mode.
inline SeparableEnsemble sample_separable_mixture(std::uint64_t seed, int component_count, std::size_t mode_count,
                                                  const std::vector<int>& cutoffs,
                                                  ProductDraw draw = ProductDraw::haar) {
  if (component_count < 1) throw Error(ErrorKind::InvalidParameter, "component count must be at least 1");
  detail::check_sampler_args(mode_count, cutoffs);
  const CounterRng root(seed);
  SeparableEnsemble out;
  out.seed = seed;
  out.cutoffs = cutoffs;
  CounterRng weights = root.split(0);
  std::vector<double> w(static_cast<std::size_t>(component_count));
  double total = 0.0;
  for (auto& wk : w) total += (wk = weights.exponential());
  for (int k = 0; k < component_count; ++k) {
    SeparableEnsemble::Component comp;
    comp.probability = w[static_cast<std::size_t>(k)] / total;
    const CounterRng comp_rng = root.split(static_cast<std::uint64_t>(k) + 1);
    for (std::size_t j = 0; j < mode_count; ++j) {
      comp.mode_states.push_back(detail::draw_mode_state(comp_rng.split(j), cutoffs[j], draw));
    }
    out.components.push_back(std::move(comp));
  }
  return out;
}

inline SeparableEnsemble sample_product_pure(std::uint64_t seed, std::size_t mode_count, const std::vector<int>& cutoffs,
                                             ProductDraw draw = ProductDraw::haar) {
  return sample_separable_mixture(seed, 1, mode_count, cutoffs, draw);
}

struct MixtureVarianceCheck {
  double lhs = 0.0;  // variance on the mixture
  double rhs = 0.0;  // probability-weighted component variances
  bool holds = true;
};

/// Variance of a mixture is at least the average variance of its parts.
inline MixtureVarianceCheck check_mixture_variance(std::span<const WeightedPureState> ensemble,
                                                   const HermitianCombination& op) {
  if (ensemble.empty()) throw Error(ErrorKind::InvalidParameter, "empty ensemble");
  const auto& cutoffs = ensemble.front().state.cutoffs();
  FockLayout layout(cutoffs);
  const auto dim = static_cast<Eigen::Index>(layout.dimension());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  double rhs = 0.0;
  for (const auto& [p, state] : ensemble) {
    if (state.cutoffs() != cutoffs) throw Error(ErrorKind::InvalidParameter, "ensemble members must share cutoffs");
    rho += p * state.density_matrix();
    rhs += p * mean_variance(state, op).variance;
  }
  const auto mixture = FockState::from_density_matrix(cutoffs, std::move(rho));
  const double lhs = mean_variance(mixture, op).variance;
  return {lhs, rhs, lhs >= rhs - 1e-9};
}

inline MixtureVarianceCheck check_mixture_variance(const SeparableEnsemble& ensemble, const HermitianCombination& op) {
  const auto states = ensemble.weighted_states();
  return check_mixture_variance(std::span<const WeightedPureState>(states), op);
}

}  // namespace fockwit
