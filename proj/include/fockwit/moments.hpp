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
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fockwit/error.hpp"
#include "fockwit/fock_state.hpp"
#include "fockwit/monomial.hpp"

namespace fockwit {

namespace detail {

/// sqrt(n! / (n - q)!), the matrix element <n-q| a^q |n>.
inline double lowering_factor(int n, int q) {
  double prod = 1.0;
  for (int j = 0; j < q; ++j) prod *= static_cast<double>(n - j);
  return std::sqrt(prod);
}

inline void require_modes(const FockState& state, const OperatorMonomial& m) {
  if (m.mode_count() != state.mode_count()) {
    throw Error(ErrorKind::WrongArity, "monomial acts on " + std::to_string(m.mode_count()) +
                                           " modes, state has " + std::to_string(state.mode_count()));
  }
}

/// For basis ket `from`, the ket reached by a^q then (a^dag)^p and the product
/// of ladder factors. Returns false when a^q annihilates the ket or the
/// result leaves the truncated space.
inline bool ladder_target(const FockLayout& layout, std::size_t from, const OperatorMonomial& m,
                          std::size_t& to, double& factor) {
  factor = 1.0;
  to = 0;
  for (std::size_t k = 0; k < layout.mode_count(); ++k) {
    const int n = layout.occupation(from, k);
    const auto& p = m[k];
    if (n < p.annihilation) return false;
    const int lowered = n - p.annihilation;
    const int raised = lowered + p.creation;
    if (raised >= layout.cutoff(k)) return false;
    factor *= lowering_factor(n, p.annihilation) * lowering_factor(raised, p.creation);
    to += static_cast<std::size_t>(raised) * layout.stride(k);
  }
  return true;
}

}  // namespace detail

/// Applies the monomial within the truncated space: a column M|psi> for
/// pure states, the matrix M rho for mixed ones. Refuses when the creation
/// powers could push more than `epsilon` of probability past a cutoff.
inline Eigen::MatrixXcd apply_monomial(const FockState& state, const OperatorMonomial& monomial,
                                       double epsilon = kDefaultGuardEpsilon) {
  detail::require_modes(state, monomial);
  const auto guard = guard_band_check(state, monomial.max_creation_power(), epsilon);
  if (!guard.safe) {
    throw Error(ErrorKind::TruncationUnsafe,
                "weight " + format_real(guard.leaked_weight) + " within " + std::to_string(guard.guard_width) +
                    " levels of the cutoff");
  }
  const auto& layout = state.layout();
  const auto dim = static_cast<Eigen::Index>(layout.dimension());
  const Eigen::Index cols = state.is_pure() ? 1 : dim;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, cols);
  for (std::size_t from = 0; from < layout.dimension(); ++from) {
    std::size_t to = 0;
    double factor = 0.0;
    if (!detail::ladder_target(layout, from, monomial, to, factor)) continue;
    const auto f = static_cast<Eigen::Index>(from);
    const auto t = static_cast<Eigen::Index>(to);
    if (state.is_pure()) {
      out(t, 0) += factor * state.amplitudes()[f];
    } else {
      out.row(t) += factor * state.matrix().row(f);
    }
  }
  return out;
}

/// Tr(rho (a^dag)^p a^q), evaluated as sum over kets k of
/// rho(k, l) <j|a^q|k> <j|a^p|l> with j = k - q, l = j + p. Only lowering
/// matrix elements enter, so the value is exact for any state supported on
/// the truncated space.
inline Complex expect(const FockState& state, const OperatorMonomial& monomial) {
  detail::require_modes(state, monomial);
  const auto& layout = state.layout();
  Complex sum{};
  for (std::size_t k = 0; k < layout.dimension(); ++k) {
    std::size_t l = 0;
    double factor = 0.0;
    if (!detail::ladder_target(layout, k, monomial, l, factor)) continue;
    const auto ki = static_cast<Eigen::Index>(k);
    const auto li = static_cast<Eigen::Index>(l);
    if (state.is_pure()) {
      const auto& psi = state.amplitudes();
      sum += factor * std::conj(psi[li]) * psi[ki];
    } else {
      sum += factor * state.matrix()(ki, li);
    }
  }
  return sum;
}

inline Complex expect(const FockState& state, const OperatorPolynomial& op) {
  Complex sum{};
  for (const auto& [m, c] : op.terms()) sum += c * expect(state, m);
  return sum;
}

struct MeanVariance {
  double mean = 0.0;
  double variance = 0.0;
};

/// Mean and variance of a Hermitian combination; the square is expanded
/// symbolically into normal order before taking expectations.
inline MeanVariance mean_variance(const FockState& state, const HermitianCombination& op) {
  if (op.mode_count() != state.mode_count()) throw Error(ErrorKind::WrongArity, "operator/state mode mismatch");
  const Complex mean = expect(state, op.polynomial());
  if (std::abs(mean.imag()) > 1e-10 * std::max(1.0, std::abs(mean.real()))) {
    throw Error(ErrorKind::NotHermitianAtRuntime, "mean has imaginary part " + format_real(mean.imag()));
  }
  const double second = expect(state, op.squared()).real();
  double variance = second - mean.real() * mean.real();
  if (variance < 0.0 && variance >= -1e-10 * std::max(1.0, std::abs(second))) variance = 0.0;
  return {mean.real(), variance};
}

/// Named two-mode operators (mode 0 = a, mode 1 = b).
namespace ops {

inline OperatorMonomial mono2(int pa, int qa, int pb, int qb) {
  return OperatorMonomial(std::vector<ModePowers>{{pa, qa}, {pb, qb}});
}

/// a b^dagger
inline OperatorMonomial a_bdag() { return mono2(0, 1, 1, 0); }
inline OperatorMonomial ab() { return mono2(0, 1, 0, 1); }
inline OperatorMonomial na() { return mono2(1, 1, 0, 0); }
inline OperatorMonomial nb() { return mono2(0, 0, 1, 1); }
inline OperatorMonomial na_nb() { return mono2(1, 1, 1, 1); }

/// L1 = a b^dag + a^dag b.
inline HermitianCombination L1() {
  return HermitianCombination(OperatorPolynomial(2, {{1.0, mono2(0, 1, 1, 0)}, {1.0, mono2(1, 0, 0, 1)}}), "L1");
}

/// L2 = i(a b^dag - a^dag b).
inline HermitianCombination L2() {
  const Complex i{0.0, 1.0};
  return HermitianCombination(OperatorPolynomial(2, {{i, mono2(0, 1, 1, 0)}, {-i, mono2(1, 0, 0, 1)}}), "L2");
}

/// L3 = N_a + N_b. Commutes with L1 and L2.
inline HermitianCombination L3() {
  return HermitianCombination(OperatorPolynomial(2, {{1.0, na()}, {1.0, nb()}}), "L3");
}

/// K(phi) = e^{i phi} a^dag b^dag + e^{-i phi} a b.
inline HermitianCombination K(double phi) {
  const Complex up = std::polar(1.0, phi);
  return HermitianCombination(OperatorPolynomial(2, {{up, mono2(1, 0, 1, 0)}, {std::conj(up), mono2(0, 1, 0, 1)}}),
                              "K(" + format_real(phi) + ")");
}

/// K1 = a b + a^dag b^dag.
inline HermitianCombination K1() { return HermitianCombination(K(0.0).polynomial(), "K1"); }

/// K2 = i(a^dag b^dag - a b).
inline HermitianCombination K2() {
  const Complex i{0.0, 1.0};
  return HermitianCombination(OperatorPolynomial(2, {{i, mono2(1, 0, 1, 0)}, {-i, mono2(0, 1, 0, 1)}}), "K2");
}

/// K3 = N_a - N_b.
inline HermitianCombination K3() {
  return HermitianCombination(OperatorPolynomial(2, {{1.0, na()}, {-1.0, nb()}}), "K3");
}

}  // namespace ops

/// 16 equally spaced phases on [0, 2 pi) by default.
inline std::vector<double> phi_grid(int size = 16) {
  if (size < 1) throw Error(ErrorKind::InvalidParameter, "phi grid needs at least one point");
  std::vector<double> grid(static_cast<std::size_t>(size));
  for (int j = 0; j < size; ++j) grid[static_cast<std::size_t>(j)] = 2.0 * std::numbers::pi * j / size;
  return grid;
}

inline void require_two_modes(const FockState& state) {
  if (state.mode_count() != 2) {
    throw Error(ErrorKind::WrongArity, "expected a two-mode state, got " + std::to_string(state.mode_count()) + " modes");
  }
}

/// (Delta L1)^2 + (Delta L2)^2 from the moment identity
/// 2(<(N_a+1)N_b> + <N_a(N_b+1)> - 2|<a b^dag>|^2).
inline double lsum_via_identity(const FockState& state) {
  require_two_modes(state);
  const double nanb = expect(state, ops::na_nb()).real();
  const double na = expect(state, ops::na()).real();
  const double nb = expect(state, ops::nb()).real();
  const double cross = std::norm(expect(state, ops::a_bdag()));
  return 2.0 * ((nanb + nb) + (nanb + na) - 2.0 * cross);
}

}  // namespace fockwit
