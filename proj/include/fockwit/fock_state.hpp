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
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fockwit/error.hpp"

namespace fockwit {

using Complex = std::complex<double>;

/// Photon number per mode; one entry per mode.
using FockIndex = std::vector<int>;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kPositivityTolerance = 1e-8;
inline constexpr double kDefaultGuardEpsilon = 1e-8;

inline std::string format_index(const FockIndex& occ) {
  std::string out = "(";
  for (std::size_t k = 0; k < occ.size(); ++k) {
    if (k > 0) out += ",";
    out += std::to_string(occ[k]);
  }
  return out + ")";
}

/// Truncated multimode Fock space. Basis kets are flattened row-major with
/// mode 0 varying slowest.
class FockLayout {
 public:
  FockLayout() = default;

  explicit FockLayout(std::vector<int> cutoffs) : cutoffs_(std::move(cutoffs)) {
    if (cutoffs_.empty()) throw Error(ErrorKind::InvalidParameter, "at least one mode is required");
    strides_.assign(cutoffs_.size(), 1);
    dimension_ = 1;
    for (std::size_t k = cutoffs_.size(); k-- > 0;) {
      if (cutoffs_[k] < 1) {
        throw Error(ErrorKind::InvalidParameter,
                    "cutoff of mode " + std::to_string(k) + " must be positive");
      }
      strides_[k] = dimension_;
      dimension_ *= static_cast<std::size_t>(cutoffs_[k]);
    }
  }

  std::size_t mode_count() const { return cutoffs_.size(); }
  const std::vector<int>& cutoffs() const { return cutoffs_; }
  int cutoff(std::size_t mode) const { return cutoffs_[mode]; }
  std::size_t dimension() const { return dimension_; }
  std::size_t stride(std::size_t mode) const { return strides_[mode]; }

  bool contains(const FockIndex& occ) const {
    if (occ.size() != cutoffs_.size()) return false;
    for (std::size_t k = 0; k < occ.size(); ++k) {
      if (occ[k] < 0 || occ[k] >= cutoffs_[k]) return false;
    }
    return true;
  }

  std::size_t flatten(const FockIndex& occ) const {
    if (!contains(occ)) {
      throw Error(ErrorKind::InvalidIndex,
                  "occupation " + format_index(occ) + " outside the truncated space");
    }
    std::size_t flat = 0;
    for (std::size_t k = 0; k < occ.size(); ++k) flat += static_cast<std::size_t>(occ[k]) * strides_[k];
    return flat;
  }

  FockIndex unflatten(std::size_t flat) const {
    FockIndex occ(cutoffs_.size());
    for (std::size_t k = 0; k < cutoffs_.size(); ++k) {
      occ[k] = static_cast<int>(flat / strides_[k]);
      flat %= strides_[k];
    }
    return occ;
  }

  int occupation(std::size_t flat, std::size_t mode) const {
    return static_cast<int>((flat / strides_[mode]) % static_cast<std::size_t>(cutoffs_[mode]));
  }

  friend bool operator==(const FockLayout& a, const FockLayout& b) { return a.cutoffs_ == b.cutoffs_; }

 private:
  std::vector<int> cutoffs_;
  std::vector<std::size_t> strides_;
  std::size_t dimension_ = 0;
};

/// Pure state or density matrix on a truncated Fock space. Validated and
/// normalized at construction; immutable afterwards.
class FockState {
 public:
  enum class Kind { pure, mixed };

  static FockState from_amplitudes(std::vector<int> cutoffs, Eigen::VectorXcd amplitudes) {
    FockLayout layout(std::move(cutoffs));
    if (static_cast<std::size_t>(amplitudes.size()) != layout.dimension()) {
      throw Error(ErrorKind::InvalidParameter, "amplitude vector does not match the space dimension");
    }
    const double norm2 = amplitudes.squaredNorm();
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) throw Error(ErrorKind::ZeroState, "amplitudes have zero norm");
    // Already-normalized input is kept bit-exact.
    if (std::abs(norm2 - 1.0) > 1e-13) amplitudes /= std::sqrt(norm2);
    return FockState(std::move(layout), Kind::pure, std::move(amplitudes), Eigen::MatrixXcd());
  }

  static FockState from_density_matrix(std::vector<int> cutoffs, Eigen::MatrixXcd rho) {
    FockLayout layout(std::move(cutoffs));
    const auto dim = static_cast<Eigen::Index>(layout.dimension());
    if (rho.rows() != dim || rho.cols() != dim) {
      throw Error(ErrorKind::InvalidParameter, "density matrix does not match the space dimension");
    }
    const double asym = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (!(asym <= kHermitianTolerance)) {
      throw Error(ErrorKind::NotHermitian, "max |rho - rho^dagger| = " + format_real(asym));
    }
    rho = (0.5 * (rho + rho.adjoint())).eval();
    const double trace = rho.trace().real();
    if (!(trace > 0.0) || !std::isfinite(trace)) throw Error(ErrorKind::ZeroState, "density matrix has zero trace");
    if (std::abs(trace - 1.0) > 1e-13) rho /= trace;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -kPositivityTolerance) {
      throw Error(ErrorKind::NotPositive, "minimum eigenvalue " + format_real(min_eig));
    }
    return FockState(std::move(layout), Kind::mixed, Eigen::VectorXcd(), std::move(rho));
  }

  Kind kind() const { return kind_; }
  bool is_pure() const { return kind_ == Kind::pure; }
  const FockLayout& layout() const { return layout_; }
  std::size_t mode_count() const { return layout_.mode_count(); }
  const std::vector<int>& cutoffs() const { return layout_.cutoffs(); }
  std::size_t dimension() const { return layout_.dimension(); }

  const Eigen::VectorXcd& amplitudes() const {
    if (!is_pure()) throw Error(ErrorKind::InvalidParameter, "mixed state has no amplitude vector");
    return amplitudes_;
  }

  const Eigen::MatrixXcd& matrix() const {
    if (is_pure()) throw Error(ErrorKind::InvalidParameter, "pure state stores amplitudes, not a matrix");
    return matrix_;
  }

  Eigen::MatrixXcd density_matrix() const {
    if (is_pure()) return amplitudes_ * amplitudes_.adjoint();
    return matrix_;
  }

  /// Diagonal of the density matrix.
  double probability(std::size_t flat) const {
    const auto i = static_cast<Eigen::Index>(flat);
    return is_pure() ? std::norm(amplitudes_[i]) : matrix_(i, i).real();
  }

  double purity() const {
    if (is_pure()) return 1.0;
    return (matrix_ * matrix_).trace().real();
  }

  FockState as_mixed() const {
    if (!is_pure()) return *this;
    return FockState(layout_, Kind::mixed, Eigen::VectorXcd(), density_matrix());
  }

 private:
  FockState(FockLayout layout, Kind kind, Eigen::VectorXcd amplitudes, Eigen::MatrixXcd matrix)
      : layout_(std::move(layout)), kind_(kind), amplitudes_(std::move(amplitudes)), matrix_(std::move(matrix)) {}

  FockLayout layout_;
  Kind kind_;
  Eigen::VectorXcd amplitudes_;
  Eigen::MatrixXcd matrix_;
};

struct AmplitudeEntry {
  FockIndex occ;
  Complex value;
};

struct MatrixEntry {
  FockIndex row;
  FockIndex col;
  Complex value;
};

/// Builds a normalized pure state from sparse amplitudes; repeated indices add.
inline FockState new_pure(const std::vector<int>& cutoffs, std::span<const AmplitudeEntry> entries) {
  FockLayout layout(cutoffs);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(layout.dimension()));
  for (const auto& e : entries) amps[static_cast<Eigen::Index>(layout.flatten(e.occ))] += e.value;
  return FockState::from_amplitudes(cutoffs, std::move(amps));
}

inline FockState new_pure(const std::vector<int>& cutoffs, std::initializer_list<AmplitudeEntry> entries) {
  return new_pure(cutoffs, std::span<const AmplitudeEntry>(entries.begin(), entries.size()));
}

/// Builds a trace-normalized density matrix from sparse entries. Both (r,c)
/// and (c,r) must be listed; unlisted entries are zero.
inline FockState new_mixed(const std::vector<int>& cutoffs, std::span<const MatrixEntry> entries) {
  FockLayout layout(cutoffs);
  const auto dim = static_cast<Eigen::Index>(layout.dimension());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& e : entries) {
    rho(static_cast<Eigen::Index>(layout.flatten(e.row)), static_cast<Eigen::Index>(layout.flatten(e.col))) += e.value;
  }
  return FockState::from_density_matrix(cutoffs, std::move(rho));
}

inline FockState new_mixed(const std::vector<int>& cutoffs, std::initializer_list<MatrixEntry> entries) {
  return new_mixed(cutoffs, std::span<const MatrixEntry>(entries.begin(), entries.size()));
}

struct GuardBandReport {
  int guard_width = 0;
  double leaked_weight = 0.0;
  double epsilon = kDefaultGuardEpsilon;
  bool safe = true;
};

/// Probability mass sitting within `max_creation_power` levels of any
/// cutoff, i.e. the weight a creation power of that order could push out of
/// the truncated space.
inline GuardBandReport guard_band_check(const FockState& state, int max_creation_power,
                                        double epsilon = kDefaultGuardEpsilon) {
  if (max_creation_power < 0) throw Error(ErrorKind::InvalidParameter, "creation power must be non-negative");
  const auto& layout = state.layout();
  double leaked = 0.0;
  for (std::size_t i = 0; i < layout.dimension(); ++i) {
    bool in_band = false;
    for (std::size_t k = 0; k < layout.mode_count() && !in_band; ++k) {
      in_band = layout.occupation(i, k) >= layout.cutoff(k) - max_creation_power;
    }
    if (in_band) leaked += state.probability(i);
  }
  leaked = std::clamp(leaked, 0.0, 1.0);
  return GuardBandReport{max_creation_power, leaked, epsilon, leaked <= epsilon};
}

}  // namespace fockwit
