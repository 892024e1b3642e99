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
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fockwit/error.hpp"
#include "fockwit/fock_state.hpp"

namespace fockwit {

inline constexpr std::size_t kDefaultPptDimensionLimit = 4096;

struct PptReport {
  double min_eigenvalue = 0.0;
  double negativity = 0.0;  // sum of |negative eigenvalues|
  std::vector<std::size_t> transposed_modes;
};

namespace detail {

inline std::vector<bool> mode_mask(const FockLayout& layout, const std::vector<std::size_t>& modes) {
  const auto count = layout.mode_count();
  std::vector<bool> mask(count, false);
  for (auto k : modes) {
    if (k >= count) throw Error(ErrorKind::InvalidModeSet, "mode " + std::to_string(k) + " out of range");
    if (mask[k]) throw Error(ErrorKind::InvalidModeSet, "mode " + std::to_string(k) + " listed twice");
    mask[k] = true;
  }
  if (modes.empty() || modes.size() == count) {
    throw Error(ErrorKind::InvalidModeSet, "transposed modes must be a nonempty proper subset");
  }
  return mask;
}

}  // namespace detail

/// Transposes the row/column occupations of the selected modes.
inline Eigen::MatrixXcd partial_transpose(const FockLayout& layout, const Eigen::MatrixXcd& rho,
                                          const std::vector<std::size_t>& modes) {
  const auto mask = detail::mode_mask(layout, modes);
  const auto dim = layout.dimension();
  if (rho.rows() != static_cast<Eigen::Index>(dim) || rho.cols() != rho.rows()) {
    throw Error(ErrorKind::InvalidParameter, "matrix does not match the layout");
  }
  Eigen::MatrixXcd out(rho.rows(), rho.cols());
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      std::size_t r2 = 0;
      std::size_t c2 = 0;
      for (std::size_t k = 0; k < layout.mode_count(); ++k) {
        const auto nr = static_cast<std::size_t>(layout.occupation(r, k));
        const auto nc = static_cast<std::size_t>(layout.occupation(c, k));
        r2 += (mask[k] ? nc : nr) * layout.stride(k);
        c2 += (mask[k] ? nr : nc) * layout.stride(k);
      }
      out(static_cast<Eigen::Index>(r2), static_cast<Eigen::Index>(c2)) =
          rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return out;
}

inline Eigen::MatrixXcd partial_transpose(const FockState& state, const std::vector<std::size_t>& modes) {
  return partial_transpose(state.layout(), state.density_matrix(), modes);
}

inline PptReport ppt_check(const FockState& state, const std::vector<std::size_t>& modes,
                           std::size_t dimension_limit = kDefaultPptDimensionLimit) {
  if (state.dimension() > dimension_limit) {
    throw Error(ErrorKind::DimensionTooLarge, "dimension " + std::to_string(state.dimension()) + " exceeds limit " +
                                                  std::to_string(dimension_limit));
  }
  const Eigen::MatrixXcd pt = partial_transpose(state, modes);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(pt, Eigen::EigenvaluesOnly);
  const auto& eig = solver.eigenvalues();
  PptReport report;
  report.min_eigenvalue = eig.minCoeff();
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    if (eig[i] < 0.0) report.negativity -= eig[i];
  }
  report.transposed_modes = modes;
  std::sort(report.transposed_modes.begin(), report.transposed_modes.end());
  return report;
}

/// Largest negativity over all single-mode partial transposes.
inline double max_single_mode_negativity(const FockState& state,
                                         std::size_t dimension_limit = kDefaultPptDimensionLimit) {
  double best = 0.0;
  for (std::size_t k = 0; k < state.mode_count(); ++k) {
    best = std::max(best, ppt_check(state, {k}, dimension_limit).negativity);
  }
  return best;
}

}  // namespace fockwit
