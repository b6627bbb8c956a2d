// Copyright 2026 The effradius Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Symmetric spectral helpers shared by validation and the eigenvalue bound.

#ifndef EFFRADIUS_SPECTRAL_HPP_
#define EFFRADIUS_SPECTRAL_HPP_

#include <algorithm>
#include <limits>
#include <optional>

#include <Eigen/Dense>

#include "effradius/errors.hpp"

namespace effradius {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline double max_abs(const Matrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline double max_asymmetry(const Matrix& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  return a.size() == 0 ? 0.0 : (a - a.transpose()).cwiseAbs().maxCoeff();
}

/// True when max|A[i][j] - A[j][i]| <= 1e-12 * (1 + max|A|).
inline bool is_symmetric(const Matrix& a) {
  return a.rows() == a.cols() && max_asymmetry(a) <= 1e-12 * (1.0 + max_abs(a));
}

/// Full eigendecomposition of a symmetric matrix (tridiagonal QR).
struct SymmetricSpectrum {
  Vector eigenvalues;   // ascending
  Matrix eigenvectors;  // columns match eigenvalues
};

inline SymmetricSpectrum symmetric_spectrum(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::ComputeEigenvectors);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

inline double smallest_eigenvalue(const Matrix& h) {
  if (h.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

/// Minimum eigenvalue of h if it is below -1e-10 * (1 + max|h|), else
/// nullopt. The caller is responsible for symmetry.
inline std::optional<double> smallest_negative_eigenvalue_unchecked(
    const Matrix& h) {
  const double lo = smallest_eigenvalue(h);
  if (lo < -1e-10 * (1.0 + max_abs(h))) return lo;
  return std::nullopt;
}

/// Checked variant: rejects asymmetric input.
inline std::optional<double> smallest_negative_eigenvalue(const Matrix& h) {
  if (!is_symmetric(h)) {
    throw Error(ErrorCode::kAsymmetricMatrix,
                "smallest_negative_eigenvalue needs a symmetric matrix");
  }
  return smallest_negative_eigenvalue_unchecked(h);
}

}  // namespace effradius

#endif  // EFFRADIUS_SPECTRAL_HPP_
