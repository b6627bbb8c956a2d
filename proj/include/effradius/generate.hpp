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

// Random instances with a known locally efficient point.

#ifndef EFFRADIUS_GENERATE_HPP_
#define EFFRADIUS_GENERATE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>

#include <Eigen/Dense>

#include "effradius/core.hpp"
#include "effradius/errors.hpp"
#include "effradius/sampling.hpp"
#include "effradius/spectral.hpp"

namespace effradius {

struct GenerateOptions {
  Eigen::Index n = 2;
  std::size_t m = 2;
  std::size_t p = 0;  // random constraint rows
  std::uint64_t seed = 1;
  bool convex = false;
  std::optional<double> box_half_width;  // adds 2n box rows around x*
};

struct GeneratedInstance {
  VqfpInstance instance;
  Vector x_star;
};

namespace internal {

inline Matrix gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols,
                              double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Matrix out(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) out(r, c) = normal(rng);
  }
  return out;
}

inline Vector gaussian_vector(Rng& rng, Eigen::Index n, double scale = 1.0) {
  return gaussian_matrix(rng, n, 1, scale).col(0);
}

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Orthonormal basis of the complement of span(cols).
inline Matrix complement_basis(const Matrix& cols, Eigen::Index n) {
  if (cols.cols() == 0) return Matrix::Identity(n, n);
  Eigen::JacobiSVD<Matrix> svd(cols, Eigen::ComputeFullU);
  const double tol = 1e-10 * std::max(1.0, svd.singularValues().maxCoeff());
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
    if (svd.singularValues()(k) > tol) ++rank;
  }
  return svd.matrixU().rightCols(n - rank);
}

}  // namespace internal

inline GeneratedInstance generate_instance(const GenerateOptions& opt) {
  if (opt.n < 1 || opt.m < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need n >= 1 and m >= 1");
  }
  using internal::gaussian_matrix;
  using internal::gaussian_vector;
  using internal::uniform;
  const Eigen::Index n = opt.n;
  const std::size_t m = opt.m;
  Rng rng(opt.seed);

  Vector x_star(n);
  for (Eigen::Index k = 0; k < n; ++k) x_star(k) = uniform(rng, -1.0, 1.0);

  // Gradient and hessian of each associated quadratic at x_star.
  std::vector<Vector> grads(m, Vector::Zero(n));
  std::vector<Matrix> hess(m);
  std::vector<double> ratios(m);
  if (opt.convex) {
    for (std::size_t i = 0; i < m; ++i) {
      const Matrix q = gaussian_matrix(rng, n, n, 0.7);
      hess[i] = q * q.transpose() + 0.2 * Matrix::Identity(n, n);
      ratios[i] = uniform(rng, 0.0, 1.0);
    }
  } else {
    std::vector<double> tau(m);
    for (std::size_t i = 0; i < m; ++i) tau[i] = uniform(rng, 0.5, 2.0);
    Vector last = Vector::Zero(n);
    for (std::size_t i = 0; i + 1 < m; ++i) {
      grads[i] = gaussian_vector(rng, n);
      last -= tau[i] * grads[i];
    }
    grads[m - 1] = last / tau[m - 1];
    for (std::size_t i = 0; i < m; ++i) {
      const Matrix s = gaussian_matrix(rng, n, n);
      hess[i] = s + s.transpose();
      ratios[i] = uniform(rng, -1.0, 1.0);
    }
    // Weighted curvature positive off the gradient span keeps x_star
    // locally efficient.
    Matrix span(n, static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) span.col(static_cast<Eigen::Index>(i)) = grads[i];
    const Matrix basis = internal::complement_basis(span, n);
    if (basis.cols() > 0) {
      Matrix weighted = Matrix::Zero(n, n);
      for (std::size_t i = 0; i < m; ++i) weighted += tau[i] * hess[i];
      const Matrix reduced = basis.transpose() * weighted * basis;
      const double low = smallest_eigenvalue(0.5 * (reduced + reduced.transpose()));
      const double delta = 0.5;
      if (low < delta) {
        hess[0] += ((delta - low) / tau[0]) * basis * basis.transpose();
      }
    }
  }

  VqfpInstance inst;
  inst.n = n;
  for (std::size_t i = 0; i < m; ++i) {
    const Matrix r = gaussian_matrix(rng, n, n, 0.5);
    const Vector w = gaussian_vector(rng, n);
    const double c = uniform(rng, 0.5, 1.5);
    QuadraticForm g;
    g.A = r * r.transpose();
    g.a = -2.0 * g.A * w;
    g.a0 = w.dot(g.A * w) + c;

    const double ri = ratios[i];
    const double g_star = eval_form(g, x_star);
    const Vector g_grad = grad_form(g, x_star);
    QuadraticForm f;
    f.A = 0.5 * hess[i] + ri * g.A;
    f.A = 0.5 * (f.A + f.A.transpose());
    f.a = grads[i] + ri * g_grad - 2.0 * f.A * x_star;
    f.a0 = ri * g_star - x_star.dot(f.A * x_star) - f.a.dot(x_star);
    inst.objectives.push_back({f, g});
  }

  const std::size_t box_rows = opt.box_half_width ? 2 * static_cast<std::size_t>(n) : 0;
  if (opt.p + box_rows > 0) {
    LinearConstraints lc;
    const auto rows = static_cast<Eigen::Index>(opt.p + box_rows);
    lc.C = Matrix::Zero(rows, n);
    lc.b = Vector::Zero(rows);
    const std::size_t active =
        std::min<std::size_t>((opt.p + 1) / 2, static_cast<std::size_t>(n));
    for (std::size_t j = 0; j < opt.p; ++j) {
      const auto row = static_cast<Eigen::Index>(j);
      Vector c = gaussian_vector(rng, n);
      c /= std::max(c.norm(), 1e-12);
      lc.C.row(row) = c.transpose();
      lc.b(row) = j < active ? 0.0 : uniform(rng, 0.5, 2.0);
    }
    if (opt.box_half_width) {
      const double h = *opt.box_half_width;
      for (Eigen::Index k = 0; k < n; ++k) {
        const auto up = static_cast<Eigen::Index>(opt.p) + 2 * k;
        lc.C(up, k) = 1.0;
        lc.b(up) = x_star(k) + h;
        lc.C(up + 1, k) = -1.0;
        lc.b(up + 1) = -(x_star(k) - h);
      }
    }
    // Offsets from the same product the feasibility test evaluates, so active
    // rows are tight to the last bit.
    const Vector cx = lc.C * x_star;
    lc.b.head(static_cast<Eigen::Index>(opt.p)) +=
        cx.head(static_cast<Eigen::Index>(opt.p));
    inst.constraints = std::move(lc);
  }
  return {std::move(inst), x_star};
}

}  // namespace effradius

#endif  // EFFRADIUS_GENERATE_HPP_
