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

// Direction and point sampling: Gaussian-normalized unit vectors, uniform
// points in the unit ball, and projection of directions into the cone of
// feasible directions at a point of a polytope.

#ifndef EFFRADIUS_SAMPLING_HPP_
#define EFFRADIUS_SAMPLING_HPP_

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "effradius/core.hpp"

namespace effradius {

using Rng = std::mt19937_64;

inline Vector random_unit(Rng& rng, Eigen::Index n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (;;) {
    for (Eigen::Index k = 0; k < n; ++k) v(k) = normal(rng);
    const double norm = v.norm();
    if (norm > 1e-12) return v / norm;
  }
}

inline Vector random_in_unit_ball(Rng& rng, Eigen::Index n) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const Vector v = random_unit(rng, n);
  return v * std::pow(uniform(rng), 1.0 / static_cast<double>(n));
}

/// Directions y with C_j y <= 0 for the rows active at a base point.
class TangentCone {
 public:
  TangentCone() = default;

  TangentCone(const VqfpInstance& inst, const Vector& x_star) {
    if (!inst.constrained()) return;
    const auto& c = *inst.constraints;
    for (Eigen::Index j : active_set(inst, x_star)) {
      rows_.push_back(c.C.row(j).transpose());
    }
  }

  bool trivial() const { return rows_.empty(); }
  const std::vector<Vector>& rows() const { return rows_; }

  bool contains(const Vector& d, double tol = 0.0) const {
    for (const Vector& r : rows_) {
      if (r.dot(d) > tol) return false;
    }
    return true;
  }

  /// d itself when already in the cone; otherwise a unit vector obtained by
  /// cyclic projection onto the halfspaces C_j y <= -margin |C_j|, which
  /// lands strictly inside every active halfspace. nullopt when the
  /// projection collapses or does not converge.
  std::optional<Vector> project(const Vector& d) const {
    if (contains(d)) return d;
    constexpr double kMargin = 1e-10;
    Vector y = d;
    for (int iter = 0; iter < 200; ++iter) {
      bool changed = false;
      for (const Vector& r : rows_) {
        const double rn = r.norm();
        if (rn == 0.0) continue;
        const double excess = r.dot(y) + kMargin * rn;
        if (excess > 0.0) {
          y -= (excess / (rn * rn)) * r;
          changed = true;
        }
      }
      if (!changed) break;
    }
    const double norm = y.norm();
    if (norm < 1e-8) return std::nullopt;
    y /= norm;
    if (!contains(y)) return std::nullopt;
    return y;
  }

 private:
  std::vector<Vector> rows_;
};

}  // namespace effradius

#endif  // EFFRADIUS_SAMPLING_HPP_
