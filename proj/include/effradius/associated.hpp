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

// The associated parametric problem at a base point x*: minimize
// f_i(x) - r_i* g_i(x) with r_i* = f_i(x*) / g_i(x*). Since g_i > 0, a point
// dominates x* here exactly when it dominates x* in ratio terms.

#ifndef EFFRADIUS_ASSOCIATED_HPP_
#define EFFRADIUS_ASSOCIATED_HPP_

#include <cstddef>
#include <vector>

#include "effradius/core.hpp"

namespace effradius {

struct AssociatedModel {
  const VqfpInstance* instance = nullptr;
  Vector base_point;
  Vector ratios;                 // r_i*
  std::vector<Vector> gradients; // grad p_i(x*) = grad f_i - r_i* grad g_i
  std::vector<Matrix> hessians;  // 2 (A_i - r_i* B_i)
  // f_i(x*) - r_i* g_i(x*): zero in exact arithmetic, kept so that
  // p_delta at the base point is exactly zero in floating point too.
  Vector base_residuals;

  std::size_t m() const { return gradients.size(); }
  Eigen::Index n() const { return base_point.size(); }
};

/// Feasibility tolerance used for base points and witnesses.
inline constexpr double kFeasibilityTol = 1e-9;

inline AssociatedModel build_associated(const VqfpInstance& inst,
                                        const Vector& x_star) {
  if (x_star.size() != inst.n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "base point has dimension " + std::to_string(x_star.size()));
  }
  if (!is_feasible(inst, x_star, kFeasibilityTol)) {
    throw Error(ErrorCode::kInfeasibleBasePoint, "base point violates Cx <= b");
  }
  AssociatedModel model;
  model.instance = &inst;
  model.base_point = x_star;
  model.ratios.resize(static_cast<Eigen::Index>(inst.m()));
  model.base_residuals.resize(static_cast<Eigen::Index>(inst.m()));
  model.gradients.reserve(inst.m());
  model.hessians.reserve(inst.m());
  for (std::size_t i = 0; i < inst.m(); ++i) {
    const RatioObjective& obj = inst.objectives[i];
    const double r = ratio_value(obj, x_star);
    model.ratios(static_cast<Eigen::Index>(i)) = r;
    model.base_residuals(static_cast<Eigen::Index>(i)) =
        eval_form(obj.numerator, x_star) - r * eval_form(obj.denominator, x_star);
    model.gradients.push_back(grad_form(obj.numerator, x_star) -
                              r * grad_form(obj.denominator, x_star));
    model.hessians.push_back(2.0 * (obj.numerator.A - r * obj.denominator.A));
  }
  return model;
}

/// p_i(x) - p_i(x*), evaluated as f_i(x) - r_i* g_i(x) so that the constant
/// terms of p_i never enter.
inline double p_delta(const AssociatedModel& model, std::size_t i,
                      const Vector& x) {
  if (i >= model.m()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "objective index " + std::to_string(i) + " out of range");
  }
  const RatioObjective& obj = model.instance->objectives[i];
  const double r = model.ratios(static_cast<Eigen::Index>(i));
  return (eval_form(obj.numerator, x) - r * eval_form(obj.denominator, x)) -
         model.base_residuals(static_cast<Eigen::Index>(i));
}

inline bool p_dominance(const AssociatedModel& model, const Vector& x,
                        double tol = kDominanceTol) {
  bool strict = false;
  for (std::size_t i = 0; i < model.m(); ++i) {
    const double delta = p_delta(model, i, x);
    if (delta > tol) return false;
    if (delta < -tol) strict = true;
  }
  return strict;
}

}  // namespace effradius

#endif  // EFFRADIUS_ASSOCIATED_HPP_
