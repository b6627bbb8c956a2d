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

// Problem representation for vector quadratic fractional programs:
// ratio objectives f_i / g_i of quadratics, optional polytope Cx <= b.

#ifndef EFFRADIUS_CORE_HPP_
#define EFFRADIUS_CORE_HPP_

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "effradius/errors.hpp"
#include "effradius/spectral.hpp"

namespace effradius {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Default absolute tolerance on ratio values when testing dominance.
inline constexpr double kDominanceTol = 1e-9;

/// x^T A x + a^T x + a0, A symmetric.
struct QuadraticForm {
  Matrix A;
  Vector a;
  double a0 = 0.0;

  Eigen::Index dim() const { return a.size(); }

  static QuadraticForm constant(Eigen::Index n, double c) {
    return {Matrix::Zero(n, n), Vector::Zero(n), c};
  }
};

inline void check_dims(const QuadraticForm& q, const Vector& x) {
  if (q.A.rows() != x.size() || q.A.cols() != x.size() ||
      q.a.size() != x.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "form of dimension " + std::to_string(q.a.size()) +
                    " evaluated at a point of dimension " +
                    std::to_string(x.size()));
  }
}

inline double eval_form(const QuadraticForm& q, const Vector& x) {
  check_dims(q, x);
  return x.dot(q.A * x) + q.a.dot(x) + q.a0;
}

inline Vector grad_form(const QuadraticForm& q, const Vector& x) {
  check_dims(q, x);
  return 2.0 * (q.A * x) + q.a;
}

struct RatioObjective {
  QuadraticForm numerator;    // f_i
  QuadraticForm denominator;  // g_i
};

struct LinearConstraints {
  Matrix C;
  Vector b;

  Eigen::Index rows() const { return C.rows(); }
};

struct VqfpInstance {
  Eigen::Index n = 0;
  std::vector<RatioObjective> objectives;
  std::optional<LinearConstraints> constraints;

  std::size_t m() const { return objectives.size(); }
  bool constrained() const {
    return constraints.has_value() && constraints->rows() > 0;
  }
};

inline double ratio_value(const RatioObjective& obj, const Vector& x) {
  const double g = eval_form(obj.denominator, x);
  if (!(g > 0.0)) {
    throw Error(ErrorCode::kNonPositiveDenominator,
                "denominator is " + std::to_string(g) +
                    "; instance was not validated");
  }
  return eval_form(obj.numerator, x) / g;
}

inline Vector ratio_values(const VqfpInstance& inst, const Vector& x) {
  Vector out(static_cast<Eigen::Index>(inst.m()));
  for (std::size_t i = 0; i < inst.m(); ++i) {
    out(static_cast<Eigen::Index>(i)) = ratio_value(inst.objectives[i], x);
  }
  return out;
}

/// Quotient rule: (grad f * g - f * grad g) / g^2.
inline Vector ratio_gradient(const RatioObjective& obj, const Vector& x) {
  const double g = eval_form(obj.denominator, x);
  if (!(g > 0.0)) {
    throw Error(ErrorCode::kNonPositiveDenominator,
                "denominator is " + std::to_string(g));
  }
  const double f = eval_form(obj.numerator, x);
  return (grad_form(obj.numerator, x) * g -
          f * grad_form(obj.denominator, x)) /
         (g * g);
}

// ---------------------------------------------------------------------------
// Validation

struct ValidationCheck {
  std::string subject;  // "objective 2", "constraints", "instance"
  std::string name;     // "numerator symmetric", "g(w) > 0", ...
  bool passed = true;
  std::string message;
  std::optional<ErrorCode> code;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  // w^i, a minimizer of the denominator, when one was found.
  std::vector<std::optional<Vector>> denominator_minimizers;

  bool ok() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }

  const ValidationCheck* first_failure() const {
    for (const auto& c : checks) {
      if (!c.passed) return &c;
    }
    return nullptr;
  }
};

namespace internal {

inline bool form_shape_ok(const QuadraticForm& q, Eigen::Index n) {
  return q.A.rows() == n && q.A.cols() == n && q.a.size() == n;
}

}  // namespace internal

inline ValidationReport validate_instance(const VqfpInstance& inst) {
  ValidationReport report;
  auto add = [&](std::string subject, std::string name, bool passed,
                 std::string message = {},
                 std::optional<ErrorCode> code = std::nullopt) {
    report.checks.push_back({std::move(subject), std::move(name), passed,
                             std::move(message),
                             passed ? std::nullopt : code});
    return passed;
  };

  const Eigen::Index n = inst.n;
  add("instance", "dimension n >= 1", n >= 1, "n = " + std::to_string(n),
      ErrorCode::kDimensionMismatch);
  add("instance", "at least one objective", inst.m() >= 1,
      "m = " + std::to_string(inst.m()), ErrorCode::kInvalidArgument);
  if (n < 1) return report;

  for (std::size_t i = 0; i < inst.m(); ++i) {
    const std::string subject = "objective " + std::to_string(i + 1);
    const RatioObjective& obj = inst.objectives[i];
    report.denominator_minimizers.emplace_back(std::nullopt);

    const bool num_shape = add(subject, "numerator shape",
                               internal::form_shape_ok(obj.numerator, n),
                               "A and a must have dimension n",
                               ErrorCode::kDimensionMismatch);
    const bool den_shape = add(subject, "denominator shape",
                               internal::form_shape_ok(obj.denominator, n),
                               "B and b must have dimension n",
                               ErrorCode::kDimensionMismatch);
    if (num_shape) {
      add(subject, "numerator symmetric", is_symmetric(obj.numerator.A),
          subject + ": numerator matrix A is not symmetric (max asymmetry " +
              std::to_string(max_asymmetry(obj.numerator.A)) + ")",
          ErrorCode::kAsymmetricMatrix);
    }
    if (!den_shape) continue;
    const Matrix& B = obj.denominator.A;
    const Vector& b = obj.denominator.a;
    if (!add(subject, "denominator symmetric", is_symmetric(B),
             subject + ": denominator matrix B is not symmetric",
             ErrorCode::kAsymmetricMatrix)) {
      continue;
    }
    const double lo = smallest_eigenvalue(B);
    if (!add(subject, "denominator PSD", lo >= -1e-10 * (1.0 + max_abs(B)),
             subject + ": smallest eigenvalue of B is " + std::to_string(lo),
             ErrorCode::kNotPositiveSemidefinite)) {
      continue;
    }

    // 2 B w + b = 0 must be solvable; take the minimum-norm solution.
    Vector w = Vector::Zero(n);
    if (max_abs(B) > 0.0 || b.size() > 0) {
      w = (2.0 * B).completeOrthogonalDecomposition().solve(-b);
    }
    const double residual = (2.0 * B * w + b).norm();
    const double scale = 1.0 + max_abs(B) + b.cwiseAbs().maxCoeff();
    if (!add(subject, "2Bw + b = 0 solvable", residual <= 1e-9 * scale,
             subject + ": normal system 2Bx + b = 0 has no solution "
                       "(residual " + std::to_string(residual) + ")",
             ErrorCode::kNoMinimizer)) {
      continue;
    }
    const double gw = eval_form(obj.denominator, w);
    if (add(subject, "g(w) > 0",
            gw > 1e-12 * (1.0 + std::abs(obj.denominator.a0)),
            subject + ": minimum of the denominator is " + std::to_string(gw),
            ErrorCode::kNonPositiveG)) {
      report.denominator_minimizers.back() = w;
    }
  }

  if (inst.constraints) {
    const auto& c = *inst.constraints;
    add("constraints", "C and b shapes",
        c.C.rows() == c.b.size() && (c.C.rows() == 0 || c.C.cols() == n),
        "C must be p x n with b of length p",
        ErrorCode::kMalformedConstraints);
  }
  return report;
}

/// Throws the first validation failure as an Error.
inline void require_valid(const VqfpInstance& inst) {
  const ValidationReport report = validate_instance(inst);
  if (const ValidationCheck* bad = report.first_failure()) {
    throw Error(bad->code.value_or(ErrorCode::kInvalidArgument),
                bad->message.empty() ? bad->name : bad->message);
  }
}

// ---------------------------------------------------------------------------
// Feasibility and dominance

inline bool is_feasible(const VqfpInstance& inst, const Vector& x,
                        double tol = 0.0) {
  if (!inst.constrained()) return true;
  const auto& c = *inst.constraints;
  const Vector slack = c.C * x - c.b;
  return (slack.array() <= tol).all();
}

/// x dominates y: no ratio worse (beyond tol) and at least one better by
/// more than tol.
inline bool dominates(const VqfpInstance& inst, const Vector& x,
                      const Vector& y, double tol = kDominanceTol) {
  bool strict = false;
  for (const auto& obj : inst.objectives) {
    const double fx = ratio_value(obj, x);
    const double fy = ratio_value(obj, y);
    if (fx > fy + tol) return false;
    if (fx < fy - tol) strict = true;
  }
  return strict;
}

/// Zero-based indices j with |C_j x - b_j| <= tol * (1 + |b_j|).
inline std::vector<Eigen::Index> active_set(const VqfpInstance& inst,
                                            const Vector& x,
                                            double tol = 1e-9) {
  std::vector<Eigen::Index> out;
  if (!inst.constrained()) return out;
  const auto& c = *inst.constraints;
  for (Eigen::Index j = 0; j < c.rows(); ++j) {
    if (std::abs(c.C.row(j).dot(x) - c.b(j)) <= tol * (1.0 + std::abs(c.b(j)))) {
      out.push_back(j);
    }
  }
  return out;
}

}  // namespace effradius

#endif  // EFFRADIUS_CORE_HPP_
