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

// Per-direction analysis at a base point x*. Along a unit direction d each
// p_i restricted to the ray is the parabola
//
//   r_i(lambda) - p_i(x*) = lambda * (l_i + lambda / 2 * q_i),
//   l_i = grad p_i(x*)^T d,   q_i = d^T hess p_i(x*) d,
//
// so the sign pattern of (q_i, l_i) says whether objective i can improve at
// some step, and where: X1 objectives improve up to the root -2 l_i / q_i,
// X2 objectives only from that root on, X0 objectives never.

#ifndef EFFRADIUS_DIRECTIONAL_HPP_
#define EFFRADIUS_DIRECTIONAL_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "effradius/associated.hpp"
#include "effradius/core.hpp"
#include "effradius/format.hpp"

namespace effradius {

/// Default relative tolerance for "is this term zero".
inline constexpr double kClassifyEps = 1e-9;

enum class Label {
  kX0,             // never improves for lambda > 0
  kX1,             // convex, decreasing at 0: improves on (0, root]
  kX2,             // concave, increasing at 0: improves on [root, inf)
  kNeutral,        // l = q = 0: constant along d
  kNonIncreasing,  // improves for every lambda > 0
};

inline const char* to_string(Label label) {
  switch (label) {
    case Label::kX0: return "X0";
    case Label::kX1: return "X1";
    case Label::kX2: return "X2";
    case Label::kNeutral: return "Neutral";
    case Label::kNonIncreasing: return "NonIncreasing";
  }
  return "?";
}

/// Sign pattern of one parabola. `zero_tol` is the absolute threshold below
/// which l or q counts as zero.
inline Label classify_terms(double l, double q, double zero_tol) {
  const int sl = l > zero_tol ? 1 : (l < -zero_tol ? -1 : 0);
  const int sq = q > zero_tol ? 1 : (q < -zero_tol ? -1 : 0);
  if ((sq > 0 && sl >= 0) || (sq >= 0 && sl > 0)) return Label::kX0;
  if (sq > 0 && sl < 0) return Label::kX1;
  if (sq < 0 && sl > 0) return Label::kX2;
  if (sq == 0 && sl == 0) return Label::kNeutral;
  return Label::kNonIncreasing;
}

/// Positive root of lambda * (l + lambda q / 2) = 0.
inline double parabola_root(double l, double q) { return -2.0 * l / q; }

struct Interval {
  double lo = 0.0;
  double hi = kInfinity;
  bool lo_open = false;
  bool hi_open = false;

  bool singleton() const { return lo == hi; }
  double width() const { return hi - lo; }

  /// Representative step used for witnesses: the midpoint, the point itself
  /// for singletons, twice the floor for unbounded intervals.
  double pick() const {
    if (singleton()) return lo;
    if (std::isinf(hi)) return lo > 0.0 ? 2.0 * lo : 1.0;
    return 0.5 * (lo + hi);
  }
};

struct DirectionProfile {
  Vector d;
  Vector linear_terms;     // l_i
  Vector quadratic_terms;  // q_i
  std::vector<Label> labels;
  std::optional<double> lambda2;
  double lambda1 = kInfinity;
  double lambda_limit = kInfinity;
  std::optional<Interval> interval;
  bool condition1_degenerate = false;
  bool condition2_violated = false;
  // X0 and X2 both empty but some objective strictly improves near 0: x* is
  // dominated along d for every step in (0, lambda1]. Only possible when x*
  // is not locally efficient.
  std::optional<Interval> descent;

  std::size_t m() const { return labels.size(); }

  bool has(Label label) const {
    return std::find(labels.begin(), labels.end(), label) != labels.end();
  }

  /// Member of L (resp. L-hat): some step along d dominates x*.
  bool dominating() const { return interval.has_value() || descent.has_value(); }

  const std::optional<Interval>& dominance_interval() const {
    return interval ? interval : descent;
  }

  double root(std::size_t i) const {
    return parabola_root(linear_terms(static_cast<Eigen::Index>(i)),
                         quadratic_terms(static_cast<Eigen::Index>(i)));
  }
};

namespace internal {

inline bool roots_equal(double a, double b) {
  return std::abs(a - b) <= 1e-9 * (1.0 + std::max(std::abs(a), std::abs(b)));
}

}  // namespace internal

/// max over X2 of -2 l_i / q_i.
inline double lambda2(const DirectionProfile& profile) {
  std::optional<double> best;
  for (std::size_t i = 0; i < profile.m(); ++i) {
    if (profile.labels[i] != Label::kX2) continue;
    const double r = profile.root(i);
    if (!best || r > *best) best = r;
  }
  if (!best) throw Error(ErrorCode::kEmptyX2, "lambda2 needs a nonempty X2");
  return *best;
}

/// min over X1 of -2 l_i / q_i, capped by the limiting step; +inf when X1
/// is empty and the direction never meets the boundary.
inline double lambda1(const DirectionProfile& profile,
                      double lambda_limit = kInfinity) {
  double out = kInfinity;
  for (std::size_t i = 0; i < profile.m(); ++i) {
    if (profile.labels[i] == Label::kX1) out = std::min(out, profile.root(i));
  }
  return std::min(out, lambda_limit);
}

struct IntervalResult {
  std::optional<Interval> interval;
  bool condition1_degenerate = false;
};

/// Lambda^d from the labels, lambda2, lambda1 and lambda_limit already
/// stored in `profile`.
inline IntervalResult lambda_interval(const DirectionProfile& profile) {
  IntervalResult out;
  if (profile.condition2_violated || profile.has(Label::kX0) ||
      !profile.has(Label::kX2)) {
    return out;
  }
  const double lo = profile.lambda2 ? *profile.lambda2 : lambda2(profile);
  const bool x1_empty = !profile.has(Label::kX1);
  double hi = profile.lambda1;
  if (x1_empty) {
    // (0, lambda1) is open when X1 = {} ; lambda1 is then lambda_limit.
    if (std::isinf(hi)) return {Interval{lo, kInfinity, false, true}, false};
    hi -= 1e-9 * (1.0 + hi);
    if (lo > hi) return out;
    return {Interval{lo, hi, false, false}, false};
  }
  if (internal::roots_equal(lo, hi)) {
    bool all_equal = true;
    for (std::size_t i = 0; i < profile.m() && all_equal; ++i) {
      const Label l = profile.labels[i];
      if (l == Label::kX1 || l == Label::kX2) {
        all_equal = internal::roots_equal(profile.root(i), lo);
      }
    }
    if (all_equal) {
      out.condition1_degenerate = true;
      return out;
    }
    out.interval = Interval{hi, hi};
    return out;
  }
  if (lo > hi) return out;
  out.interval = Interval{lo, hi};
  return out;
}

/// Fills lambda2, lambda1, Lambda^d, the degeneracy flags and the descent
/// interval from the labels and terms already present in `p`.
inline void complete_profile(DirectionProfile& p, double lambda_limit) {
  p.condition2_violated =
      std::all_of(p.labels.begin(), p.labels.end(),
                  [](Label l) { return l == Label::kNeutral; });
  if (p.has(Label::kX2)) p.lambda2 = lambda2(p);
  p.lambda_limit = lambda_limit;
  p.lambda1 = lambda1(p, lambda_limit);
  const IntervalResult r = lambda_interval(p);
  p.interval = r.interval;
  p.condition1_degenerate = r.condition1_degenerate;
  if (!p.condition2_violated && !p.has(Label::kX0) && !p.has(Label::kX2)) {
    double hi = p.lambda1;
    if (!p.has(Label::kX1) && !std::isinf(hi)) hi -= 1e-9 * (1.0 + hi);
    if (hi > 0.0) p.descent = Interval{0.0, hi, true, std::isinf(hi)};
  }
}

/// min over rows with C_j d > 0 of (b_j - C_j x*) / (C_j d).
inline double lambda_limiting(const VqfpInstance& inst, const Vector& x_star,
                              const Vector& d) {
  if (!inst.constrained()) return kInfinity;
  const auto& c = *inst.constraints;
  double out = kInfinity;
  for (Eigen::Index j = 0; j < c.rows(); ++j) {
    const double cd = c.C.row(j).dot(d);
    if (cd <= 0.0) continue;
    const double slack = std::max(0.0, c.b(j) - c.C.row(j).dot(x_star));
    out = std::min(out, slack / cd);
  }
  return out;
}

/// C_j d <= tol for every row active at x*.
inline bool in_tangent_cone(const VqfpInstance& inst, const Vector& x_star,
                            const Vector& d, double tol = 1e-12) {
  if (!inst.constrained()) return true;
  const auto& c = *inst.constraints;
  for (Eigen::Index j : active_set(inst, x_star)) {
    if (c.C.row(j).dot(d) > tol) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

/// Precomputes per-objective zero thresholds so that many directions can be
/// profiled against one model.
class DirectionAnalyzer {
 public:
  explicit DirectionAnalyzer(const AssociatedModel& model,
                             double eps = kClassifyEps)
      : model_(&model), eps_(eps) {
    zero_tol_.reserve(model.m());
    for (std::size_t i = 0; i < model.m(); ++i) {
      zero_tol_.push_back(eps * (1.0 + model.gradients[i].norm() +
                                 max_abs(model.hessians[i])));
    }
  }

  const AssociatedModel& model() const { return *model_; }
  double eps() const { return eps_; }
  double zero_tol(std::size_t i) const { return zero_tol_[i]; }

  /// Labels and (l_i, q_i) for a unit direction.
  DirectionProfile classify(const Vector& d) const {
    if (d.size() != model_->n()) {
      throw Error(ErrorCode::kDimensionMismatch, "direction dimension");
    }
    if (std::abs(d.norm() - 1.0) > 1e-12) {
      throw Error(ErrorCode::kNonUnitDirection,
                  "direction norm is " + format_double(d.norm()));
    }
    const std::size_t m = model_->m();
    DirectionProfile p;
    p.d = d;
    p.linear_terms.resize(static_cast<Eigen::Index>(m));
    p.quadratic_terms.resize(static_cast<Eigen::Index>(m));
    p.labels.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      const auto k = static_cast<Eigen::Index>(i);
      const double l = model_->gradients[i].dot(d);
      const double q = d.dot(model_->hessians[i] * d);
      p.linear_terms(k) = l;
      p.quadratic_terms(k) = q;
      p.labels.push_back(classify_terms(l, q, zero_tol_[i]));
    }
    return p;
  }

  /// Full profile: labels, lambda2, lambda1 (capped by the limiting step),
  /// Lambda^d and the degeneracy flags.
  DirectionProfile analyze(const Vector& d) const {
    DirectionProfile p = classify(d);
    complete_profile(p, lambda_limiting(*model_->instance, model_->base_point, d));
    return p;
  }

 private:
  const AssociatedModel* model_;
  double eps_;
  std::vector<double> zero_tol_;
};

inline DirectionProfile classify(const AssociatedModel& model, const Vector& d,
                                 double eps = kClassifyEps) {
  return DirectionAnalyzer(model, eps).classify(d);
}

inline DirectionProfile analyze_direction(const AssociatedModel& model,
                                          const Vector& d,
                                          double eps = kClassifyEps) {
  return DirectionAnalyzer(model, eps).analyze(d);
}

/// Profile built from raw (l_i, q_i) terms with unit scale thresholds, for
/// callers that have the terms but no model.
inline DirectionProfile profile_from_terms(const Vector& l, const Vector& q,
                                           double eps = kClassifyEps,
                                           double lambda_limit = kInfinity) {
  DirectionProfile p;
  p.linear_terms = l;
  p.quadratic_terms = q;
  for (Eigen::Index i = 0; i < l.size(); ++i) {
    p.labels.push_back(classify_terms(l(i), q(i), eps));
  }
  complete_profile(p, lambda_limit);
  return p;
}

// ---------------------------------------------------------------------------
// CSV dump: one row per (direction, objective).

inline void write_profile_csv_header(std::ostream& os, Eigen::Index n) {
  for (Eigen::Index k = 0; k < n; ++k) os << "d_" << (k + 1) << ',';
  os << "i,l_i,q_i,label,lambda2,lambda1,lambda_limit,interval_lo,"
        "interval_hi,cond1,cond2\n";
}

inline void write_profile_csv_rows(std::ostream& os,
                                   const DirectionProfile& p) {
  for (std::size_t i = 0; i < p.m(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    for (Eigen::Index j = 0; j < p.d.size(); ++j) {
      os << format_double(p.d(j)) << ',';
    }
    os << (i + 1) << ',' << format_double(p.linear_terms(k)) << ','
       << format_double(p.quadratic_terms(k)) << ',' << to_string(p.labels[i])
       << ',' << format_optional(p.lambda2) << ',' << format_double(p.lambda1)
       << ',' << format_double(p.lambda_limit) << ',';
    if (p.interval) {
      os << format_double(p.interval->lo) << ','
         << format_double(p.interval->hi);
    } else {
      os << ',';
    }
    os << ',' << (p.condition1_degenerate ? 1 : 0) << ','
       << (p.condition2_violated ? 1 : 0) << '\n';
  }
}

}  // namespace effradius

#endif  // EFFRADIUS_DIRECTIONAL_HPP_
