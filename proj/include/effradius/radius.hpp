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

// Radius of efficiency: sweep unit directions (or the cone of feasible
// directions) at x*, collect the dominance intervals Lambda^d, and derive
//
//   beta        = inf over L of lambda2      (no dominator closer than beta)
//   P           = sup over L of lambda1      (no dominator farther than P)
//   rho/(-gamma)  eigenvalue lower bound on beta
//   M           curvature upper bound on P, capped by diam(S)
//
// where L is the set of directions along which some step dominates x*.
// Every quantity is an estimate over the sampled directions.

#ifndef EFFRADIUS_RADIUS_HPP_
#define EFFRADIUS_RADIUS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "effradius/associated.hpp"
#include "effradius/core.hpp"
#include "effradius/directional.hpp"
#include "effradius/parallel.hpp"
#include "effradius/sampling.hpp"
#include "effradius/spectral.hpp"

namespace effradius {

struct SweepConfig {
  std::size_t num_directions = 0;  // 0 means 4096 * n
  std::uint64_t seed = 1;
  int refine_rounds = 3;
  double eps = kClassifyEps;
  std::size_t oracle_budget = 100000;
  // Extra evenly spaced angles when n == 2.
  std::size_t grid_angles = 100000;
  // Perturbations drawn around each refined direction.
  std::size_t refine_children = 8;
  // Directions in L improved further by adaptive local search, once for
  // the floor of Lambda^d and once for its cap.
  std::size_t polish_starts = 16;
  std::size_t polish_iterations = 200;
  unsigned threads = 0;  // 0 means hardware concurrency
  // User-supplied diam(S); otherwise bounded from box rows.
  std::optional<double> diam_override;

  std::size_t directions_for(Eigen::Index n) const {
    return num_directions > 0 ? num_directions
                              : 4096 * static_cast<std::size_t>(n);
  }
};

// ---------------------------------------------------------------------------
// Sweep

namespace internal {

inline std::vector<DirectionProfile> analyze_all(
    const DirectionAnalyzer& analyzer, const std::vector<Vector>& dirs,
    unsigned threads) {
  std::vector<DirectionProfile> out(dirs.size());
  parallel_for(
      dirs.size(), [&](std::size_t i) { out[i] = analyzer.analyze(dirs[i]); },
      threads);
  return out;
}

inline double dominance_floor(const DirectionProfile& p) {
  return p.dominance_interval()->lo;
}

/// Indices of up to `fraction` of `candidates` ordered by `key` (ascending),
/// at least one when candidates is nonempty. Ties keep index order.
template <typename Key>
std::vector<std::size_t> smallest_fraction(std::vector<std::size_t> candidates,
                                           double fraction, Key key) {
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  const auto keep = std::max<std::size_t>(
      candidates.empty() ? 0 : 1,
      static_cast<std::size_t>(std::ceil(fraction * candidates.size())));
  candidates.resize(std::min(keep, candidates.size()));
  return candidates;
}

/// How firmly the X0 objectives block a direction, in units of their zero
/// thresholds. Small values sit near a classification boundary.
inline double x0_strength(const DirectionAnalyzer& analyzer,
                          const DirectionProfile& p) {
  double best = 0.0;
  for (std::size_t i = 0; i < p.m(); ++i) {
    if (p.labels[i] != Label::kX0) continue;
    const auto k = static_cast<Eigen::Index>(i);
    const double s =
        std::max(p.linear_terms(k), p.quadratic_terms(k)) / analyzer.zero_tol(i);
    best = std::max(best, s);
  }
  return best;
}

/// Up to `count` candidates in ascending `key` order, skipping any within
/// about 0.3 rad of one already taken so that separate basins get a start.
template <typename Key>
std::vector<std::size_t> spread_starts(const std::vector<DirectionProfile>& profiles,
                                       std::vector<std::size_t> candidates,
                                       std::size_t count, Key key) {
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  std::vector<std::size_t> out;
  for (std::size_t i : candidates) {
    if (out.size() >= count) break;
    bool far = true;
    for (std::size_t j : out) {
      if (profiles[i].d.dot(profiles[j].d) > 0.955) {
        far = false;
        break;
      }
    }
    if (far) out.push_back(i);
  }
  return out;
}

/// (1+k) evolution strategy on the sphere: moves from profiles[start] to
/// children that stay dominating and lower `key`, halving the step after a
/// failed generation. Returns the final profile.
template <typename Key>
DirectionProfile polish(const DirectionAnalyzer& analyzer,
                        const TangentCone& cone, Rng& rng,
                        DirectionProfile best, std::size_t iterations, Key key) {
  constexpr std::size_t kChildren = 16;
  std::normal_distribution<double> normal(0.0, 1.0);
  const Eigen::Index n = best.d.size();
  double sigma = 0.05;
  double best_key = key(best);
  for (std::size_t it = 0; it < iterations && sigma > 1e-9; ++it) {
    bool improved = false;
    for (std::size_t c = 0; c < kChildren; ++c) {
      Vector y = best.d;
      for (Eigen::Index k = 0; k < n; ++k) y(k) += sigma * normal(rng);
      const double norm = y.norm();
      if (norm < 1e-12) continue;
      const auto d = cone.project(y / norm);
      if (!d) continue;
      DirectionProfile p = analyzer.analyze(*d);
      if (!p.dominating()) continue;
      const double k = key(p);
      if (k < best_key) {
        best_key = k;
        best = std::move(p);
        improved = true;
      }
    }
    sigma = improved ? sigma * 1.5 : sigma * 0.5;
    sigma = std::min(sigma, 0.5);
  }
  return best;
}

}  // namespace internal

/// Profiles over sampled unit directions at x* (restricted to the cone of
/// feasible directions when constrained), followed by refine_rounds of
/// local perturbation around directions that decide beta and P or sit near
/// a classification boundary. Deterministic for a fixed seed.
inline std::vector<DirectionProfile> sweep(const AssociatedModel& model,
                                           const SweepConfig& config) {
  const VqfpInstance& inst = *model.instance;
  const Eigen::Index n = model.n();
  const DirectionAnalyzer analyzer(model, config.eps);
  const TangentCone cone(inst, model.base_point);
  Rng rng(config.seed);

  std::vector<Vector> dirs;
  const std::size_t count = config.directions_for(n);
  dirs.reserve(count + (n == 2 ? config.grid_angles : 0));
  for (std::size_t k = 0; k < count; ++k) {
    // A fixed number of draws per direction keeps the stream aligned when
    // projection fails.
    if (auto d = cone.project(random_unit(rng, n))) dirs.push_back(*d);
  }
  if (n == 2) {
    for (std::size_t k = 0; k < config.grid_angles; ++k) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) /
                           static_cast<double>(config.grid_angles);
      Vector d(2);
      d << std::cos(theta), std::sin(theta);
      if (cone.contains(d)) dirs.push_back(d);
    }
  }
  std::vector<DirectionProfile> profiles =
      internal::analyze_all(analyzer, dirs, config.threads);

  double sigma = 0.1;
  for (int round = 0; round < config.refine_rounds; ++round, sigma *= 0.3) {
    std::vector<std::size_t> in_l, near_l, blocked;
    for (std::size_t i = 0; i < profiles.size(); ++i) {
      const DirectionProfile& p = profiles[i];
      if (p.dominating()) {
        in_l.push_back(i);
      } else if (p.has(Label::kX0)) {
        blocked.push_back(i);
      } else if (p.lambda2) {
        near_l.push_back(i);
      }
    }
    std::vector<std::size_t> seeds;
    auto take = [&](const std::vector<std::size_t>& v) {
      seeds.insert(seeds.end(), v.begin(), v.end());
    };
    take(internal::smallest_fraction(in_l, 0.01, [&](std::size_t i) {
      return internal::dominance_floor(profiles[i]);
    }));
    take(internal::smallest_fraction(in_l, 0.01, [&](std::size_t i) {
      return -profiles[i].lambda1;
    }));
    take(internal::smallest_fraction(near_l, 0.01, [&](std::size_t i) {
      return *profiles[i].lambda2 / profiles[i].lambda1;
    }));
    take(internal::smallest_fraction(near_l, 0.01, [&](std::size_t i) {
      return *profiles[i].lambda2;
    }));
    take(internal::smallest_fraction(blocked, 0.01, [&](std::size_t i) {
      return internal::x0_strength(analyzer, profiles[i]);
    }));
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
    if (seeds.empty()) break;

    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Vector> children;
    children.reserve(seeds.size() * config.refine_children);
    for (std::size_t s : seeds) {
      for (std::size_t c = 0; c < config.refine_children; ++c) {
        Vector y = profiles[s].d;
        for (Eigen::Index k = 0; k < n; ++k) y(k) += sigma * normal(rng);
        const double norm = y.norm();
        if (norm < 1e-12) continue;
        if (auto d = cone.project(y / norm)) children.push_back(*d);
      }
    }
    std::vector<DirectionProfile> extra =
        internal::analyze_all(analyzer, children, config.threads);
    profiles.insert(profiles.end(), std::make_move_iterator(extra.begin()),
                    std::make_move_iterator(extra.end()));
  }

  if (config.polish_starts > 0) {
    std::vector<std::size_t> in_l;
    for (std::size_t i = 0; i < profiles.size(); ++i) {
      if (profiles[i].dominating()) in_l.push_back(i);
    }
    auto floor_key = [](const DirectionProfile& p) {
      return internal::dominance_floor(p);
    };
    auto cap_key = [](const DirectionProfile& p) { return -p.lambda1; };
    const auto by_floor = internal::spread_starts(
        profiles, in_l, config.polish_starts,
        [&](std::size_t i) { return floor_key(profiles[i]); });
    const auto by_cap = internal::spread_starts(
        profiles, in_l, config.polish_starts,
        [&](std::size_t i) { return cap_key(profiles[i]); });
    std::vector<DirectionProfile> polished;
    for (std::size_t i : by_floor) {
      polished.push_back(internal::polish(analyzer, cone, rng, profiles[i],
                                          config.polish_iterations, floor_key));
    }
    for (std::size_t i : by_cap) {
      polished.push_back(internal::polish(analyzer, cone, rng, profiles[i],
                                          config.polish_iterations, cap_key));
    }
    profiles.insert(profiles.end(), std::make_move_iterator(polished.begin()),
                    std::make_move_iterator(polished.end()));
  }
  return profiles;
}

inline std::vector<DirectionProfile> sweep(const VqfpInstance& inst,
                                           const Vector& x_star,
                                           const SweepConfig& config) {
  const AssociatedModel model = build_associated(inst, x_star);
  return sweep(model, config);
}

// ---------------------------------------------------------------------------
// Estimates

struct BetaEstimate {
  double beta = kInfinity;
  std::optional<Vector> direction;
  std::optional<std::size_t> index;
};

/// min of lambda2 over profiles in L. Descent profiles (x* not locally
/// efficient) contribute 0.
inline BetaEstimate estimate_beta(std::span<const DirectionProfile> profiles) {
  BetaEstimate out;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    const DirectionProfile& p = profiles[i];
    if (!p.dominating()) continue;
    const double lo = internal::dominance_floor(p);
    if (lo < out.beta) {
      out.beta = lo;
      out.index = i;
    }
  }
  if (out.index) out.direction = profiles[*out.index].d;
  return out;
}

struct PEstimate {
  double P = kInfinity;
  bool applicable = false;  // false when L is empty
};

inline PEstimate estimate_P(std::span<const DirectionProfile> profiles) {
  PEstimate out;
  double sup = -kInfinity;
  for (const DirectionProfile& p : profiles) {
    if (!p.dominating()) continue;
    out.applicable = true;
    sup = std::max(sup, p.lambda1);
  }
  if (out.applicable) out.P = sup;
  return out;
}

/// min over i of the smallest negative eigenvalue of hess p_i(x*).
inline std::optional<double> most_negative_curvature(
    const AssociatedModel& model) {
  std::optional<double> gamma;
  for (const Matrix& h : model.hessians) {
    if (auto g = smallest_negative_eigenvalue_unchecked(h)) {
      gamma = gamma ? std::min(*gamma, *g) : *g;
    }
  }
  return gamma;
}

struct RhoGammaBound {
  std::optional<double> rho;
  std::optional<double> gamma;
  std::optional<double> bound;  // rho / (-gamma)
  bool psd_shortcut = false;    // every hessian PSD: X2 is always empty
};

/// rho = min of F(d) = max_{i in X2} 2 l_i over sampled profiles with X0
/// empty and X2 nonempty. The bound is withheld when a descent direction
/// shows x* is not locally efficient.
inline RhoGammaBound rho_over_gamma(std::optional<double> gamma,
                                    std::span<const DirectionProfile> profiles) {
  RhoGammaBound out;
  out.gamma = gamma;
  out.psd_shortcut = !gamma.has_value();
  bool descent = false;
  for (const DirectionProfile& p : profiles) {
    descent = descent || p.descent.has_value();
    if (p.has(Label::kX0) || !p.has(Label::kX2)) continue;
    double f = -kInfinity;
    for (std::size_t i = 0; i < p.m(); ++i) {
      if (p.labels[i] == Label::kX2) {
        f = std::max(f, 2.0 * p.linear_terms(static_cast<Eigen::Index>(i)));
      }
    }
    out.rho = out.rho ? std::min(*out.rho, f) : f;
  }
  if (gamma && out.rho && !descent) out.bound = *out.rho / (-*gamma);
  return out;
}

inline RhoGammaBound lower_bound_rho_gamma(
    const AssociatedModel& model, std::span<const DirectionProfile> profiles) {
  return rho_over_gamma(most_negative_curvature(model), profiles);
}

struct MEstimate {
  double M = kInfinity;
  std::optional<double> alpha;
  bool available = false;
};

/// alpha = min of q_i over profiles d in L and i in X1(d). For each such d,
/// lambda1(d) <= min_{i in X1(d)} |2 grad p_i| / alpha, so the sup of that
/// per-direction bound over L bounds P; it is then capped by diam(S).
inline MEstimate upper_bound_M(const AssociatedModel& model,
                               std::span<const DirectionProfile> profiles,
                               double diam_s = kInfinity) {
  MEstimate out;
  double alpha = kInfinity;
  double hess_scale = 0.0;
  for (const Matrix& h : model.hessians) hess_scale = std::max(hess_scale, max_abs(h));
  for (const DirectionProfile& p : profiles) {
    if (!p.dominating()) continue;
    for (std::size_t i = 0; i < p.m(); ++i) {
      if (p.labels[i] == Label::kX1) {
        alpha = std::min(alpha, p.quadratic_terms(static_cast<Eigen::Index>(i)));
      }
    }
  }
  if (std::isinf(alpha) || alpha <= kClassifyEps * (1.0 + hess_scale)) {
    return out;
  }
  out.alpha = alpha;
  out.available = true;
  double sup = -kInfinity;
  for (const DirectionProfile& p : profiles) {
    if (!p.dominating()) continue;
    double per_dir = kInfinity;
    for (std::size_t i = 0; i < p.m(); ++i) {
      if (p.labels[i] == Label::kX1) {
        per_dir = std::min(per_dir, 2.0 * model.gradients[i].norm() / alpha);
      }
    }
    sup = std::max(sup, per_dir);
  }
  out.M = std::min(sup, diam_s);
  return out;
}

/// Upper bound on diam(S) from rows with a single nonzero coefficient
/// (exact for boxes); +inf unless every coordinate is bounded both ways.
inline double diameter_bound(const VqfpInstance& inst) {
  if (!inst.constrained()) return kInfinity;
  const auto& c = *inst.constraints;
  const Eigen::Index n = inst.n;
  Vector lo = Vector::Constant(n, -kInfinity);
  Vector hi = Vector::Constant(n, kInfinity);
  for (Eigen::Index j = 0; j < c.rows(); ++j) {
    Eigen::Index nz = -1;
    int count = 0;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (c.C(j, k) != 0.0) {
        nz = k;
        ++count;
      }
    }
    if (count != 1) continue;
    const double bound = c.b(j) / c.C(j, nz);
    if (c.C(j, nz) > 0.0) {
      hi(nz) = std::min(hi(nz), bound);
    } else {
      lo(nz) = std::max(lo(nz), bound);
    }
  }
  double sq = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (std::isinf(lo(k)) || std::isinf(hi(k))) return kInfinity;
    const double w = std::max(0.0, hi(k) - lo(k));
    sq += w * w;
  }
  return std::sqrt(sq);
}

// ---------------------------------------------------------------------------
// Certification

enum class Verdict {
  kCertifiedGlobalUpToSampling,
  kDominatedWithWitness,
  kInconclusive,
};

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kCertifiedGlobalUpToSampling:
      return "CertifiedGlobalUpToSampling";
    case Verdict::kDominatedWithWitness: return "DominatedWithWitness";
    case Verdict::kInconclusive: return "Inconclusive";
  }
  return "?";
}

struct SweepDiagnostics {
  std::size_t profiles = 0;
  std::size_t x0_hits = 0;
  std::size_t empty_interval = 0;
  std::size_t cond1 = 0;
  std::size_t cond2 = 0;
  std::size_t dominating = 0;
  std::size_t descent = 0;
  bool psd_shortcut = false;
  bool witness_verification_failed = false;
};

struct RadiusReport {
  double beta = kInfinity;
  std::optional<Vector> beta_direction;
  double P = kInfinity;
  bool P_applicable = false;
  std::optional<double> rho;
  std::optional<double> gamma;
  std::optional<double> lower_bound;
  double M = kInfinity;
  std::optional<double> alpha;
  double diam_s = kInfinity;
  Verdict verdict = Verdict::kInconclusive;
  std::optional<Vector> witness;
  SweepDiagnostics diagnostics;
  std::uint64_t seed = 0;
  std::size_t num_directions = 0;
};

inline SweepDiagnostics summarize(std::span<const DirectionProfile> profiles) {
  SweepDiagnostics s;
  s.profiles = profiles.size();
  for (const DirectionProfile& p : profiles) {
    if (p.has(Label::kX0)) ++s.x0_hits;
    if (!p.interval) ++s.empty_interval;
    if (p.condition1_degenerate) ++s.cond1;
    if (p.condition2_violated) ++s.cond2;
    if (p.dominating()) ++s.dominating;
    if (p.descent) ++s.descent;
  }
  return s;
}

/// Witness candidate along a profile in L, or nullopt when it fails the
/// independent ratio-value check.
inline std::optional<Vector> verified_witness(const VqfpInstance& inst,
                                              const Vector& x_star,
                                              const DirectionProfile& p) {
  const auto& iv = p.dominance_interval();
  if (!iv) return std::nullopt;
  const Vector w = x_star + iv->pick() * p.d;
  if (!is_feasible(inst, w, kFeasibilityTol)) return std::nullopt;
  if (!dominates(inst, w, x_star, kDominanceTol)) return std::nullopt;
  return w;
}

inline RadiusReport certify(const VqfpInstance& inst, const Vector& x_star,
                            const SweepConfig& config = {}) {
  require_valid(inst);
  const AssociatedModel model = build_associated(inst, x_star);
  const std::vector<DirectionProfile> profiles = sweep(model, config);

  RadiusReport report;
  report.seed = config.seed;
  report.num_directions = config.directions_for(inst.n);
  report.diagnostics = summarize(profiles);

  const BetaEstimate beta = estimate_beta(profiles);
  report.beta = beta.beta;
  report.beta_direction = beta.direction;
  const PEstimate p = estimate_P(profiles);
  report.P = p.P;
  report.P_applicable = p.applicable;
  const RhoGammaBound rg = lower_bound_rho_gamma(model, profiles);
  report.rho = rg.rho;
  report.gamma = rg.gamma;
  report.lower_bound = rg.bound;
  report.diagnostics.psd_shortcut = rg.psd_shortcut;
  report.diam_s = config.diam_override.value_or(diameter_bound(inst));
  const MEstimate m = upper_bound_M(model, profiles, report.diam_s);
  report.M = m.M;
  report.alpha = m.alpha;

  if (report.diagnostics.dominating > 0) {
    // The beta direction first, then the rest in sweep order.
    std::vector<std::size_t> order;
    if (beta.index) order.push_back(*beta.index);
    for (std::size_t i = 0; i < profiles.size(); ++i) {
      if (profiles[i].dominating() && (!beta.index || i != *beta.index)) {
        order.push_back(i);
      }
    }
    for (std::size_t i : order) {
      if (auto w = verified_witness(inst, x_star, profiles[i])) {
        report.witness = *w;
        report.verdict = Verdict::kDominatedWithWitness;
        return report;
      }
    }
    report.diagnostics.witness_verification_failed = true;
    report.verdict = Verdict::kInconclusive;
    return report;
  }
  report.verdict = report.diagnostics.cond2 > 0
                       ? Verdict::kInconclusive
                       : Verdict::kCertifiedGlobalUpToSampling;
  return report;
}

/// Dominator search restricted to the shell between beta and P: only
/// directions in L, only steps inside Lambda^d clamped to [beta, P].
/// Spends config.oracle_budget directions.
inline std::optional<Vector> search_shell(const VqfpInstance& inst,
                                          const Vector& x_star,
                                          const RadiusReport& report,
                                          const SweepConfig& config = {}) {
  if (!report.P_applicable || std::isinf(report.beta)) return std::nullopt;
  const AssociatedModel model = build_associated(inst, x_star);
  const DirectionAnalyzer analyzer(model, config.eps);
  const TangentCone cone(inst, x_star);
  Rng rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  auto try_direction = [&](const Vector& d) -> std::optional<Vector> {
    const DirectionProfile p = analyzer.analyze(d);
    const auto& iv = p.dominance_interval();
    if (!iv) return std::nullopt;
    const double lo = std::max(iv->lo, report.beta);
    double hi = std::min(iv->hi, report.P);
    if (std::isinf(hi)) hi = lo + std::max(1.0, lo);
    if (lo > hi) return std::nullopt;
    // Midpoint first, then a random step.
    for (double t : {0.5, uniform(rng)}) {
      const Vector w = x_star + (lo + t * (hi - lo)) * d;
      if (is_feasible(inst, w, kFeasibilityTol) &&
          dominates(inst, w, x_star, kDominanceTol)) {
        return w;
      }
    }
    return std::nullopt;
  };

  if (report.beta_direction) {
    if (auto w = try_direction(*report.beta_direction)) return w;
  }
  for (std::size_t k = 0; k < config.oracle_budget; ++k) {
    auto d = cone.project(random_unit(rng, inst.n));
    if (!d) continue;
    if (auto w = try_direction(*d)) return w;
  }
  return std::nullopt;
}

}  // namespace effradius

#endif  // EFFRADIUS_RADIUS_HPP_
