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

// Brute-force checks that share nothing with the directional machinery:
// dominance is tested on ratio values at sampled points only.

#ifndef EFFRADIUS_ORACLE_HPP_
#define EFFRADIUS_ORACLE_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "effradius/core.hpp"
#include "effradius/parallel.hpp"
#include "effradius/sampling.hpp"

namespace effradius {

struct OracleResult {
  bool found = false;
  std::optional<Vector> witness;
  std::optional<double> distance;
  std::size_t samples_used = 0;
  std::uint64_t seed = 0;
};

struct OracleOptions {
  // Deterministic lattice of ceil(budget^(1/n)) points per axis on top of
  // the random stream, used while it has at most 2 * budget points.
  bool lattice = true;
  unsigned threads = 0;
};

namespace internal {

/// Unit-ball offsets: a seeded random stream of `budget` points followed by
/// the lattice. Radius r samples are x* + r * offset, so every radius uses
/// the same stream.
inline std::vector<Vector> oracle_offsets(Eigen::Index n, std::size_t budget,
                                          std::uint64_t seed, bool lattice) {
  std::vector<Vector> out;
  if (budget == 0 || n <= 0) return out;
  Rng rng(seed);
  out.reserve(2 * budget);
  for (std::size_t k = 0; k < budget; ++k) {
    out.push_back(random_in_unit_ball(rng, n));
  }
  if (!lattice) return out;
  const auto per_axis = static_cast<std::size_t>(std::ceil(
      std::pow(static_cast<double>(budget), 1.0 / static_cast<double>(n)) -
      1e-9));
  double total = std::pow(static_cast<double>(per_axis), static_cast<double>(n));
  if (per_axis < 2 || total > 2.0 * static_cast<double>(budget)) return out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  for (;;) {
    Vector t(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      t(k) = -1.0 + 2.0 * (static_cast<double>(idx[static_cast<std::size_t>(k)]) + 0.5) /
                        static_cast<double>(per_axis);
    }
    if (t.squaredNorm() <= 1.0) out.push_back(t);
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == per_axis) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return out;
}

}  // namespace internal

/// Minimum-distance feasible dominator of x* among the samples in the
/// closed ball of the given radius (ties go to the lowest sample index).
inline OracleResult brute_force_dominator(const VqfpInstance& inst,
                                          const Vector& x_star, double radius,
                                          std::size_t budget,
                                          std::uint64_t seed,
                                          const OracleOptions& options = {}) {
  OracleResult result;
  result.seed = seed;
  const std::vector<Vector> offsets =
      internal::oracle_offsets(inst.n, budget, seed, options.lattice);
  result.samples_used = offsets.size();
  if (offsets.empty()) return result;

  const Vector base = ratio_values(inst, x_star);
  std::vector<double> hit(offsets.size(), kInfinity);
  parallel_for(
      offsets.size(),
      [&](std::size_t k) {
        const Vector x = x_star + radius * offsets[k];
        if (!is_feasible(inst, x, 0.0)) return;
        bool strict = false;
        for (std::size_t i = 0; i < inst.m(); ++i) {
          const double v = ratio_value(inst.objectives[i], x);
          const double ref = base(static_cast<Eigen::Index>(i));
          if (v > ref + kDominanceTol) return;
          if (v < ref - kDominanceTol) strict = true;
        }
        if (strict) hit[k] = (x - x_star).norm();
      },
      options.threads, 1024);

  std::size_t best = offsets.size();
  for (std::size_t k = 0; k < offsets.size(); ++k) {
    if (hit[k] < kInfinity && (best == offsets.size() || hit[k] < hit[best])) {
      best = k;
    }
  }
  if (best < offsets.size()) {
    result.found = true;
    result.witness = x_star + radius * offsets[best];
    result.distance = hit[best];
  }
  return result;
}

/// Sampling statement only: nothing dominates x* within r_small.
inline bool local_efficiency_check(const VqfpInstance& inst,
                                   const Vector& x_star, double r_small = 1e-3,
                                   std::size_t budget = 100000,
                                   std::uint64_t seed = 1) {
  return !brute_force_dominator(inst, x_star, r_small, budget, seed).found;
}

/// |sum_i tau_i grad(f_i / g_i)(x*)|_2 for nonnegative weights.
inline double stationarity_residual(const VqfpInstance& inst,
                                    const Vector& x_star,
                                    const Vector& weights) {
  if (weights.size() != static_cast<Eigen::Index>(inst.m())) {
    throw Error(ErrorCode::kDimensionMismatch, "one weight per objective");
  }
  if ((weights.array() < 0.0).any()) {
    throw Error(ErrorCode::kInvalidArgument, "weights must be nonnegative");
  }
  if ((weights.array() == 0.0).all()) {
    throw Error(ErrorCode::kZeroWeights, "weights are all zero");
  }
  Vector sum = Vector::Zero(inst.n);
  for (std::size_t i = 0; i < inst.m(); ++i) {
    const double t = weights(static_cast<Eigen::Index>(i));
    if (t != 0.0) sum += t * ratio_gradient(inst.objectives[i], x_star);
  }
  return sum.norm();
}

}  // namespace effradius

#endif  // EFFRADIUS_ORACLE_HPP_
