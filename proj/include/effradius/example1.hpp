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

// The two-objective reference problem
//   f1 = 4 x1^2 - x2^2,  f2 = -x1^2 + 4 x2^2 + 4 x1 + 8 x2,  g = 1,
// its weighted stationary points and CSV emitters.

#ifndef EFFRADIUS_EXAMPLE1_HPP_
#define EFFRADIUS_EXAMPLE1_HPP_

#include <cmath>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "effradius/core.hpp"
#include "effradius/errors.hpp"
#include "effradius/format.hpp"

namespace effradius::example1 {

inline VqfpInstance instance() {
  VqfpInstance inst;
  inst.n = 2;
  RatioObjective f1;
  f1.numerator.A = Matrix::Zero(2, 2);
  f1.numerator.A.diagonal() << 4.0, -1.0;
  f1.numerator.a = Vector::Zero(2);
  f1.denominator = QuadraticForm::constant(2, 1.0);
  RatioObjective f2;
  f2.numerator.A = Matrix::Zero(2, 2);
  f2.numerator.A.diagonal() << -1.0, 4.0;
  f2.numerator.a = Vector(2);
  f2.numerator.a << 4.0, 8.0;
  f2.denominator = QuadraticForm::constant(2, 1.0);
  inst.objectives = {f1, f2};
  return inst;
}

/// Stationary point for weights (tau, 1). Poles at tau = 1/4 and tau = 4.
inline Vector stationary_point(double tau) {
  Vector x(2);
  x << 2.0 / (1.0 - 4.0 * tau), 4.0 / (tau - 4.0);
  return x;
}

inline char branch_label(double tau) {
  if (tau < 0.25) return 'A';
  if (tau > 4.0) return 'B';
  return 'C';
}

inline bool near_pole(double tau, double gap = 1e-3) {
  return std::abs(tau - 0.25) < gap || std::abs(tau - 4.0) < gap;
}

/// Midpoints of n equal cells of [log10 lo, log10 hi].
inline std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> out;
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = (static_cast<double>(k) + 0.5) / static_cast<double>(n);
    out.push_back(std::pow(10.0, a + (b - a) * t));
  }
  return out;
}

inline std::vector<double> default_grid() { return log_grid(1e-2, 1e2, 64); }

/// "log:LO:HI:N" or a comma list. Values near the poles are dropped.
inline std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> raw;
  auto number = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParseError, "bad tau grid value '" + s + "'");
    }
  };
  if (spec.empty()) {
    raw = default_grid();
  } else if (spec.rfind("log:", 0) == 0) {
    std::vector<std::string> parts;
    std::stringstream ss(spec.substr(4));
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) {
      throw Error(ErrorCode::kParseError, "expected log:LO:HI:N");
    }
    const double lo = number(parts[0]);
    const double hi = number(parts[1]);
    const double count = number(parts[2]);
    if (!(lo > 0.0) || !(hi > lo) || count < 1.0) {
      throw Error(ErrorCode::kInvalidArgument, "need 0 < LO < HI and N >= 1");
    }
    raw = log_grid(lo, hi, static_cast<std::size_t>(count));
  } else {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) raw.push_back(number(item));
  }
  std::vector<double> out;
  for (double t : raw) {
    if (!(t > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tau must be positive");
    if (!near_pole(t)) out.push_back(t);
  }
  return out;
}

struct Row {
  double tau = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
  char branch = 'C';
  double residual = 0.0;
  bool local = false;
  bool certified_global = false;
};

inline void write_branches_csv(std::ostream& os, const std::vector<Row>& rows) {
  os << "tau,x1,x2,f1,f2,branch,residual,local,certified_global\n";
  for (const Row& r : rows) {
    os << format_double(r.tau) << ',' << format_double(r.x1) << ','
       << format_double(r.x2) << ',' << format_double(r.f1) << ','
       << format_double(r.f2) << ',' << r.branch << ','
       << format_double(r.residual) << ',' << (r.local ? 1 : 0) << ','
       << (r.certified_global ? 1 : 0) << '\n';
  }
}

inline void write_pareto_csv(std::ostream& os, const std::vector<Row>& rows) {
  os << "tau,branch,f1,f2\n";
  for (const Row& r : rows) {
    os << format_double(r.tau) << ',' << r.branch << ',' << format_double(r.f1)
       << ',' << format_double(r.f2) << '\n';
  }
}

}  // namespace effradius::example1

#endif  // EFFRADIUS_EXAMPLE1_HPP_
