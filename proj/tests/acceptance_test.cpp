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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Tolerances and limits are fixed below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "effradius/commands.hpp"
#include "effradius/effradius.hpp"

#ifndef EFFRADIUS_CLI_PATH
#error "EFFRADIUS_CLI_PATH must name the command-line binary"
#endif

namespace {

using namespace effradius;
namespace fs = std::filesystem;

constexpr double kResidualTol = 1e-9;          // 1
constexpr double kLambdaTol = 1e-9;            // 2
constexpr std::size_t kOracleBudget = 100000;  // 2, 3, 7
constexpr double kOracleRadius = 10.0;         // 3
constexpr double kSignGate = 1e-8;             // 4
constexpr double kTaylorTol = 1e-8;            // 5
constexpr double kChainSlack = 1e-9;           // 6
constexpr double kBetaShrink = 1e-3;           // 7
constexpr double kShellSlack = 1e-6;           // 7
constexpr double kInsideStep = 1e-9;           // 8
constexpr double kOutsideStep = 1e-6;          // 8
constexpr double kInsideFeasTol = 1e-12;       // 8

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const Outcome& o, double secs,
            double limit) {
  const bool in_time = limit <= 0.0 || secs < limit;
  const bool ok = o.pass && in_time;
  if (!ok) ++failures;
  std::printf("AC%-2d %s  %s: %s; %.2f s", id, ok ? "PASS" : "FAIL",
              title.c_str(), o.detail.c_str(), secs);
  if (limit > 0.0) std::printf(" (limit %.0f s)", limit);
  std::printf("\n");
  std::fflush(stdout);
}

template <typename F>
void run(int id, const std::string& title, double limit, F&& f) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = f();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  report(id, title, o, seconds_since(start), limit);
}

std::string fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("effradius_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_scratch(const std::string& name, const std::string& text) {
  const fs::path p = scratch_dir() / name;
  std::ofstream(p) << text;
  return p.string();
}

Matrix random_symmetric(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal;
  Matrix s(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) s(i, j) = normal(rng);
  }
  return 0.5 * (s + s.transpose());
}

Vector random_vector(std::mt19937_64& rng, Eigen::Index n, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Vector v(n);
  for (Eigen::Index k = 0; k < n; ++k) v(k) = normal(rng);
  return v;
}

VqfpInstance random_instance(std::mt19937_64& rng, Eigen::Index n, std::size_t m) {
  std::uniform_real_distribution<double> uni(0.5, 1.5);
  VqfpInstance inst;
  inst.n = n;
  for (std::size_t i = 0; i < m; ++i) {
    RatioObjective o;
    o.numerator.A = random_symmetric(rng, n);
    o.numerator.a = random_vector(rng, n);
    o.numerator.a0 = random_vector(rng, 1)(0);
    Matrix r(n, n);
    for (Eigen::Index k = 0; k < n; ++k) r.col(k) = random_vector(rng, n, 0.5);
    const Vector w = random_vector(rng, n);
    o.denominator.A = r * r.transpose();
    o.denominator.a = -2.0 * o.denominator.A * w;
    o.denominator.a0 = w.dot(o.denominator.A * w) + uni(rng);
    inst.objectives.push_back(o);
  }
  return inst;
}

// ---------------------------------------------------------------------------

Outcome ac1() {
  const VqfpInstance inst = example1::instance();
  const std::vector<double> grid = example1::default_grid();
  double worst = 0.0;
  for (double tau : grid) {
    worst = std::max(worst, stationarity_residual(inst, example1::stationary_point(tau),
                                                  vec2(tau, 1.0)));
  }
  return {grid.size() == 64 && worst <= kResidualTol,
          fmt("%zu grid values, max residual %.3g (tol %.0e)", grid.size(), worst,
              kResidualTol)};
}

double analyze_lambda1(const std::string& instance, const std::string& point,
                       const std::string& direction) {
  cli::CommonArgs args;
  args.instance = instance;
  args.point = point;
  std::ostringstream out, err;
  if (cli::run_analyze(args, direction, out, err) != 0) {
    throw std::runtime_error("analyze failed: " + err.str());
  }
  std::istringstream in(out.str());
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  std::vector<std::string> cols, fields;
  std::stringstream hs(header), rs(row);
  for (std::string c; std::getline(hs, c, ',');) cols.push_back(c);
  for (std::string c; std::getline(rs, c, ',');) fields.push_back(c);
  const auto it = std::find(cols.begin(), cols.end(), "lambda1");
  return std::stod(fields.at(static_cast<std::size_t>(it - cols.begin())));
}

Outcome ac2() {
  const VqfpInstance inst = example1::instance();
  const std::string path = write_scratch("ex1.json", instance_json(inst).dump(2));
  const double l_origin = analyze_lambda1(path, "0,0", "1,-2");
  const double l_other = analyze_lambda1(path, "2,-1", "-2,1");
  const double e_origin = std::abs(l_origin - 4.0 * std::sqrt(5.0) / 5.0);
  const double e_other = std::abs(l_other - 2.0 * std::sqrt(5.0));
  const OracleResult o1 = brute_force_dominator(inst, vec2(0, 0), 2.0, kOracleBudget, 1);
  const OracleResult o2 = brute_force_dominator(inst, vec2(2, -1), 5.0, kOracleBudget, 1);
  return {e_origin <= kLambdaTol && e_other <= kLambdaTol && o1.found && o2.found,
          fmt("lambda1 errors %.2g and %.2g (tol %.0e); oracle hits %d/%d", e_origin,
              e_other, kLambdaTol, o1.found, o2.found)};
}

Outcome ac3() {
  const VqfpInstance inst = example1::instance();
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> inside(0.25 + 1e-3, 4.0 - 1e-3);
  std::uniform_real_distribution<double> log_low(std::log(0.01), std::log(0.2));
  std::uniform_real_distribution<double> log_high(std::log(5.0), std::log(100.0));
  int c_ok = 0, c_bad_cert = 0, c_bad_oracle = 0;
  for (int k = 0; k < 200; ++k) {
    const double tau = inside(rng);
    const Vector x = example1::stationary_point(tau);
    const RadiusReport r = certify(inst, x);
    const OracleResult o =
        brute_force_dominator(inst, x, kOracleRadius, kOracleBudget, 1000 + k);
    const bool cert = r.verdict == Verdict::kCertifiedGlobalUpToSampling;
    c_bad_cert += !cert;
    c_bad_oracle += o.found;
    c_ok += cert && !o.found;
  }
  int o_ok = 0, o_bad_cert = 0, o_bad_oracle = 0;
  for (int k = 0; k < 50; ++k) {
    const double tau = std::exp(k % 2 == 0 ? log_low(rng) : log_high(rng));
    const Vector x = example1::stationary_point(tau);
    const RadiusReport r = certify(inst, x);
    const double radius = std::max(kOracleRadius, r.P + 1.0);
    const OracleResult o = brute_force_dominator(inst, x, radius, kOracleBudget, 5000 + k);
    const bool dom = r.verdict == Verdict::kDominatedWithWitness;
    o_bad_cert += !dom;
    o_bad_oracle += !o.found;
    o_ok += dom && o.found;
  }
  return {c_ok == 200 && o_ok == 50,
          fmt("inside %d/200 (certify misses %d, oracle hits %d); outside %d/50 "
              "(certify misses %d, oracle misses %d)",
              c_ok, c_bad_cert, c_bad_oracle, o_ok, o_bad_cert, o_bad_oracle)};
}

Outcome ac4() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> radius_log(std::log(1e-3), std::log(3.0));
  std::size_t compared = 0, disagreements = 0, dominated = 0, gated = 0;
  for (int k = 0; k < 500; ++k) {
    const Eigen::Index n = 1 + k % 4;
    const std::size_t m = 1 + (k / 4) % 4;
    const VqfpInstance inst = random_instance(rng, n, m);
    if (!validate_instance(inst).ok()) {
      return {false, fmt("random instance %d failed validation", k)};
    }
    const Vector xs = random_vector(rng, n);
    const AssociatedModel model = build_associated(inst, xs);
    for (int s = 0; s < 200; ++s) {
      Vector u = random_vector(rng, n);
      u.normalize();
      const Vector x = xs + std::exp(radius_log(rng)) * u;
      bool clear = true;
      for (std::size_t i = 0; i < m && clear; ++i) {
        const double scale = 1.0 + std::abs(eval_form(inst.objectives[i].numerator, x));
        clear = std::abs(p_delta(model, i, x)) > kSignGate * scale;
      }
      if (!clear) {
        ++gated;
        continue;
      }
      ++compared;
      const bool pd = p_dominance(model, x, 0.0);
      const bool rd = dominates(inst, x, xs, 0.0);
      dominated += rd;
      disagreements += pd != rd;
    }
  }
  return {disagreements == 0 && dominated > 0,
          fmt("%zu comparisons (%zu dominated, %zu gated out), %zu disagreements",
              compared, dominated, gated, disagreements)};
}

Outcome ac5() {
  std::mt19937_64 rng(78);
  std::uniform_real_distribution<double> step(0.0, 10.0);
  double worst = 0.0;
  std::size_t count = 0;
  for (int k = 0; k < 10000; ++k) {
    const Eigen::Index n = 1 + k % 4;
    const VqfpInstance inst = random_instance(rng, n, 1 + k % 3);
    const AssociatedModel model = build_associated(inst, random_vector(rng, n));
    Vector d = random_vector(rng, n);
    d.normalize();
    const double lambda = step(rng);
    const std::size_t i = static_cast<std::size_t>(k) % inst.m();
    const double l = model.gradients[i].dot(d);
    const double q = d.dot(model.hessians[i] * d);
    const double lhs = p_delta(model, i, model.base_point + lambda * d);
    const double rhs = lambda * (l + 0.5 * lambda * q);
    worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
    ++count;
  }
  return {worst <= kTaylorTol,
          fmt("%zu tuples, worst scaled error %.3g (tol %.0e)", count, worst, kTaylorTol)};
}

struct BatteryEntry {
  GeneratedInstance g;
  RadiusReport report;
};

const std::vector<BatteryEntry>& battery() {
  static const std::vector<BatteryEntry> entries = [] {
    std::vector<BatteryEntry> out;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      GenerateOptions opt;
      opt.n = 2 + static_cast<Eigen::Index>(seed % 3);
      opt.m = 2 + seed % 2;
      opt.p = seed % 4 == 0 ? 2 : 0;
      if (seed % 5 == 0) opt.box_half_width = 3.0;
      opt.seed = seed;
      BatteryEntry e{generate_instance(opt), {}};
      e.report = certify(e.g.instance, e.g.x_star);
      out.push_back(std::move(e));
    }
    return out;
  }();
  return entries;
}

bool leq(double a, double b) {
  if (std::isinf(b) && b > 0) return true;
  return a <= b + kChainSlack * std::max(1.0, std::abs(b));
}

Outcome ac6() {
  std::size_t full = 0, violations = 0, dominated = 0;
  std::string first;
  for (std::size_t k = 0; k < battery().size(); ++k) {
    const RadiusReport& r = battery()[k].report;
    dominated += r.verdict == Verdict::kDominatedWithWitness;
    if (!r.lower_bound || std::isinf(r.beta) || !r.P_applicable) continue;
    ++full;
    const bool ok = leq(*r.lower_bound, r.beta) && leq(r.beta, r.P) && leq(r.P, r.M);
    if (!ok) {
      ++violations;
      if (first.empty()) {
        first = fmt("; first at seed %zu: %.6g <= %.6g <= %.6g <= %.6g", k + 1,
                    *r.lower_bound, r.beta, r.P, r.M);
      }
    }
  }
  return {violations == 0 && full > 0,
          fmt("%zu reports with every quantity defined (%zu dominated of %zu), "
              "%zu chain violations%s",
              full, dominated, battery().size(), violations, first.c_str())};
}

Outcome ac7() {
  std::size_t checked = 0, inner_hits = 0, outside_shell = 0;
  std::string first;
  for (std::size_t k = 0; k < battery().size(); ++k) {
    const BatteryEntry& e = battery()[k];
    const RadiusReport& r = e.report;
    if (r.verdict != Verdict::kDominatedWithWitness) continue;
    ++checked;
    const double radius = r.beta * (1.0 - kBetaShrink);
    if (radius > 0.0) {
      const OracleResult o = brute_force_dominator(e.g.instance, e.g.x_star, radius,
                                                   kOracleBudget, 900 + k);
      if (o.found) {
        ++inner_hits;
        if (first.empty()) {
          first = fmt("; seed %zu: dominator at %.6g < beta %.6g", k + 1, *o.distance,
                      r.beta);
        }
      }
    }
    const double dist = (*r.witness - e.g.x_star).norm();
    if (dist < r.beta * (1.0 - kShellSlack) || dist > r.P + kShellSlack) ++outside_shell;
  }
  return {inner_hits == 0 && outside_shell == 0 && checked > 0,
          fmt("%zu dominated reports, %zu with an oracle hit inside beta, %zu witnesses "
              "outside the shell%s",
              checked, inner_hits, outside_shell, first.c_str())};
}

Outcome ac8() {
  std::size_t directions = 0, finite = 0, bad_inside = 0, bad_outside = 0, bad_cone = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    GenerateOptions opt;
    opt.n = 2 + static_cast<Eigen::Index>(seed % 3);
    opt.m = 2;
    opt.p = 2 + seed % 5;
    opt.box_half_width = 1.0 + static_cast<double>(seed % 3);
    opt.seed = 10000 + seed;
    const GeneratedInstance g = generate_instance(opt);
    SweepConfig cfg;
    cfg.seed = seed;
    cfg.num_directions = 512;
    cfg.grid_angles = 4096;
    const auto profiles = sweep(g.instance, g.x_star, cfg);
    for (const DirectionProfile& p : profiles) {
      ++directions;
      if (!in_tangent_cone(g.instance, g.x_star, p.d)) ++bad_cone;
      if (std::isinf(p.lambda_limit)) continue;
      ++finite;
      const Vector in = g.x_star + (p.lambda_limit - kInsideStep) * p.d;
      const Vector out = g.x_star + (p.lambda_limit + kOutsideStep) * p.d;
      if (!is_feasible(g.instance, in, kInsideFeasTol)) ++bad_inside;
      if (is_feasible(g.instance, out, 0.0)) ++bad_outside;
    }
  }
  return {bad_inside == 0 && bad_outside == 0 && bad_cone == 0 && finite > 0,
          fmt("%zu directions (%zu finite limits): %zu infeasible inside, %zu feasible "
              "outside, %zu outside the tangent cone",
              directions, finite, bad_inside, bad_outside, bad_cone)};
}

Outcome ac9() {
  std::size_t certified = 0, witnesses = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GenerateOptions opt;
    opt.n = 2 + static_cast<Eigen::Index>(seed % 3);
    opt.m = 1 + seed % 3;
    opt.convex = true;
    opt.seed = 500 + seed;
    const GeneratedInstance g = generate_instance(opt);
    const RadiusReport r = certify(g.instance, g.x_star);
    certified += r.verdict == Verdict::kCertifiedGlobalUpToSampling;
    witnesses += r.witness.has_value();
  }
  return {certified == 20 && witnesses == 0,
          fmt("%zu/20 certified, %zu witnesses", certified, witnesses)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome ac10() {
  GenerateOptions opt;
  opt.n = 3;
  opt.m = 3;
  opt.p = 2;
  opt.seed = 99;
  const GeneratedInstance g = generate_instance(opt);
  const std::vector<std::pair<std::string, std::string>> cases = {
      {write_scratch("det_ex1.json", instance_json(example1::instance()).dump()),
       "--point=-0.10526315789473684,4"},
      {write_scratch("det_gen.json", instance_json(g.instance, g.x_star).dump()), ""}};
  std::size_t identical = 0;
  std::string detail;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    std::string texts[2];
    for (int run_id = 0; run_id < 2; ++run_id) {
      const fs::path out = scratch_dir() / fmt("det_%zu_%d.json", c, run_id);
      const std::string cmd = std::string("\"") + EFFRADIUS_CLI_PATH +
                              "\" certify --instance \"" + cases[c].first + "\" " +
                              cases[c].second +
                              " --seed 7 --threads 4 --out \"" + out.string() +
                              "\" > /dev/null 2>&1";
      const int status = std::system(cmd.c_str());
      if (status == -1) return {false, "could not spawn the command-line binary"};
      texts[run_id] = slurp(out);
    }
    if (!texts[0].empty() && texts[0] == texts[1]) ++identical;
  }
  return {identical == cases.size(),
          fmt("%zu/%zu report pairs byte-identical with 4 worker threads", identical,
              cases.size())};
}

}  // namespace

int main() {
  run(1, "stationarity along the weighted branch", 1.0, ac1);
  run(2, "origin and (2,-1) are not locally efficient", 5.0, ac2);
  run(3, "central branch certified, outer branches dominated", 300.0, ac3);
  run(4, "p-dominance matches ratio dominance", 30.0, ac4);
  run(5, "second-order expansion of p along rays", 10.0, ac5);
  run(6, "bound chain rho/(-gamma) <= beta <= P <= M", 0.0, ac6);
  run(7, "no dominator inside beta; witness inside the shell", 0.0, ac7);
  run(8, "limiting step and tangent cone on polytopes", 0.0, ac8);
  run(9, "convex instances certify through the PSD shortcut", 0.0, ac9);
  run(10, "reports are byte-identical across runs", 0.0, ac10);
  std::error_code ec;
  fs::remove_all(scratch_dir(), ec);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
