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

// Subcommand bodies shared by the executable and the tests. Each returns
// the process exit code:
//   0 pass / certified, 1 validation failure or bad input, 2 parse error,
//   3 dominated (or oracle hit), 4 inconclusive.

#ifndef EFFRADIUS_COMMANDS_HPP_
#define EFFRADIUS_COMMANDS_HPP_

#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "effradius/associated.hpp"
#include "effradius/core.hpp"
#include "effradius/directional.hpp"
#include "effradius/errors.hpp"
#include "effradius/example1.hpp"
#include "effradius/format.hpp"
#include "effradius/generate.hpp"
#include "effradius/io.hpp"
#include "effradius/oracle.hpp"
#include "effradius/radius.hpp"

namespace effradius::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitDominated = 3;
inline constexpr int kExitInconclusive = 4;

struct CommonArgs {
  std::string instance;
  std::optional<std::string> point;
  std::size_t dirs = 0;
  std::uint64_t seed = 1;
  std::size_t budget = 100000;
  double tol = kClassifyEps;
  std::string out;
  unsigned threads = 0;
};

namespace internal {

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::kParseError ? kExitParse : kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}

inline Vector resolve_point(const InstanceDocument& doc,
                            const std::optional<std::string>& point) {
  Vector x = point ? parse_point(*point)
                   : doc.x_star.value_or(Vector());
  if (x.size() == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "no --point given and the instance has no x_star");
  }
  if (x.size() != doc.instance.n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "point has " + std::to_string(x.size()) +
                    " entries, instance has n = " +
                    std::to_string(doc.instance.n));
  }
  return x;
}

inline void emit(const std::string& path, const std::string& text,
                 std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_file_atomic(path, text);
  }
}

inline std::string vector_text(const Vector& v) {
  std::string s;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (k) s += ',';
    s += format_double(v(k));
  }
  return s;
}

}  // namespace internal

inline int run_validate(const std::string& path, std::ostream& out,
                        std::ostream& err) {
  return internal::guarded(err, [&] {
    const InstanceDocument doc = load_instance(path);
    const ValidationReport report = validate_instance(doc.instance);
    for (const ValidationCheck& c : report.checks) {
      out << (c.passed ? "PASS " : "FAIL ") << c.subject << ": " << c.name;
      if (!c.passed && !c.message.empty()) out << " -- " << c.message;
      out << '\n';
    }
    if (const ValidationCheck* bad = report.first_failure()) {
      out << "invalid: " << bad->message << '\n';
      return kExitInvalid;
    }
    out << "valid\n";
    return kExitOk;
  });
}

inline int run_analyze(const CommonArgs& args, const std::string& direction,
                       std::ostream& out, std::ostream& err) {
  return internal::guarded(err, [&] {
    const InstanceDocument doc = load_instance(args.instance);
    require_valid(doc.instance);
    const Vector x = internal::resolve_point(doc, args.point);
    Vector d = parse_point(direction);
    if (d.size() != doc.instance.n) {
      throw Error(ErrorCode::kDimensionMismatch, "direction has wrong length");
    }
    const double norm = d.norm();
    if (norm == 0.0) throw Error(ErrorCode::kZeroDirection, "zero direction");
    d /= norm;
    const AssociatedModel model = build_associated(doc.instance, x);
    const DirectionProfile p = analyze_direction(model, d, args.tol);
    std::ostringstream csv;
    write_profile_csv_header(csv, doc.instance.n);
    write_profile_csv_rows(csv, p);
    internal::emit(args.out, csv.str(), out);
    if (!args.out.empty()) out << csv.str();
    return kExitOk;
  });
}

struct CertifyArgs : CommonArgs {
  std::optional<double> diam;
  std::size_t grid_angles = 100000;
  bool local_check = true;
};

inline SweepConfig sweep_config(const CertifyArgs& args) {
  SweepConfig cfg;
  cfg.num_directions = args.dirs;
  cfg.seed = args.seed;
  cfg.eps = args.tol;
  cfg.oracle_budget = args.budget;
  cfg.grid_angles = args.grid_angles;
  cfg.threads = args.threads;
  cfg.diam_override = args.diam;
  return cfg;
}

inline int run_certify(const CertifyArgs& args, std::ostream& out,
                       std::ostream& err) {
  return internal::guarded(err, [&] {
    const InstanceDocument doc = load_instance(args.instance);
    require_valid(doc.instance);
    const Vector x = internal::resolve_point(doc, args.point);
    if (!is_feasible(doc.instance, x, kFeasibilityTol)) {
      throw Error(ErrorCode::kInfeasibleBasePoint, "point is infeasible");
    }
    if (args.local_check &&
        !local_efficiency_check(doc.instance, x, 1e-3, args.budget, args.seed)) {
      err << "warning: point is not locally efficient "
             "(the oracle found a dominator within radius 1e-3)\n";
    }
    const RadiusReport report = certify(doc.instance, x, sweep_config(args));
    const std::string text = report_json(report).dump(2) + "\n";
    internal::emit(args.out, text, out);
    out << "verdict: " << to_string(report.verdict) << '\n';
    if (report.witness) {
      out << "witness: " << internal::vector_text(*report.witness) << '\n';
    }
    switch (report.verdict) {
      case Verdict::kCertifiedGlobalUpToSampling: return kExitOk;
      case Verdict::kDominatedWithWitness: return kExitDominated;
      case Verdict::kInconclusive: return kExitInconclusive;
    }
    return kExitInconclusive;
  });
}

struct OracleArgs : CommonArgs {
  double radius = 10.0;
  std::optional<std::string> weights;
  bool lattice = true;
};

inline int run_oracle(const OracleArgs& args, std::ostream& out,
                      std::ostream& err) {
  return internal::guarded(err, [&] {
    const InstanceDocument doc = load_instance(args.instance);
    require_valid(doc.instance);
    const Vector x = internal::resolve_point(doc, args.point);
    if (!(args.radius > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "radius must be positive");
    }
    OracleOptions options;
    options.lattice = args.lattice;
    options.threads = args.threads;
    const OracleResult r = brute_force_dominator(doc.instance, x, args.radius,
                                                 args.budget, args.seed, options);
    Json j = oracle_json(r);
    if (args.weights) {
      j["stationarity_residual"] =
          stationarity_residual(doc.instance, x, parse_point(*args.weights));
    }
    internal::emit(args.out, j.dump(2) + "\n", out);
    if (!args.out.empty()) {
      out << (r.found ? "dominator found" : "no dominator found") << '\n';
    }
    return r.found ? kExitDominated : kExitOk;
  });
}

struct Example1Args : CommonArgs {
  std::string tau_grid;
  std::size_t grid_angles = 100000;
};

inline std::vector<example1::Row> example1_rows(const Example1Args& args) {
  const VqfpInstance inst = example1::instance();
  CertifyArgs cargs;
  static_cast<CommonArgs&>(cargs) = args;
  cargs.grid_angles = args.grid_angles;
  const SweepConfig cfg = sweep_config(cargs);
  std::vector<example1::Row> rows;
  for (double tau : example1::parse_grid(args.tau_grid)) {
    example1::Row row;
    row.tau = tau;
    const Vector x = example1::stationary_point(tau);
    row.x1 = x(0);
    row.x2 = x(1);
    const Vector f = ratio_values(inst, x);
    row.f1 = f(0);
    row.f2 = f(1);
    row.branch = example1::branch_label(tau);
    Vector w(2);
    w << tau, 1.0;
    row.residual = stationarity_residual(inst, x, w);
    row.local = local_efficiency_check(inst, x, 1e-3, args.budget, args.seed);
    row.certified_global = certify(inst, x, cfg).verdict ==
                           Verdict::kCertifiedGlobalUpToSampling;
    rows.push_back(row);
  }
  return rows;
}

inline int run_example1(const Example1Args& args, std::ostream& out,
                        std::ostream& err) {
  return internal::guarded(err, [&] {
    if (args.out.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "--out DIR is required");
    }
    const std::vector<example1::Row> rows = example1_rows(args);
    const std::filesystem::path dir(args.out);
    std::filesystem::create_directories(dir);
    std::ostringstream branches, pareto;
    example1::write_branches_csv(branches, rows);
    example1::write_pareto_csv(pareto, rows);
    write_file_atomic((dir / "branches.csv").string(), branches.str());
    write_file_atomic((dir / "pareto_curve.csv").string(), pareto.str());
    out << "wrote " << rows.size() << " rows to " << dir.string() << '\n';
    return kExitOk;
  });
}

struct GenerateArgs {
  GenerateOptions options;
  std::string out;
};

inline int run_generate(const GenerateArgs& args, std::ostream& out,
                        std::ostream& err) {
  return internal::guarded(err, [&] {
    const GeneratedInstance g = generate_instance(args.options);
    internal::emit(args.out, instance_json(g.instance, g.x_star).dump(2) + "\n",
                   out);
    return kExitOk;
  });
}

}  // namespace effradius::cli

#endif  // EFFRADIUS_COMMANDS_HPP_
