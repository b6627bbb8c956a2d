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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "effradius/commands.hpp"

namespace {

void add_common(CLI::App* cmd, effradius::cli::CommonArgs& a, bool point) {
  cmd->add_option("--instance", a.instance, "instance document")->required();
  if (point) {
    cmd->add_option("--point", a.point, "base point \"v1,v2,...\" (default: x_star)");
  }
  cmd->add_option("--seed", a.seed, "random seed");
  cmd->add_option("--budget", a.budget, "oracle sample budget");
  cmd->add_option("--tol", a.tol, "classification tolerance");
  cmd->add_option("--out", a.out, "output path");
  cmd->add_option("--threads", a.threads, "worker threads (0 = all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = effradius::cli;
  CLI::App app{"Radius of efficiency for vector quadratic fractional programs"};
  app.require_subcommand(1);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "check an instance document");
  validate->add_option("--instance", validate_path, "instance document")->required();

  cli::CommonArgs analyze_args;
  std::string direction;
  auto* analyze = app.add_subcommand("analyze", "classify one direction");
  add_common(analyze, analyze_args, true);
  analyze->add_option("--direction", direction, "direction \"v1,...\"")->required();

  cli::CertifyArgs certify_args;
  bool no_local = false;
  auto* certify = app.add_subcommand("certify", "sweep directions and certify");
  add_common(certify, certify_args, true);
  certify->add_option("--dirs", certify_args.dirs, "random directions (default 4096 n)");
  certify->add_option("--grid", certify_args.grid_angles, "extra angles when n = 2");
  certify->add_option("--diam", certify_args.diam, "upper bound on diam(S)");
  certify->add_flag("--no-local-check", no_local, "skip the oracle local check");

  cli::OracleArgs oracle_args;
  bool no_lattice = false;
  auto* oracle = app.add_subcommand("oracle", "brute-force dominator search");
  add_common(oracle, oracle_args, true);
  oracle->add_option("--radius", oracle_args.radius, "search radius");
  oracle->add_option("--weights", oracle_args.weights,
                     "also report the stationarity residual for these weights");
  oracle->add_flag("--no-lattice", no_lattice, "random samples only");

  cli::Example1Args ex_args;
  auto* ex = app.add_subcommand("example1", "tabulate the reference problem");
  ex->add_option("--tau-grid", ex_args.tau_grid, "\"t1,t2,...\" or \"log:LO:HI:N\"");
  ex->add_option("--out", ex_args.out, "output directory")->required();
  ex->add_option("--dirs", ex_args.dirs, "random directions per certify");
  ex->add_option("--grid", ex_args.grid_angles, "extra angles per certify");
  ex->add_option("--seed", ex_args.seed, "random seed");
  ex->add_option("--budget", ex_args.budget, "oracle sample budget");
  ex->add_option("--tol", ex_args.tol, "classification tolerance");
  ex->add_option("--threads", ex_args.threads, "worker threads");

  cli::GenerateArgs gen_args;
  std::size_t n = 2;
  bool convex = false;
  auto* gen = app.add_subcommand("generate", "random instance with a known point");
  gen->add_option("-n,--n", n, "dimension");
  gen->add_option("-m,--m", gen_args.options.m, "objectives");
  gen->add_option("-p,--p", gen_args.options.p, "random constraint rows");
  gen->add_option("--seed", gen_args.options.seed, "random seed");
  gen->add_option("--box", gen_args.options.box_half_width, "box half-width around x_star");
  gen->add_flag("--convex,!--indefinite", convex, "PSD numerators");
  gen->add_option("--out", gen_args.out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitParse;
  }

  if (*validate) return cli::run_validate(validate_path, std::cout, std::cerr);
  if (*analyze) return cli::run_analyze(analyze_args, direction, std::cout, std::cerr);
  if (*certify) {
    certify_args.local_check = !no_local;
    return cli::run_certify(certify_args, std::cout, std::cerr);
  }
  if (*oracle) {
    oracle_args.lattice = !no_lattice;
    return cli::run_oracle(oracle_args, std::cout, std::cerr);
  }
  if (*ex) return cli::run_example1(ex_args, std::cout, std::cerr);
  if (*gen) {
    gen_args.options.n = static_cast<Eigen::Index>(n);
    gen_args.options.convex = convex;
    return cli::run_generate(gen_args, std::cout, std::cerr);
  }
  return cli::kExitParse;
}
