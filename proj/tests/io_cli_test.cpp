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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "effradius/commands.hpp"

namespace effradius {
namespace {

namespace fs = std::filesystem;

std::string temp_path(const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / "effradius_io";
  fs::create_directories(dir);
  return (dir / name).string();
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = temp_path(name);
  std::ofstream(path) << text;
  return path;
}

std::string example1_file() {
  return write_temp("ex1.json",
                    instance_json(example1::instance()).dump(2));
}

TEST(InstanceIo, RoundTrip) {
  GenerateOptions opt;
  opt.n = 3;
  opt.m = 2;
  opt.p = 3;
  opt.seed = 4;
  const GeneratedInstance g = generate_instance(opt);
  const std::string text = instance_json(g.instance, g.x_star).dump();
  const InstanceDocument doc = parse_instance(text);
  EXPECT_EQ(instance_json(doc.instance, doc.x_star).dump(), text);
  ASSERT_TRUE(doc.x_star.has_value());
  EXPECT_EQ(*doc.x_star, g.x_star);
}

TEST(InstanceIo, OmittedDenominatorMeansOne) {
  const InstanceDocument doc = parse_instance(
      R"({"n": 2, "objectives": [{"A": [[4, 0], [0, -1]], "a": [0, 0], "a0": 0}]})");
  const RatioObjective& o = doc.instance.objectives[0];
  EXPECT_TRUE(o.denominator.A.isZero());
  EXPECT_TRUE(o.denominator.a.isZero());
  EXPECT_EQ(o.denominator.a0, 1.0);
  EXPECT_FALSE(doc.instance.constrained());
  EXPECT_TRUE(validate_instance(doc.instance).ok());
}

TEST(InstanceIo, MalformedDocuments) {
  for (const char* bad : {"{", "[]", R"({"n": 2})",
                          R"({"n": 2, "objectives": [{"A": [[1, 0], [0]]}]})",
                          R"({"n": 2, "objectives": [{"A": [[1, "x"], [0, 1]]}]})",
                          R"({"n": 2, "objectives": [{}]})"}) {
    try {
      parse_instance(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kParseError) << bad;
    }
  }
}

TEST(ReportIo, KeysAndInfinity) {
  RadiusReport r;
  r.gamma = -2.0;
  const Json j = report_json(r);
  for (const char* key : {"beta", "beta_direction", "P", "rho", "gamma",
                          "lower_bound", "M", "verdict", "witness",
                          "diagnostics", "seed", "num_directions"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  for (const char* key : {"x0_hits", "empty_interval", "cond1", "cond2"}) {
    EXPECT_TRUE(j["diagnostics"].contains(key)) << key;
  }
  EXPECT_EQ(j["beta"], "inf");
  EXPECT_TRUE(j["rho"].is_null());
  EXPECT_EQ(j["gamma"], -2.0);
  EXPECT_EQ(j["verdict"], "Inconclusive");
}

TEST(ParsePoint, Values) {
  const Vector v = parse_point("1.5, -2,3e-1");
  ASSERT_EQ(v.size(), 3);
  EXPECT_EQ(v(2), 0.3);
  EXPECT_THROW(parse_point("1,,2"), Error);
  EXPECT_THROW(parse_point("abc"), Error);
  EXPECT_THROW(parse_point(""), Error);
}

TEST(AtomicWrite, ReplacesContents) {
  const std::string path = temp_path("atomic.txt");
  write_file_atomic(path, "one");
  write_file_atomic(path, "two");
  std::ifstream in(path);
  std::string s;
  in >> s;
  EXPECT_EQ(s, "two");
  EXPECT_FALSE(fs::exists(path + ".tmp"));
}

TEST(Validate, ExitCodes) {
  std::ostringstream out, err;
  EXPECT_EQ(cli::run_validate(example1_file(), out, err), 0);
  EXPECT_NE(out.str().find("valid"), std::string::npos);

  const std::string asym = write_temp(
      "asym.json",
      R"({"n": 2, "objectives": [{"A": [[1, 0], [0, 1]]}, {"A": [[1, 2], [0, 1]]}]})");
  std::ostringstream out2;
  EXPECT_EQ(cli::run_validate(asym, out2, err), 1);
  EXPECT_NE(out2.str().find("objective 2"), std::string::npos);

  const std::string bad = write_temp("bad.json", "{\"n\": ");
  EXPECT_EQ(cli::run_validate(bad, out, err), 2);
  EXPECT_EQ(cli::run_validate(temp_path("missing.json"), out, err), 2);
}

TEST(Analyze, ReferenceDirections) {
  cli::CommonArgs args;
  args.instance = example1_file();
  args.point = "0,0";
  std::ostringstream out, err;
  ASSERT_EQ(cli::run_analyze(args, "1,-2", out, err), 0) << err.str();
  EXPECT_NE(out.str().find("Neutral"), std::string::npos);
  EXPECT_NE(out.str().find("X1"), std::string::npos);
  EXPECT_NE(out.str().find(format_double(1.7888543819998322)), std::string::npos);

  std::ostringstream zero_err;
  EXPECT_EQ(cli::run_analyze(args, "0,0", out, zero_err), 1);
  EXPECT_NE(zero_err.str().find("zero direction"), std::string::npos);

  VqfpInstance cut = example1::instance();
  Matrix c(1, 2);
  c << 1, 0;
  cut.constraints = LinearConstraints{c, Vector::Constant(1, -1.0)};
  args.instance = write_temp("cut.json", instance_json(cut).dump());
  EXPECT_EQ(cli::run_analyze(args, "1,0", out, err), 1);
}

TEST(Certify, ExitCodesAndWarning) {
  cli::CertifyArgs args;
  args.instance = example1_file();
  args.out = temp_path("report.json");
  std::ostringstream out, err;
  args.point = "-0.6666666666666666,-1.3333333333333333";
  EXPECT_EQ(cli::run_certify(args, out, err), 0) << err.str();
  EXPECT_TRUE(fs::exists(args.out));
  EXPECT_TRUE(err.str().empty());

  args.point = "-0.10526315789473684,4";
  std::ostringstream out_b;
  EXPECT_EQ(cli::run_certify(args, out_b, err), 3);
  EXPECT_NE(out_b.str().find("witness:"), std::string::npos);

  args.point = "0,0";
  std::ostringstream err0;
  EXPECT_EQ(cli::run_certify(args, out, err0), 3);
  EXPECT_NE(err0.str().find("not locally efficient"), std::string::npos);

  args.point.reset();
  EXPECT_EQ(cli::run_certify(args, out, err), 1);
}

TEST(Certify, ReportFileIsReproducible) {
  cli::CertifyArgs args;
  args.instance = example1_file();
  args.point = "-0.10526315789473684,4";
  args.local_check = false;
  std::ostringstream out, err;
  args.out = temp_path("r1.json");
  cli::run_certify(args, out, err);
  args.out = temp_path("r2.json");
  cli::run_certify(args, out, err);
  std::ifstream a(temp_path("r1.json")), b(temp_path("r2.json"));
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());
  const Json j = Json::parse(sa.str());
  EXPECT_EQ(j["verdict"], "DominatedWithWitness");
}

TEST(Oracle, ExitCodes) {
  cli::OracleArgs args;
  args.instance = example1_file();
  args.point = "0,0";
  args.radius = 1.0;
  args.budget = 20000;
  args.weights = "1,1";
  std::ostringstream out, err;
  EXPECT_EQ(cli::run_oracle(args, out, err), 3) << err.str();
  const Json j = Json::parse(out.str());
  EXPECT_TRUE(j["found"].get<bool>());
  EXPECT_TRUE(j.contains("stationarity_residual"));

  args.point = "-0.6666666666666666,-1.3333333333333333";
  std::ostringstream out2;
  EXPECT_EQ(cli::run_oracle(args, out2, err), 0);
}

TEST(Example1, RowsAndFiles) {
  cli::Example1Args args;
  args.tau_grid = "1,5,0.3";
  args.out = temp_path("ex1_out");
  args.budget = 20000;
  const auto rows = cli::example1_rows(args);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_NEAR(rows[0].x1, -2.0 / 3, 1e-15);
  EXPECT_NEAR(rows[0].x2, -4.0 / 3, 1e-15);
  EXPECT_EQ(rows[0].branch, 'C');
  EXPECT_LE(rows[0].residual, 1e-12);
  EXPECT_TRUE(rows[0].certified_global);
  EXPECT_NEAR(rows[1].x1, -2.0 / 19, 1e-15);
  EXPECT_NEAR(rows[1].x2, 4.0, 1e-15);
  EXPECT_NE(rows[1].branch, 'C');
  EXPECT_TRUE(rows[1].local);
  EXPECT_FALSE(rows[1].certified_global);
  EXPECT_EQ(rows[2].branch, 'C');

  std::ostringstream out, err;
  ASSERT_EQ(cli::run_example1(args, out, err), 0) << err.str();
  std::ifstream in(fs::path(args.out) / "branches.csv");
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "tau,x1,x2,f1,f2,branch,residual,local,certified_global");
  std::ifstream curve(fs::path(args.out) / "pareto_curve.csv");
  std::getline(curve, header);
  EXPECT_EQ(header, "tau,branch,f1,f2");
}

TEST(Example1, GridParsing) {
  const auto grid = example1::parse_grid("");
  ASSERT_EQ(grid.size(), 64u);
  EXPECT_GT(grid.front(), 1e-2);
  EXPECT_LT(grid.back(), 1e2);
  for (double t : grid) EXPECT_FALSE(example1::near_pole(t));
  EXPECT_EQ(example1::parse_grid("log:0.1:10:5").size(), 5u);
  EXPECT_EQ(example1::parse_grid("0.25,4,1").size(), 1u);
  EXPECT_THROW(example1::parse_grid("-1"), Error);
  EXPECT_THROW(example1::parse_grid("log:1:2"), Error);
  EXPECT_EQ(example1::branch_label(0.1), 'A');
  EXPECT_EQ(example1::branch_label(0.3), 'C');
  EXPECT_EQ(example1::branch_label(3.9), 'C');
  EXPECT_EQ(example1::branch_label(4.5), 'B');
}

TEST(Generate, ValidatesAndIsDeterministic) {
  cli::GenerateArgs args;
  args.options.n = 2;
  args.options.m = 2;
  args.options.p = 0;
  args.options.seed = 7;
  args.out = temp_path("gen1.json");
  std::ostringstream out, err;
  ASSERT_EQ(cli::run_generate(args, out, err), 0);
  std::ostringstream vout;
  EXPECT_EQ(cli::run_validate(args.out, vout, err), 0);
  std::ostringstream a, b;
  cli::run_generate({args.options, ""}, a, err);
  cli::run_generate({args.options, ""}, b, err);
  EXPECT_EQ(a.str(), b.str());
  std::ifstream file(args.out);
  std::stringstream fs_text;
  fs_text << file.rdbuf();
  EXPECT_EQ(fs_text.str(), a.str());
}

TEST(Generate, ConvexNumeratorsArePsd) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GenerateOptions opt;
    opt.n = 1 + static_cast<Eigen::Index>(seed % 4);
    opt.m = 1 + seed % 3;
    opt.convex = true;
    opt.seed = seed;
    const GeneratedInstance g = generate_instance(opt);
    ASSERT_TRUE(validate_instance(g.instance).ok());
    for (const auto& o : g.instance.objectives) {
      EXPECT_GE(smallest_eigenvalue(o.numerator.A), -1e-12);
    }
  }
}

TEST(Generate, IndefiniteAndConstrainedInstancesValidate) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    GenerateOptions opt;
    opt.n = 1 + static_cast<Eigen::Index>(seed % 4);
    opt.m = 1 + seed % 4;
    opt.p = seed % 5;
    opt.seed = seed;
    if (seed % 3 == 0) opt.box_half_width = 2.0;
    const GeneratedInstance g = generate_instance(opt);
    ASSERT_TRUE(validate_instance(g.instance).ok()) << seed;
    EXPECT_TRUE(is_feasible(g.instance, g.x_star, 0.0)) << seed;
    const std::size_t active = active_set(g.instance, g.x_star).size();
    EXPECT_EQ(active, std::min<std::size_t>((opt.p + 1) / 2,
                                            static_cast<std::size_t>(opt.n)));
  }
}

}  // namespace
}  // namespace effradius
