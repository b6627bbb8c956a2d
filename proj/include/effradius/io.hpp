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

// Instance documents, report documents and file helpers.
//
// Instance: {"n": 2,
//            "objectives": [{"A": [[...]], "a": [...], "a0": 0,
//                            "B": [[...]], "b": [...], "b0": 1}, ...],
//            "constraints": {"C": [[...]], "b": [...]},   (optional)
//            "x_star": [...]}                               (optional)
// Omitted B, b, b0 encode g = 1. Scalars that may be +inf are written as
// the string "inf"; absent values are null.

#ifndef EFFRADIUS_IO_HPP_
#define EFFRADIUS_IO_HPP_

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "effradius/core.hpp"
#include "effradius/oracle.hpp"
#include "effradius/radius.hpp"

namespace effradius {

using Json = nlohmann::ordered_json;

struct InstanceDocument {
  VqfpInstance instance;
  std::optional<Vector> x_star;
};

namespace internal {

[[noreturn]] inline void parse_fail(const std::string& what) {
  throw Error(ErrorCode::kParseError, what);
}

inline double read_number(const Json& j, const std::string& where) {
  if (!j.is_number()) parse_fail(where + " must be a number");
  return j.get<double>();
}

inline Vector read_vector(const Json& j, const std::string& where) {
  if (!j.is_array()) parse_fail(where + " must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    v(static_cast<Eigen::Index>(k)) =
        read_number(j[k], where + "[" + std::to_string(k) + "]");
  }
  return v;
}

inline Matrix read_matrix(const Json& j, const std::string& where) {
  if (!j.is_array()) parse_fail(where + " must be an array of rows");
  if (j.empty()) return Matrix(0, 0);
  if (!j[0].is_array()) parse_fail(where + " rows must be arrays");
  const std::size_t cols = j[0].size();
  Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string row_where = where + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols) {
      parse_fail(row_where + " has the wrong length");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          read_number(j[r][c], row_where);
    }
  }
  return m;
}

inline Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

inline Json matrix_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

inline Json scalar_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline Json optional_json(const std::optional<double>& v) {
  return v ? scalar_json(*v) : Json(nullptr);
}

inline Json optional_json(const std::optional<Vector>& v) {
  return v ? vector_json(*v) : Json(nullptr);
}

}  // namespace internal

inline InstanceDocument parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    internal::parse_fail(std::string("malformed document: ") + e.what());
  }
  if (!j.is_object()) internal::parse_fail("top level must be an object");
  if (!j.contains("n") || !j["n"].is_number_integer()) {
    internal::parse_fail("\"n\" must be an integer");
  }
  if (!j.contains("objectives") || !j["objectives"].is_array()) {
    internal::parse_fail("\"objectives\" must be an array");
  }
  InstanceDocument doc;
  VqfpInstance& inst = doc.instance;
  inst.n = j["n"].get<Eigen::Index>();
  const Eigen::Index n = std::max<Eigen::Index>(inst.n, 0);
  std::size_t idx = 0;
  for (const Json& o : j["objectives"]) {
    const std::string where = "objectives[" + std::to_string(idx++) + "]";
    if (!o.is_object()) internal::parse_fail(where + " must be an object");
    if (!o.contains("A")) internal::parse_fail(where + " needs \"A\"");
    RatioObjective obj;
    obj.numerator.A = internal::read_matrix(o["A"], where + ".A");
    obj.numerator.a = o.contains("a") ? internal::read_vector(o["a"], where + ".a")
                                      : Vector::Zero(n);
    obj.numerator.a0 = o.contains("a0") ? internal::read_number(o["a0"], where + ".a0")
                                        : 0.0;
    obj.denominator.A = o.contains("B") ? internal::read_matrix(o["B"], where + ".B")
                                        : Matrix::Zero(n, n);
    obj.denominator.a = o.contains("b") ? internal::read_vector(o["b"], where + ".b")
                                        : Vector::Zero(n);
    obj.denominator.a0 = o.contains("b0") ? internal::read_number(o["b0"], where + ".b0")
                                          : 1.0;
    inst.objectives.push_back(std::move(obj));
  }
  if (j.contains("constraints") && !j["constraints"].is_null()) {
    const Json& c = j["constraints"];
    if (!c.is_object() || !c.contains("C") || !c.contains("b")) {
      internal::parse_fail("\"constraints\" needs \"C\" and \"b\"");
    }
    LinearConstraints lc;
    lc.C = internal::read_matrix(c["C"], "constraints.C");
    lc.b = internal::read_vector(c["b"], "constraints.b");
    if (lc.C.rows() == 0) lc.C.resize(0, n);
    inst.constraints = std::move(lc);
  }
  if (j.contains("x_star") && !j["x_star"].is_null()) {
    doc.x_star = internal::read_vector(j["x_star"], "x_star");
  }
  return doc;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline InstanceDocument load_instance(const std::string& path) {
  return parse_instance(read_file(path));
}

inline Json instance_json(const VqfpInstance& inst,
                          const std::optional<Vector>& x_star = std::nullopt) {
  using internal::matrix_json;
  using internal::vector_json;
  Json j;
  j["n"] = inst.n;
  Json objs = Json::array();
  for (const RatioObjective& o : inst.objectives) {
    Json jo;
    jo["A"] = matrix_json(o.numerator.A);
    jo["a"] = vector_json(o.numerator.a);
    jo["a0"] = o.numerator.a0;
    jo["B"] = matrix_json(o.denominator.A);
    jo["b"] = vector_json(o.denominator.a);
    jo["b0"] = o.denominator.a0;
    objs.push_back(std::move(jo));
  }
  j["objectives"] = std::move(objs);
  if (inst.constraints) {
    j["constraints"] = {{"C", matrix_json(inst.constraints->C)},
                        {"b", vector_json(inst.constraints->b)}};
  }
  if (x_star) j["x_star"] = vector_json(*x_star);
  return j;
}

inline Json report_json(const RadiusReport& r) {
  using internal::optional_json;
  using internal::scalar_json;
  Json j;
  j["beta"] = scalar_json(r.beta);
  j["beta_direction"] = optional_json(r.beta_direction);
  j["P"] = scalar_json(r.P);
  j["rho"] = optional_json(r.rho);
  j["gamma"] = optional_json(r.gamma);
  j["lower_bound"] = optional_json(r.lower_bound);
  j["M"] = scalar_json(r.M);
  j["verdict"] = to_string(r.verdict);
  j["witness"] = optional_json(r.witness);
  const SweepDiagnostics& d = r.diagnostics;
  j["diagnostics"] = {{"x0_hits", d.x0_hits},
                      {"empty_interval", d.empty_interval},
                      {"cond1", d.cond1},
                      {"cond2", d.cond2},
                      {"descent", d.descent},
                      {"dominating", d.dominating},
                      {"profiles", d.profiles},
                      {"psd_shortcut", d.psd_shortcut},
                      {"witness_verification_failed",
                       d.witness_verification_failed}};
  j["seed"] = r.seed;
  j["num_directions"] = r.num_directions;
  j["P_applicable"] = r.P_applicable;
  j["alpha"] = optional_json(r.alpha);
  j["diam_S"] = scalar_json(r.diam_s);
  return j;
}

inline Json oracle_json(const OracleResult& r) {
  Json j;
  j["found"] = r.found;
  j["witness"] = internal::optional_json(r.witness);
  j["distance"] = internal::optional_json(r.distance);
  j["samples_used"] = r.samples_used;
  j["seed"] = r.seed;
  return j;
}

/// Writes through a temporary file in the same directory, then renames.
inline void write_file_atomic(const std::string& path,
                              const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
    out << contents;
    if (!out) throw Error(ErrorCode::kInvalidArgument, "write failed: " + path);
  }
  fs::rename(tmp, target);
}

/// "v1,v2,..." into a vector.
inline Vector parse_point(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParseError, "bad number '" + item + "'");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) {
      throw Error(ErrorCode::kParseError, "bad number '" + item + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) throw Error(ErrorCode::kParseError, "empty vector");
  return Eigen::Map<Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

}  // namespace effradius

#endif  // EFFRADIUS_IO_HPP_
