#include "htype/io.hpp"

#include <cstdio>
#include <fstream>
#include <random>

namespace htype {

namespace {

int require_int(const nlohmann::json& j, const std::string& field) {
  if (!j.contains(field)) throw ParseError(field, "missing");
  if (!j[field].is_number_integer())
    throw ParseError(field, "expected an integer");
  return j[field].get<int>();
}

}  // namespace

HTypeAlgebra algebra_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("(root)", "expected a JSON object");
  const int n = require_int(j, "n");
  const int nu_h = require_int(j, "nu_h");
  const int m = require_int(j, "m");
  const int nu_v = require_int(j, "nu_v");
  if (n < 1) throw ParseError("n", "must be >= 1");
  if (m < 1) throw ParseError("m", "must be >= 1");
  if (nu_h < 0 || nu_h > n) throw ParseError("nu_h", "must lie in 0..n");
  if (nu_v < 0 || nu_v > m) throw ParseError("nu_v", "must lie in 0..m");

  if (!j.contains("B")) throw ParseError("B", "missing");
  const auto& jb = j["B"];
  if (!jb.is_array() || static_cast<int>(jb.size()) != m)
    throw ParseError("B", "expected an array of m slices");
  std::vector<Mat> B;
  for (int b = 0; b < m; ++b) {
    const auto& slice = jb[b];
    if (!slice.is_array() || static_cast<int>(slice.size()) != n)
      throw ParseError("B[" + std::to_string(b) + "]",
                       "expected an n x n array");
    Mat mat(n, n);
    for (int i = 0; i < n; ++i) {
      const auto& row = slice[i];
      if (!row.is_array() || static_cast<int>(row.size()) != n)
        throw ParseError("B[" + std::to_string(b) + "][" + std::to_string(i) + "]",
                         "expected a row of n numbers");
      for (int k = 0; k < n; ++k) {
        if (!row[k].is_number())
          throw ParseError("B[" + std::to_string(b) + "][" + std::to_string(i) +
                               "][" + std::to_string(k) + "]",
                           "expected a number");
        mat(i, k) = row[k].get<double>();
      }
    }
    B.push_back(std::move(mat));
  }

  std::string label = "custom";
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw ParseError("label", "expected a string");
    label = j["label"].get<std::string>();
  }
  try {
    return HTypeAlgebra(ScalarSpace(n, nu_h), ScalarSpace(m, nu_v),
                        std::move(B), label);
  } catch (const std::invalid_argument& e) {
    throw ParseError("B", e.what());
  }
}

nlohmann::json algebra_to_json(const HTypeAlgebra& alg) {
  nlohmann::json j;
  j["n"] = alg.n();
  j["nu_h"] = alg.H.index;
  j["m"] = alg.m();
  j["nu_v"] = alg.V.index;
  j["label"] = alg.label;
  nlohmann::json slices = nlohmann::json::array();
  for (const Mat& b : alg.B) {
    nlohmann::json slice = nlohmann::json::array();
    for (int i = 0; i < b.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int k = 0; k < b.cols(); ++k) row.push_back(b(i, k));
      slice.push_back(std::move(row));
    }
    slices.push_back(std::move(slice));
  }
  j["B"] = std::move(slices);
  if (!alg.h_order.empty()) j["h_order"] = alg.h_order;
  if (!alg.v_order.empty()) j["v_order"] = alg.v_order;
  return j;
}

nlohmann::json validation_to_json(const ValidationReport& report) {
  nlohmann::json j;
  j["passed"] = report.passed;
  j["label"] = report.label;
  j["sampled_vectors"] = report.sampled_vectors;
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"max_residual", c.max_residual},
                      {"threshold", c.threshold},
                      {"passed", c.passed}});
  }
  j["checks"] = std::move(checks);
  return j;
}

std::string trajectory_csv(const Trajectory& traj) {
  const int n = traj.points.empty() ? 0 : static_cast<int>(traj.points[0].x.size());
  const int m = traj.points.empty() ? 0 : static_cast<int>(traj.points[0].t.size());
  std::string out = "s";
  for (int i = 1; i <= n; ++i) out += ",x" + std::to_string(i);
  for (int a = 1; a <= m; ++a) out += ",t" + std::to_string(a);
  out += "\n";
  char buf[64];
  for (std::size_t k = 0; k < traj.s.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", traj.s[k]);
    out += buf;
    for (int i = 0; i < n; ++i) {
      std::snprintf(buf, sizeof buf, ",%.17g", traj.points[k].x[i]);
      out += buf;
    }
    for (int a = 0; a < m; ++a) {
      std::snprintf(buf, sizeof buf, ",%.17g", traj.points[k].t[a]);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

nlohmann::json trajectory_sidecar(const Trajectory& traj,
                                  const HTypeAlgebra& alg) {
  nlohmann::json j;
  j["regime"] = regime_name(traj.regime);
  j["theta2"] = traj.theta2;
  j["algebra"] = alg.label;
  j["v0"] = std::vector<double>(traj.v0.data(), traj.v0.data() + traj.v0.size());
  j["theta"] =
      std::vector<double>(traj.theta.data(), traj.theta.data() + traj.theta.size());
  return j;
}

nlohmann::json search_to_json(const SearchOutcome& outcome, int phi_index,
                              int lambda_index, int restarts,
                              std::uint64_t seed) {
  nlohmann::json j;
  j["verdict"] = outcome.found ? "found" : "infeasible";
  j["residual"] = outcome.residual;
  j["coefficients"] = outcome.coefficients;
  j["phi_index"] = phi_index;
  j["lambda_index"] = lambda_index;
  j["restarts"] = restarts;
  j["seed"] = seed;
  j["exact_contradiction"] = outcome.contradiction;
  if (!outcome.note.empty()) j["note"] = outcome.note;
  return j;
}

nlohmann::json curvature_report(const HTypeAlgebra& alg, int sample_planes,
                                std::uint64_t seed) {
  const RicciResult ricci = ricci_tensor(alg);
  const ScalarResult scalar = scalar_curvature(alg);

  nlohmann::json j;
  j["label"] = alg.label;
  nlohmann::json ric = nlohmann::json::array();
  for (int i = 0; i < ricci.direct.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < ricci.direct.cols(); ++k) row.push_back(ricci.direct(i, k));
    ric.push_back(std::move(row));
  }
  j["ricci"] = std::move(ric);
  j["ricci_closed_form_deviation"] = ricci.max_dev_closed;
  j["ricci_sign_sum_form_deviation"] = ricci.max_dev_sign_sum;
  j["h_type_consistent"] = ricci.h_type_consistent;
  j["scalar"] = scalar.trace;
  j["scalar_formula"] = scalar.formula;
  j["scalar_formula_matches"] = scalar.formula_matches;
  if (!scalar.formula_matches) {
    j["note"] =
        "sign-sum scalar formula disagrees with the Ricci trace for this "
        "signature; the trace is the computed ground truth";
  }

  Rng rng(seed);
  nlohmann::json planes = nlohmann::json::array();
  int made = 0, guard = 0;
  while (made < sample_planes && guard < 100 * sample_planes + 100) {
    ++guard;
    TangentElement a = tangent_zero(alg), b = tangent_zero(alg);
    switch (guard % 3) {
      case 0:  // horizontal
        a.h = rng.uniform_vec(alg.n(), -1.0, 1.0);
        b.h = rng.uniform_vec(alg.n(), -1.0, 1.0);
        break;
      case 1:  // mixed
        a.h = rng.uniform_vec(alg.n(), -1.0, 1.0);
        b.v = rng.uniform_vec(alg.m(), -1.0, 1.0);
        break;
      default:  // vertical (degenerate for m = 1; skipped below)
        a.v = rng.uniform_vec(alg.m(), -1.0, 1.0);
        b.v = rng.uniform_vec(alg.m(), -1.0, 1.0);
        break;
    }
    const Plane p = make_plane(alg, a, b);
    if (plane_degenerate(p)) continue;
    const PlaneClassification cls = classify_plane(alg, p);
    planes.push_back({{"class", plane_kind_name(cls.kind)},
                      {"k", sectional_curvature(alg, p)},
                      {"basis",
                       {{"a_h", std::vector<double>(a.h.data(), a.h.data() + alg.n())},
                        {"a_v", std::vector<double>(a.v.data(), a.v.data() + alg.m())},
                        {"b_h", std::vector<double>(b.h.data(), b.h.data() + alg.n())},
                        {"b_v", std::vector<double>(b.v.data(), b.v.data() + alg.m())}}}});
    ++made;
  }
  j["sample_planes"] = std::move(planes);
  return j;
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_atomic: cannot open " + tmp);
    out << content;
    if (!out.flush()) throw std::runtime_error("write_atomic: write failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("write_atomic: rename failed for " + path);
}

}  // namespace htype
