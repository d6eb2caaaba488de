#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "htype/geodesics.hpp"
#include "htype/io.hpp"

using namespace htype;
using htype::testing::vec;
namespace fs = std::filesystem;

namespace {

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "htype_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const fs::path out_file = work_dir() / "stdout.txt";
  const std::string cmd = std::string(HTYPE_CLI_PATH) + " " + args + " > " +
                          out_file.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, slurp(out_file)};
}

}  // namespace

TEST_CASE("algebra JSON round trip") {
  const HTypeAlgebra alg = catalog("quat_split", 1).algebra;
  const HTypeAlgebra back = algebra_from_json(algebra_to_json(alg));
  CHECK(back.H == alg.H);
  CHECK(back.V == alg.V);
  CHECK(back.label == alg.label);
  for (int b = 0; b < alg.m(); ++b)
    CHECK((back.B[b] - alg.B[b]).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("algebra JSON errors name the offending field") {
  const auto expect_field = [](const nlohmann::json& j, const std::string& field) {
    try {
      algebra_from_json(j);
      FAIL_CHECK("expected ParseError for field ", field);
    } catch (const ParseError& e) {
      CHECK(e.field == field);
    }
  };
  expect_field(nlohmann::json::object(), "n");
  expect_field({{"n", 2}, {"nu_h", 0}, {"m", 1}}, "nu_v");
  expect_field({{"n", 2}, {"nu_h", 3}, {"m", 1}, {"nu_v", 0}}, "nu_h");
  expect_field({{"n", 2}, {"nu_h", 0}, {"m", 1}, {"nu_v", 0}}, "B");
  expect_field({{"n", 2}, {"nu_h", 0}, {"m", 1}, {"nu_v", 0}, {"B", {1, 2}}},
               "B");  // wrong slice count
  expect_field({{"n", 2}, {"nu_h", 0}, {"m", 1}, {"nu_v", 0}, {"B", {1}}},
               "B[0]");
  // non-skew B is rejected through the constructor
  expect_field({{"n", 2},
                {"nu_h", 0},
                {"m", 1},
                {"nu_v", 0},
                {"B", {{{0, 1}, {1, 0}}}}},
               "B");
}

TEST_CASE("trajectory CSV format") {
  const HTypeAlgebra alg = catalog("heis", 1).algebra;
  const Trajectory traj =
      geodesic_closed_form(alg, vec({1, 0}), vec({1}), {0.5, 1.0});
  const std::string csv = trajectory_csv(traj);
  CHECK(csv.substr(0, csv.find('\n')) == "s,x1,x2,t1");
  // three rows (s = 0 prepended) + header
  int lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  CHECK(lines == 4);
  // 17 significant digits survive a parse round trip
  const auto last_comma = csv.rfind(',');
  const double t_final = std::stod(csv.substr(last_comma + 1));
  CHECK(t_final == doctest::Approx((1.0 - std::sin(1.0)) / 2.0).epsilon(1e-12));

  const nlohmann::json side = trajectory_sidecar(traj, alg);
  CHECK(side["regime"] == "NonNull");
  CHECK(side["theta2"] == doctest::Approx(1.0));
}

TEST_CASE("write_atomic replaces content completely") {
  const fs::path target = work_dir() / "atomic.txt";
  write_atomic(target.string(), "first");
  write_atomic(target.string(), "second");
  CHECK(slurp(target) == "second");
  CHECK_FALSE(fs::exists(target.string() + ".tmp"));
}

TEST_CASE("cli: validate catalog algebras") {
  const RunResult ok = run_cli("validate --catalog heis_split:2");
  CHECK(ok.exit_code == 0);
  const nlohmann::json report = nlohmann::json::parse(ok.out);
  CHECK(report["passed"] == true);
  CHECK(report["center_check"] == true);

  // a non-H-type spec: flipped vertical sign
  const fs::path bad = work_dir() / "flipped.json";
  nlohmann::json spec = algebra_to_json(catalog("heis_split", 1).algebra);
  spec["nu_v"] = 0;
  write_atomic(bad.string(), spec.dump());
  const RunResult fail = run_cli("validate --algebra " + bad.string());
  CHECK(fail.exit_code == 1);
  CHECK(nlohmann::json::parse(fail.out)["passed"] == false);
}

TEST_CASE("cli: usage and parse errors exit 2") {
  CHECK(run_cli("validate").exit_code == 2);
  CHECK(run_cli("nonsense").exit_code == 2);
  CHECK(run_cli("validate --catalog heis").exit_code == 2);

  const fs::path bad = work_dir() / "bad.json";
  write_atomic(bad.string(), "{\"n\": 2, \"nu_h\": 0, \"m\": 1}");
  const RunResult missing = run_cli("validate --algebra " + bad.string());
  CHECK(missing.exit_code == 2);
  CHECK(missing.out.find("nu_v") != std::string::npos);
}

TEST_CASE("cli: geodesic CSV matches the RK4 oracle") {
  const fs::path csv_path = work_dir() / "traj.csv";
  const RunResult run = run_cli(
      "--out " + csv_path.string() +
      " geodesic --catalog heis:1 --v0 1,0 --theta 1 --s-max 1 --samples 100");
  REQUIRE(run.exit_code == 0);

  const HTypeAlgebra alg = catalog("heis", 1).algebra;
  const Trajectory oracle =
      integrate_hamiltonian(alg, vec({1, 0}), vec({1}), 1.0, 1e-4);

  std::ifstream in(csv_path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "s,x1,x2,t1");
  double worst = 0.0;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    REQUIRE(row.size() == 4);
    const auto oi = static_cast<std::size_t>(std::llround(row[0] / 1e-4));
    REQUIRE(oi < oracle.s.size());
    worst = std::max(worst, std::abs(row[1] - oracle.points[oi].x[0]));
    worst = std::max(worst, std::abs(row[2] - oracle.points[oi].x[1]));
    worst = std::max(worst, std::abs(row[3] - oracle.points[oi].t[0]));
  }
  CHECK(worst < 1e-6);

  const nlohmann::json side =
      nlohmann::json::parse(slurp(csv_path.string() + ".json"));
  CHECK(side["regime"] == "NonNull");
}

TEST_CASE("cli: geodesic refuses non-H-type algebras with the report") {
  const fs::path bad = work_dir() / "flat.json";
  nlohmann::json spec;
  spec["n"] = 2;
  spec["nu_h"] = 0;
  spec["m"] = 1;
  spec["nu_v"] = 0;
  spec["B"] = {{{0.0, 0.0}, {0.0, 0.0}}};
  write_atomic(bad.string(), spec.dump());
  const RunResult run = run_cli("geodesic --algebra " + bad.string() +
                                " --v0 1,0 --theta 1");
  CHECK(run.exit_code == 1);
  CHECK(run.out.find("not general H-type") != std::string::npos);
}

TEST_CASE("cli: compose-search verdicts and exit codes") {
  const RunResult infeasible =
      run_cli("compose-search --phi-index 1 --lambda-index 0 --restarts 200");
  CHECK(infeasible.exit_code == 1);
  const nlohmann::json j = nlohmann::json::parse(infeasible.out);
  CHECK(j["verdict"] == "infeasible");
  CHECK(j["residual"].get<double>() >= 0.1);
  CHECK(j["exact_contradiction"] == true);

  const RunResult found =
      run_cli("compose-search --phi-index 1 --lambda-index 1 --restarts 64");
  CHECK(found.exit_code == 0);
  CHECK(nlohmann::json::parse(found.out)["verdict"] == "found");
}

TEST_CASE("cli: identical config and seed give byte-identical output") {
  const fs::path a = work_dir() / "search_a.json";
  const fs::path b = work_dir() / "search_b.json";
  const std::string args =
      " compose-search --phi-index 1 --lambda-index 0 --restarts 100 --seed 7";
  CHECK(run_cli("--out " + a.string() + args).exit_code == 1);
  CHECK(run_cli("--out " + b.string() + args).exit_code == 1);
  CHECK(slurp(a) == slurp(b));

  const fs::path ca = work_dir() / "traj_a.csv";
  const fs::path cb = work_dir() / "traj_b.csv";
  const std::string gargs =
      " geodesic --catalog quat_split:1 --v0 1,0,0.5,0 --theta 0.3,0,1 "
      "--s-max 1 --samples 50 --seed 5";
  CHECK(run_cli("--out " + ca.string() + gargs).exit_code == 0);
  CHECK(run_cli("--out " + cb.string() + gargs).exit_code == 0);
  CHECK(slurp(ca) == slurp(cb));
}

TEST_CASE("cli: curvature report") {
  const RunResult run = run_cli("curvature --catalog heis_split:1");
  REQUIRE(run.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(run.out);
  CHECK(j["scalar"].get<double>() == doctest::Approx(-0.5));
  CHECK(j["scalar_formula"].get<double>() == doctest::Approx(0.0));
  CHECK(j["scalar_formula_matches"] == false);
  CHECK(j.contains("note"));
  CHECK(j["h_type_consistent"] == true);
  CHECK(j["ricci"][0][0].get<double>() == doctest::Approx(0.5));
  CHECK(j["sample_planes"].size() > 0);

  const RunResult quat = run_cli("curvature --catalog quat:2");
  REQUIRE(quat.exit_code == 0);
  const nlohmann::json jq = nlohmann::json::parse(quat.out);
  CHECK(jq["scalar"].get<double>() == doctest::Approx(-6.0));
  CHECK(jq["scalar_formula_matches"] == true);
}

TEST_CASE("cli: catalog emission round trips") {
  const RunResult run = run_cli("catalog quat_split 2");
  REQUIRE(run.exit_code == 0);
  const HTypeAlgebra alg = algebra_from_json(nlohmann::json::parse(run.out));
  CHECK(alg.label == "H^{8,4,3}");
  CHECK(validate_h_type(alg).passed);
}
