// Command-line front end: construct or load algebras, validate them, compute
// geodesics and curvature reports, and run the 2D composition search.
//
// Exit codes: 0 success, 1 failure verdict (validation failed, search
// infeasible, non-H-type input to geodesic/curvature), 2 usage errors.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "htype/io.hpp"

namespace {

using namespace htype;

constexpr std::uint64_t kDefaultSeed = 20240915u;

struct AlgebraSource {
  std::string catalog_spec;  // name:n
  std::string json_path;
};

HTypeAlgebra load_algebra(const AlgebraSource& src) {
  const bool has_catalog = !src.catalog_spec.empty();
  const bool has_json = !src.json_path.empty();
  if (has_catalog == has_json)
    throw CLI::ValidationError(
        "algebra", "exactly one of --catalog and --algebra is required");
  if (has_catalog) {
    const auto colon = src.catalog_spec.find(':');
    if (colon == std::string::npos)
      throw CLI::ValidationError("--catalog", "expected name:n");
    const std::string name = src.catalog_spec.substr(0, colon);
    int n = 0;
    try {
      n = std::stoi(src.catalog_spec.substr(colon + 1));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--catalog", "expected name:n with integer n");
    }
    return catalog(name, n).algebra;
  }
  std::ifstream in(src.json_path);
  if (!in) throw std::runtime_error("cannot open " + src.json_path);
  nlohmann::json j;
  in >> j;
  return algebra_from_json(j);
}

std::vector<double> parse_reals(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    write_atomic(out_path, content);
}

int cmd_catalog(const std::string& name, int n, const std::string& out_path) {
  const CatalogEntry entry = catalog(name, n);
  emit(out_path, algebra_to_json(entry.algebra).dump(2) + "\n");
  return 0;
}

int cmd_validate(const AlgebraSource& src, int trials, double tol,
                 std::uint64_t seed, const std::string& out_path) {
  const HTypeAlgebra alg = load_algebra(src);
  const ValidationReport report = validate_h_type(alg, trials, tol, seed);
  nlohmann::json j = validation_to_json(report);
  j["center_check"] = center_check(alg, trials, tol);
  emit(out_path, j.dump(2) + "\n");
  return report.passed ? 0 : 1;
}

int require_h_type(const HTypeAlgebra& alg, std::uint64_t seed) {
  const ValidationReport report = validate_h_type(alg, 256, 1e-9, seed);
  if (!report.passed) {
    std::cerr << "input algebra is not general H-type:\n"
              << validation_to_json(report).dump(2) << "\n";
    return 1;
  }
  return 0;
}

int cmd_geodesic(const AlgebraSource& src, const std::string& v0_csv,
                 const std::string& theta_csv, double s_max, int samples,
                 const std::string& method, double dt, std::uint64_t seed,
                 const std::string& out_path) {
  const HTypeAlgebra alg = load_algebra(src);
  if (int rc = require_h_type(alg, seed)) return rc;

  const std::vector<double> v0v = parse_reals(v0_csv);
  const std::vector<double> thv = parse_reals(theta_csv);
  if (static_cast<int>(v0v.size()) != alg.n())
    throw CLI::ValidationError("--v0", "expected " + std::to_string(alg.n()) +
                                           " comma-separated reals");
  if (static_cast<int>(thv.size()) != alg.m())
    throw CLI::ValidationError("--theta", "expected " + std::to_string(alg.m()) +
                                              " comma-separated reals");
  const Vec v0 = Eigen::Map<const Vec>(v0v.data(), v0v.size());
  const Vec theta = Eigen::Map<const Vec>(thv.data(), thv.size());

  Trajectory traj;
  if (method == "closed") {
    std::vector<double> grid;
    for (int i = 0; i <= samples; ++i) grid.push_back(s_max * i / samples);
    traj = geodesic_closed_form(alg, v0, theta, grid);
  } else if (method == "rk4") {
    traj = integrate_hamiltonian(alg, v0, theta, s_max, dt);
  } else {
    throw CLI::ValidationError("--method", "expected 'closed' or 'rk4'");
  }

  emit(out_path, trajectory_csv(traj));
  const std::string sidecar_path = out_path.empty() ? "" : out_path + ".json";
  const std::string sidecar = trajectory_sidecar(traj, alg).dump(2) + "\n";
  if (sidecar_path.empty())
    std::cout << sidecar;
  else
    write_atomic(sidecar_path, sidecar);
  return 0;
}

int cmd_curvature(const AlgebraSource& src, int sample_planes,
                  std::uint64_t seed, const std::string& out_path) {
  const HTypeAlgebra alg = load_algebra(src);
  if (int rc = require_h_type(alg, seed)) return rc;
  emit(out_path, curvature_report(alg, sample_planes, seed).dump(2) + "\n");
  return 0;
}

int cmd_search(int phi_index, int lambda_index, int restarts,
               std::uint64_t seed, const std::string& out_path) {
  const SearchOutcome outcome =
      search_composition_2d(phi_index, lambda_index, restarts, seed);
  emit(out_path,
       search_to_json(outcome, phi_index, lambda_index, restarts, seed).dump(2) +
           "\n");
  return outcome.found ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"general H-type Lie groups: validation, geodesics, curvature"};
  app.require_subcommand(1);
  app.fallthrough();  // global --seed/--out may follow the subcommand

  std::uint64_t seed = kDefaultSeed;
  app.add_option("--seed", seed, "RNG seed (default fixed for reproducibility)");

  std::string out_path;
  app.add_option("--out", out_path, "output file (stdout if omitted)");

  // catalog
  auto* sc_catalog = app.add_subcommand("catalog", "emit a catalog algebra spec");
  std::string cat_name;
  int cat_n = 1;
  sc_catalog->add_option("name", cat_name, "heis|heis_split|quat|quat_split")
      ->required();
  sc_catalog->add_option("n", cat_n, "family parameter (default 1)");

  // common algebra source options
  AlgebraSource src;
  const auto add_source = [&](CLI::App* sc) {
    sc->add_option("--catalog", src.catalog_spec, "catalog algebra, name:n");
    sc->add_option("--algebra", src.json_path, "algebra spec JSON path");
  };

  // validate
  auto* sc_validate = app.add_subcommand("validate", "run the H-type validator");
  add_source(sc_validate);
  int trials = 256;
  double tol = 1e-9;
  sc_validate->add_option("--trials", trials, "sampled tuples (default 256)");
  sc_validate->add_option("--tol", tol, "residual threshold (default 1e-9)");

  // geodesic
  auto* sc_geodesic = app.add_subcommand("geodesic", "compute a geodesic");
  add_source(sc_geodesic);
  std::string v0_csv, theta_csv, method = "closed";
  double s_max = 1.0, dt = 1e-4;
  int samples = 100;
  sc_geodesic->add_option("--v0", v0_csv, "initial horizontal velocity")->required();
  sc_geodesic->add_option("--theta", theta_csv, "vertical co-vector")->required();
  sc_geodesic->add_option("--s-max", s_max, "parameter range end (default 1)");
  sc_geodesic->add_option("--samples", samples, "sample count (default 100)");
  sc_geodesic->add_option("--method", method, "closed (default) or rk4");
  sc_geodesic->add_option("--dt", dt, "RK4 step (default 1e-4)");

  // curvature
  auto* sc_curvature = app.add_subcommand("curvature", "curvature report JSON");
  add_source(sc_curvature);
  int sample_planes = 12;
  sc_curvature->add_option("--sample-planes", sample_planes,
                           "sampled planes in the report (default 12)");

  // compose-search
  auto* sc_search =
      app.add_subcommand("compose-search", "2D composition existence probe");
  int phi_index = 0, lambda_index = 0, restarts = 1000;
  sc_search->add_option("--phi-index", phi_index, "index of phi (0..2)")->required();
  sc_search->add_option("--lambda-index", lambda_index, "index of lambda (0..2)")
      ->required();
  sc_search->add_option("--restarts", restarts, "multistart count (default 1000)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  }

  try {
    if (sc_catalog->parsed()) return cmd_catalog(cat_name, cat_n, out_path);
    if (sc_validate->parsed())
      return cmd_validate(src, trials, tol, seed, out_path);
    if (sc_geodesic->parsed())
      return cmd_geodesic(src, v0_csv, theta_csv, s_max, samples, method, dt,
                          seed, out_path);
    if (sc_curvature->parsed())
      return cmd_curvature(src, sample_planes, seed, out_path);
    if (sc_search->parsed())
      return cmd_search(phi_index, lambda_index, restarts, seed, out_path);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
