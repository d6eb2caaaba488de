#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "htype/composition.hpp"
#include "htype/curvature.hpp"
#include "htype/geodesics.hpp"

namespace htype {

/// Raised on malformed algebra specs; `field` names the offending entry.
struct ParseError : std::runtime_error {
  std::string field;
  ParseError(std::string field_, const std::string& what_)
      : std::runtime_error("field '" + field_ + "': " + what_),
        field(std::move(field_)) {}
};

/// Algebra spec wire format: {n, nu_h, m, nu_v, B, label?} with B an
/// m-length array of n x n row-major arrays.  Values are IEEE doubles.
HTypeAlgebra algebra_from_json(const nlohmann::json& j);
nlohmann::json algebra_to_json(const HTypeAlgebra& alg);

nlohmann::json validation_to_json(const ValidationReport& report);

/// CSV header "s,x1..xn,t1..tm", one row per sample, 17 significant digits.
std::string trajectory_csv(const Trajectory& traj);
nlohmann::json trajectory_sidecar(const Trajectory& traj,
                                  const HTypeAlgebra& alg);

nlohmann::json search_to_json(const SearchOutcome& outcome, int phi_index,
                              int lambda_index, int restarts,
                              std::uint64_t seed);

nlohmann::json curvature_report(const HTypeAlgebra& alg, int sample_planes,
                                std::uint64_t seed);

/// Writes content to path via a temp file in the same directory + rename.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace htype
