#pragma once

// JSON file formats.
//   MUB set:        { "d": int, "bases": [ basis... ] }, a basis is a list of d
//                   vectors, a vector a list of d [re, im] pairs.
//   density matrix: { "dim": int, "re": [[...]], "im": [[...]] }, row-major.
// Reports use the same value encoding. Malformed input throws DomainError.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "mubent/criteria.hpp"
#include "mubent/cv.hpp"
#include "mubent/mubs.hpp"
#include "mubent/optimize.hpp"
#include "mubent/qmath.hpp"

namespace mubent::io {

using Json = nlohmann::json;

Json mub_set_to_json(const MubSet& mub);
/// Runs verify_mub_set; throws DomainError naming the worst defect on failure.
MubSet mub_set_from_json(const Json& j);

Json density_to_json(const DensityMatrix& rho);
/// Validates the matrix on load.
DensityMatrix density_from_json(const Json& j);

Json report_to_json(const CriterionReport& rep);
Json verification_to_json(const MubVerificationReport& rep);
Json unitary_params_to_json(const UnitaryParams& p);
Json complex_matrix_to_json(const ComplexMatrix& m);

/// Reads and parses a JSON file; DomainError when missing or malformed.
Json read_json(const std::filesystem::path& path);
/// Writes pretty-printed JSON with a trailing newline.
void write_json(const std::filesystem::path& path, const Json& j);

/// Shortest round-trip decimal form, independent of the global locale.
std::string format_double(double v);

}  // namespace mubent::io
