#pragma once

// JSON shapes shared by the CLI, dataset sidecars and benchmark reports:
// homographies as {"h": [9 row-major reals]}, coefficients as {"b": [8]}.

#include <filesystem>

#include <nlohmann/json.hpp>

#include "hwarp/cascade.hpp"
#include "hwarp/sl3.hpp"
#include "hwarp/synth.hpp"

namespace hwarp {

using nlohmann::json;

json to_json_array(const AlgebraCoeffs& b);
json to_json_array(const Matrix3& m);
AlgebraCoeffs coeffs_from_json(const json& j);  // 8-element array
Matrix3 matrix_from_json(const json& j);        // 9-element array

json to_json(const EstimationResult& r);
json to_json(const ParamRanges& r);
ParamRanges ranges_from_json(const json& j);
json to_json(const Manifest& m);
Manifest manifest_from_json(const json& j);

// Ground-truth sidecar of one generated pair.
json sidecar_json(const ManifestEntry& entry, const AlgebraCoeffs& b, const Homography& h);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const json& j, const std::filesystem::path& path);

// Version string recorded in manifests and reports.
inline constexpr const char* kToolVersion = "hwarp 0.1.0";

}  // namespace hwarp
