#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "tentsolve/dg_space.hpp"
#include "tentsolve/mesh.hpp"
#include "tentsolve/runner.hpp"
#include "tentsolve/tents.hpp"

namespace tentsolve::io {

using nlohmann::json;

/// Column order of report.csv.
inline constexpr const char* kReportHeader = "stepper,degree,level,h,dof,error,rate";

json mesh_to_json(const SpatialMesh& mesh);
SpatialMesh mesh_from_json(const json& doc);

/// Full slab: every tent with its times, patch and level.
json slab_to_json(const TentSlab& slab);

/// Summary: tent count, min/max height (null for an empty slab), layer count,
/// tents per layer and per-vertex mean and max tent height.
json slab_stats(const TentSlab& slab);

/// Coefficients of every element and point samples on a uniform grid over the
/// bounding box (nx by ny points; ny is ignored in 1D).
json snapshot_to_json(const FieldVector& u, double time, int nx, int ny);

json config_to_json(const SimulationConfig& config);

/// Writes rows of all reports; numbers use full precision scientific notation and
/// the rate column is empty on the first row of each report.
void write_report_csv(std::ostream& out, std::span<const ConvergenceReport> reports);

/// Formats a double with 17 significant digits in scientific notation.
std::string format_double(double value);

void write_json(const std::filesystem::path& path, const json& doc);

}  // namespace tentsolve::io
