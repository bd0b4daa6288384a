#pragma once

#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "tentsolve/dg_space.hpp"
#include "tentsolve/stepper.hpp"
#include "tentsolve/tent_system.hpp"
#include "tentsolve/tents.hpp"

namespace tentsolve {

enum class MeshKind { structured2d, interval };

struct MeshParams {
  MeshKind kind = MeshKind::structured2d;
  double lx = std::numbers::pi;
  double ly = std::numbers::pi;
  int nx = 8;
  int ny = 8;
  double a = 0;
  double b = std::numbers::pi;
  int n = 16;
  double grading = 1;
};

struct SimulationConfig {
  MeshParams mesh;
  int degree = 2;
  double final_time = std::numbers::sqrt2 * std::numbers::pi;
  double slab_height = 1.0;
  double sigma = 0.5;
  StepperKind stepper = StepperKind::sat;
  int stages = 0;        // 0: degree + 1
  int subintervals = 0;  // 0: 2 * degree (at least 1)
  double eps = 1;
  double mu = 1;
  std::string solution = "standing2d";
  int workers = 1;
  bool serial_reference = false;  // process tents one by one in pitch order
  double flux_jump_scale = 0.5;

  int resolved_stages() const { return stages > 0 ? stages : degree + 1; }
  int resolved_subintervals() const {
    return subintervals > 0 ? subintervals : std::max(1, 2 * degree);
  }
  /// Throws InvalidArgument on inconsistent parameters.
  void validate() const;
};

/// Mesh for the given parameters with every spacing halved `refinement` times.
std::shared_ptr<const SpatialMesh> build_mesh(const MeshParams& params, int refinement = 0);

/// Known exact solutions: "standing2d" (standing TM mode on [0, pi]^2 with
/// eps = mu = 1), "standing1d" (its 1D analogue on [0, pi]) and "zero".
FieldFunction exact_solution(const std::string& name);

std::string to_string(StepperKind kind);
StepperKind parse_stepper(const std::string& name);

/// Hooks for inspecting a run. on_tent is called from worker threads.
struct RunObserver {
  std::function<void(const TentSlab&)> on_slab;
  std::function<void(const TentSystem&)> on_tent;
};

struct RunResult {
  FieldVector solution;
  double final_time = 0;
  std::optional<double> l2_error;
  std::size_t num_tents = 0;
  std::size_t num_slabs = 0;
  std::vector<double> slab_energy;  // at t = 0 and after every slab
};

/// Advances one slab: each tent gathers U, forms Y = M(0) U, propagates to that = 1,
/// and scatters U = M(1)^{-1} Y.
void advance_slab(const TentSlab& slab, const DGSpace& space, std::span<const Material> materials,
                  const SimulationConfig& config, FieldVector& u,
                  const RunObserver& observer = {});

/// Projects the initial data at t = 0, then pitches and advances slabs until the
/// final time (the last slab may be shorter).
RunResult run(const SimulationConfig& config, const RunObserver& observer = {});

struct ConvergenceRow {
  int level = 0;
  double h = 0;
  std::size_t dof = 0;
  double error = 0;
  std::optional<double> rate;  // log2(e_{k-1} / e_k)
  double seconds = 0;
};

struct ConvergenceReport {
  StepperKind stepper = StepperKind::sat;
  int degree = 0;
  std::vector<ConvergenceRow> rows;
};

/// Runs `levels` uniformly refined meshes (h halved each level).
ConvergenceReport convergence_study(const SimulationConfig& base, int levels,
                                    const RunObserver& observer = {});

}  // namespace tentsolve
