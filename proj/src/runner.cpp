#include "tentsolve/runner.hpp"

#include <chrono>
#include <cmath>

#include "tentsolve/error.hpp"
#include "tentsolve/layers.hpp"

namespace tentsolve {

void SimulationConfig::validate() const {
  if (degree < 0 || degree > 10) throw InvalidArgument("degree must lie in [0, 10]");
  if (!(final_time > 0)) throw InvalidArgument("final time must be positive");
  if (!(slab_height > 0)) throw InvalidArgument("slab height must be positive");
  if (!(sigma > 0 && sigma < 1)) throw InvalidArgument("sigma must lie in (0, 1)");
  if (stages < 0 || subintervals < 0) throw InvalidArgument("stages and subintervals must be >= 1");
  if (!(eps > 0) || !(mu > 0)) throw InvalidArgument("material parameters must be positive");
  if (workers < 1) throw InvalidArgument("workers must be >= 1");
  if (!(flux_jump_scale > 0)) throw InvalidArgument("flux jump scale must be positive");
  if (mesh.kind == MeshKind::structured2d) {
    if (mesh.nx < 1 || mesh.ny < 1) throw InvalidArgument("mesh counts must be >= 1");
    if (!(mesh.lx > 0) || !(mesh.ly > 0)) throw InvalidArgument("mesh extents must be positive");
  } else {
    if (mesh.n < 1) throw InvalidArgument("mesh count must be >= 1");
    if (!(mesh.a < mesh.b)) throw InvalidArgument("interval needs a < b");
    if (!(mesh.grading > 0)) throw InvalidArgument("grading must be positive");
  }
  exact_solution(solution);
}

std::shared_ptr<const SpatialMesh> build_mesh(const MeshParams& p, int refinement) {
  const int f = 1 << refinement;
  if (p.kind == MeshKind::structured2d) {
    return std::make_shared<const SpatialMesh>(
        build_structured_triangle_mesh(p.lx, p.ly, p.nx * f, p.ny * f));
  }
  // Refining a graded mesh keeps the overall grading ratio.
  const double grading = std::pow(p.grading, 1.0 / f);
  return std::make_shared<const SpatialMesh>(build_interval_mesh(p.a, p.b, p.n * f, grading));
}

FieldFunction exact_solution(const std::string& name) {
  if (name == "standing2d") {
    return [](const Point& x, double t) -> Vec3 {
      const double w = std::numbers::sqrt2;
      const double sx = std::sin(x[0]), cx = std::cos(x[0]);
      const double sy = std::sin(x[1]), cy = std::cos(x[1]);
      return {sx * sy * std::cos(w * t), -sx * cy * std::sin(w * t) / w,
              cx * sy * std::sin(w * t) / w};
    };
  }
  if (name == "standing1d") {
    return [](const Point& x, double t) -> Vec3 {
      return {std::sin(x[0]) * std::cos(t), 0.0, std::cos(x[0]) * std::sin(t)};
    };
  }
  if (name == "zero") {
    return [](const Point&, double) -> Vec3 { return {0, 0, 0}; };
  }
  throw InvalidArgument("unknown solution '" + name + "'");
}

std::string to_string(StepperKind kind) { return kind == StepperKind::sat ? "sat" : "rk4"; }

StepperKind parse_stepper(const std::string& name) {
  if (name == "sat") return StepperKind::sat;
  if (name == "rk4") return StepperKind::rk4;
  throw InvalidArgument("unknown stepper '" + name + "' (expected sat or rk4)");
}

void advance_slab(const TentSlab& slab, const DGSpace& space, std::span<const Material> materials,
                  const SimulationConfig& config, FieldVector& u, const RunObserver& observer) {
  const FluxOptions flux{config.flux_jump_scale};
  const int q = config.resolved_stages();
  const int m = config.resolved_subintervals();
  auto task = [&](int index) {
    const TentSystem sys(slab.tents[index], space, materials, flux);
    if (observer.on_tent) observer.on_tent(sys);
    std::vector<double> local(sys.size()), y0(sys.size());
    sys.gather(u, local);
    sys.apply_M(0.0, local, y0);
    const std::vector<double> y1 = config.stepper == StepperKind::sat
                                       ? sat_propagate(sys, y0, q, m)
                                       : rk4_propagate(sys, y0, m);
    sys.solve_M(1.0, y1, local);
    sys.scatter(local, u);
  };
  if (config.serial_reference) {
    execute_serial(slab, task);
  } else {
    execute_layers(slab, task, config.workers);
  }
}

RunResult run(const SimulationConfig& config, const RunObserver& observer) {
  config.validate();
  const auto mesh = build_mesh(config.mesh);
  const auto space = std::make_shared<const DGSpace>(mesh, config.degree);
  const auto materials = uniform_material(*mesh, config.eps, config.mu);
  std::vector<double> wavespeed(mesh->num_elements());
  for (int e = 0; e < mesh->num_elements(); ++e) wavespeed[e] = materials[e].wavespeed();
  const FieldFunction exact = exact_solution(config.solution);

  RunResult result{l2_project(space, exact, 0.0), 0.0, std::nullopt, 0, 0, {}};
  FieldVector& u = result.solution;
  result.slab_energy.push_back(field_energy(u, materials));

  const double total = config.final_time;
  const int num_slabs = std::max(1, static_cast<int>(std::ceil(total / config.slab_height - 1e-12)));
  // Slabs always start from a flat front, so one pitched slab serves every full slab.
  std::optional<TentSlab> full;
  double t = 0;
  for (int s = 0; s < num_slabs; ++s) {
    const double height = s + 1 < num_slabs ? config.slab_height : total - t;
    std::optional<TentSlab> partial;
    const TentSlab* slab = nullptr;
    if (std::abs(height - config.slab_height) <= 1e-14 * config.slab_height) {
      if (!full) full = pitch_slab(mesh, wavespeed, config.slab_height, config.sigma);
      slab = &*full;
    } else {
      partial = pitch_slab(mesh, wavespeed, height, config.sigma);
      slab = &*partial;
    }
    if (observer.on_slab) observer.on_slab(*slab);
    advance_slab(*slab, *space, materials, config, u, observer);
    result.num_tents += slab->tents.size();
    t = s + 1 < num_slabs ? t + config.slab_height : total;
    result.slab_energy.push_back(field_energy(u, materials));
  }
  result.num_slabs = num_slabs;
  result.final_time = total;
  result.l2_error = l2_error(u, exact, total);
  return result;
}

ConvergenceReport convergence_study(const SimulationConfig& base, int levels,
                                    const RunObserver& observer) {
  if (levels < 2) throw InvalidArgument("a convergence study needs levels >= 2");
  base.validate();
  ConvergenceReport report;
  report.stepper = base.stepper;
  report.degree = base.degree;
  for (int level = 0; level < levels; ++level) {
    SimulationConfig cfg = base;
    const int f = 1 << level;
    cfg.mesh.nx *= f;
    cfg.mesh.ny *= f;
    cfg.mesh.n *= f;
    cfg.mesh.grading = std::pow(base.mesh.grading, 1.0 / f);
    const auto start = std::chrono::steady_clock::now();
    const RunResult res = run(cfg, observer);
    ConvergenceRow row;
    row.level = level;
    row.h = res.solution.space().mesh().mesh_size();
    row.dof = res.solution.space().size();
    row.error = *res.l2_error;
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!report.rows.empty()) row.rate = std::log2(report.rows.back().error / row.error);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace tentsolve
