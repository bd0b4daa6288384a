#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <vector>

#include "tentsolve/error.hpp"
#include "tentsolve/io.hpp"
#include "tentsolve/runner.hpp"

namespace tentsolve::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string out = "out";
  std::string mesh = "structured";
  double lx = std::numbers::pi;
  double ly = std::numbers::pi;
  int nx = 8;
  int ny = 8;
  double a = 0;
  double b = std::numbers::pi;
  int n = 16;
  double grading = 1;
  int mesh_n = 0;
  int degree = 2;
  double final_time = std::numbers::sqrt2 * std::numbers::pi;
  double slab_height = 1.0;
  double sigma = 0.5;
  std::string stepper = "sat";
  int stages = 0;
  int subintervals = 0;
  int levels = 3;
  int workers = 1;
  double eps = 1;
  double mu = 1;
  std::string solution = "standing2d";
  bool serial_reference = false;
  double flux_jump_scale = 0.5;
  int samples = 33;
};

void add_options(CLI::App& app, Options& o) {
  app.add_option("--out,-o", o.out, "Output directory");
  app.add_option("--mesh", o.mesh, "Mesh kind")->check(CLI::IsMember({"structured", "interval"}));
  app.add_option("--lx", o.lx, "Domain width (structured)");
  app.add_option("--ly", o.ly, "Domain height (structured)");
  app.add_option("--nx", o.nx, "Cells in x (structured)");
  app.add_option("--ny", o.ny, "Cells in y (structured)");
  app.add_option("--a", o.a, "Left end (interval)");
  app.add_option("--b", o.b, "Right end (interval)");
  app.add_option("--n", o.n, "Cells (interval)");
  app.add_option("--grading", o.grading, "Ratio of consecutive interval lengths");
  app.add_option("--mesh-n,--mesh_n", o.mesh_n, "Sets nx, ny and n at once");
  app.add_option("--p,--degree", o.degree, "Polynomial degree");
  app.add_option("--final-time,--final_time", o.final_time, "Final time");
  app.add_option("--slab-height,--slab_height", o.slab_height, "Slab height");
  app.add_option("--sigma", o.sigma, "Causality safety factor");
  app.add_option("--stepper", o.stepper, "Time stepper (both: convergence only)")
      ->check(CLI::IsMember({"sat", "rk4", "both"}));
  app.add_option("--stages", o.stages, "SAT stages (0: p + 1)");
  app.add_option("--subintervals", o.subintervals, "Subintervals per tent (0: 2p)");
  app.add_option("--levels", o.levels, "Refinement levels (convergence)");
  app.add_option("--workers", o.workers, "OpenMP workers");
  app.add_option("--eps", o.eps, "Permittivity");
  app.add_option("--mu", o.mu, "Permeability");
  app.add_option("--solution", o.solution, "Initial data and exact solution");
  app.add_flag("--serial-reference,--serial_reference", o.serial_reference,
               "Process tents one by one in pitch order");
  app.add_option("--flux-jump-scale,--flux_jump_scale", o.flux_jump_scale,
                 "Factor on the upwind jump terms");
  app.add_option("--samples", o.samples, "Snapshot samples per direction");
}

SimulationConfig to_config(const Options& o, bool solution_given) {
  SimulationConfig c;
  c.mesh.kind = o.mesh == "interval" ? MeshKind::interval : MeshKind::structured2d;
  c.mesh.lx = o.lx;
  c.mesh.ly = o.ly;
  c.mesh.nx = o.mesh_n > 0 ? o.mesh_n : o.nx;
  c.mesh.ny = o.mesh_n > 0 ? o.mesh_n : o.ny;
  c.mesh.a = o.a;
  c.mesh.b = o.b;
  c.mesh.n = o.mesh_n > 0 ? o.mesh_n : o.n;
  c.mesh.grading = o.grading;
  c.degree = o.degree;
  c.final_time = o.final_time;
  c.slab_height = o.slab_height;
  c.sigma = o.sigma;
  c.stepper = o.stepper == "rk4" ? StepperKind::rk4 : StepperKind::sat;
  c.stages = o.stages;
  c.subintervals = o.subintervals;
  c.eps = o.eps;
  c.mu = o.mu;
  c.solution = o.solution;
  if (!solution_given && c.mesh.kind == MeshKind::interval) c.solution = "standing1d";
  c.workers = o.workers;
  c.serial_reference = o.serial_reference;
  c.flux_jump_scale = o.flux_jump_scale;
  return c;
}

// Re-loadable key = value form of every effective parameter.
void write_resolved(const fs::path& path, const std::string& command, const SimulationConfig& c,
                    const Options& o) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path.string());
  const auto d = [](double v) { return io::format_double(v); };
  f << "# command: " << command << '\n';
  if (c.mesh.kind == MeshKind::structured2d) {
    f << "mesh = structured\nlx = " << d(c.mesh.lx) << "\nly = " << d(c.mesh.ly)
      << "\nnx = " << c.mesh.nx << "\nny = " << c.mesh.ny << '\n';
  } else {
    f << "mesh = interval\na = " << d(c.mesh.a) << "\nb = " << d(c.mesh.b) << "\nn = " << c.mesh.n
      << "\ngrading = " << d(c.mesh.grading) << '\n';
  }
  f << "degree = " << c.degree << "\nfinal_time = " << d(c.final_time)
    << "\nslab_height = " << d(c.slab_height) << "\nsigma = " << d(c.sigma)
    << "\nstepper = " << o.stepper << "\nstages = " << c.resolved_stages()
    << "\nsubintervals = " << c.resolved_subintervals() << "\nlevels = " << o.levels
    << "\nworkers = " << c.workers << "\neps = " << d(c.eps) << "\nmu = " << d(c.mu)
    << "\nsolution = " << c.solution
    << "\nserial_reference = " << (c.serial_reference ? "true" : "false")
    << "\nflux_jump_scale = " << d(c.flux_jump_scale) << "\nsamples = " << o.samples << '\n';
  if (!f) throw Error("failed writing " + path.string());
}

int cmd_pitch(const SimulationConfig& c, const Options& o, const fs::path& out, std::ostream& os) {
  const auto mesh = build_mesh(c.mesh);
  const auto materials = uniform_material(*mesh, c.eps, c.mu);
  std::vector<double> wavespeed;
  for (const Material& m : materials) wavespeed.push_back(m.wavespeed());
  const TentSlab slab = pitch_slab(mesh, wavespeed, c.slab_height, c.sigma);
  const io::json stats = io::slab_stats(slab);
  io::write_json(out / "slab.json", io::slab_to_json(slab));
  io::write_json(out / "slab_stats.json", stats);
  write_resolved(out / "config_resolved.cfg", "pitch", c, o);
  os << "tents " << slab.tents.size() << "\nlayers " << slab.num_levels() << '\n';
  if (!slab.tents.empty()) {
    os << "min_height " << io::format_double(stats["min_height"].get<double>()) << '\n'
       << "max_height " << io::format_double(stats["max_height"].get<double>()) << '\n';
  }
  return 0;
}

int cmd_solve(const SimulationConfig& c, const Options& o, const fs::path& out, std::ostream& os) {
  if (o.stepper == "both") throw InvalidArgument("stepper 'both' is only valid for convergence");
  c.validate();
  const RunResult result = run(c);
  const auto space = result.solution.space_ptr();
  const FieldFunction exact = exact_solution(c.solution);
  const FieldVector initial = l2_project(space, exact, 0.0);
  const double initial_norm = l2_error(FieldVector(space), exact, 0.0);
  io::write_json(out / "snapshot_initial.json",
                 io::snapshot_to_json(initial, 0.0, o.samples, o.samples));
  io::write_json(out / "snapshot_final.json",
                 io::snapshot_to_json(result.solution, result.final_time, o.samples, o.samples));
  io::write_json(out / "error.json", {{"stepper", to_string(c.stepper)},
                                      {"degree", c.degree},
                                      {"final_time", result.final_time},
                                      {"dof", space->size()},
                                      {"tents", result.num_tents},
                                      {"slabs", result.num_slabs},
                                      {"l2_error", *result.l2_error},
                                      {"initial_norm", initial_norm},
                                      {"slab_energy", result.slab_energy}});
  write_resolved(out / "config_resolved.cfg", "solve", c, o);
  os << "stepper " << to_string(c.stepper) << "\ndof " << space->size() << "\ntents "
     << result.num_tents << "\nl2_error " << io::format_double(*result.l2_error) << '\n';
  return 0;
}

int cmd_convergence(const SimulationConfig& c, const Options& o, const fs::path& out,
                    std::ostream& os) {
  if (o.levels < 2) throw InvalidArgument("levels >= 2 required, got " + std::to_string(o.levels));
  c.validate();
  std::vector<StepperKind> kinds;
  if (o.stepper == "both") {
    kinds = {StepperKind::sat, StepperKind::rk4};
  } else {
    kinds = {c.stepper};
  }
  std::vector<ConvergenceReport> reports;
  for (StepperKind kind : kinds) {
    SimulationConfig cfg = c;
    cfg.stepper = kind;
    reports.push_back(convergence_study(cfg, o.levels));
  }
  std::ofstream csv(out / "report.csv");
  if (!csv) throw Error("cannot write " + (out / "report.csv").string());
  io::write_report_csv(csv, reports);
  write_resolved(out / "config_resolved.cfg", "convergence", c, o);
  io::write_report_csv(os, reports);
  return 0;
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Explicit mapped tent pitching for 2D TM Maxwell"};
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "Key = value configuration file");
  app.require_subcommand(1);
  Options opts;
  add_options(app, opts);
  CLI::App* pitch = app.add_subcommand("pitch", "Pitch one slab and write slab statistics");
  CLI::App* solve = app.add_subcommand("solve", "Run to the final time and write snapshots");
  CLI::App* conv = app.add_subcommand("convergence", "Refinement study, writes report.csv");
  for (CLI::App* sub : {pitch, solve, conv}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::FileError& e) {
    err << "error: config file " << e.what() << '\n';
    return 2;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  SimulationConfig config;
  fs::path dir;
  try {
    config = to_config(opts, app.count("--solution") > 0);
    if (opts.samples < 2) throw InvalidArgument("samples must be >= 2");
    dir = opts.out;
    fs::create_directories(dir);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (pitch->parsed()) return cmd_pitch(config, opts, dir, out);
    if (solve->parsed()) return cmd_solve(config, opts, dir, out);
    return cmd_convergence(config, opts, dir, out);
  } catch (const InvalidArgument& e) {
    err << "error: invalid configuration: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace tentsolve::cli
