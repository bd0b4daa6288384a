#include "tentsolve/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

#include "tentsolve/error.hpp"

namespace tentsolve::io {

namespace {

// Locates the element containing x and its reference coordinates.
bool locate(const SpatialMesh& mesh, const Point& x, int& element, Point& xref) {
  constexpr double tol = 1e-10;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const Point r = mesh.element_map(e).to_reference(x);
    const bool inside = mesh.dim() == 1
                            ? r[0] >= -tol && r[0] <= 1 + tol
                            : r[0] >= -tol && r[1] >= -tol && r[0] + r[1] <= 1 + tol;
    if (inside) {
      element = e;
      xref = r;
      return true;
    }
  }
  return false;
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", value);
  return buf;
}

json mesh_to_json(const SpatialMesh& mesh) {
  json verts = json::array();
  for (const Point& p : mesh.vertices()) {
    verts.push_back(mesh.dim() == 1 ? json::array({p[0]}) : json::array({p[0], p[1]}));
  }
  json elems = json::array();
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const auto ev = mesh.element(e);
    elems.push_back(std::vector<int>(ev.begin(), ev.end()));
  }
  return {{"dim", mesh.dim()}, {"vertices", verts}, {"elements", elems}};
}

SpatialMesh mesh_from_json(const json& doc) {
  try {
    const int dim = doc.at("dim").get<int>();
    if (dim != 1 && dim != 2) throw InvalidArgument("mesh dim must be 1 or 2");
    std::vector<Point> verts;
    for (const auto& v : doc.at("vertices")) {
      if (static_cast<int>(v.size()) != dim) throw InvalidArgument("vertex has wrong dimension");
      verts.push_back({v[0].get<double>(), dim == 2 ? v[1].get<double>() : 0.0});
    }
    std::vector<int> elems;
    for (const auto& e : doc.at("elements")) {
      if (static_cast<int>(e.size()) != dim + 1) throw InvalidArgument("element has wrong size");
      for (const auto& v : e) elems.push_back(v.get<int>());
    }
    return SpatialMesh::from_elements(dim, std::move(verts), std::move(elems));
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed mesh JSON: ") + e.what());
  }
}

json slab_to_json(const TentSlab& slab) {
  json tents = json::array();
  for (const Tent& t : slab.tents) {
    tents.push_back({{"vertex", t.vertex},
                     {"t_bottom", t.t_bottom},
                     {"t_top", t.t_top},
                     {"level", t.level},
                     {"neighbors", t.neighbors},
                     {"neighbor_times", t.neighbor_times},
                     {"elements", t.elements}});
  }
  return {{"start", slab.start},
          {"end", slab.end},
          {"mesh", mesh_to_json(*slab.mesh)},
          {"tents", tents},
          {"levels", slab.levels}};
}

json slab_stats(const TentSlab& slab) {
  const int nv = slab.mesh->num_vertices();
  std::vector<double> sum(nv, 0.0), max_height(nv, 0.0);
  std::vector<int> count(nv, 0);
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0;
  for (const Tent& t : slab.tents) {
    const double h = t.height();
    lo = std::min(lo, h);
    hi = std::max(hi, h);
    sum[t.vertex] += h;
    max_height[t.vertex] = std::max(max_height[t.vertex], h);
    ++count[t.vertex];
  }
  json mean = json::array();
  for (int v = 0; v < nv; ++v) mean.push_back(count[v] ? sum[v] / count[v] : 0.0);
  std::vector<std::size_t> per_layer;
  for (const auto& layer : slab.levels) per_layer.push_back(layer.size());
  const bool empty = slab.tents.empty();
  return {{"start", slab.start},
          {"end", slab.end},
          {"tent_count", slab.tents.size()},
          {"min_height", empty ? json(nullptr) : json(lo)},
          {"max_height", empty ? json(nullptr) : json(hi)},
          {"layer_count", slab.levels.size()},
          {"tents_per_layer", per_layer},
          {"max_layer_width",
           per_layer.empty() ? 0 : *std::max_element(per_layer.begin(), per_layer.end())},
          {"max_front_slope", max_front_slope(slab)},
          {"vertex_tent_count", count},
          {"vertex_mean_height", mean},
          {"vertex_max_height", max_height}};
}

json snapshot_to_json(const FieldVector& u, double time, int nx, int ny) {
  const SpatialMesh& mesh = u.space().mesh();
  if (nx < 2 || (mesh.dim() == 2 && ny < 2)) throw InvalidArgument("need at least 2 samples");
  const DGSpace& space = u.space();
  json coeffs = json::array();
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const auto b = u.block(e);
    coeffs.push_back(std::vector<double>(b.begin(), b.end()));
  }
  Point lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point hi{-lo[0], -lo[1]};
  for (const Point& p : mesh.vertices()) {
    for (int d = 0; d < 2; ++d) {
      lo[d] = std::min(lo[d], p[d]);
      hi[d] = std::max(hi[d], p[d]);
    }
  }
  const int rows = mesh.dim() == 1 ? 1 : ny;
  json samples = json::array();
  for (int j = 0; j < rows; ++j) {
    for (int i = 0; i < nx; ++i) {
      const Point x{lo[0] + (hi[0] - lo[0]) * i / (nx - 1),
                    rows == 1 ? lo[1] : lo[1] + (hi[1] - lo[1]) * j / (ny - 1)};
      int e = -1;
      Point r{};
      if (!locate(mesh, x, e, r)) continue;
      const Vec3 v = evaluate(u, e, r);
      samples.push_back({x[0], x[1], v[kEz], v[kHx], v[kHy]});
    }
  }
  return {{"time", time},
          {"dim", mesh.dim()},
          {"degree", space.degree()},
          {"num_basis", space.num_basis()},
          {"components", {"Ez", "Hx", "Hy"}},
          {"coefficients", coeffs},
          {"sample_columns", {"x", "y", "Ez", "Hx", "Hy"}},
          {"samples", samples}};
}

json config_to_json(const SimulationConfig& c) {
  json mesh;
  if (c.mesh.kind == MeshKind::structured2d) {
    mesh = {{"kind", "structured"}, {"lx", c.mesh.lx}, {"ly", c.mesh.ly},
            {"nx", c.mesh.nx}, {"ny", c.mesh.ny}};
  } else {
    mesh = {{"kind", "interval"}, {"a", c.mesh.a}, {"b", c.mesh.b},
            {"n", c.mesh.n}, {"grading", c.mesh.grading}};
  }
  return {{"mesh", mesh},
          {"degree", c.degree},
          {"final_time", c.final_time},
          {"slab_height", c.slab_height},
          {"sigma", c.sigma},
          {"stepper", to_string(c.stepper)},
          {"stages", c.resolved_stages()},
          {"subintervals", c.resolved_subintervals()},
          {"eps", c.eps},
          {"mu", c.mu},
          {"solution", c.solution},
          {"workers", c.workers},
          {"serial_reference", c.serial_reference},
          {"flux_jump_scale", c.flux_jump_scale}};
}

void write_report_csv(std::ostream& out, std::span<const ConvergenceReport> reports) {
  out << kReportHeader << '\n';
  for (const ConvergenceReport& r : reports) {
    for (const ConvergenceRow& row : r.rows) {
      out << to_string(r.stepper) << ',' << r.degree << ',' << row.level << ','
          << format_double(row.h) << ',' << row.dof << ',' << format_double(row.error) << ','
          << (row.rate ? format_double(*row.rate) : "") << '\n';
    }
  }
}

void write_json(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace tentsolve::io
