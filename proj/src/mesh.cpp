#include "tentsolve/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "tentsolve/error.hpp"

namespace tentsolve {

namespace {

double distance(const Point& a, const Point& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

AffineMap make_map(int dim, std::span<const Point> v) {
  AffineMap map;
  map.origin = v[0];
  if (dim == 1) {
    const double len = v[1][0] - v[0][0];
    map.jacobian = {len, 0, 0, 1};
    map.det = len;
  } else {
    map.jacobian = {v[1][0] - v[0][0], v[2][0] - v[0][0], v[1][1] - v[0][1], v[2][1] - v[0][1]};
    map.det = map.jacobian[0] * map.jacobian[3] - map.jacobian[1] * map.jacobian[2];
  }
  const auto& j = map.jacobian;
  const double scale = std::max({std::abs(j[0]), std::abs(j[1]), std::abs(j[2]), std::abs(j[3])});
  if (!(std::abs(map.det) > 1e-14 * scale * scale)) {
    throw SingularGeometry("degenerate simplex (det J = " + std::to_string(map.det) + ")");
  }
  map.inverse = {j[3] / map.det, -j[1] / map.det, -j[2] / map.det, j[0] / map.det};
  return map;
}

// CSR adjacency from per-row lists.
void to_csr(const std::vector<std::vector<int>>& rows, std::vector<int>& offsets,
            std::vector<int>& data) {
  offsets.assign(rows.size() + 1, 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    offsets[i + 1] = offsets[i] + static_cast<int>(rows[i].size());
  }
  data.clear();
  data.reserve(offsets.back());
  for (const auto& r : rows) data.insert(data.end(), r.begin(), r.end());
}

}  // namespace

Point AffineMap::to_physical(const Point& xref) const {
  return {origin[0] + jacobian[0] * xref[0] + jacobian[1] * xref[1],
          origin[1] + jacobian[2] * xref[0] + jacobian[3] * xref[1]};
}

Point AffineMap::to_reference(const Point& x) const {
  const double dx = x[0] - origin[0];
  const double dy = x[1] - origin[1];
  return {inverse[0] * dx + inverse[1] * dy, inverse[2] * dx + inverse[3] * dy};
}

Point AffineMap::physical_gradient(const Point& g) const {
  return {inverse[0] * g[0] + inverse[2] * g[1], inverse[1] * g[0] + inverse[3] * g[1]};
}

SpatialMesh SpatialMesh::from_elements(int dim, std::vector<Point> vertices,
                                       std::vector<int> element_vertices) {
  if (dim != 1 && dim != 2) throw InvalidArgument("mesh dimension must be 1 or 2");
  const int nv_el = dim + 1;
  if (element_vertices.empty() || element_vertices.size() % nv_el != 0) {
    throw InvalidArgument("element vertex list must hold dim+1 indices per element");
  }
  const int nv = static_cast<int>(vertices.size());
  for (int idx : element_vertices) {
    if (idx < 0 || idx >= nv) throw InvalidArgument("element references unknown vertex");
  }

  SpatialMesh mesh;
  mesh.dim_ = dim;
  mesh.vertices_ = std::move(vertices);
  mesh.element_vertices_ = std::move(element_vertices);
  const int ne = mesh.num_elements();

  // Orientation: increasing x in 1D, counter-clockwise in 2D.
  for (int e = 0; e < ne; ++e) {
    int* ev = mesh.element_vertices_.data() + static_cast<std::size_t>(e) * nv_el;
    if (dim == 1) {
      if (mesh.vertices_[ev[1]][0] < mesh.vertices_[ev[0]][0]) std::swap(ev[0], ev[1]);
    } else {
      const Point& a = mesh.vertices_[ev[0]];
      const Point& b = mesh.vertices_[ev[1]];
      const Point& c = mesh.vertices_[ev[2]];
      const double cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
      if (cross < 0) std::swap(ev[1], ev[2]);
    }
    std::array<Point, 3> pts{};
    for (int i = 0; i < nv_el; ++i) pts[i] = mesh.vertices_[ev[i]];
    mesh.maps_.push_back(make_map(dim, std::span<const Point>(pts.data(), nv_el)));
  }

  // Facets: local facet i of an element is opposite local vertex i.
  mesh.element_facets_.assign(static_cast<std::size_t>(ne) * nv_el, -1);
  std::map<std::pair<int, int>, int> lookup;
  for (int e = 0; e < ne; ++e) {
    const auto ev = mesh.element(e);
    for (int i = 0; i < nv_el; ++i) {
      std::array<int, 2> fv{-1, -1};
      if (dim == 1) {
        fv[0] = ev[1 - i];
      } else {
        fv = {ev[(i + 1) % 3], ev[(i + 2) % 3]};
      }
      const auto key = std::minmax(fv[0], fv[1]);
      auto it = lookup.find(key);
      if (it == lookup.end()) {
        Facet f;
        f.vertices = fv;
        f.left = e;
        if (dim == 1) {
          f.normal = {i == 0 ? 1.0 : -1.0, 0.0};
          f.measure = 1.0;
        } else {
          const Point& a = mesh.vertices_[fv[0]];
          const Point& b = mesh.vertices_[fv[1]];
          const double len = distance(a, b);
          f.normal = {(b[1] - a[1]) / len, -(b[0] - a[0]) / len};
          f.measure = len;
        }
        lookup.emplace(key, mesh.num_facets());
        mesh.element_facets_[static_cast<std::size_t>(e) * nv_el + i] = mesh.num_facets();
        mesh.facets_.push_back(f);
      } else {
        Facet& f = mesh.facets_[it->second];
        if (f.right >= 0) throw InvalidArgument("non-conforming mesh: facet shared by three elements");
        f.right = e;
        mesh.element_facets_[static_cast<std::size_t>(e) * nv_el + i] = it->second;
      }
    }
  }

  std::vector<std::vector<int>> v2e(nv), v2v(nv), v2f(nv);
  for (int e = 0; e < ne; ++e) {
    const auto ev = mesh.element(e);
    for (int i = 0; i < nv_el; ++i) {
      v2e[ev[i]].push_back(e);
      for (int j = 0; j < nv_el; ++j) {
        if (j != i) v2v[ev[i]].push_back(ev[j]);
      }
    }
  }
  for (int f = 0; f < mesh.num_facets(); ++f) {
    for (int v : mesh.facets_[f].vertices) {
      if (v >= 0) v2f[v].push_back(f);
    }
  }
  for (auto& row : v2v) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  to_csr(v2e, mesh.v2e_offsets_, mesh.v2e_);
  to_csr(v2v, mesh.v2v_offsets_, mesh.v2v_);
  to_csr(v2f, mesh.v2f_offsets_, mesh.v2f_);
  return mesh;
}

double SpatialMesh::element_measure(int e) const {
  return dim_ == 1 ? std::abs(maps_[e].det) : 0.5 * std::abs(maps_[e].det);
}

double SpatialMesh::element_diameter(int e) const {
  const auto ev = element(e);
  double d = 0;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    for (std::size_t j = i + 1; j < ev.size(); ++j) {
      d = std::max(d, distance(vertices_[ev[i]], vertices_[ev[j]]));
    }
  }
  return d;
}

double SpatialMesh::element_min_altitude(int e) const {
  if (dim_ == 1) return element_measure(e);
  const auto ev = element(e);
  double longest = 0;
  for (int i = 0; i < 3; ++i) {
    longest = std::max(longest, distance(vertices_[ev[(i + 1) % 3]], vertices_[ev[(i + 2) % 3]]));
  }
  return 2.0 * element_measure(e) / longest;
}

int SpatialMesh::local_vertex(int e, int v) const {
  const auto ev = element(e);
  for (std::size_t i = 0; i < ev.size(); ++i) {
    if (ev[i] == v) return static_cast<int>(i);
  }
  return -1;
}

double SpatialMesh::mesh_size() const {
  double h = 0;
  for (int e = 0; e < num_elements(); ++e) h = std::max(h, element_diameter(e));
  return h;
}

double SpatialMesh::total_measure() const {
  double sum = 0;
  for (int e = 0; e < num_elements(); ++e) sum += element_measure(e);
  return sum;
}

SpatialMesh build_interval_mesh(double a, double b, int n, double grading) {
  if (n < 1) throw InvalidArgument("interval mesh needs n >= 1");
  if (!(grading > 0)) throw InvalidArgument("interval mesh grading must be positive");
  if (!(a < b)) throw InvalidArgument("interval mesh needs a < b");
  std::vector<double> lengths(n);
  double g = 1;
  for (int i = 0; i < n; ++i, g *= grading) lengths[i] = g;
  const double total = std::accumulate(lengths.begin(), lengths.end(), 0.0);
  std::vector<Point> vertices(n + 1);
  double x = 0;
  vertices[0] = {a, 0};
  for (int i = 0; i < n; ++i) {
    x += lengths[i];
    vertices[i + 1] = {a + (b - a) * x / total, 0};
  }
  vertices[n] = {b, 0};
  std::vector<int> elements;
  elements.reserve(2 * n);
  for (int i = 0; i < n; ++i) {
    elements.push_back(i);
    elements.push_back(i + 1);
  }
  return SpatialMesh::from_elements(1, std::move(vertices), std::move(elements));
}

SpatialMesh build_structured_triangle_mesh(double lx, double ly, int nx, int ny) {
  if (nx < 1 || ny < 1) throw InvalidArgument("structured mesh needs nx, ny >= 1");
  if (!(lx > 0) || !(ly > 0)) throw InvalidArgument("structured mesh needs positive extents");
  std::vector<Point> vertices;
  vertices.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) vertices.push_back({lx * i / nx, ly * j / ny});
  }
  auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  std::vector<int> elements;
  elements.reserve(static_cast<std::size_t>(nx) * ny * 6);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      elements.insert(elements.end(), {id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      elements.insert(elements.end(), {id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return SpatialMesh::from_elements(2, std::move(vertices), std::move(elements));
}

Point affine_gradient(int dim, std::span<const Point> v, std::span<const double> values) {
  if (dim == 1) {
    const double len = v[1][0] - v[0][0];
    if (!(std::abs(len) > 0)) throw SingularGeometry("zero-length interval");
    return {(values[1] - values[0]) / len, 0};
  }
  // Solve J^T g = (u1 - u0, u2 - u0).
  const double a = v[1][0] - v[0][0], b = v[1][1] - v[0][1];
  const double c = v[2][0] - v[0][0], d = v[2][1] - v[0][1];
  const double det = a * d - b * c;
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (!(std::abs(det) > 1e-14 * scale * scale)) throw SingularGeometry("degenerate triangle");
  const double r0 = values[1] - values[0];
  const double r1 = values[2] - values[0];
  return {(d * r0 - b * r1) / det, (-c * r0 + a * r1) / det};
}

Point element_gradient_of_nodal(const SpatialMesh& mesh, std::span<const double> nodal_values,
                                int element) {
  if (element < 0 || element >= mesh.num_elements()) throw InvalidArgument("element out of range");
  if (static_cast<int>(nodal_values.size()) != mesh.num_vertices()) {
    throw InvalidArgument("need one nodal value per vertex");
  }
  const auto ev = mesh.element(element);
  std::array<Point, 3> pts{};
  std::array<double, 3> vals{};
  for (std::size_t i = 0; i < ev.size(); ++i) {
    pts[i] = mesh.vertex(ev[i]);
    vals[i] = nodal_values[ev[i]];
  }
  return affine_gradient(mesh.dim(), std::span<const Point>(pts.data(), ev.size()),
                         std::span<const double>(vals.data(), ev.size()));
}

}  // namespace tentsolve
