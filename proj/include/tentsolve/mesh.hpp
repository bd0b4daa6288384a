#pragma once

#include <array>
#include <span>
#include <vector>

namespace tentsolve {

/// Spatial coordinates. One-dimensional meshes live on the x axis with y = 0.
using Point = std::array<double, 2>;

/// Affine map x = origin + J xref from the reference simplex. For 1D elements the
/// second row/column is the identity so that gradients can be handled as 2-vectors.
struct AffineMap {
  Point origin{};
  std::array<double, 4> jacobian{};  // row major
  std::array<double, 4> inverse{};
  double det = 0;

  Point to_physical(const Point& xref) const;
  Point to_reference(const Point& x) const;
  /// Maps a reference gradient to the physical one: J^{-T} g.
  Point physical_gradient(const Point& gref) const;
};

/// A codimension-one entity. The normal is the unit outward normal of `left`;
/// boundary facets have `right == -1`.
struct Facet {
  std::array<int, 2> vertices{-1, -1};  // 1D facets use vertices[0] only
  int left = -1;
  int right = -1;
  Point normal{};
  double measure = 0;

  bool on_boundary() const { return right < 0; }
};

class SpatialMesh {
 public:
  /// Builds a conforming simplicial mesh from vertex coordinates and a flat
  /// element-vertex list (dim + 1 entries per element). Triangles given in
  /// clockwise order are reoriented; degenerate elements throw SingularGeometry;
  /// non-conforming input (a facet shared by more than two elements) throws
  /// InvalidArgument.
  static SpatialMesh from_elements(int dim, std::vector<Point> vertices,
                                   std::vector<int> element_vertices);

  int dim() const { return dim_; }
  int vertices_per_element() const { return dim_ + 1; }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_elements() const { return static_cast<int>(element_vertices_.size()) / (dim_ + 1); }
  int num_facets() const { return static_cast<int>(facets_.size()); }

  const Point& vertex(int v) const { return vertices_[v]; }
  std::span<const Point> vertices() const { return vertices_; }
  std::span<const int> element(int e) const {
    return {element_vertices_.data() + static_cast<std::size_t>(e) * (dim_ + 1),
            static_cast<std::size_t>(dim_ + 1)};
  }
  std::span<const Facet> facets() const { return facets_; }
  const Facet& facet(int f) const { return facets_[f]; }
  /// Facet opposite local vertex i of element e.
  std::span<const int> element_facets(int e) const {
    return {element_facets_.data() + static_cast<std::size_t>(e) * (dim_ + 1),
            static_cast<std::size_t>(dim_ + 1)};
  }

  std::span<const int> vertex_elements(int v) const { return slice(v2e_offsets_, v2e_, v); }
  std::span<const int> vertex_neighbors(int v) const { return slice(v2v_offsets_, v2v_, v); }
  std::span<const int> vertex_facets(int v) const { return slice(v2f_offsets_, v2f_, v); }

  const AffineMap& element_map(int e) const { return maps_[e]; }
  double element_measure(int e) const;
  double element_diameter(int e) const;
  /// Smallest distance from a vertex of e to the opposite facet (the length in 1D).
  double element_min_altitude(int e) const;
  /// Local index of vertex v within element e, or -1.
  int local_vertex(int e, int v) const;

  double mesh_size() const;
  double total_measure() const;

 private:
  static std::span<const int> slice(const std::vector<int>& offsets,
                                    const std::vector<int>& data, int i) {
    return {data.data() + offsets[i], static_cast<std::size_t>(offsets[i + 1] - offsets[i])};
  }

  int dim_ = 0;
  std::vector<Point> vertices_;
  std::vector<int> element_vertices_;
  std::vector<int> element_facets_;
  std::vector<Facet> facets_;
  std::vector<AffineMap> maps_;
  std::vector<int> v2e_offsets_, v2e_;
  std::vector<int> v2v_offsets_, v2v_;
  std::vector<int> v2f_offsets_, v2f_;
};

/// n intervals on [a, b]. Each element is `grading` times the length of its left
/// neighbour, so grading < 1 refines towards b.
SpatialMesh build_interval_mesh(double a, double b, int n, double grading = 1.0);

/// Structured triangulation of [0, lx] x [0, ly]: every grid cell is split along the
/// diagonal from its lower-left to its upper-right corner.
SpatialMesh build_structured_triangle_mesh(double lx, double ly, int nx, int ny);

/// Gradient of the affine interpolant of vertex values on a simplex (dim+1 vertices).
Point affine_gradient(int dim, std::span<const Point> vertices, std::span<const double> values);

/// Gradient of the piecewise linear interpolant of per-vertex values on element e.
Point element_gradient_of_nodal(const SpatialMesh& mesh, std::span<const double> nodal_values,
                                int element);

}  // namespace tentsolve
