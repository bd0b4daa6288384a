#include "tentsolve/dg_space.hpp"

#include <cmath>

#include "tentsolve/error.hpp"

namespace tentsolve {

double Material::wavespeed() const { return 1.0 / std::sqrt(eps * mu); }

DGSpace::DGSpace(std::shared_ptr<const SpatialMesh> mesh, int degree)
    : mesh_(std::move(mesh)), reference_(mesh_->dim(), degree) {
  const SpatialMesh& m = *mesh_;
  const int nb = reference_.num_basis;
  const QuadratureRule line = gauss_legendre(degree + 2);
  facets_.resize(m.num_facets());
  for (int f = 0; f < m.num_facets(); ++f) {
    const Facet& facet = m.facet(f);
    FacetTraces& tr = facets_[f];
    std::vector<Point> points;
    if (m.dim() == 1) {
      points.push_back(m.vertex(facet.vertices[0]));
      tr.weights.push_back(1.0);
      tr.lambda.push_back({1.0, 0.0});
    } else {
      const Point& a = m.vertex(facet.vertices[0]);
      const Point& b = m.vertex(facet.vertices[1]);
      for (std::size_t q = 0; q < line.size(); ++q) {
        const double s = line.points[q][0];
        points.push_back({(1 - s) * a[0] + s * b[0], (1 - s) * a[1] + s * b[1]});
        tr.weights.push_back(line.weights[q] * facet.measure);
        tr.lambda.push_back({1 - s, s});
      }
    }
    auto fill = [&](int element, std::vector<double>& out) {
      const AffineMap& map = m.element_map(element);
      out.resize(points.size() * nb);
      for (std::size_t q = 0; q < points.size(); ++q) {
        reference_.basis.evaluate(map.to_reference(points[q]),
                                  std::span<double>(out.data() + q * nb, nb));
      }
    };
    fill(facet.left, tr.left_values);
    if (!facet.on_boundary()) fill(facet.right, tr.right_values);
  }
}

std::vector<Material> uniform_material(const SpatialMesh& mesh, double eps, double mu) {
  if (!(eps > 0) || !(mu > 0)) throw InvalidArgument("material parameters must be positive");
  return std::vector<Material>(mesh.num_elements(), Material{eps, mu});
}

FieldVector l2_project(std::shared_ptr<const DGSpace> space, const FieldFunction& f, double t) {
  FieldVector u(space);
  const ReferenceElement& ref = space->reference();
  const SpatialMesh& mesh = space->mesh();
  const int nb = ref.num_basis;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const AffineMap& map = mesh.element_map(e);
    auto block = u.block(e);
    // Orthonormal reference basis: coefficient = int_ref u(F(x)) psi_k.
    for (std::size_t q = 0; q < ref.rule.size(); ++q) {
      const Vec3 val = f(map.to_physical(ref.rule.points[q]), t);
      for (int c = 0; c < kNumComponents; ++c) {
        const double w = ref.rule.weights[q] * val[c];
        for (int k = 0; k < nb; ++k) block[c * nb + k] += w * ref.values[q * nb + k];
      }
    }
  }
  return u;
}

Vec3 evaluate(const FieldVector& u, int element, const Point& xref) {
  const DGSpace& space = u.space();
  const int nb = space.num_basis();
  std::vector<double> vals(nb);
  space.reference().basis.evaluate(xref, vals);
  const auto block = u.block(element);
  Vec3 out{};
  for (int c = 0; c < kNumComponents; ++c) {
    for (int k = 0; k < nb; ++k) out[c] += block[c * nb + k] * vals[k];
  }
  return out;
}

double l2_error(const FieldVector& u, const FieldFunction& exact, double t) {
  const DGSpace& space = u.space();
  const ReferenceElement& ref = space.reference();
  const SpatialMesh& mesh = space.mesh();
  const int nb = ref.num_basis;
  double sum = 0;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const AffineMap& map = mesh.element_map(e);
    const auto block = u.block(e);
    double local = 0;
    for (std::size_t q = 0; q < ref.rule.size(); ++q) {
      const Vec3 ex = exact(map.to_physical(ref.rule.points[q]), t);
      for (int c = 0; c < kNumComponents; ++c) {
        double uh = 0;
        for (int k = 0; k < nb; ++k) uh += block[c * nb + k] * ref.values[q * nb + k];
        const double d = uh - ex[c];
        local += ref.rule.weights[q] * d * d;
      }
    }
    sum += local * space.scalar_mass(e);
  }
  return std::sqrt(sum);
}

double field_energy(const FieldVector& u, std::span<const Material> materials) {
  const DGSpace& space = u.space();
  const int nb = space.num_basis();
  double sum = 0;
  for (int e = 0; e < space.mesh().num_elements(); ++e) {
    const auto block = u.block(e);
    const double weights[3] = {materials[e].eps, materials[e].mu, materials[e].mu};
    double local = 0;
    for (int c = 0; c < kNumComponents; ++c) {
      for (int k = 0; k < nb; ++k) local += weights[c] * block[c * nb + k] * block[c * nb + k];
    }
    sum += local * space.scalar_mass(e);
  }
  return sum;
}

}  // namespace tentsolve
