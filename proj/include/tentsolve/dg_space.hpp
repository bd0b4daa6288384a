#pragma once

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "tentsolve/basis.hpp"
#include "tentsolve/mesh.hpp"

namespace tentsolve {

/// Field components, in storage order.
enum Component : int { kEz = 0, kHx = 1, kHy = 2 };
inline constexpr int kNumComponents = 3;

using Vec3 = std::array<double, 3>;

/// Field values (Ez, Hx, Hy) as a function of position and time.
using FieldFunction = std::function<Vec3(const Point&, double)>;

struct Material {
  double eps = 1;
  double mu = 1;

  double wavespeed() const;
};

/// Facet quadrature with basis traces of both neighbours, precomputed once.
struct FacetTraces {
  std::vector<double> weights;                  // physical weights (include |F|)
  std::vector<std::array<double, 2>> lambda;    // barycentric of the facet vertices
  std::vector<double> left_values;              // [q * num_basis + k]
  std::vector<double> right_values;             // empty on the boundary
};

/// Discontinuous piecewise polynomials of degree p for the three TM components.
/// Coefficients are stored element by element, then component, then basis index.
class DGSpace {
 public:
  DGSpace(std::shared_ptr<const SpatialMesh> mesh, int degree);

  const SpatialMesh& mesh() const { return *mesh_; }
  std::shared_ptr<const SpatialMesh> mesh_ptr() const { return mesh_; }
  int degree() const { return reference_.degree; }
  int num_basis() const { return reference_.num_basis; }
  int element_block() const { return kNumComponents * reference_.num_basis; }
  std::size_t size() const {
    return static_cast<std::size_t>(mesh_->num_elements()) * element_block();
  }
  std::size_t offset(int element) const {
    return static_cast<std::size_t>(element) * element_block();
  }

  const ReferenceElement& reference() const { return reference_; }
  /// Diagonal entry of the element scalar mass matrix; identical for every basis
  /// function because the reference basis is orthonormal.
  double scalar_mass(int element) const { return std::abs(mesh_->element_map(element).det); }
  const FacetTraces& facet_traces(int facet) const { return facets_[facet]; }

 private:
  std::shared_ptr<const SpatialMesh> mesh_;
  ReferenceElement reference_;
  std::vector<FacetTraces> facets_;
};

class FieldVector {
 public:
  explicit FieldVector(std::shared_ptr<const DGSpace> space)
      : space_(std::move(space)), values_(space_->size(), 0.0) {}

  const DGSpace& space() const { return *space_; }
  std::shared_ptr<const DGSpace> space_ptr() const { return space_; }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  std::span<double> block(int element) {
    return {values_.data() + space_->offset(element),
            static_cast<std::size_t>(space_->element_block())};
  }
  std::span<const double> block(int element) const {
    return {values_.data() + space_->offset(element),
            static_cast<std::size_t>(space_->element_block())};
  }

 private:
  std::shared_ptr<const DGSpace> space_;
  std::vector<double> values_;
};

/// Element-wise L2 projection of f(., t).
FieldVector l2_project(std::shared_ptr<const DGSpace> space, const FieldFunction& f, double t);

/// Value of the discrete field at reference point xref of element e.
Vec3 evaluate(const FieldVector& u, int element, const Point& xref);

/// sqrt(sum over components of int (u_h - u)^2), with the degree 2p + 2 rule.
double l2_error(const FieldVector& u, const FieldFunction& exact, double t);

/// int eps Ez^2 + mu (Hx^2 + Hy^2) over the domain.
double field_energy(const FieldVector& u, std::span<const Material> materials);

std::vector<Material> uniform_material(const SpatialMesh& mesh, double eps, double mu);

}  // namespace tentsolve
