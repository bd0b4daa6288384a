#pragma once

#include <array>
#include <span>
#include <vector>

#include "tentsolve/dg_space.hpp"
#include "tentsolve/maxwell.hpp"
#include "tentsolve/tents.hpp"

namespace tentsolve {

struct FluxOptions {
  /// Factor on the tangential jump terms of the upwind flux (0.5 = Godunov).
  double jump_scale = 0.5;
};

/// Element of the tent patch with the constant-per-element front data.
struct PatchElement {
  int element = -1;
  std::array<double, 3> delta{};  // tent height at the element vertices
  Point grad_bottom{};
  Point grad_delta{};
  Material material{};
  double mass = 0;  // scalar mass diagonal

  Point grad_phi(double that) const {
    return {grad_bottom[0] + that * grad_delta[0], grad_bottom[1] + that * grad_delta[1]};
  }
};

/// Facet with non-zero tent height. `right_local == -1` marks a PEC domain boundary.
struct PatchFacet {
  int facet = -1;
  int left_local = -1;
  int right_local = -1;
  std::array<double, 2> delta{};  // tent height at the facet vertices
};

/// The mapped semidiscrete system d/dthat (M(that) U) = A U on one tent, with
/// M(that) = M(0) + that M' and, on every element, M = C(that) (x) diag(mass).
/// Local vectors hold the patch elements in order, each as a (component, basis) block.
/// Operators are matrix-free; all methods are const and thread-safe.
class TentSystem {
 public:
  TentSystem(const Tent& tent, const DGSpace& space, std::span<const Material> materials,
             FluxOptions flux = {});

  std::size_t size() const { return elements_.size() * block_; }
  int block() const { return block_; }
  const DGSpace& space() const { return *space_; }
  std::span<const PatchElement> elements() const { return elements_; }
  std::span<const PatchFacet> facets() const { return facets_; }
  int center() const { return center_; }

  Mat3 coupling(int local_element, double that) const;

  void apply_A(std::span<const double> u, std::span<double> out) const;
  void apply_M(double that, std::span<const double> u, std::span<double> out) const;
  /// Applies M' = dM/dthat.
  void apply_dM(std::span<const double> u, std::span<double> out) const;
  void solve_M(double that, std::span<const double> y, std::span<double> out) const;

  void gather(const FieldVector& global, std::span<double> local) const;
  void scatter(std::span<const double> local, FieldVector& global) const;

 private:
  void add_volume_terms(const PatchElement& el, std::span<const double> u,
                        std::span<double> out) const;
  void add_facet_terms(const PatchFacet& pf, std::span<const double> u,
                       std::span<double> out) const;

  const DGSpace* space_;
  int center_;
  int block_;
  FluxOptions flux_;
  std::vector<PatchElement> elements_;
  std::vector<PatchFacet> facets_;
};

inline TentSystem assemble_tent_system(const Tent& tent, const DGSpace& space,
                                       std::span<const Material> materials,
                                       FluxOptions flux = {}) {
  return TentSystem(tent, space, materials, flux);
}

/// Nodal tent height on the vertices of a facet; zero on facets away from the centre.
std::array<double, 2> facet_delta(const SpatialMesh& mesh, const Tent& tent, int facet);

}  // namespace tentsolve
