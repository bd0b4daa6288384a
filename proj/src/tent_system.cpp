#include "tentsolve/tent_system.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tentsolve/error.hpp"

namespace tentsolve {

namespace {

constexpr int kMaxBasis = 66;   // degree 10 on triangles
constexpr int kMaxFacetPoints = 16;

}  // namespace

std::array<double, 2> facet_delta(const SpatialMesh& mesh, const Tent& tent, int facet) {
  const Facet& f = mesh.facet(facet);
  std::array<double, 2> delta{};
  for (int i = 0; i < 2; ++i) {
    if (f.vertices[i] == tent.vertex) delta[i] = tent.height();
  }
  return delta;
}

TentSystem::TentSystem(const Tent& tent, const DGSpace& space, std::span<const Material> materials,
                       FluxOptions flux)
    : space_(&space), center_(tent.vertex), block_(space.element_block()), flux_(flux) {
  const SpatialMesh& mesh = space.mesh();
  if (space.num_basis() > kMaxBasis) throw InvalidArgument("polynomial degree too high");
  elements_.reserve(tent.elements.size());
  for (int e : tent.elements) {
    const TentElementData data = tent_phi(mesh, tent, e, 0.0);
    PatchElement el;
    el.element = e;
    el.delta = data.delta;
    el.grad_bottom = data.grad_bottom;
    el.grad_delta = data.grad_delta;
    el.material = materials[e];
    el.mass = space.scalar_mass(e);
    const double em = el.material.eps * el.material.mu;
    for (const Point& g : {data.grad_bottom, data.grad_top}) {
      if (!(g[0] * g[0] + g[1] * g[1] < em)) {
        throw SingularMass("tent at vertex " + std::to_string(tent.vertex) +
                           " violates causality on element " + std::to_string(e));
      }
    }
    elements_.push_back(el);
  }
  auto local_of = [&](int e) {
    const auto it = std::find(tent.elements.begin(), tent.elements.end(), e);
    return it == tent.elements.end() ? -1 : static_cast<int>(it - tent.elements.begin());
  };
  for (int f : mesh.vertex_facets(tent.vertex)) {
    const Facet& facet = mesh.facet(f);
    PatchFacet pf;
    pf.facet = f;
    pf.left_local = local_of(facet.left);
    pf.right_local = facet.on_boundary() ? -1 : local_of(facet.right);
    pf.delta = facet_delta(mesh, tent, f);
    if (pf.left_local < 0 || (!facet.on_boundary() && pf.right_local < 0)) {
      throw InvalidArgument("facet " + std::to_string(f) + " at the tent centre leaves the patch");
    }
    facets_.push_back(pf);
  }
}

Mat3 TentSystem::coupling(int i, double that) const {
  const PatchElement& el = elements_[i];
  return pointwise_coupling_matrix(el.grad_phi(that), el.material.eps, el.material.mu);
}

void TentSystem::add_volume_terms(const PatchElement& el, std::span<const double> u,
                                  std::span<double> out) const {
  const ReferenceElement& ref = space_->reference();
  const AffineMap& map = space_->mesh().element_map(el.element);
  const int nb = ref.num_basis;
  const int dim = ref.dim;
  for (int j = 0; j <= dim; ++j) {
    if (el.delta[j] == 0.0) continue;
    // grads[c][k] = int lambda_j u_c grad(psi_k) over the reference element
    std::array<std::array<Point, kMaxBasis>, 3> grads{};
    for (int d = 0; d < dim; ++d) {
      const double* mat = ref.weighted_stiffness[j][d].data();
      for (int c = 0; c < kNumComponents; ++c) {
        const double* uc = u.data() + c * nb;
        for (int k = 0; k < nb; ++k) {
          double s = 0;
          for (int l = 0; l < nb; ++l) s += mat[k * nb + l] * uc[l];
          grads[c][k][d] = s;
        }
      }
    }
    const double w = el.delta[j] * el.mass;
    for (int k = 0; k < nb; ++k) {
      const Point gez = map.physical_gradient(grads[kEz][k]);
      const Point ghx = map.physical_gradient(grads[kHx][k]);
      const Point ghy = map.physical_gradient(grads[kHy][k]);
      out[kEz * nb + k] += w * (ghx[1] - ghy[0]);
      out[kHx * nb + k] += w * gez[1];
      out[kHy * nb + k] -= w * gez[0];
    }
  }
}

void TentSystem::add_facet_terms(const PatchFacet& pf, std::span<const double> u,
                                 std::span<double> out) const {
  const Facet& facet = space_->mesh().facet(pf.facet);
  const FacetTraces& tr = space_->facet_traces(pf.facet);
  const int nb = space_->num_basis();
  const std::size_t nq = tr.weights.size();
  const double* ul = u.data() + static_cast<std::size_t>(pf.left_local) * block_;
  const double* ur =
      pf.right_local >= 0 ? u.data() + static_cast<std::size_t>(pf.right_local) * block_ : nullptr;
  std::array<Vec3, kMaxFacetPoints> flux{};
  for (std::size_t q = 0; q < nq; ++q) {
    Vec3 plus{}, minus{};
    const double* vl = tr.left_values.data() + q * nb;
    for (int c = 0; c < kNumComponents; ++c) {
      double s = 0;
      for (int k = 0; k < nb; ++k) s += vl[k] * ul[c * nb + k];
      plus[c] = s;
    }
    if (ur) {
      const double* vr = tr.right_values.data() + q * nb;
      for (int c = 0; c < kNumComponents; ++c) {
        double s = 0;
        for (int k = 0; k < nb; ++k) s += vr[k] * ur[c * nb + k];
        minus[c] = s;
      }
    } else {
      minus = pec_ghost(plus);
    }
    const double delta = pf.delta[0] * tr.lambda[q][0] + pf.delta[1] * tr.lambda[q][1];
    const double w = tr.weights[q] * delta;
    const Vec3 f = upwind_flux_2d(plus, minus, facet.normal, flux_.jump_scale);
    flux[q] = {w * f[0], w * f[1], w * f[2]};
  }
  // -int delta f_n [[v]] with [[v]] = v_left - v_right.
  double* ol = out.data() + static_cast<std::size_t>(pf.left_local) * block_;
  for (std::size_t q = 0; q < nq; ++q) {
    const double* vl = tr.left_values.data() + q * nb;
    for (int c = 0; c < kNumComponents; ++c) {
      for (int k = 0; k < nb; ++k) ol[c * nb + k] -= flux[q][c] * vl[k];
    }
  }
  if (pf.right_local >= 0) {
    double* orr = out.data() + static_cast<std::size_t>(pf.right_local) * block_;
    for (std::size_t q = 0; q < nq; ++q) {
      const double* vr = tr.right_values.data() + q * nb;
      for (int c = 0; c < kNumComponents; ++c) {
        for (int k = 0; k < nb; ++k) orr[c * nb + k] += flux[q][c] * vr[k];
      }
    }
  }
}

void TentSystem::apply_A(std::span<const double> u, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    add_volume_terms(elements_[i], u.subspan(i * block_, block_), out.subspan(i * block_, block_));
  }
  for (const PatchFacet& pf : facets_) add_facet_terms(pf, u, out);
}

void TentSystem::apply_M(double that, std::span<const double> u, std::span<double> out) const {
  const int nb = space_->num_basis();
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const Mat3 c = coupling(static_cast<int>(i), that);
    const double m = elements_[i].mass;
    const double* ui = u.data() + i * block_;
    double* oi = out.data() + i * block_;
    for (int k = 0; k < nb; ++k) {
      const double a = ui[kEz * nb + k], b = ui[kHx * nb + k], d = ui[kHy * nb + k];
      for (int r = 0; r < 3; ++r) oi[r * nb + k] = m * (c[r][0] * a + c[r][1] * b + c[r][2] * d);
    }
  }
}

void TentSystem::apply_dM(std::span<const double> u, std::span<double> out) const {
  const int nb = space_->num_basis();
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const PatchElement& el = elements_[i];
    const double gx = el.grad_delta[0] * el.mass;
    const double gy = el.grad_delta[1] * el.mass;
    const double* ui = u.data() + i * block_;
    double* oi = out.data() + i * block_;
    for (int k = 0; k < nb; ++k) {
      const double ez = ui[kEz * nb + k];
      oi[kEz * nb + k] = -gy * ui[kHx * nb + k] + gx * ui[kHy * nb + k];
      oi[kHx * nb + k] = -gy * ez;
      oi[kHy * nb + k] = gx * ez;
    }
  }
}

void TentSystem::solve_M(double that, std::span<const double> y, std::span<double> out) const {
  const int nb = space_->num_basis();
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const PatchElement& el = elements_[i];
    const Point g = el.grad_phi(that);
    const double inv_mass = 1.0 / el.mass;
    const double* yi = y.data() + i * block_;
    double* oi = out.data() + i * block_;
    for (int k = 0; k < nb; ++k) {
      const Vec3 b{yi[kEz * nb + k] * inv_mass, yi[kHx * nb + k] * inv_mass,
                   yi[kHy * nb + k] * inv_mass};
      const Vec3 x = solve_coupling(g, el.material.eps, el.material.mu, b);
      for (int c = 0; c < kNumComponents; ++c) oi[c * nb + k] = x[c];
    }
  }
}

void TentSystem::gather(const FieldVector& global, std::span<double> local) const {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const auto block = global.block(elements_[i].element);
    std::copy(block.begin(), block.end(), local.begin() + i * block_);
  }
}

void TentSystem::scatter(std::span<const double> local, FieldVector& global) const {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    auto block = global.block(elements_[i].element);
    std::copy_n(local.begin() + i * block_, block_, block.begin());
  }
}

}  // namespace tentsolve
