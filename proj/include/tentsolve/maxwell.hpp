#pragma once

#include <array>
#include <utility>

#include "tentsolve/dg_space.hpp"
#include "tentsolve/mesh.hpp"

namespace tentsolve {

using Mat3 = std::array<std::array<double, 3>, 3>;
using Vector3d = std::array<double, 3>;

/// Pointwise matrix of u -> g(u) - f(u) grad(phi) for the TM fields (Ez, Hx, Hy):
///   [[eps, -phi_y, phi_x], [-phi_y, mu, 0], [phi_x, 0, mu]].
Mat3 pointwise_coupling_matrix(const Point& gradphi, double eps, double mu);

/// Solves C x = b for the coupling matrix. Throws SingularMass when
/// |grad phi|^2 >= eps mu (to a relative 1e-12).
Vec3 solve_coupling(const Point& gradphi, double eps, double mu, const Vec3& b);

/// f(u) n for the TM system: (Hx n_y - Hy n_x, Ez n_y, -Ez n_x).
Vec3 physical_flux(const Vec3& u, const Point& n);

/// Upwind flux with tangential jump penalty; `plus` is the trace on the side whose
/// outward normal is n. jump_scale = 0.5 is the Godunov (upwind) flux, 1 doubles the penalty.
Vec3 upwind_flux_2d(const Vec3& plus, const Vec3& minus, const Point& n, double jump_scale = 0.5);

/// Perfect electric conductor ghost state: Ez -> -Ez, H unchanged.
inline Vec3 pec_ghost(const Vec3& inner) { return {-inner[0], inner[1], inner[2]}; }

/// Closed-form solution of eps E - H x gradphi = wE, mu H + E x gradphi = wH in 3D.
/// Throws SingularMass unless |gradphi|^2 < eps mu.
std::pair<Vector3d, Vector3d> solve_pointwise_maxwell3d(const Vector3d& w_e, const Vector3d& w_h,
                                                        const Vector3d& gradphi, double eps,
                                                        double mu);

/// Lower bound (1 - |grad phi| / sqrt(eps mu)) min(eps, mu) on the smallest eigenvalue
/// of the coupling matrix.
double coercivity_bound(const Point& gradphi, double eps, double mu);

}  // namespace tentsolve
