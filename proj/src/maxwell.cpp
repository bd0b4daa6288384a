#include "tentsolve/maxwell.hpp"

#include <algorithm>
#include <cmath>

#include "tentsolve/error.hpp"

namespace tentsolve {

namespace {

Vector3d cross(const Vector3d& a, const Vector3d& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double dot(const Vector3d& a, const Vector3d& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

void check_causal(double g2, double eps, double mu) {
  if (!(eps * mu - g2 > 1e-12 * eps * mu)) {
    throw SingularMass("causality violated: |grad phi|^2 = " + std::to_string(g2) +
                       " >= eps*mu = " + std::to_string(eps * mu));
  }
}

}  // namespace

Mat3 pointwise_coupling_matrix(const Point& g, double eps, double mu) {
  return {{{eps, -g[1], g[0]}, {-g[1], mu, 0.0}, {g[0], 0.0, mu}}};
}

Vec3 solve_coupling(const Point& g, double eps, double mu, const Vec3& b) {
  const double g2 = g[0] * g[0] + g[1] * g[1];
  check_causal(g2, eps, mu);
  // Eliminate H: (eps - |g|^2 / mu) Ez = b0 + (g_y b1 - g_x b2) / mu.
  const double ez = (b[0] + (g[1] * b[1] - g[0] * b[2]) / mu) / (eps - g2 / mu);
  return {ez, (b[1] + g[1] * ez) / mu, (b[2] - g[0] * ez) / mu};
}

Vec3 physical_flux(const Vec3& u, const Point& n) {
  return {u[kHx] * n[1] - u[kHy] * n[0], u[kEz] * n[1], -u[kEz] * n[0]};
}

Vec3 upwind_flux_2d(const Vec3& plus, const Vec3& minus, const Point& n, double jump_scale) {
  const double ez_mean = 0.5 * (plus[kEz] + minus[kEz]);
  const double hx_mean = 0.5 * (plus[kHx] + minus[kHx]);
  const double hy_mean = 0.5 * (plus[kHy] + minus[kHy]);
  const double jump_ez = plus[kEz] - minus[kEz];
  const double jump_hx = plus[kHx] - minus[kHx];
  const double jump_hy = plus[kHy] - minus[kHy];
  const double jump_hn = jump_hx * n[0] + jump_hy * n[1];
  return {hx_mean * n[1] - hy_mean * n[0] + jump_scale * jump_ez,
          ez_mean * n[1] + jump_scale * (jump_hx - jump_hn * n[0]),
          -ez_mean * n[0] + jump_scale * (jump_hy - jump_hn * n[1])};
}

std::pair<Vector3d, Vector3d> solve_pointwise_maxwell3d(const Vector3d& w_e, const Vector3d& w_h,
                                                        const Vector3d& g, double eps,
                                                        double mu) {
  const double g2 = dot(g, g);
  check_causal(g2, eps, mu);
  const double em = eps * mu;
  const double scale = 1.0 / (em - g2);
  // (I - g g^T / (eps mu)) r / (eps mu - |g|^2)
  auto project = [&](const Vector3d& r) {
    const double gr = dot(g, r) / em;
    return Vector3d{scale * (r[0] - gr * g[0]), scale * (r[1] - gr * g[1]),
                    scale * (r[2] - gr * g[2])};
  };
  const Vector3d hxg = cross(w_h, g);
  const Vector3d exg = cross(w_e, g);
  const Vector3d re{mu * w_e[0] + hxg[0], mu * w_e[1] + hxg[1], mu * w_e[2] + hxg[2]};
  const Vector3d rh{eps * w_h[0] - exg[0], eps * w_h[1] - exg[1], eps * w_h[2] - exg[2]};
  return {project(re), project(rh)};
}

double coercivity_bound(const Point& g, double eps, double mu) {
  return (1 - std::hypot(g[0], g[1]) / std::sqrt(eps * mu)) * std::min(eps, mu);
}

}  // namespace tentsolve
