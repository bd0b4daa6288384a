#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "tentsolve/error.hpp"
#include "tentsolve/maxwell.hpp"

using namespace tentsolve;

namespace {

Point random_normal(std::mt19937& rng) {
  std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi);
  const double a = angle(rng);
  return {std::cos(a), std::sin(a)};
}

Vec3 random_state(std::mt19937& rng) {
  std::normal_distribution<double> nd;
  return {nd(rng), nd(rng), nd(rng)};
}

// Exact Riemann solution for eps = mu = 1 along n: with s = (n_y, -n_x) the normal
// system is d_t Ez + d_xi Ht = 0, d_t Ht + d_xi Ez = 0 with Ht = H.s; the invariant
// Ez + Ht travels with speed +1 (from the plus side), Ez - Ht with speed -1.
Vec3 riemann_flux(const Vec3& plus, const Vec3& minus, const Point& n) {
  const Point s{n[1], -n[0]};
  const double ht_plus = plus[1] * s[0] + plus[2] * s[1];
  const double ht_minus = minus[1] * s[0] + minus[2] * s[1];
  const double right_moving = plus[0] + ht_plus;
  const double left_moving = minus[0] - ht_minus;
  const double ez = 0.5 * (right_moving + left_moving);
  const double ht = 0.5 * (right_moving - left_moving);
  return {ht, ez * s[0], ez * s[1]};
}

}  // namespace

TEST_CASE("flux of equal states is the physical flux") {
  std::mt19937 rng(7);
  for (int i = 0; i < 100; ++i) {
    const Vec3 u = random_state(rng);
    const Point n = random_normal(rng);
    const Vec3 f = upwind_flux_2d(u, u, n);
    const Vec3 exact{u[1] * n[1] - u[2] * n[0], u[0] * n[1], -u[0] * n[0]};
    for (int c = 0; c < 3; ++c) {
      CHECK(std::abs(f[c] - exact[c]) <= 1e-14 * (1 + std::abs(exact[c])));
      CHECK(physical_flux(u, n)[c] == doctest::Approx(exact[c]));
    }
  }
}

TEST_CASE("upwind flux equals the exact Riemann flux for eps = mu = 1") {
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    const Vec3 a = random_state(rng), b = random_state(rng);
    const Point n = random_normal(rng);
    const Vec3 f = upwind_flux_2d(a, b, n, 0.5);
    const Vec3 r = riemann_flux(a, b, n);
    for (int c = 0; c < 3; ++c) CHECK(f[c] == doctest::Approx(r[c]).epsilon(1e-13).scale(1));
  }
}

TEST_CASE("upwind flux dissipates energy at any jump scale") {
  // f.[[u]] - [[Ez Ht]] >= 0, with equality for the central flux
  std::mt19937 rng(3);
  for (double scale : {0.0, 0.5, 1.0}) {
    for (int i = 0; i < 100; ++i) {
      const Vec3 a = random_state(rng), b = random_state(rng);
      const Point n = random_normal(rng);
      const Vec3 f = upwind_flux_2d(a, b, n, scale);
      const auto psi = [&](const Vec3& u) { return u[0] * (u[1] * n[1] - u[2] * n[0]); };
      double production = -(psi(a) - psi(b));
      for (int c = 0; c < 3; ++c) production += f[c] * (a[c] - b[c]);
      if (scale == 0.0) {
        CHECK(production == doctest::Approx(0.0).scale(1));
      } else {
        CHECK(production >= -1e-12);
      }
    }
  }
}

TEST_CASE("PEC ghost state gives a vanishing tangential electric field") {
  std::mt19937 rng(5);
  for (int i = 0; i < 20; ++i) {
    const Vec3 u = random_state(rng);
    const Point n = random_normal(rng);
    const Vec3 ghost = pec_ghost(u);
    CHECK(ghost[0] == -u[0]);
    const Vec3 f = upwind_flux_2d(u, ghost, n, 0.5);
    // the H rows carry Ez* only, which is zero on a conductor
    CHECK(std::abs(f[1]) < 1e-14);
    CHECK(std::abs(f[2]) < 1e-14);
  }
}

TEST_CASE("coupling matrix is symmetric with the expected determinant") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (int i = 0; i < 50; ++i) {
    const Point g{u(rng), u(rng)};
    const double eps = 1.3, mu = 0.8;
    const Mat3 c = pointwise_coupling_matrix(g, eps, mu);
    Eigen::Matrix3d m;
    for (int r = 0; r < 3; ++r) {
      for (int k = 0; k < 3; ++k) m(r, k) = c[r][k];
    }
    CHECK((m - m.transpose()).norm() == 0.0);
    const double g2 = g[0] * g[0] + g[1] * g[1];
    CHECK(m.determinant() == doctest::Approx(mu * (eps * mu - g2)));
    if (g2 < eps * mu) {
      const Vec3 b{u(rng), u(rng), u(rng)};
      const Vec3 x = solve_coupling(g, eps, mu, b);
      const Eigen::Vector3d oracle = m.lu().solve(Eigen::Vector3d(b[0], b[1], b[2]));
      for (int k = 0; k < 3; ++k) CHECK(x[k] == doctest::Approx(oracle[k]).epsilon(1e-12));
      const double lmin = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(m).eigenvalues().minCoeff();
      CHECK(lmin >= coercivity_bound(g, eps, mu) - 1e-12);
    }
  }
}

TEST_CASE("non-causal gradients are rejected") {
  CHECK_THROWS_AS(solve_coupling({1.0, 0.0}, 1, 1, {1, 0, 0}), SingularMass);
  CHECK_THROWS_AS(solve_coupling({0.8, 0.8}, 1, 1, {1, 0, 0}), SingularMass);
  CHECK_THROWS_AS(solve_pointwise_maxwell3d({1, 0, 0}, {0, 1, 0}, {0, 0, 2}, 1, 1), SingularMass);
}

TEST_CASE("closed-form 3D solve satisfies the defining identities") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> u(-1, 1), pos(0.5, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double eps = pos(rng), mu = pos(rng);
    Vector3d g{u(rng), u(rng), u(rng)};
    const double scale = 0.95 * std::sqrt(eps * mu) * std::abs(u(rng)) /
                         std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
    for (double& x : g) x *= scale;
    const Vector3d we{u(rng), u(rng), u(rng)}, wh{u(rng), u(rng), u(rng)};
    const auto [e, h] = solve_pointwise_maxwell3d(we, wh, g, eps, mu);
    const Eigen::Vector3d E(e[0], e[1], e[2]), H(h[0], h[1], h[2]), G(g[0], g[1], g[2]);
    const Eigen::Vector3d re = eps * E - H.cross(G) - Eigen::Vector3d(we[0], we[1], we[2]);
    const Eigen::Vector3d rh = mu * H + E.cross(G) - Eigen::Vector3d(wh[0], wh[1], wh[2]);
    CHECK(re.norm() <= 1e-12 * (1 + Eigen::Vector3d(we[0], we[1], we[2]).norm()));
    CHECK(rh.norm() <= 1e-12 * (1 + Eigen::Vector3d(wh[0], wh[1], wh[2]).norm()));
  }
}

TEST_CASE("TM coupling solve is the 3D closed form restricted to (Ez, Hx, Hy)") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (int i = 0; i < 50; ++i) {
    const Point g{u(rng), u(rng)};
    const Vec3 b{u(rng), u(rng), u(rng)};
    const Vec3 x = solve_coupling(g, 1.5, 0.9, b);
    const auto [e, h] = solve_pointwise_maxwell3d({0, 0, b[0]}, {b[1], b[2], 0}, {g[0], g[1], 0},
                                                  1.5, 0.9);
    CHECK(x[0] == doctest::Approx(e[2]).epsilon(1e-12));
    CHECK(x[1] == doctest::Approx(h[0]).epsilon(1e-12));
    CHECK(x[2] == doctest::Approx(h[1]).epsilon(1e-12));
    CHECK(std::abs(e[0]) + std::abs(e[1]) + std::abs(h[2]) < 1e-14);
  }
}
