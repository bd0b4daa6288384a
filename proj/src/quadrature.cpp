#include "tentsolve/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "tentsolve/error.hpp"

namespace tentsolve {

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw InvalidArgument("Gauss-Legendre rule needs n >= 1");
  QuadratureRule rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton iteration on P_n from the Chebyshev guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? x : p1;
      const double pnm1 = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pnm1) / (x * x - 1);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Map from [-1, 1] to [0, 1]; ascending order.
    rule.points[n - 1 - i] = {0.5 * (x + 1), 0};
    rule.weights[n - 1 - i] = 1.0 / ((1 - x * x) * dp * dp);
  }
  return rule;
}

QuadratureRule simplex_rule(int dim, int degree) {
  if (degree < 0) degree = 0;
  if (dim == 1) return gauss_legendre(degree / 2 + 1);
  if (dim != 2) throw InvalidArgument("simplex rules exist for dim 1 and 2");
  // x = u (1 - v), y = v, dx dy = (1 - v) du dv; the v integrand has degree + 1.
  const int n = (degree + 3) / 2;
  const QuadratureRule line = gauss_legendre(n);
  QuadratureRule rule;
  for (int j = 0; j < n; ++j) {
    const double v = line.points[j][0];
    for (int i = 0; i < n; ++i) {
      const double u = line.points[i][0];
      rule.points.push_back({u * (1 - v), v});
      rule.weights.push_back(line.weights[i] * line.weights[j] * (1 - v));
    }
  }
  return rule;
}

}  // namespace tentsolve
