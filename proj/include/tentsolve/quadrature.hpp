#pragma once

#include <vector>

#include "tentsolve/mesh.hpp"

namespace tentsolve {

struct QuadratureRule {
  std::vector<Point> points;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
};

/// n-point Gauss-Legendre rule on [0, 1] (coordinates in points[i][0]).
QuadratureRule gauss_legendre(int n);

/// Rule on the reference simplex ([0,1] or the triangle (0,0), (1,0), (0,1)) that
/// integrates polynomials of total degree `degree` exactly. Triangles use the
/// collapsed (Duffy) tensor product of Gauss-Legendre rules.
QuadratureRule simplex_rule(int dim, int degree);

}  // namespace tentsolve
