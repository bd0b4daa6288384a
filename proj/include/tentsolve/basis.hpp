#pragma once

#include <array>
#include <span>
#include <vector>

#include "tentsolve/mesh.hpp"
#include "tentsolve/quadrature.hpp"

namespace tentsolve {

/// Number of polynomials of total degree <= p in dim variables.
int scalar_dofs(int dim, int p);

/// Normalised Jacobi polynomial P_n^{(alpha, beta)} on [-1, 1] (unit weighted L2 norm).
double jacobi(double x, double alpha, double beta, int n);
double jacobi_derivative(double x, double alpha, double beta, int n);

/// L2-orthonormal modal basis of total degree p on the reference simplex:
/// scaled Legendre polynomials on [0, 1] and the Dubiner basis on the triangle.
class ModalBasis {
 public:
  ModalBasis(int dim, int degree);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  int size() const { return static_cast<int>(modes_.size()); }

  void evaluate(const Point& xref, std::span<double> values) const;
  void evaluate_gradients(const Point& xref, std::span<Point> gradients) const;

 private:
  int dim_;
  int degree_;
  std::vector<std::array<int, 2>> modes_;
};

/// Barycentric coordinates of a reference point.
std::array<double, 3> reference_barycentric(int dim, const Point& xref);

/// Basis data shared by all elements of one (dim, degree).
struct ReferenceElement {
  ReferenceElement(int dim, int degree);

  int dim;
  int degree;
  int num_basis;
  ModalBasis basis;
  QuadratureRule rule;                  // exact to degree 2p + 2
  std::vector<double> values;           // [q * num_basis + k]
  std::vector<Point> gradients;         // [q * num_basis + k]
  std::vector<std::array<double, 3>> barycentric;  // per quadrature point
  /// weighted_stiffness[j][d][k * num_basis + l] = int lambda_j psi_l d_d psi_k over the
  /// reference simplex; d is the reference direction.
  std::array<std::array<std::vector<double>, 2>, 3> weighted_stiffness;
};

}  // namespace tentsolve
