#include "tentsolve/basis.hpp"

#include <cmath>

#include "tentsolve/error.hpp"

namespace tentsolve {

int scalar_dofs(int dim, int p) { return dim == 1 ? p + 1 : (p + 1) * (p + 2) / 2; }

double jacobi(double x, double alpha, double beta, int n) {
  const double ab = alpha + beta;
  const double gamma0 = std::pow(2.0, ab + 1) / (ab + 1) * std::tgamma(alpha + 1) *
                        std::tgamma(beta + 1) / std::tgamma(ab + 1);
  double p_prev = 1 / std::sqrt(gamma0);
  if (n == 0) return p_prev;
  const double gamma1 = (alpha + 1) * (beta + 1) / (ab + 3) * gamma0;
  double p = ((ab + 2) * x / 2 + (alpha - beta) / 2) / std::sqrt(gamma1);
  double a_old = 2 / (2 + ab) * std::sqrt((alpha + 1) * (beta + 1) / (ab + 3));
  for (int i = 1; i < n; ++i) {
    const double h1 = 2 * i + ab;
    const double a_new = 2 / (h1 + 2) *
                         std::sqrt((i + 1) * (i + 1 + ab) * (i + 1 + alpha) * (i + 1 + beta) /
                                   (h1 + 1) / (h1 + 3));
    const double b_new = -(alpha * alpha - beta * beta) / h1 / (h1 + 2);
    const double p_next = (-a_old * p_prev + (x - b_new) * p) / a_new;
    p_prev = p;
    p = p_next;
    a_old = a_new;
  }
  return p;
}

double jacobi_derivative(double x, double alpha, double beta, int n) {
  if (n == 0) return 0;
  return std::sqrt(n * (n + alpha + beta + 1)) * jacobi(x, alpha + 1, beta + 1, n - 1);
}

ModalBasis::ModalBasis(int dim, int degree) : dim_(dim), degree_(degree) {
  if (dim != 1 && dim != 2) throw InvalidArgument("modal basis exists for dim 1 and 2");
  if (degree < 0) throw InvalidArgument("polynomial degree must be non-negative");
  if (dim == 1) {
    for (int i = 0; i <= degree; ++i) modes_.push_back({i, 0});
  } else {
    for (int i = 0; i <= degree; ++i) {
      for (int j = 0; i + j <= degree; ++j) modes_.push_back({i, j});
    }
  }
}

// The triangle basis is the Dubiner basis of the biunit triangle
// (-1,-1), (1,-1), (-1,1), pulled back by r = 2x - 1, s = 2y - 1 and scaled by 2
// so that it is orthonormal on the unit reference triangle.
namespace {

struct Collapsed {
  double a, b;
};

Collapsed collapse(const Point& xref) {
  const double r = 2 * xref[0] - 1;
  const double s = 2 * xref[1] - 1;
  const double a = s != 1 ? 2 * (1 + r) / (1 - s) - 1 : -1;
  return {a, s};
}

}  // namespace

void ModalBasis::evaluate(const Point& xref, std::span<double> values) const {
  if (dim_ == 1) {
    const double r = 2 * xref[0] - 1;
    for (std::size_t k = 0; k < modes_.size(); ++k) {
      values[k] = std::sqrt(2.0) * jacobi(r, 0, 0, modes_[k][0]);
    }
    return;
  }
  const auto [a, b] = collapse(xref);
  for (std::size_t k = 0; k < modes_.size(); ++k) {
    const auto [i, j] = modes_[k];
    const double h1 = jacobi(a, 0, 0, i);
    const double h2 = jacobi(b, 2 * i + 1, 0, j);
    values[k] = 2 * std::sqrt(2.0) * h1 * h2 * std::pow(1 - b, i);
  }
}

void ModalBasis::evaluate_gradients(const Point& xref, std::span<Point> gradients) const {
  if (dim_ == 1) {
    const double r = 2 * xref[0] - 1;
    for (std::size_t k = 0; k < modes_.size(); ++k) {
      gradients[k] = {2 * std::sqrt(2.0) * jacobi_derivative(r, 0, 0, modes_[k][0]), 0};
    }
    return;
  }
  const auto [a, b] = collapse(xref);
  for (std::size_t k = 0; k < modes_.size(); ++k) {
    const auto [i, j] = modes_[k];
    const double fa = jacobi(a, 0, 0, i);
    const double dfa = jacobi_derivative(a, 0, 0, i);
    const double gb = jacobi(b, 2 * i + 1, 0, j);
    const double dgb = jacobi_derivative(b, 2 * i + 1, 0, j);
    const double half = 0.5 * (1 - b);
    double dr = dfa * gb;
    double ds = dfa * (gb * 0.5 * (1 + a));
    if (i > 0) {
      dr *= std::pow(half, i - 1);
      ds *= std::pow(half, i - 1);
    }
    double tmp = dgb * std::pow(half, i);
    if (i > 0) tmp -= 0.5 * i * gb * std::pow(half, i - 1);
    ds += fa * tmp;
    const double scale = std::pow(2.0, i + 0.5);
    // d/dx = 2 d/dr, d/dy = 2 d/ds, times the normalisation factor 2.
    gradients[k] = {4 * scale * dr, 4 * scale * ds};
  }
}

std::array<double, 3> reference_barycentric(int dim, const Point& xref) {
  if (dim == 1) return {1 - xref[0], xref[0], 0};
  return {1 - xref[0] - xref[1], xref[0], xref[1]};
}

ReferenceElement::ReferenceElement(int dim_, int degree_)
    : dim(dim_),
      degree(degree_),
      num_basis(scalar_dofs(dim_, degree_)),
      basis(dim_, degree_),
      rule(simplex_rule(dim_, 2 * degree_ + 2)) {
  const std::size_t nq = rule.size();
  const std::size_t nb = num_basis;
  values.resize(nq * nb);
  gradients.resize(nq * nb);
  barycentric.resize(nq);
  for (std::size_t q = 0; q < nq; ++q) {
    basis.evaluate(rule.points[q], std::span<double>(values.data() + q * nb, nb));
    basis.evaluate_gradients(rule.points[q], std::span<Point>(gradients.data() + q * nb, nb));
    barycentric[q] = reference_barycentric(dim, rule.points[q]);
  }
  for (int j = 0; j <= dim; ++j) {
    for (int d = 0; d < dim; ++d) {
      auto& mat = weighted_stiffness[j][d];
      mat.assign(nb * nb, 0.0);
      for (std::size_t q = 0; q < nq; ++q) {
        const double w = rule.weights[q] * barycentric[q][j];
        for (std::size_t k = 0; k < nb; ++k) {
          const double dk = w * gradients[q * nb + k][d];
          for (std::size_t l = 0; l < nb; ++l) mat[k * nb + l] += dk * values[q * nb + l];
        }
      }
    }
  }
}

}  // namespace tentsolve
