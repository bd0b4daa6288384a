#pragma once

#include <algorithm>
#include <array>
#include <concepts>
#include <cstddef>
#include <span>
#include <vector>

#include "tentsolve/error.hpp"

namespace tentsolve {

/// d/dthat (M(that) U) = A U with M affine in that and A constant.
template <class S>
concept QuasiTimeSystem = requires(const S& s, double t, std::span<const double> in,
                                   std::span<double> out) {
  { s.size() } -> std::convertible_to<std::size_t>;
  s.apply_A(in, out);
  s.apply_M(t, in, out);
  s.apply_dM(in, out);
  s.solve_M(t, in, out);
};

/// Taylor coefficients of one SAT subinterval (i, Y_{i,0..q}, U_{i,0..q-1}).
struct TaylorState {
  int subinterval = 0;
  double start = 0;  // that_i = i / m
  std::vector<std::vector<double>> y;
  std::vector<std::vector<double>> u;
};

enum class StepperKind { sat, rk4 };

/// Structure-aware Taylor time stepping of Y = M U from that = 0 to 1 with q stages on
/// m subintervals. On subinterval i:
///   M_i U_{i,0} = Y_{i,0},  Y_{i,n} = A U_{i,n-1} (1 <= n <= q),
///   M_i U_{i,n} = Y_{i,n} - n M' U_{i,n-1} (1 <= n <= q-1),
/// and Y_{i+1,0} is the degree-q Taylor polynomial evaluated (Horner) at that_{i+1}.
/// Pass `trace` to keep the coefficients of every subinterval.
template <QuasiTimeSystem S>
std::vector<double> sat_propagate(const S& sys, std::span<const double> y0, int q, int m,
                                  std::vector<TaylorState>* trace = nullptr) {
  if (q < 1) throw InvalidArgument("SAT needs at least one stage");
  if (m < 1) throw InvalidArgument("SAT needs at least one subinterval");
  const std::size_t n = sys.size();
  if (y0.size() != n) throw InvalidArgument("initial vector has the wrong size");
  const double dt = 1.0 / m;
  // Work vectors: q + 1 Y coefficients, the current and next U coefficient, a temporary.
  std::vector<std::vector<double>> ycoef(q + 1, std::vector<double>(n));
  std::vector<double> u_prev(n), u_next(n), tmp(n);
  std::copy(y0.begin(), y0.end(), ycoef[0].begin());
  for (int i = 0; i < m; ++i) {
    const double ti = i * dt;
    TaylorState* state = nullptr;
    if (trace) {
      trace->push_back({i, ti, {}, {}});
      state = &trace->back();
    }
    sys.solve_M(ti, ycoef[0], u_prev);
    if (state) state->u.push_back(u_prev);
    for (int k = 1; k <= q; ++k) {
      sys.apply_A(u_prev, ycoef[k]);
      if (k <= q - 1) {
        sys.apply_dM(u_prev, tmp);
        for (std::size_t j = 0; j < n; ++j) tmp[j] = ycoef[k][j] - k * tmp[j];
        sys.solve_M(ti, tmp, u_next);
        std::swap(u_prev, u_next);
        if (state) state->u.push_back(u_prev);
      }
    }
    if (state) state->y = ycoef;
    // Horner: Y(ti + dt) = sum_k dt^k / k! Y_k.
    std::vector<double>& acc = tmp;
    acc = ycoef[q];
    for (int k = q - 1; k >= 0; --k) {
      const double f = dt / (k + 1);
      for (std::size_t j = 0; j < n; ++j) acc[j] = ycoef[k][j] + f * acc[j];
    }
    std::swap(ycoef[0], acc);
  }
  return ycoef[0];
}

/// Classical four-stage Runge-Kutta on Y' = A M(that)^{-1} Y with step 1 / m.
template <QuasiTimeSystem S>
std::vector<double> rk4_propagate(const S& sys, std::span<const double> y0, int m) {
  if (m < 1) throw InvalidArgument("RK4 needs at least one subinterval");
  const std::size_t n = sys.size();
  if (y0.size() != n) throw InvalidArgument("initial vector has the wrong size");
  const double h = 1.0 / m;
  std::vector<double> y(y0.begin(), y0.end()), stage(n), u(n);
  std::array<std::vector<double>, 4> k;
  for (auto& v : k) v.resize(n);
  auto rhs = [&](double t, std::span<const double> yy, std::span<double> out) {
    sys.solve_M(t, yy, u);
    sys.apply_A(u, out);
  };
  for (int i = 0; i < m; ++i) {
    const double t = i * h;
    rhs(t, y, k[0]);
    for (std::size_t j = 0; j < n; ++j) stage[j] = y[j] + 0.5 * h * k[0][j];
    rhs(t + 0.5 * h, stage, k[1]);
    for (std::size_t j = 0; j < n; ++j) stage[j] = y[j] + 0.5 * h * k[1][j];
    rhs(t + 0.5 * h, stage, k[2]);
    for (std::size_t j = 0; j < n; ++j) stage[j] = y[j] + h * k[2][j];
    rhs(t + h, stage, k[3]);
    for (std::size_t j = 0; j < n; ++j) {
      y[j] += h / 6 * (k[0][j] + 2 * k[1][j] + 2 * k[2][j] + k[3][j]);
    }
  }
  return y;
}

/// n-th Taylor coefficient U^{(n)}(0) generated by the SAT recursion from U(0) = u0.
/// `max_order` is the highest coefficient the configured scheme forms (q - 1).
template <QuasiTimeSystem S>
std::vector<double> taylor_order_probe(const S& sys, std::span<const double> u0, int n,
                                       int max_order) {
  if (n < 0 || n > max_order) throw InvalidArgument("Taylor coefficient order out of range");
  const std::size_t size = sys.size();
  std::vector<double> u(u0.begin(), u0.end()), y(size), tmp(size);
  for (int k = 1; k <= n; ++k) {
    sys.apply_A(u, y);
    sys.apply_dM(u, tmp);
    for (std::size_t j = 0; j < size; ++j) tmp[j] = y[j] - k * tmp[j];
    sys.solve_M(0.0, tmp, u);
  }
  return u;
}

}  // namespace tentsolve
