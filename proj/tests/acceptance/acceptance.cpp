// Acceptance checks. Prints one PASS/FAIL line per criterion and exits non-zero if
// any fails. `--slow` adds the degree-4 convergence run.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <mutex>
#include <numbers>
#include <random>
#include <string>

#include "tentsolve/layers.hpp"
#include "tentsolve/maxwell.hpp"
#include "tentsolve/runner.hpp"

using namespace tentsolve;

namespace {

constexpr int kLevels = 4;             // 8x8 .. 64x64
// RK4 at p = 2 needs 128x128: on coarser meshes its time error hides below the
// spatial error and the finest-pair rate still looks like third order.
constexpr int kRk4LevelsP2 = 5;
constexpr double kRateBand = 0.3;      // SAT rate in [p + 1 - 0.3, p + 1 + 0.3]
constexpr double kRk4Ceiling = 1.5;    // RK4 finest-pair rate
constexpr double kResidualTol = 1e-12;
constexpr double kEigenTol = 1e-12;
constexpr double kVolumeTol = 1e-10;
constexpr double kSlopeTol = 1e-12;
constexpr double kScalarTol = 1e-13;
constexpr double kHalvingBand = 0.2;

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
  std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

SimulationConfig standing_mode(int degree, StepperKind stepper) {
  SimulationConfig c;
  c.degree = degree;
  c.stepper = stepper;
  return c;  // [0, pi]^2, 8x8, T = sqrt(2) pi, sigma = 1/2, q = p + 1, m = 2p
}

// Coercivity of the element coupling matrices and tiling/slope of every slab.
struct Monitor {
  std::mutex lock;
  double worst_eigen_margin = INFINITY;  // min eigenvalue minus the bound
  double min_eigen = INFINITY;
  double worst_volume = 0;
  double worst_slope_excess = -INFINITY;
  std::size_t matrices = 0, slabs = 0;

  RunObserver observer() {
    RunObserver o;
    o.on_tent = [this](const TentSystem& sys) { tent(sys); };
    o.on_slab = [this](const TentSlab& s) { slab(s); };
    return o;
  }

  void tent(const TentSystem& sys) {
    double margin = INFINITY, lmin = INFINITY;
    for (std::size_t i = 0; i < sys.elements().size(); ++i) {
      const PatchElement& el = sys.elements()[i];
      const double eps = el.material.eps, mu = el.material.mu;
      for (double that : {0.0, 0.5, 1.0}) {
        const Mat3 c = sys.coupling(static_cast<int>(i), that);
        Eigen::Matrix3d m;
        for (int r = 0; r < 3; ++r) {
          for (int k = 0; k < 3; ++k) m(r, k) = c[r][k];
        }
        const double l = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(m, Eigen::EigenvaluesOnly)
                             .eigenvalues()
                             .minCoeff();
        const Point g = el.grad_phi(that);
        const double bound = (1 - std::hypot(g[0], g[1]) / std::sqrt(eps * mu)) * std::min(eps, mu);
        margin = std::min(margin, l - bound);
        lmin = std::min(lmin, l);
      }
    }
    std::lock_guard g(lock);
    worst_eigen_margin = std::min(worst_eigen_margin, margin);
    min_eigen = std::min(min_eigen, lmin);
    matrices += 3 * sys.elements().size();
  }

  // Replays the fronts: integrates delta with the exact vertex rule and measures the
  // per-element slope after every tent by solving for the gradient of the front.
  void slab(const TentSlab& s) {
    const SpatialMesh& mesh = *s.mesh;
    std::vector<double> tau(mesh.num_vertices(), s.start);
    double volume = 0, excess = -INFINITY;
    for (const Tent& t : s.tents) {
      tau[t.vertex] = t.t_top;
      for (int e : t.elements) {
        volume += mesh.element_measure(e) * t.height() / 3;
        const auto ev = mesh.element(e);
        Eigen::Matrix2d j;
        Eigen::Vector2d d;
        for (int k = 0; k < 2; ++k) {
          j(k, 0) = mesh.vertex(ev[k + 1])[0] - mesh.vertex(ev[0])[0];
          j(k, 1) = mesh.vertex(ev[k + 1])[1] - mesh.vertex(ev[0])[1];
          d[k] = tau[ev[k + 1]] - tau[ev[0]];
        }
        const double slope = j.fullPivLu().solve(d).norm();
        excess = std::max(excess, slope - 0.5 / 1.0);  // sigma / c with eps = mu = 1
      }
    }
    const double expected = mesh.total_measure() * (s.end - s.start);
    std::lock_guard g(lock);
    worst_volume = std::max(worst_volume, std::abs(volume - expected) / expected);
    worst_slope_excess = std::max(worst_slope_excess, excess);
    ++slabs;
  }
};

void print_report(const ConvergenceReport& rep) {
  for (const auto& r : rep.rows) {
    std::printf("  %s p=%d level=%d h=%.4e dof=%zu error=%.6e rate=%s (%.1fs)\n",
                to_string(rep.stepper).c_str(), rep.degree, r.level, r.h, r.dof, r.error,
                r.rate ? fmt("%.3f", *r.rate).c_str() : "-", r.seconds);
  }
  std::fflush(stdout);
}

double finest_rate(const ConvergenceReport& rep) { return *rep.rows.back().rate; }

void convergence(bool slow, Monitor& monitor, std::vector<ConvergenceReport>& sat) {
  std::vector<int> degrees{1, 2, 3};
  if (slow) degrees.push_back(4);
  for (int p : degrees) {
    const ConvergenceReport rep =
        convergence_study(standing_mode(p, StepperKind::sat), kLevels, monitor.observer());
    print_report(rep);
    const double rate = finest_rate(rep);
    report(std::abs(rate - (p + 1)) <= kRateBand, fmt("convergence SAT p=%d", p),
           fmt("finest rate %.3f, required [%.1f, %.1f]", rate, p + 1 - kRateBand, p + 1 + kRateBand));
    sat.push_back(rep);
  }
}

void order_reduction(const std::vector<ConvergenceReport>& sat) {
  for (int p : {2, 3}) {
    const int levels = p == 2 ? kRk4LevelsP2 : kLevels;
    const ConvergenceReport rep = convergence_study(standing_mode(p, StepperKind::rk4), levels);
    print_report(rep);
    const double rk4 = finest_rate(rep);
    const double sat_rate = finest_rate(sat[p - 1]);
    report(rk4 <= kRk4Ceiling && sat_rate >= p + 1 - kRateBand,
           fmt("RK4 order reduction p=%d", p),
           fmt("RK4 finest rate %.3f (required <= %.1f), SAT %.3f (required >= %.1f)", rk4,
               kRk4Ceiling, sat_rate, p + 1 - kRateBand));
  }
}

void closed_form_solve() {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(-1, 1), pos(0.2, 5.0), frac(0, 0.999);
  double worst_residual = 0, worst_diff = 0;
  for (int i = 0; i < 1000; ++i) {
    const double eps = pos(rng), mu = pos(rng);
    Eigen::Vector3d g(u(rng), u(rng), u(rng));
    g *= frac(rng) * std::sqrt(eps * mu) / g.norm();  // causal: |g| < sqrt(eps mu)
    const Eigen::Vector3d we(u(rng), u(rng), u(rng)), wh(u(rng), u(rng), u(rng));
    const auto [e, h] = solve_pointwise_maxwell3d({we[0], we[1], we[2]}, {wh[0], wh[1], wh[2]},
                                                  {g[0], g[1], g[2]}, eps, mu);
    const Eigen::Vector3d E(e[0], e[1], e[2]), H(h[0], h[1], h[2]);
    const double scale = std::max(we.norm(), wh.norm());
    worst_residual = std::max(worst_residual, (eps * E - H.cross(g) - we).norm() / scale);
    worst_residual = std::max(worst_residual, (mu * H + E.cross(g) - wh).norm() / scale);

    // eps E + [g]x H = w_E, -[g]x E + mu H = w_H
    Eigen::Matrix3d gx;
    gx << 0, -g[2], g[1], g[2], 0, -g[0], -g[1], g[0], 0;
    Eigen::Matrix<double, 6, 6> a;
    a << eps * Eigen::Matrix3d::Identity(), gx, -gx, mu * Eigen::Matrix3d::Identity();
    Eigen::Matrix<double, 6, 1> rhs;
    rhs << we, wh;
    const Eigen::Matrix<double, 6, 1> x = a.fullPivLu().solve(rhs);
    Eigen::Matrix<double, 6, 1> mine;
    mine << E, H;
    worst_diff = std::max(worst_diff, (mine - x).norm() / x.norm());
  }
  report(worst_residual <= kResidualTol, "closed-form solve residual",
         fmt("worst relative residual %.2e over 1000 inputs, tolerance %.0e", worst_residual, kResidualTol));
  report(worst_diff <= kResidualTol, "closed-form solve vs 6x6 LU",
         fmt("worst relative difference %.2e, tolerance %.0e", worst_diff, kResidualTol));
}

struct Scalar {
  double m0 = 1, m1 = 0, a = 0;
  std::size_t size() const { return 1; }
  void apply_A(std::span<const double> u, std::span<double> o) const { o[0] = a * u[0]; }
  void apply_M(double t, std::span<const double> u, std::span<double> o) const { o[0] = (m0 + m1 * t) * u[0]; }
  void apply_dM(std::span<const double> u, std::span<double> o) const { o[0] = m1 * u[0]; }
  void solve_M(double t, std::span<const double> y, std::span<double> o) const { o[0] = y[0] / (m0 + m1 * t); }
};

void scalar_oracles() {
  double worst = 0;
  for (double a : {-2.0, -0.5, 0.7}) {
    for (int q = 1; q <= 8; ++q) {
      const std::vector<double> y0{1.3};
      double expected = 0, term = 1.3;
      for (int k = 0; k <= q; ++k) {
        expected += term;
        term *= a / (k + 1);
      }
      const double got = sat_propagate(Scalar{1, 0, a}, y0, q, 1)[0];
      worst = std::max(worst, std::abs(got - expected) / std::abs(expected));
    }
  }
  report(worst <= kScalarTol, "scalar SAT truncated exponential",
         fmt("worst relative error %.2e, tolerance %.0e", worst, kScalarTol));

  worst = 0;
  for (int q = 1; q <= 6; ++q) {
    for (int m : {1, 2, 7}) {
      const Scalar s{1, 1, 0};
      const std::vector<double> y0{0.9};
      const auto y1 = sat_propagate(s, y0, q, m);
      std::vector<double> u1(1);
      s.solve_M(1.0, y1, u1);
      worst = std::max({worst, std::abs(y1[0] - 0.9) / 0.9, std::abs(u1[0] - 0.45) / 0.45});
    }
  }
  report(worst <= kScalarTol, "scalar SAT growing mass, zero operator",
         fmt("worst relative error %.2e (Y(1) = Y(0), U(1) = U(0) / 2), tolerance %.0e", worst,
             kScalarTol));
}

void parallel_determinism() {
  SimulationConfig c = standing_mode(2, StepperKind::sat);
  c.mesh.nx = c.mesh.ny = 32;
  c.workers = 1;
  const RunResult one = run(c);
  c.workers = std::max(4, max_workers());
  const RunResult many = run(c);
  c.serial_reference = true;
  const RunResult serial = run(c);
  const auto& a = one.solution.values();
  const bool same = std::equal(a.begin(), a.end(), many.solution.values().begin());
  const bool same_serial = std::equal(a.begin(), a.end(), serial.solution.values().begin());
  report(same && same_serial, "parallel determinism",
         fmt("32x32 p=2, 1 vs %d workers %s, serial reference %s", std::max(4, max_workers()),
             same ? "bit-identical" : "DIFFER", same_serial ? "bit-identical" : "DIFFERS"));
}

// RMS over the patch of the first quasi-time derivative for the tent at (pi/4, pi/4).
double first_coefficient_rms(int n) {
  SimulationConfig c = standing_mode(2, StepperKind::sat);
  c.mesh.nx = c.mesh.ny = n;
  const auto mesh = build_mesh(c.mesh);
  const auto space = std::make_shared<const DGSpace>(mesh, c.degree);
  const auto materials = uniform_material(*mesh, 1, 1);
  const TentSlab slab =
      pitch_slab(mesh, std::vector<double>(mesh->num_elements(), 1.0), c.slab_height, c.sigma);
  const FieldVector u0 = l2_project(space, exact_solution(c.solution), 0.0);
  const double q = std::numbers::pi / 4;
  int vertex = 0;
  for (int v = 0; v < mesh->num_vertices(); ++v) {
    const Point& x = mesh->vertex(v);
    const Point& best = mesh->vertex(vertex);
    if (std::hypot(x[0] - q, x[1] - q) < std::hypot(best[0] - q, best[1] - q)) vertex = v;
  }
  const auto tent = std::find_if(slab.tents.begin(), slab.tents.end(),
                                 [&](const Tent& t) { return t.vertex == vertex; });
  const TentSystem sys(*tent, *space, materials);
  std::vector<double> local(sys.size());
  sys.gather(u0, local);
  const auto u1 = taylor_order_probe(sys, local, 1, c.resolved_stages() - 1);
  double sum = 0, area = 0;
  const int block = sys.block();
  for (std::size_t i = 0; i < sys.elements().size(); ++i) {
    for (int k = 0; k < block; ++k) sum += sys.elements()[i].mass * u1[i * block + k] * u1[i * block + k];
    area += mesh->element_measure(sys.elements()[i].element);
  }
  return std::sqrt(sum / area);
}

void taylor_scaling() {
  const double n8 = first_coefficient_rms(8), n16 = first_coefficient_rms(16),
               n32 = first_coefficient_rms(32);
  const double r1 = n8 / n16, r2 = n16 / n32;
  const bool ok = std::abs(r1 / 2 - 1) <= kHalvingBand && std::abs(r2 / 2 - 1) <= kHalvingBand;
  report(ok, "first Taylor coefficient h-scaling",
         fmt("norms %.4e, %.4e, %.4e; ratios %.3f, %.3f, required 2 +- %.0f%%", n8, n16, n32, r1, r2,
             100 * kHalvingBand));
}

}  // namespace

int main(int argc, char** argv) {
  bool slow = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--slow") == 0) slow = true;
  }

  scalar_oracles();
  closed_form_solve();
  taylor_scaling();
  parallel_determinism();

  Monitor monitor;
  std::vector<ConvergenceReport> sat;
  convergence(slow, monitor, sat);
  report(monitor.worst_eigen_margin >= -kEigenTol && monitor.min_eigen > 0, "coupling coercivity",
         fmt("%zu matrices, min eigenvalue %.4f, worst margin over the bound %.2e", monitor.matrices,
             monitor.min_eigen, monitor.worst_eigen_margin));
  report(monitor.worst_volume <= kVolumeTol && monitor.worst_slope_excess <= kSlopeTol,
         "tent tiling and causality",
         fmt("%zu slabs, worst volume mismatch %.2e (tol %.0e), max slope - sigma/c = %.2e (tol %.0e)",
             monitor.slabs, monitor.worst_volume, kVolumeTol, monitor.worst_slope_excess, kSlopeTol));
  order_reduction(sat);

  std::printf("%s: %d criterion line(s) failed\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
