#include "tentsolve/tents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tentsolve/error.hpp"

namespace tentsolve {

double Tent::vertex_time(int v, bool top) const {
  if (v == vertex) return top ? t_top : t_bottom;
  for (std::size_t i = 0; i < neighbors.size(); ++i) {
    if (neighbors[i] == v) return neighbor_times[i];
  }
  throw InvalidArgument("vertex " + std::to_string(v) + " is not part of the tent patch");
}

TentSlab pitch_slab(std::shared_ptr<const SpatialMesh> mesh, std::span<const double> wavespeed,
                    double slab_height, double sigma, double start) {
  if (!mesh) throw InvalidArgument("pitch_slab needs a mesh");
  if (!(slab_height >= 0)) throw InvalidArgument("slab height must be non-negative");
  if (!(sigma > 0 && sigma < 1)) throw InvalidArgument("sigma must lie in (0, 1)");
  if (static_cast<int>(wavespeed.size()) != mesh->num_elements()) {
    throw InvalidArgument("need one wavespeed per element");
  }
  for (double c : wavespeed) {
    if (!(c > 0)) throw InvalidArgument("wavespeed must be positive");
  }

  const int nv = mesh->num_vertices();
  std::vector<double> element_bound(mesh->num_elements());
  for (int e = 0; e < mesh->num_elements(); ++e) {
    element_bound[e] = sigma * mesh->element_min_altitude(e) / wavespeed[e];
  }
  // k_VW aligned with vertex_neighbors(V).
  std::vector<std::vector<double>> edge_bound(nv);
  for (int v = 0; v < nv; ++v) {
    const auto nbrs = mesh->vertex_neighbors(v);
    edge_bound[v].assign(nbrs.size(), std::numeric_limits<double>::infinity());
    for (int e : mesh->vertex_elements(v)) {
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        if (mesh->local_vertex(e, nbrs[i]) >= 0) {
          edge_bound[v][i] = std::min(edge_bound[v][i], element_bound[e]);
        }
      }
    }
  }

  TentSlab slab;
  slab.mesh = mesh;
  slab.start = start;
  slab.end = start + slab_height;
  std::vector<double> tau(nv, start);
  const double end = slab.end;

  std::vector<char> taken(nv);
  std::vector<int> round;
  for (;;) {
    round.clear();
    std::fill(taken.begin(), taken.end(), 0);
    bool unfinished = false;
    for (int v = 0; v < nv; ++v) {
      if (tau[v] >= end) continue;
      unfinished = true;
      if (taken[v] == 2) continue;  // neighbour already taken this round
      bool ready = true;
      for (int w : mesh->vertex_neighbors(v)) {
        if (tau[w] < tau[v]) {
          ready = false;
          break;
        }
      }
      if (!ready) continue;
      taken[v] = 1;
      round.push_back(v);
      for (int w : mesh->vertex_neighbors(v)) {
        if (!taken[w]) taken[w] = 2;
      }
    }
    if (!unfinished) break;
    if (round.empty()) {
      const auto it = std::min_element(tau.begin(), tau.end());
      const int blocking = static_cast<int>(it - tau.begin());
      throw PitchingStuck("tent pitching stuck at vertex " + std::to_string(blocking), blocking);
    }
    for (int v : round) {
      const auto nbrs = mesh->vertex_neighbors(v);
      // v is not ahead of any neighbour, so tau_v + k_v <= tau_w + k_vw for every w.
      const double k = *std::min_element(edge_bound[v].begin(), edge_bound[v].end());
      double target = std::min(end, tau[v] + k);
      if (end - target <= 1e-12 * slab_height) target = end;
      Tent tent;
      tent.vertex = v;
      tent.t_bottom = tau[v];
      tent.t_top = target;
      tent.neighbors.assign(nbrs.begin(), nbrs.end());
      tent.neighbor_times.reserve(nbrs.size());
      for (int w : nbrs) tent.neighbor_times.push_back(tau[w]);
      const auto els = mesh->vertex_elements(v);
      tent.elements.assign(els.begin(), els.end());
      tau[v] = target;
      slab.tents.push_back(std::move(tent));
    }
  }
  assign_levels(slab);
  return slab;
}

void assign_levels(TentSlab& slab) {
  const SpatialMesh& mesh = *slab.mesh;
  std::vector<int> last(mesh.num_vertices(), -1);
  slab.levels.clear();
  for (std::size_t i = 0; i < slab.tents.size(); ++i) {
    Tent& tent = slab.tents[i];
    int level = last[tent.vertex];
    for (int w : mesh.vertex_neighbors(tent.vertex)) level = std::max(level, last[w]);
    ++level;
    tent.level = level;
    last[tent.vertex] = level;
    if (level >= static_cast<int>(slab.levels.size())) slab.levels.resize(level + 1);
    slab.levels[level].push_back(static_cast<int>(i));
  }
}

TentElementData tent_phi(const SpatialMesh& mesh, const Tent& tent, int element, double that) {
  if (std::find(tent.elements.begin(), tent.elements.end(), element) == tent.elements.end()) {
    throw InvalidArgument("element " + std::to_string(element) + " is outside the tent patch");
  }
  const auto ev = mesh.element(element);
  const int n = static_cast<int>(ev.size());
  TentElementData data;
  std::array<Point, 3> pts{};
  for (int i = 0; i < n; ++i) {
    pts[i] = mesh.vertex(ev[i]);
    data.bottom[i] = tent.vertex_time(ev[i], false);
    data.top[i] = tent.vertex_time(ev[i], true);
    data.delta[i] = data.top[i] - data.bottom[i];
  }
  const std::span<const Point> p(pts.data(), n);
  data.grad_bottom = affine_gradient(mesh.dim(), p, std::span<const double>(data.bottom.data(), n));
  data.grad_top = affine_gradient(mesh.dim(), p, std::span<const double>(data.top.data(), n));
  data.grad_delta = {data.grad_top[0] - data.grad_bottom[0], data.grad_top[1] - data.grad_bottom[1]};
  data.grad_phi = {(1 - that) * data.grad_bottom[0] + that * data.grad_top[0],
                   (1 - that) * data.grad_bottom[1] + that * data.grad_top[1]};
  return data;
}

double tent_volume(const SpatialMesh& mesh, const Tent& tent) {
  // The hat function of the centre integrates to |T| / (dim + 1) on each element.
  double patch = 0;
  for (int e : tent.elements) patch += mesh.element_measure(e);
  return tent.height() * patch / (mesh.dim() + 1);
}

double max_front_slope(const TentSlab& slab) {
  const SpatialMesh& mesh = *slab.mesh;
  std::vector<double> tau(mesh.num_vertices(), slab.start);
  double worst = 0;
  for (const Tent& tent : slab.tents) {
    tau[tent.vertex] = tent.t_top;
    for (int e : tent.elements) {
      const Point g = element_gradient_of_nodal(mesh, tau, e);
      worst = std::max(worst, std::hypot(g[0], g[1]));
    }
  }
  return worst;
}

}  // namespace tentsolve
