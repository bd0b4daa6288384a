#pragma once

#include <array>
#include <memory>
#include <span>
#include <vector>

#include "tentsolve/mesh.hpp"

namespace tentsolve {

/// Current time at every mesh vertex; a piecewise linear front.
struct AdvancingFront {
  std::vector<double> times;
};

/// Spacetime region between two fronts that differ only at `vertex`.
struct Tent {
  int vertex = -1;
  double t_bottom = 0;
  double t_top = 0;
  std::vector<int> neighbors;         // mesh.vertex_neighbors(vertex)
  std::vector<double> neighbor_times;  // fixed while this tent is processed
  std::vector<int> elements;           // the vertex patch
  int level = -1;

  double height() const { return t_top - t_bottom; }
  /// Front time at vertex v before (top == false) or after (top == true) this tent.
  double vertex_time(int v, bool top) const;
};

struct TentSlab {
  std::shared_ptr<const SpatialMesh> mesh;
  double start = 0;
  double end = 0;
  std::vector<Tent> tents;               // pitch order
  std::vector<std::vector<int>> levels;  // tent indices per dependency layer

  int num_levels() const { return static_cast<int>(levels.size()); }
};

/// Per-element affine data of the tent map (x, t) = (x, (1-that) phi_b + that phi_t).
struct TentElementData {
  Point grad_bottom{};
  Point grad_top{};
  Point grad_delta{};
  Point grad_phi{};  // at the requested quasi-time
  std::array<double, 3> bottom{};
  std::array<double, 3> top{};
  std::array<double, 3> delta{};  // nodal values on the element's vertices
};

/// Pitches tents until every vertex reaches start + slab_height.
///
/// Vertices are advanced in rounds. A vertex is ready when its time is below the slab
/// top and not larger than the time of any neighbour; each round takes, in increasing
/// index order, every ready vertex that has no neighbour already taken in that round.
/// A taken vertex V advances by k_V = min over neighbours W of k_VW (capped at the slab
/// top), where k_VW = sigma * min over elements T containing the edge of
/// altitude_min(T) / c_T. Every edge difference then stays below k_VW, which bounds
/// the front slope by sigma / c on every element. In 1D the altitude is the element
/// length.
TentSlab pitch_slab(std::shared_ptr<const SpatialMesh> mesh, std::span<const double> wavespeed,
                    double slab_height, double sigma, double start = 0.0);

/// Assigns dependency layers in pitch order: a tent's level is one more than the
/// largest level of an earlier tent centred at the same vertex or at a neighbour.
void assign_levels(TentSlab& slab);

TentElementData tent_phi(const SpatialMesh& mesh, const Tent& tent, int element, double that);

/// Integral of the tent height function over the patch.
double tent_volume(const SpatialMesh& mesh, const Tent& tent);

/// Replays the slab and returns the largest per-element front slope seen after any pitch.
double max_front_slope(const TentSlab& slab);

}  // namespace tentsolve
