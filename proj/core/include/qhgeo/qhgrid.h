// Copyright 2026 The qhgeo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Weighted-graph discretization of a domain for quasihyperbolic shortest
// paths.
//
// The grid is a quadtree over the domain extent. A cell of side h is split
// while h > pitch or h > delta(center)/grading, down to min_cell, so cells
// shrink in proportion to the distance to the boundary. Cell corners that
// classify Inside become nodes; each node links to the first existing node
// along every stencil direction at its own scale (or a power-of-two
// multiple of it), and an edge is kept only when the link is mutual and the
// segment stays inside. Edge weights integrate 1/delta with Simpson's rule.
//
// A GridFocus restricts refinement to what a single query can use: cells
// outside the window are left coarse, and with a known upper bound K on
// k(x, y) every cell whose points z all satisfy j(x, z) + j(z, y) > K is
// left coarse too (such z cannot lie on a geodesic since j <= k and k is
// additive along geodesics). Cells far from x and y are also coarsened in
// proportion to that distance: the grid only has to find the right route,
// which relax_path then straightens in the continuum.

#ifndef QHGEO_QHGRID_H_
#define QHGEO_QHGRID_H_

#include <array>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "qhgeo/geometry.h"

namespace qhgeo {

enum class Stencil { k8 = 8, k16 = 16 };

struct GridFocus {
  Point x;
  Point y;
  double k_bound = std::numeric_limits<double>::infinity();
  std::optional<Box> window;
  /// Below the pitch, cells stop refining at this fraction of their
  /// distance to the nearer of x and y.
  double boundary_floor_ratio = 1.0 / 64.0;
};

struct GridOptions {
  double pitch = 0.0;
  Stencil stencil = Stencil::k16;
  double grading = 4.0;
  /// Smallest cell side; 0 selects pitch / 64.
  double min_cell = 0.0;
  std::optional<GridFocus> focus;
  /// Refinement stops (and cells_exhausted() is set) past this many cells.
  std::size_t max_cells = 4'000'000;
};

struct GridNode {
  Point p;
  double delta = 0.0;
  double cell = 0.0;  // side of the smallest leaf touching the node
  bool injected = false;
};

struct GridEdge {
  int to = -1;
  double weight = 0.0;
};

class QhGrid {
 public:
  const Domain& domain() const { return *domain_; }
  const std::vector<GridNode>& nodes() const { return nodes_; }
  std::span<const GridEdge> neighbors(int id) const { return adjacency_.at(id); }
  std::size_t edge_count() const;
  double pitch() const { return pitch_; }
  Stencil stencil() const { return stencil_; }
  std::size_t leaf_count() const { return leaves_.size(); }
  bool cells_exhausted() const { return cells_exhausted_; }

  /// Node sitting exactly at p (lattice node or injected point).
  std::optional<int> find_node(Point p) const;

  /// Side of the quadtree leaf containing p, if any.
  std::optional<double> local_cell(Point p) const;

  /// Adds the points as nodes linked to every visible node within twice the
  /// local cell size; returns their ids. Existing nodes are reused.
  /// Throws kPointNotInterior for points that are not Inside or fall outside
  /// the discretized region.
  std::vector<int> inject(std::span<const Point> points);

  /// Debug dumps: "id,x,y,delta" and "from,to,weight".
  std::string nodes_csv() const;
  std::string edges_csv() const;

 private:
  friend QhGrid build_grid(const Domain& d, const GridOptions& opts);

  struct Lattice {
    std::int64_t ix = 0;
    std::int64_t iy = 0;
    friend bool operator==(const Lattice&, const Lattice&) = default;
  };
  struct LatticeHash {
    std::size_t operator()(const Lattice& k) const noexcept;
  };
  struct CellKey {
    int level = 0;
    std::int64_t ix = 0;
    std::int64_t iy = 0;
    friend bool operator==(const CellKey&, const CellKey&) = default;
  };
  struct CellKeyHash {
    std::size_t operator()(const CellKey& k) const noexcept;
  };

  Point lattice_point(Lattice k) const;
  void add_edge(int a, int b, double weight);

  std::shared_ptr<const Domain> domain_;
  double pitch_ = 0.0;
  Stencil stencil_ = Stencil::k16;
  Point origin_;
  double root_size_ = 0.0;
  double unit_ = 0.0;
  bool cells_exhausted_ = false;
  std::vector<GridNode> nodes_;
  std::vector<std::vector<GridEdge>> adjacency_;
  std::unordered_map<Lattice, int, LatticeHash> lattice_;  // -1 marks a rejected corner
  std::unordered_set<CellKey, CellKeyHash> leaves_;
  std::vector<int> injected_;
};

/// Throws kInvalidParams for pitch <= 0 and kEmptyGrid when no node is Inside.
QhGrid build_grid(const Domain& d, const GridOptions& opts);
QhGrid build_grid(const Domain& d, double pitch, Stencil stencil = Stencil::k16);

/// Value-returning form of QhGrid::inject.
QhGrid inject_points(QhGrid grid, std::span<const Point> points);

struct GridPath {
  /// Quasihyperbolic length of `path`, integrated accurately.
  double length = 0.0;
  /// Sum of the Simpson edge weights the search minimized.
  double graph_weight = 0.0;
  PolyPath path;
  std::vector<int> node_ids;
};

/// Shortest path between two grid nodes. Ties break on (weight, hop count,
/// node id), and the search always starts from the smaller id, so the result
/// is symmetric in x and y. Throws kPointNotInterior when x or y is not a
/// node and kDisconnected when no path exists.
GridPath shortest_path(const QhGrid& grid, Point x, Point y);

struct RelaxOptions {
  /// Target quasihyperbolic length of one path segment.
  double spacing = 0.25;
  int max_sweeps = 300;
  double tol = 1e-10;
};

/// Straightens a path toward a local quasihyperbolic geodesic: the path is
/// resampled so every segment has length about spacing * delta, then
/// interior vertices take damped Newton steps normal to the path on the
/// Simpson-discretized length. Endpoints are fixed and every accepted move
/// keeps the path inside the domain.
PolyPath relax_path(const Domain& d, const PolyPath& path, const RelaxOptions& opts = {});

struct RefineOptions {
  double rel_tol = 0.02;
  int max_level = 7;
  Stencil stencil = Stencil::k16;
  std::size_t max_cells = 2'000'000;
};

struct RefineLevel {
  int level = 0;
  double raw = 0.0;   // best candidate found at this level
  double best = 0.0;  // running minimum
  std::size_t nodes = 0;
};

struct RefineResult {
  double estimate = 0.0;
  PolyPath path;
  double err_est = 0.0;
  bool converged = true;
  int level = 0;
  std::vector<RefineLevel> history;
};

/// Estimates k(x, y) by successively finer focused grids. Each level halves
/// the pitch, raises the grading and halves the relaxation spacing; the
/// candidates are the straight segment (when inside), the relaxed graph
/// path and the relaxed previous best. Stops once successive levels differ
/// by less than rel_tol relatively; err_est is that last difference.
/// The estimate is the quasihyperbolic length of the returned path, so it
/// never increases from one level to the next.
RefineResult refine_until(const Domain& d, Point x, Point y, const RefineOptions& opts = {});

}  // namespace qhgeo

#endif  // QHGEO_QHGRID_H_
