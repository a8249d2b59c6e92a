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

#include "qhgeo/qhgrid.h"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <tuple>

#include "qhgeo/error.h"
#include "qhgeo/qh_integral.h"

namespace qhgeo {
namespace {

// Cell corners live on a 2^kDepth lattice over the root square.
constexpr int kDepth = 40;
constexpr std::int64_t kRootUnits = std::int64_t{1} << kDepth;
constexpr int kMaxHop = 5;  // stencil links search up to 2^5 node spans

struct Dir {
  int dx;
  int dy;
};

// Counter-clockwise, so the opposite of direction i is i + n/2.
constexpr std::array<Dir, 8> kDirs8{{{1, 0}, {1, 1}, {0, 1}, {-1, 1},
                                     {-1, 0}, {-1, -1}, {0, -1}, {1, -1}}};
constexpr std::array<Dir, 16> kDirs16{{{1, 0},
                                       {2, 1},
                                       {1, 1},
                                       {1, 2},
                                       {0, 1},
                                       {-1, 2},
                                       {-1, 1},
                                       {-2, 1},
                                       {-1, 0},
                                       {-2, -1},
                                       {-1, -1},
                                       {-1, -2},
                                       {0, -1},
                                       {1, -2},
                                       {1, -1},
                                       {2, -1}}};

std::span<const Dir> directions(Stencil s) {
  if (s == Stencil::k8) return kDirs8;
  return kDirs16;
}

std::uint64_t mix(std::uint64_t h) {
  h ^= h >> 30;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 27;
  h *= 0x94d049bb133111ebULL;
  h ^= h >> 31;
  return h;
}

double simpson_weight(const Domain& d, Point a, Point b, double da, double db) {
  const double len = distance(a, b);
  const double dm = d.distance_to_chain(midpoint(a, b));
  const double simpson = len / 6.0 * (1.0 / da + 4.0 / dm + 1.0 / db);
  return std::max(simpson, len / std::max(da, db));
}

// log(1 + e/m) lower bound on j(p, z) for every z in the disc B(c, r), where
// delta <= dc + r on that disc.
double j_lower(Point p, double dp, Point c, double r, double dc) {
  const double e = std::max(0.0, distance(p, c) - r);
  return std::log1p(e / std::min(dp, dc + r));
}

}  // namespace

std::size_t QhGrid::LatticeHash::operator()(const Lattice& k) const noexcept {
  return mix(static_cast<std::uint64_t>(k.ix) * 0x9e3779b97f4a7c15ULL ^
             static_cast<std::uint64_t>(k.iy));
}

std::size_t QhGrid::CellKeyHash::operator()(const CellKey& k) const noexcept {
  return mix((static_cast<std::uint64_t>(k.ix) * 0x9e3779b97f4a7c15ULL ^
              static_cast<std::uint64_t>(k.iy)) +
             static_cast<std::uint64_t>(k.level));
}

Point QhGrid::lattice_point(Lattice k) const {
  return {origin_.x + static_cast<double>(k.ix) * unit_,
          origin_.y + static_cast<double>(k.iy) * unit_};
}

void QhGrid::add_edge(int a, int b, double weight) {
  adjacency_[a].push_back({b, weight});
  adjacency_[b].push_back({a, weight});
}

std::size_t QhGrid::edge_count() const {
  std::size_t n = 0;
  for (const auto& adj : adjacency_) n += adj.size();
  return n / 2;
}

std::optional<int> QhGrid::find_node(Point p) const {
  if (unit_ > 0.0) {
    const double fx = (p.x - origin_.x) / unit_;
    const double fy = (p.y - origin_.y) / unit_;
    if (std::abs(fx) < 2.0 * kRootUnits && std::abs(fy) < 2.0 * kRootUnits) {
      const Lattice key{std::llround(fx), std::llround(fy)};
      if (lattice_point(key) == p) {
        auto it = lattice_.find(key);
        if (it != lattice_.end() && it->second >= 0) return it->second;
      }
    }
  }
  for (int id : injected_) {
    if (nodes_[id].p == p) return id;
  }
  return std::nullopt;
}

std::optional<double> QhGrid::local_cell(Point p) const {
  const double fx = std::floor((p.x - origin_.x) / unit_);
  const double fy = std::floor((p.y - origin_.y) / unit_);
  if (!(fx >= 0.0 && fy >= 0.0 && fx <= kRootUnits && fy <= kRootUnits)) return std::nullopt;
  std::int64_t ix = std::min(static_cast<std::int64_t>(fx), kRootUnits - 1);
  std::int64_t iy = std::min(static_cast<std::int64_t>(fy), kRootUnits - 1);
  for (int level = 0; level <= kDepth; ++level) {
    const std::int64_t span = kRootUnits >> level;
    const CellKey key{level, ix - ix % span, iy - iy % span};
    if (leaves_.contains(key)) return std::ldexp(root_size_, -level);
  }
  return std::nullopt;
}

std::vector<int> QhGrid::inject(std::span<const Point> points) {
  const Domain& d = *domain_;
  std::vector<int> ids;
  for (Point p : points) {
    if (auto existing = find_node(p)) {
      ids.push_back(*existing);
      continue;
    }
    const double dp = d.distance_to_chain(p);
    if (dp < d.snap_tolerance() || !d.in_union(p)) {
      throw Error(ErrorCode::kPointNotInterior, "injected point is not inside the domain");
    }
    if (!d.in_clip(p)) {
      throw Error(ErrorCode::kPointNotInterior, "injected point is outside the truncation region");
    }
    const auto cell = local_cell(p);
    if (!cell) throw Error(ErrorCode::kPointNotInterior, "injected point is outside the grid");
    const double h = *cell;
    const double reach = 2.0 * h;

    std::vector<int> candidates;
    const std::int64_t step =
        std::max<std::int64_t>(1, static_cast<std::int64_t>(std::llround(h / unit_)) / 4);
    const auto lo_x = static_cast<std::int64_t>(std::floor((p.x - reach - origin_.x) / unit_));
    const auto lo_y = static_cast<std::int64_t>(std::floor((p.y - reach - origin_.y) / unit_));
    const auto hi_x = static_cast<std::int64_t>(std::ceil((p.x + reach - origin_.x) / unit_));
    const auto hi_y = static_cast<std::int64_t>(std::ceil((p.y + reach - origin_.y) / unit_));
    for (std::int64_t ix = lo_x - lo_x % step; ix <= hi_x; ix += step) {
      for (std::int64_t iy = lo_y - lo_y % step; iy <= hi_y; iy += step) {
        auto it = lattice_.find({ix, iy});
        if (it == lattice_.end() || it->second < 0) continue;
        if (distance(nodes_[it->second].p, p) <= reach) candidates.push_back(it->second);
      }
    }
    for (int other : injected_) {
      if (distance(nodes_[other].p, p) <= reach) candidates.push_back(other);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back({p, dp, h, true});
    adjacency_.emplace_back();
    for (int c : candidates) {
      const GridNode& n = nodes_[c];
      if (!segment_inside(d, p, n.p, dp, n.delta)) continue;
      add_edge(id, c, segment_qh_length(d, p, n.p));
    }
    injected_.push_back(id);
    ids.push_back(id);
  }
  return ids;
}

std::string QhGrid::nodes_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "id,x,y,delta\n";
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    out << i << ',' << nodes_[i].p.x << ',' << nodes_[i].p.y << ',' << nodes_[i].delta << '\n';
  }
  return out.str();
}

std::string QhGrid::edges_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "from,to,weight\n";
  for (std::size_t i = 0; i < adjacency_.size(); ++i) {
    for (const GridEdge& e : adjacency_[i]) {
      if (static_cast<std::size_t>(e.to) > i) out << i << ',' << e.to << ',' << e.weight << '\n';
    }
  }
  return out.str();
}

QhGrid build_grid(const Domain& d, double pitch, Stencil stencil) {
  GridOptions opts;
  opts.pitch = pitch;
  opts.stencil = stencil;
  return build_grid(d, opts);
}

QhGrid build_grid(const Domain& d, const GridOptions& opts) {
  if (!(opts.pitch > 0.0) || !std::isfinite(opts.pitch)) {
    throw Error(ErrorCode::kInvalidParams, "grid pitch must be positive");
  }
  if (!(opts.grading > 0.0)) throw Error(ErrorCode::kInvalidParams, "grading must be positive");

  QhGrid g;
  g.domain_ = std::make_shared<const Domain>(d);
  g.pitch_ = opts.pitch;
  g.stencil_ = opts.stencil;
  const Box ext = d.extent();
  g.origin_ = ext.min;
  g.root_size_ = std::max(ext.width(), ext.height());
  g.unit_ = std::ldexp(g.root_size_, -kDepth);
  const double floor_size = std::max(opts.min_cell > 0.0 ? opts.min_cell : opts.pitch / 64.0,
                                     std::ldexp(g.root_size_, -(kDepth - 2)));

  struct Focus {
    Point x, y;
    double dx, dy, k;
    std::optional<Box> window;
    double boundary_floor_ratio;
  };
  std::optional<Focus> focus;
  if (opts.focus) {
    const GridFocus& f = *opts.focus;
    focus = Focus{f.x,     f.y,      d.boundary_distance(f.x), d.boundary_distance(f.y),
                  f.k_bound, f.window, f.boundary_floor_ratio};
  }
  const bool has_annulus = d.truncation() && d.truncation()->annulus;
  const Annulus annulus = has_annulus ? *d.truncation()->annulus : Annulus{};

  // Breadth-first so that a cell budget cuts refinement evenly.
  using CellKey = QhGrid::CellKey;
  std::vector<CellKey> level_cells{{0, 0, 0}};
  std::vector<CellKey> leaves;
  std::size_t processed = 0;
  while (!level_cells.empty()) {
    std::vector<CellKey> next;
    for (const CellKey& c : level_cells) {
      const std::int64_t span = kRootUnits >> c.level;
      const double h = std::ldexp(g.root_size_, -c.level);
      const Box box{g.lattice_point({c.ix, c.iy}), g.lattice_point({c.ix + span, c.iy + span})};
      if (!box.intersects(ext)) continue;
      const Point center = box.center();
      const double r = h * std::sqrt(0.5);
      if (has_annulus) {
        const double dc = distance(center, annulus.center);
        if (dc + r < annulus.r_in || dc - r > annulus.r_out) continue;
      }
      const double dist = d.distance_to_chain(center);
      if (dist > r && !d.in_union(center)) continue;
      ++processed;

      bool refine = c.level < kDepth && h > floor_size && (h > opts.pitch || h * opts.grading > dist);
      if (refine && focus) {
        if (focus->window && !box.intersects(*focus->window)) refine = false;
        if (refine && h <= opts.pitch) {
          const double far = std::min(distance(center, focus->x), distance(center, focus->y)) - r;
          if (h <= focus->boundary_floor_ratio * far) refine = false;
        }
        if (refine && std::isfinite(focus->k) &&
            j_lower(focus->x, focus->dx, center, r, dist) +
                    j_lower(focus->y, focus->dy, center, r, dist) >
                focus->k) {
          refine = false;
        }
      }
      if (refine && processed + next.size() > opts.max_cells) {
        g.cells_exhausted_ = true;
        refine = false;
      }
      if (refine) {
        const std::int64_t half = span / 2;
        next.push_back({c.level + 1, c.ix, c.iy});
        next.push_back({c.level + 1, c.ix + half, c.iy});
        next.push_back({c.level + 1, c.ix, c.iy + half});
        next.push_back({c.level + 1, c.ix + half, c.iy + half});
      } else {
        leaves.push_back(c);
      }
    }
    level_cells = std::move(next);
  }

  // Corners that classify Inside become nodes.
  std::vector<std::int64_t> node_span;
  std::vector<QhGrid::Lattice> node_key;
  for (const CellKey& c : leaves) {
    g.leaves_.insert(c);
    const std::int64_t span = kRootUnits >> c.level;
    const double h = std::ldexp(g.root_size_, -c.level);
    const QhGrid::Lattice corners[4] = {
        {c.ix, c.iy}, {c.ix + span, c.iy}, {c.ix, c.iy + span}, {c.ix + span, c.iy + span}};
    for (const auto& key : corners) {
      auto [it, fresh] = g.lattice_.try_emplace(key, -1);
      if (fresh) {
        const Point p = g.lattice_point(key);
        if (!ext.contains(p) || !d.in_clip(p)) continue;
        const double dp = d.distance_to_chain(p);
        if (dp < d.snap_tolerance() || !d.in_union(p)) continue;
        it->second = static_cast<int>(g.nodes_.size());
        g.nodes_.push_back({p, dp, h, false});
        node_span.push_back(span);
        node_key.push_back(key);
      } else if (it->second >= 0) {
        GridNode& n = g.nodes_[it->second];
        n.cell = std::min(n.cell, h);
        node_span[it->second] = std::min(node_span[it->second], span);
      }
    }
  }
  if (g.nodes_.empty()) throw Error(ErrorCode::kEmptyGrid, "no grid node lies inside the domain");

  // Each node links to the first node along every stencil direction; the
  // edge is kept when the link is mutual and the segment stays inside.
  const auto dirs = directions(opts.stencil);
  const int n_dirs = static_cast<int>(dirs.size());
  const std::size_t n_nodes = g.nodes_.size();
  std::vector<std::array<int, 16>> link(n_nodes);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    link[i].fill(-1);
    for (int k = 0; k < n_dirs; ++k) {
      for (int hop = 0; hop <= kMaxHop; ++hop) {
        const std::int64_t m = node_span[i] << hop;
        if (m > kRootUnits) break;
        auto it = g.lattice_.find({node_key[i].ix + dirs[k].dx * m, node_key[i].iy + dirs[k].dy * m});
        if (it == g.lattice_.end()) continue;
        link[i][k] = it->second;
        break;
      }
    }
  }
  g.adjacency_.assign(n_nodes, {});
  for (std::size_t i = 0; i < n_nodes; ++i) {
    for (int k = 0; k < n_dirs; ++k) {
      const int j = link[i][k];
      if (j < 0 || static_cast<std::size_t>(j) < i) continue;
      if (link[j][(k + n_dirs / 2) % n_dirs] != static_cast<int>(i)) continue;
      const GridNode& a = g.nodes_[i];
      const GridNode& b = g.nodes_[j];
      if (!segment_inside(d, a.p, b.p, a.delta, b.delta)) continue;
      g.add_edge(static_cast<int>(i), j, simpson_weight(d, a.p, b.p, a.delta, b.delta));
    }
  }
  return g;
}

QhGrid inject_points(QhGrid grid, std::span<const Point> points) {
  grid.inject(points);
  return grid;
}

GridPath shortest_path(const QhGrid& grid, Point x, Point y) {
  const auto ix = grid.find_node(x);
  const auto iy = grid.find_node(y);
  if (!ix || !iy) {
    throw Error(ErrorCode::kPointNotInterior, "endpoint is not a grid node; inject it first");
  }
  GridPath out;
  if (*ix == *iy) {
    out.path = PolyPath({x});
    out.node_ids = {*ix};
    return out;
  }
  const int s = std::min(*ix, *iy);
  const int t = std::max(*ix, *iy);
  const std::size_t n = grid.nodes().size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, inf);
  std::vector<int> hops(n, std::numeric_limits<int>::max());
  std::vector<int> pred(n, -1);
  std::vector<char> done(n, 0);
  using Entry = std::tuple<double, int, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  dist[s] = 0.0;
  hops[s] = 0;
  queue.push({0.0, 0, s});
  while (!queue.empty()) {
    const auto [du, hu, u] = queue.top();
    queue.pop();
    if (done[u]) continue;
    done[u] = 1;
    if (u == t) break;
    for (const GridEdge& e : grid.neighbors(u)) {
      if (done[e.to]) continue;
      const double nd = du + e.weight;
      const int nh = hu + 1;
      if (std::tie(nd, nh, u) < std::tie(dist[e.to], hops[e.to], pred[e.to])) {
        dist[e.to] = nd;
        hops[e.to] = nh;
        pred[e.to] = u;
        queue.push({nd, nh, e.to});
      }
    }
  }
  if (!done[t]) throw Error(ErrorCode::kDisconnected, "no grid path joins the endpoints");

  std::vector<int> ids;
  for (int v = t; v != -1; v = pred[v]) ids.push_back(v);
  // ids runs t..s; flip it when x is the smaller id.
  if (*ix == s) std::reverse(ids.begin(), ids.end());
  std::vector<Point> pts;
  pts.reserve(ids.size());
  for (int v : ids) pts.push_back(grid.nodes()[v].p);
  out.graph_weight = dist[t];
  out.path = PolyPath(pts);
  out.length = polyline_qh_length(grid.domain(), out.path.vertices());
  out.node_ids = std::move(ids);
  return out;
}

// ---------------------------------------------------------------------------
// Path relaxation.

namespace {

struct Probe {
  Point p;
  double delta = 0.0;
  Point grad;  // gradient of delta
};

Probe probe(const Domain& d, Point p) {
  const ClosestPoint cp = d.closest_boundary_point(p);
  Probe out{p, cp.distance, {0.0, 0.0}};
  if (cp.distance > 0.0) out.grad = (1.0 / cp.distance) * (p - cp.point);
  return out;
}

// Simpson length of [a, b] given probes at a, b and the midpoint.
double simpson(const Probe& a, const Probe& m, const Probe& b) {
  return distance(a.p, b.p) / 6.0 * (1.0 / a.delta + 4.0 / m.delta + 1.0 / b.delta);
}

class Relaxer {
 public:
  Relaxer(const Domain& d, std::vector<Point> pts) : d_(d), pts_(std::move(pts)) {}

  std::vector<Point> run(double spacing, const RelaxOptions& opts) {
    resample(spacing);
    if (pts_.size() < 3) return pts_;
    probes_.clear();
    for (Point p : pts_) probes_.push_back(probe(d_, p));
    mids_.clear();
    for (std::size_t i = 1; i < pts_.size(); ++i) mids_.push_back(probe(d_, midpoint(pts_[i - 1], pts_[i])));
    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
      double gain = 0.0;
      double total = 0.0;
      for (std::size_t i = 1; i + 1 < pts_.size(); ++i) gain += move(i);
      for (std::size_t i = 1; i < pts_.size(); ++i) total += simpson(probes_[i - 1], mids_[i - 1], probes_[i]);
      if (gain <= opts.tol * total) break;
    }
    return pts_;
  }

 private:
  double delta(Point p) const { return d_.distance_to_chain(p); }

  bool joinable(Point a, Point b, double da, double db, double spacing) const {
    return distance(a, b) <= spacing * std::min(da, db) && segment_inside(d_, a, b, da, db);
  }

  // Drops vertices while the shortcut stays short and inside, then splits
  // long segments, so segments end up near spacing * delta.
  void resample(double spacing) {
    std::vector<double> ds;
    for (Point p : pts_) ds.push_back(delta(p));
    std::vector<Point> coarse{pts_.front()};
    std::vector<double> coarse_d{ds.front()};
    std::size_t i = 0;
    while (i + 1 < pts_.size()) {
      std::size_t j = i + 1;
      while (j + 1 < pts_.size() && joinable(pts_[i], pts_[j + 1], ds[i], ds[j + 1], spacing)) ++j;
      coarse.push_back(pts_[j]);
      coarse_d.push_back(ds[j]);
      i = j;
    }
    std::vector<Point> fine{coarse.front()};
    for (std::size_t k = 1; k < coarse.size(); ++k) {
      subdivide(coarse[k - 1], coarse[k], coarse_d[k - 1], coarse_d[k], spacing, 0, fine);
    }
    pts_ = std::move(fine);
  }

  void subdivide(Point a, Point b, double da, double db, double spacing, int depth,
                 std::vector<Point>& out) const {
    if (depth < 24 && distance(a, b) > spacing * std::min(da, db)) {
      const Point m = midpoint(a, b);
      const double dm = delta(m);
      subdivide(a, m, da, dm, spacing, depth + 1, out);
      subdivide(m, b, dm, db, spacing, depth + 1, out);
      return;
    }
    out.push_back(b);
  }

  // Gradient of 1/delta.
  static Point grad_w(const Probe& q) { return (-1.0 / (q.delta * q.delta)) * q.grad; }

  // One damped Newton step of vertex i across the path. Returns the gain.
  double move(std::size_t i) {
    const Probe& a = probes_[i - 1];
    const Probe& p = probes_[i];
    const Probe& b = probes_[i + 1];
    const Probe& m1 = mids_[i - 1];
    const Probe& m2 = mids_[i];
    const double l1 = distance(a.p, p.p);
    const double l2 = distance(p.p, b.p);
    if (l1 == 0.0 || l2 == 0.0) return 0.0;
    const double w1 = (1.0 / a.delta + 4.0 / m1.delta + 1.0 / p.delta) / 6.0;
    const double w2 = (1.0 / p.delta + 4.0 / m2.delta + 1.0 / b.delta) / 6.0;
    const double e0 = l1 * w1 + l2 * w2;
    Point g = (w1 / l1) * (p.p - a.p) + (w2 / l2) * (p.p - b.p) +
              (l1 / 3.0) * grad_w(m1) + (l2 / 3.0) * grad_w(m2) + ((l1 + l2) / 6.0) * grad_w(p);
    const Point chord = b.p - a.p;
    const double cl = norm(chord);
    if (cl > 0.0) {
      const Point t = (1.0 / cl) * chord;
      g = g - dot(g, t) * t;
    }
    const double gn = norm(g);
    if (!(gn > 0.0)) return 0.0;
    const double curvature = (1.0 / p.delta) * (1.0 / l1 + 1.0 / l2);
    Point step = (-1.0 / curvature) * g;
    const double cap = 0.25 * std::min({l1, l2, p.delta});
    if (norm(step) > cap) step = (cap / norm(step)) * step;
    for (int attempt = 0; attempt < 8; ++attempt, step = 0.5 * step) {
      const Point q = p.p + step;
      if (q == p.p) break;
      const Probe pq = probe(d_, q);
      if (pq.delta < d_.snap_tolerance() || !d_.in_union(q) || !d_.in_clip(q)) continue;
      const Probe q1 = probe(d_, midpoint(a.p, q));
      const Probe q2 = probe(d_, midpoint(q, b.p));
      const double e1 = simpson(a, q1, pq) + simpson(pq, q2, b);
      if (!(e1 < e0)) continue;
      if (!segment_inside(d_, a.p, q, a.delta, pq.delta) ||
          !segment_inside(d_, q, b.p, pq.delta, b.delta)) {
        continue;
      }
      pts_[i] = q;
      probes_[i] = pq;
      mids_[i - 1] = q1;
      mids_[i] = q2;
      return e0 - e1;
    }
    return 0.0;
  }

  const Domain& d_;
  std::vector<Point> pts_;
  std::vector<Probe> probes_;
  std::vector<Probe> mids_;
};

std::vector<Point> dedupe(std::vector<Point> pts) {
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

PolyPath relax_path(const Domain& d, const PolyPath& path, const RelaxOptions& opts) {
  if (!(opts.spacing > 0.0)) throw Error(ErrorCode::kInvalidParams, "relax spacing must be positive");
  if (path.size() < 2) return path;
  for (Point v : path.vertices()) {
    if (!d.is_inside(v)) throw Error(ErrorCode::kPathExitsDomain, "path vertex is not inside");
  }
  Relaxer relaxer(d, path.vertices());
  std::vector<Point> pts;
  // Coarse passes first move long stretches cheaply.
  for (double s = 1.0; s > opts.spacing * 1.5; s *= 0.5) pts = relaxer.run(s, opts);
  pts = relaxer.run(opts.spacing, opts);
  return PolyPath(dedupe(std::move(pts)));
}

// ---------------------------------------------------------------------------
// Refinement driver.

namespace {

bool lex_less(Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

Box path_box(const PolyPath& path) {
  Box b = Box::around(path.front());
  for (Point v : path.vertices()) b = b.united(Box::around(v));
  return b;
}

struct Candidate {
  double length = std::numeric_limits<double>::infinity();
  PolyPath path;
};

void consider(Candidate& best, const Domain& d, const PolyPath& path) {
  const double len = polyline_qh_length(d, path.vertices());
  if (len < best.length) best = {len, path};
}

std::optional<GridPath> grid_path(const Domain& d, const GridOptions& go, Point x, Point y) {
  QhGrid grid = build_grid(d, go);
  const Point ends[2] = {x, y};
  grid.inject(ends);
  try {
    return shortest_path(grid, x, y);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kDisconnected) throw;
    return std::nullopt;
  }
}

}  // namespace

RefineResult refine_until(const Domain& d, Point x, Point y, const RefineOptions& opts) {
  if (!(opts.rel_tol > 0.0)) throw Error(ErrorCode::kInvalidParams, "rel_tol must be positive");
  if (opts.max_level < 1) throw Error(ErrorCode::kInvalidParams, "max_level must be at least 1");
  const double dx = d.boundary_distance(x);
  const double dy = d.boundary_distance(y);
  RefineResult out;
  if (x == y) {
    out.path = PolyPath({x});
    out.history.push_back({0, 0.0, 0.0, 0});
    return out;
  }
  const bool flipped = lex_less(y, x);
  if (flipped) std::swap(x, y);
  const double dmin = std::min(dx, dy);
  const Box ext = d.extent();

  Candidate best;
  if (segment_inside(d, x, y)) consider(best, d, PolyPath({x, y}));

  // Level 0: a coarse grid around the pair, enlarged until it connects.
  const double g0 = 4.0;
  double rho = distance(x, y) + 4.0 * std::max(dx, dy);
  Box window = Box::around(midpoint(x, y)).inflated(rho);
  const double min_floor = dmin / (2.0 * g0);
  double floor_size = std::max(min_floor, rho / 128.0);
  std::optional<GridPath> gp;
  std::size_t nodes = 0;
  for (int attempt = 0;; ++attempt) {
    GridOptions go;
    go.pitch = rho / 4.0;
    go.stencil = opts.stencil;
    go.grading = g0;
    go.min_cell = floor_size;
    go.max_cells = opts.max_cells;
    go.focus = GridFocus{x, y, std::numeric_limits<double>::infinity(), window};
    gp = grid_path(d, go, x, y);
    if (gp) break;
    const bool covers = window.contains(ext.min) && window.contains(ext.max);
    if (covers && floor_size <= min_floor) {
      if (best.length < std::numeric_limits<double>::infinity()) break;
      throw Error(ErrorCode::kDisconnected, "no path joins the points");
    }
    floor_size = std::max(min_floor, floor_size / 4.0);
    rho *= 2.0;
    window = Box::around(midpoint(x, y)).inflated(rho);
  }
  const double pitch0 = rho / 4.0;
  RelaxOptions ro;
  ro.spacing = 0.5;
  if (gp) {
    consider(best, d, gp->path);
    consider(best, d, relax_path(d, gp->path, ro));
    nodes = gp->node_ids.size();
  }
  double prev_raw = best.length;
  out.history.push_back({0, prev_raw, best.length, nodes});

  out.converged = false;
  for (int level = 1; level <= opts.max_level; ++level) {
    const double grading = std::min(g0 * std::ldexp(1.0, level), 16.0);
    ro.spacing = 0.5 * std::ldexp(1.0, -level);
    GridOptions go;
    go.pitch = pitch0 * std::ldexp(1.0, -level);
    go.stencil = opts.stencil;
    go.grading = grading;
    go.min_cell = dmin / (2.0 * grading);
    go.max_cells = opts.max_cells;
    const Box lw = window.united(path_box(best.path).inflated(0.1 * rho));
    go.focus = GridFocus{x, y, best.length * (1.0 + 1e-6), lw};

    Candidate raw;
    if (auto p = grid_path(d, go, x, y)) {
      consider(raw, d, relax_path(d, p->path, ro));
      nodes = p->node_ids.size();
    }
    consider(raw, d, relax_path(d, best.path, ro));
    if (best.path.size() == 2) consider(raw, d, best.path);

    const double err = std::abs(raw.length - prev_raw);
    prev_raw = raw.length;
    if (raw.length < best.length) best = raw;
    out.history.push_back({level, raw.length, best.length, nodes});
    out.level = level;
    out.err_est = err;
    if (err <= opts.rel_tol * best.length) {
      out.converged = true;
      break;
    }
  }
  out.estimate = best.length;
  out.path = flipped ? best.path.reversed() : best.path;
  return out;
}

}  // namespace qhgeo
