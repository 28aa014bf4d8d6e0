#pragma once

// Collinearity graph of a point set: two points are adjacent iff the line
// joining them is contained in the set.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <vector>

#include "qhv/error.hpp"
#include "qhv/lines.hpp"
#include "qhv/parallel.hpp"
#include "qhv/pointset.hpp"
#include "qhv/projgeom.hpp"
#include "qhv/variety.hpp"

namespace qhv {

using Vertex = std::uint32_t;

class CollinearityGraph {
 public:
  // Adjacency is the union of one clique per contained line. Two points span
  // one line, so the cliques are edge-disjoint.
  CollinearityGraph(const PointSet& s, const LineSystem& ls) : points_(s.indices()) {
    line_offsets_.assign(ls.size() + 1, 0);
    for (std::size_t l = 0; l < ls.size(); ++l) line_offsets_[l + 1] = line_offsets_[l] + ls.points[l].size();
    line_members_.reserve(line_offsets_.back());
    std::vector<std::uint32_t> deg(points_.size(), 0), nlines(points_.size(), 0);
    for (const auto& pts : ls.points) {
      for (auto p : pts) {
        const auto v = vertex_of(p);
        if (!v) throw UsageError("contained line leaves the vertex set");
        line_members_.push_back(*v);
        deg[*v] += static_cast<std::uint32_t>(pts.size() - 1);
        ++nlines[*v];
      }
    }
    adj_offsets_.assign(points_.size() + 1, 0);
    vl_offsets_.assign(points_.size() + 1, 0);
    for (std::size_t v = 0; v < points_.size(); ++v) {
      adj_offsets_[v + 1] = adj_offsets_[v] + deg[v];
      vl_offsets_[v + 1] = vl_offsets_[v] + nlines[v];
    }
    adj_.resize(adj_offsets_.back());
    vertex_lines_.resize(vl_offsets_.back());
    std::vector<std::uint64_t> fill(adj_offsets_.begin(), adj_offsets_.end() - 1);
    std::vector<std::uint64_t> vfill(vl_offsets_.begin(), vl_offsets_.end() - 1);
    for (std::uint32_t l = 0; l < ls.size(); ++l) {
      const auto members = line_vertices(l);
      for (auto u : members) {
        vertex_lines_[vfill[u]++] = l;
        for (auto w : members)
          if (u != w) adj_[fill[u]++] = w;
      }
    }
    for (std::size_t v = 0; v < points_.size(); ++v) {
      auto b = adj_.begin() + static_cast<std::ptrdiff_t>(adj_offsets_[v]);
      auto e = adj_.begin() + static_cast<std::ptrdiff_t>(adj_offsets_[v + 1]);
      std::sort(b, e);
      if (std::adjacent_find(b, e) != e) throw InvariantViolation("two contained lines share two points");
    }
  }

  std::size_t vertex_count() const { return points_.size(); }
  std::uint64_t edge_count() const { return adj_.size() / 2; }
  std::size_t line_count() const { return line_offsets_.size() - 1; }

  PointIndex point_of(Vertex v) const { return points_[v]; }
  std::optional<Vertex> vertex_of(PointIndex p) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), p);
    if (it == points_.end() || *it != p) return std::nullopt;
    return static_cast<Vertex>(it - points_.begin());
  }
  Vertex vertex(PointIndex p) const {
    auto v = vertex_of(p);
    if (!v) throw DomainError("point is not a vertex");
    return *v;
  }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adj_.data() + adj_offsets_[v], adj_.data() + adj_offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return adj_offsets_[v + 1] - adj_offsets_[v]; }
  bool adjacent(Vertex u, Vertex v) const {
    const auto n = neighbors(u);
    return std::binary_search(n.begin(), n.end(), v);
  }

  std::span<const Vertex> line_vertices(std::uint32_t l) const {
    return {line_members_.data() + line_offsets_[l], line_members_.data() + line_offsets_[l + 1]};
  }
  std::span<const std::uint32_t> lines_of(Vertex v) const {
    return {vertex_lines_.data() + vl_offsets_[v], vertex_lines_.data() + vl_offsets_[v + 1]};
  }

  static constexpr std::int32_t unreachable = -1;

  // BFS distances from src. Each line is expanded at most once, so the cost
  // is O(V + sum of line sizes) rather than O(V + E).
  std::vector<std::int32_t> distances(Vertex src, std::vector<Vertex>* parent = nullptr) const {
    std::vector<std::int32_t> dist(points_.size(), unreachable);
    std::vector<char> line_done(line_count(), 0);
    if (parent) parent->assign(points_.size(), src);
    std::vector<Vertex> frontier{src}, next;
    dist[src] = 0;
    for (std::int32_t d = 1; !frontier.empty(); ++d) {
      next.clear();
      for (auto u : frontier) {
        for (auto l : lines_of(u)) {
          if (line_done[l]) continue;
          line_done[l] = 1;
          for (auto w : line_vertices(l)) {
            if (dist[w] != unreachable) continue;
            dist[w] = d;
            if (parent) (*parent)[w] = u;
            next.push_back(w);
          }
        }
      }
      frontier.swap(next);
    }
    return dist;
  }

  // "u v" per edge, point indices, u < v, ascending.
  void write_edge_list(std::ostream& os) const {
    for (Vertex u = 0; u < points_.size(); ++u)
      for (auto w : neighbors(u))
        if (u < w) os << points_[u] << ' ' << points_[w] << '\n';
  }

 private:
  std::vector<PointIndex> points_;
  std::vector<std::uint64_t> adj_offsets_;
  std::vector<Vertex> adj_;
  std::vector<std::uint64_t> line_offsets_;
  std::vector<Vertex> line_members_;
  std::vector<std::uint64_t> vl_offsets_;
  std::vector<std::uint32_t> vertex_lines_;
};

inline std::size_t component_count(const CollinearityGraph& g) {
  std::vector<std::int32_t> seen(g.vertex_count(), 0);
  std::size_t comps = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (seen[s]) continue;
    ++comps;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (auto w : g.neighbors(u))
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
  }
  return comps;
}

struct DiameterReport {
  std::size_t components = 0;
  std::optional<std::uint32_t> diameter;  // nullopt: disconnected (infinite)
  std::size_t sources = 0;                // BFS sources actually used
  bool exhaustive = false;
};

// Exact diameter when `sources` is empty (every vertex is a source);
// otherwise the maximum eccentricity over the given sources.
inline DiameterReport connectivity_and_diameter(const CollinearityGraph& g, std::span<const Vertex> sources = {},
                                                unsigned threads = 1) {
  DiameterReport r;
  r.components = component_count(g);
  if (r.components != 1) return r;
  std::vector<Vertex> all;
  if (sources.empty()) {
    all.resize(g.vertex_count());
    for (Vertex v = 0; v < all.size(); ++v) all[v] = v;
    sources = all;
    r.exhaustive = true;
  }
  r.sources = sources.size();
  threads = std::max(1u, threads);
  std::vector<std::uint32_t> best(threads, 0);
  parallel_chunks(sources.size(), threads, [&](unsigned w, std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      const auto d = g.distances(sources[k]);
      best[w] = std::max(best[w], static_cast<std::uint32_t>(*std::max_element(d.begin(), d.end())));
    }
  });
  r.diameter = *std::max_element(best.begin(), best.end());
  return r;
}

// Every vertex of Omega_0, Omega_1, Omega_3 plus `sample` vertices of Omega_2
// drawn with a fixed seed.
inline std::vector<Vertex> reduced_diameter_sources(const CollinearityGraph& g, const OmegaPartition& omega,
                                                    std::size_t sample, std::uint64_t seed = 1) {
  std::vector<Vertex> out, affine;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const int k = omega.label_of(g.point_of(v));
    if (k == 2)
      affine.push_back(v);
    else
      out.push_back(v);
  }
  std::mt19937_64 rng(seed);
  std::vector<Vertex> picked;
  std::sample(affine.begin(), affine.end(), std::back_inserter(picked), sample, rng);
  out.insert(out.end(), picked.begin(), picked.end());
  std::sort(out.begin(), out.end());
  return out;
}

struct DistanceWitness {
  PointIndex from;  // affine point of M
  PointIndex to;    // point of Omega_3
  std::vector<PointIndex> path;
};

// An affine point and a point of Omega_3 at distance 3, with a shortest path
// running through Omega_1 and then P_inf.
inline DistanceWitness distance_witness(const ProjectiveSpace& space, const CollinearityGraph& g,
                                        const BMParams& prm, const OmegaPartition& omega) {
  if (!prm.q_is_1_mod_4()) throw DomainError("distance witness needs q = 1 mod 4");
  if (omega.omega[2].empty() || omega.omega[3].empty()) throw InvariantViolation("empty Omega_2 or Omega_3");
  const PointIndex from = omega.omega[2].indices().front();
  const PointIndex to = omega.omega[3].indices().front();
  std::vector<Vertex> parent;
  const auto dist = g.distances(g.vertex(from), &parent);
  const Vertex t = g.vertex(to);
  if (dist[t] != 3) throw InvariantViolation("affine point and Omega_3 point not at distance 3");
  DistanceWitness w{from, to, {}};
  for (Vertex v = t;; v = parent[v]) {
    w.path.push_back(g.point_of(v));
    if (v == g.vertex(from)) break;
  }
  std::reverse(w.path.begin(), w.path.end());
  if (!omega.omega[1].contains(w.path[1]) || w.path[2] != space.index_of(BMParams::p_inf()))
    throw InvariantViolation("shortest path does not pass through Omega_1 then P_inf");
  return w;
}

struct Omega3Report {
  std::size_t components = 0;
  std::vector<std::size_t> sizes;
  bool all_cliques = false;
  bool adjacent_to_p_inf = false;
  std::uint64_t edges_to_omega12 = 0;
};

inline Omega3Report omega3_structure(const ProjectiveSpace& space, const CollinearityGraph& g,
                                     const OmegaPartition& omega) {
  Omega3Report r;
  r.all_cliques = true;
  r.adjacent_to_p_inf = true;
  const Vertex pinf = g.vertex(space.index_of(BMParams::p_inf()));
  std::vector<Vertex> members;
  omega.omega[3].for_each([&](PointIndex p) { members.push_back(g.vertex(p)); });
  std::vector<char> seen(g.vertex_count(), 0);
  auto in3 = [&](Vertex v) { return omega.omega[3].contains(g.point_of(v)); };
  for (auto s : members) {
    if (!g.adjacent(s, pinf)) r.adjacent_to_p_inf = false;
    for (auto w : g.neighbors(s)) {
      const int k = omega.label_of(g.point_of(w));
      if (k == 1 || k == 2) ++r.edges_to_omega12;
    }
    if (seen[s]) continue;
    std::vector<Vertex> comp{s}, stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (auto w : g.neighbors(u))
        if (in3(w) && !seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
          stack.push_back(w);
        }
    }
    ++r.components;
    r.sizes.push_back(comp.size());
    for (auto u : comp) {
      std::size_t inside = 0;
      for (auto w : g.neighbors(u)) inside += in3(w) ? 1 : 0;
      if (inside != comp.size() - 1) r.all_cliques = false;
    }
  }
  return r;
}

}  // namespace qhv
